//! Two exact routes from the icosahedron to E8.
//!
//! The icosian route takes the 120 unit quaternions of the binary icosahedral
//! group, spans them over the integers, reads the result as a rank-8 lattice
//! over ℚ and certifies it is E8. The McKay route builds the character table
//! of the same group and recovers the E8 Dynkin diagram from tensoring with
//! its defining 2-dimensional representation. Klein's invariant forms, the
//! 600-cell and the A5 action on golden rectangles come along for the ride.

pub mod cache;
pub mod error;
pub mod geometry3d;
pub mod groupkit;
pub mod icosian;
pub mod klein;
pub mod lattice;
pub mod linalg;
pub mod numberfield;
pub mod polytope600;
pub mod verify;

pub use error::{Error, Result};
