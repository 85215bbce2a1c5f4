//! Klein's icosahedral invariants on ℂ² and the icosahedral map of ℂP¹.

mod frame;
mod invariants;
mod poly;
mod render;
mod sheets;

pub use frame::{
    cp1_configuration, exact_group_matrices, mat2_inv_sl, mat2_mul, mobius, q5_det, q5_mul, q5_to_c, recognize_q5,
    su2_matrix, Cp1Configuration, Mat2C, Mat2Q5,
};
pub use invariants::{
    build_invariants, form_from_roots, icosahedral_map, invariance_check, orbit_triple, substitute, syzygy_constants,
    IcosahedralMap, Invariants, OrbitTriple, ProjectivePointC, Syzygy,
};
pub use poly::{covariant, CovariantKind, HomoPoly2};
pub use render::{
    base_lightness, color, encode_png, encode_ppm, parse_resolution, render_phase_portrait, render_pixels, Window,
};
pub use sheets::{aberth_roots, sheet_count, SheetCount, SheetRoot};
