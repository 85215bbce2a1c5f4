//! The icosahedron in golden coordinates and the rotation action of Γ on it.

mod model;
mod rectangles;
mod rotation;

pub use model::{icosahedron_model, IcosahedronModel};
pub use rectangles::{golden_rectangles, is_even_permutation, rectangle_partitions, rectangle_triples_action, Rectangle};
pub use rotation::{gamma_frame, orbit, rotation_from_quaternion, rotation_group, RotationGroup};

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::numberfield::GoldenRational;

/// A point of ℝ³ with coordinates in ℚ(√5).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vector3G(pub [GoldenRational; 3]);

impl Vector3G {
    pub fn new(x: GoldenRational, y: GoldenRational, z: GoldenRational) -> Self {
        Vector3G([x, y, z])
    }

    pub fn dot(&self, o: &Self) -> GoldenRational {
        self.0.iter().zip(&o.0).map(|(a, b)| a * b).sum()
    }

    pub fn norm2(&self) -> GoldenRational {
        self.dot(self)
    }

    pub fn cross(&self, o: &Self) -> Self {
        let [a, b, c] = &self.0;
        let [x, y, z] = &o.0;
        Vector3G([b * z - c * y, c * x - a * z, a * y - b * x])
    }

    pub fn scale(&self, s: &GoldenRational) -> Self {
        Vector3G(self.0.clone().map(|v| &v * s))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(GoldenRational::is_zero)
    }

    pub fn to_f64(&self) -> [f64; 3] {
        self.0.clone().map(|v| v.to_f64())
    }
}

impl fmt::Display for Vector3G {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y, z] = &self.0;
        write!(f, "({x}, {y}, {z})")
    }
}

impl Add for &Vector3G {
    type Output = Vector3G;
    fn add(self, o: &Vector3G) -> Vector3G {
        Vector3G(std::array::from_fn(|i| &self.0[i] + &o.0[i]))
    }
}

impl Sub for &Vector3G {
    type Output = Vector3G;
    fn sub(self, o: &Vector3G) -> Vector3G {
        Vector3G(std::array::from_fn(|i| &self.0[i] - &o.0[i]))
    }
}

impl Neg for &Vector3G {
    type Output = Vector3G;
    fn neg(self) -> Vector3G {
        Vector3G(self.0.clone().map(|v| -v))
    }
}

/// Row-major 3×3 matrix over ℚ(√5).
pub type Mat3G = [[GoldenRational; 3]; 3];

pub fn mat3_identity() -> Mat3G {
    std::array::from_fn(|i| std::array::from_fn(|j| GoldenRational::from_int((i == j) as i64)))
}

pub fn mat3_mul(a: &Mat3G, b: &Mat3G) -> Mat3G {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..3).map(|k| &a[i][k] * &b[k][j]).sum()))
}

pub fn mat3_transpose(a: &Mat3G) -> Mat3G {
    std::array::from_fn(|i| std::array::from_fn(|j| a[j][i].clone()))
}

pub fn mat3_apply(a: &Mat3G, v: &Vector3G) -> Vector3G {
    Vector3G(std::array::from_fn(|i| (0..3).map(|k| &a[i][k] * &v.0[k]).sum()))
}

pub fn mat3_det(a: &Mat3G) -> GoldenRational {
    let m = |i: usize, j: usize| &a[i][j];
    m(0, 0) * &(m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * &(m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
        + m(0, 2) * &(m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0))
}

/// A point of the Riemann sphere.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SpherePoint {
    Finite(Complex64),
    Infinity,
}

impl SpherePoint {
    pub fn finite(self) -> Option<Complex64> {
        match self {
            SpherePoint::Finite(z) => Some(z),
            SpherePoint::Infinity => None,
        }
    }
}

/// Projection from the north pole after normalizing to the unit sphere:
/// `(x, y, z) ↦ (x + iy)/(1 − z)`, with the pole itself sent to ∞.
pub fn stereographic(p: [f64; 3]) -> SpherePoint {
    let r = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
    let [x, y, z] = p.map(|c| c / r);
    if (1.0 - z).abs() < 1e-14 {
        SpherePoint::Infinity
    } else {
        SpherePoint::Finite(Complex64::new(x, y) / (1.0 - z))
    }
}

pub fn stereographic_exact(p: &Vector3G) -> SpherePoint {
    stereographic(p.to_f64())
}

/// Inverse of [`stereographic`].
pub fn inverse_stereographic(w: SpherePoint) -> [f64; 3] {
    match w {
        SpherePoint::Infinity => [0.0, 0.0, 1.0],
        SpherePoint::Finite(w) => {
            let n = w.norm_sqr();
            [2.0 * w.re / (1.0 + n), 2.0 * w.im / (1.0 + n), (n - 1.0) / (n + 1.0)]
        }
    }
}
