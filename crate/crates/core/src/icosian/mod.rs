//! Quaternions over ℚ(√5), the binary icosahedral group Γ and the icosian
//! ring spanned by it.

mod basis;
mod gamma;

pub use basis::{icosian_contains, icosian_zbasis, real_embedding, IcosianBasis};
pub use gamma::{closure_generators, gamma_enumerate, generate_closure, paper_families, GammaGroup};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::numberfield::{GoldenRational, Rational};

/// `a + b·i + c·j + d·k` with golden-field components.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GoldenQuaternion(pub [GoldenRational; 4]);

impl GoldenQuaternion {
    pub fn new(a: GoldenRational, b: GoldenRational, c: GoldenRational, d: GoldenRational) -> Self {
        GoldenQuaternion([a, b, c, d])
    }

    pub fn from_real(a: GoldenRational) -> Self {
        GoldenQuaternion([a, GoldenRational::zero(), GoldenRational::zero(), GoldenRational::zero()])
    }

    pub fn one() -> Self {
        Self::from_real(GoldenRational::one())
    }

    pub fn i() -> Self {
        Self::unit(1)
    }

    pub fn j() -> Self {
        Self::unit(2)
    }

    pub fn k() -> Self {
        Self::unit(3)
    }

    fn unit(pos: usize) -> Self {
        let mut q = GoldenQuaternion::default();
        q.0[pos] = GoldenRational::one();
        q
    }

    pub fn real(&self) -> &GoldenRational {
        &self.0[0]
    }

    pub fn components(&self) -> &[GoldenRational; 4] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(GoldenRational::is_zero)
    }

    /// Quaternion conjugate `a − bi − cj − dk`.
    pub fn conj(&self) -> Self {
        let [a, b, c, d] = &self.0;
        GoldenQuaternion([a.clone(), -b, -c, -d])
    }

    pub fn scale(&self, s: &GoldenRational) -> Self {
        GoldenQuaternion(self.0.clone().map(|v| &v * s))
    }

    /// Squared quaternionic norm `a² + b² + c² + d²`, an element of ℚ(√5).
    pub fn norm2(&self) -> GoldenRational {
        self.0.iter().map(|v| v * v).sum()
    }

    /// The rational norm τ(|q|²): if `|q|² = x + y√5` this is `x + y`.
    pub fn icosian_norm2(&self) -> Rational {
        self.norm2().tau()
    }

    /// Inverse of a unit quaternion (its conjugate); `None` if `|q|² ≠ 1`.
    pub fn unit_inverse(&self) -> Option<Self> {
        (self.norm2() == GoldenRational::one()).then(|| self.conj())
    }

    /// `Re(p · conj(q))`, the 4-dimensional dot product.
    pub fn re_inner(&self, other: &Self) -> GoldenRational {
        self.0.iter().zip(&other.0).map(|(x, y)| x * y).sum()
    }

    /// The integral E8 form `τ(p·q̄ + q·p̄) = 2·τ(Re(p·q̄))`.
    pub fn trace_form(&self, other: &Self) -> Rational {
        self.re_inner(other).tau() * Rational::from_integer(2.into())
    }

    /// Coordinates `(x_a, y_a, x_b, y_b, x_c, y_c, x_d, y_d)` in ℚ⁸.
    pub fn to_q8(&self) -> [Rational; 8] {
        std::array::from_fn(|i| {
            let c = &self.0[i / 2];
            if i % 2 == 0 {
                c.x().clone()
            } else {
                c.y().clone()
            }
        })
    }

    pub fn from_q8(v: &[Rational]) -> Self {
        assert_eq!(v.len(), 8);
        GoldenQuaternion(std::array::from_fn(|i| {
            GoldenRational::new(v[2 * i].clone(), v[2 * i + 1].clone())
        }))
    }

    /// Canonical sort key: the four serialized components.
    pub fn sort_key(&self) -> [String; 4] {
        self.0.clone().map(|c| c.to_string())
    }

    pub fn to_f64(&self) -> [f64; 4] {
        self.0.clone().map(|c| c.to_f64())
    }
}

impl fmt::Display for GoldenQuaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.0;
        write!(f, "({a}, {b}, {c}, {d})")
    }
}

impl Mul for &GoldenQuaternion {
    type Output = GoldenQuaternion;

    /// Hamilton product with i² = j² = k² = −1 and ij = k = −ji.
    fn mul(self, rhs: &GoldenQuaternion) -> GoldenQuaternion {
        let [a1, b1, c1, d1] = &self.0;
        let [a2, b2, c2, d2] = &rhs.0;
        GoldenQuaternion([
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        ])
    }
}

impl Mul for GoldenQuaternion {
    type Output = GoldenQuaternion;
    fn mul(self, rhs: GoldenQuaternion) -> GoldenQuaternion {
        &self * &rhs
    }
}

impl Add for &GoldenQuaternion {
    type Output = GoldenQuaternion;
    fn add(self, rhs: &GoldenQuaternion) -> GoldenQuaternion {
        GoldenQuaternion(std::array::from_fn(|i| &self.0[i] + &rhs.0[i]))
    }
}

impl Sub for &GoldenQuaternion {
    type Output = GoldenQuaternion;
    fn sub(self, rhs: &GoldenQuaternion) -> GoldenQuaternion {
        GoldenQuaternion(std::array::from_fn(|i| &self.0[i] - &rhs.0[i]))
    }
}

impl Neg for &GoldenQuaternion {
    type Output = GoldenQuaternion;
    fn neg(self) -> GoldenQuaternion {
        GoldenQuaternion(self.0.clone().map(|v| -v))
    }
}

/// Hamilton product as a free function.
pub fn q_mul(p: &GoldenQuaternion, q: &GoldenQuaternion) -> GoldenQuaternion {
    p * q
}
