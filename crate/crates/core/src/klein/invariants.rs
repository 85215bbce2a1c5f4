use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::frame::{Cp1Configuration, Mat2Q5};
use super::poly::{eval_f64, HomoPoly2};
use crate::error::{Error, Result};
use crate::geometry3d::SpherePoint;
use crate::linalg::nullspace;
use crate::numberfield::{rational_to_f64, CyclotomicQ5, Rational};

/// A point of ℂP¹ in homogeneous coordinates; ∞ is `(1, 0)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProjectivePointC {
    pub z1: Complex64,
    pub z2: Complex64,
}

impl ProjectivePointC {
    pub fn new(z1: Complex64, z2: Complex64) -> Result<Self> {
        if z1 == Complex64::new(0.0, 0.0) && z2 == Complex64::new(0.0, 0.0) {
            return Err(Error::Domain("(0, 0) is not a point of ℂP¹".into()));
        }
        Ok(ProjectivePointC { z1, z2 })
    }

    /// Chart `w ↦ (w, 1)`, ∞ ↦ `(1, 0)`; large `w` use `(1, 1/w)`.
    pub fn from_sphere(w: SpherePoint) -> Self {
        let one = Complex64::new(1.0, 0.0);
        match w {
            SpherePoint::Infinity => ProjectivePointC { z1: one, z2: Complex64::new(0.0, 0.0) },
            SpherePoint::Finite(w) if w.norm() > 1.0 => ProjectivePointC { z1: one, z2: one / w },
            SpherePoint::Finite(w) => ProjectivePointC { z1: w, z2: one },
        }
    }

    pub fn to_sphere(self) -> SpherePoint {
        if self.z2.norm() <= 1e-15 * self.z1.norm() {
            SpherePoint::Infinity
        } else {
            SpherePoint::Finite(self.z1 / self.z2)
        }
    }

    /// Representative with `|z1|² + |z2|² = 1`.
    pub fn normalized(self) -> Self {
        let s = (self.z1.norm_sqr() + self.z2.norm_sqr()).sqrt();
        ProjectivePointC { z1: self.z1 / s, z2: self.z2 / s }
    }

    /// Scale equivalence up to `tol`, measured by the normalized cross term.
    pub fn same_as(self, o: Self, tol: f64) -> bool {
        let (a, b) = (self.normalized(), o.normalized());
        (a.z1 * b.z2 - a.z2 * b.z1).norm() <= tol
    }
}

/// Klein's three invariant forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariants {
    pub v: HomoPoly2,
    pub e: HomoPoly2,
    pub f: HomoPoly2,
}

impl Invariants {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "V": self.v.to_json(), "E": self.e.to_json(), "F": self.f.to_json() })
    }
}

const MAX_MULTIPLIER: u64 = 1_000_000;

/// Product of the forms `z2·w − z1` (or `z2` for ∞), rounded to primitive
/// integer coefficients.
pub fn form_from_roots(roots: &[SpherePoint]) -> Result<HomoPoly2> {
    let mut c = vec![Complex64::new(1.0, 0.0)];
    for r in roots {
        let (a, b) = match r {
            SpherePoint::Infinity => (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)),
            SpherePoint::Finite(w) => (Complex64::new(-1.0, 0.0), *w),
        };
        let mut next = vec![Complex64::new(0.0, 0.0); c.len() + 1];
        for (k, ck) in c.iter().enumerate() {
            next[k] += ck * a;
            next[k + 1] += ck * b;
        }
        c = next;
    }
    round_to_integers(&c)
}

fn round_to_integers(c: &[Complex64]) -> Result<HomoPoly2> {
    let lead = *c
        .iter()
        .find(|z| z.norm() > 1e-9 * c.iter().map(|z| z.norm()).fold(0.0, f64::max))
        .ok_or_else(|| Error::Precision("form vanishes numerically".into()))?;
    let r: Vec<Complex64> = c.iter().map(|z| z / lead).collect();
    let scale = r.iter().map(|z| z.norm()).fold(1.0, f64::max);
    for d in 1..=MAX_MULTIPLIER {
        let df = d as f64;
        let ok = r.iter().all(|z| {
            let x = z * df;
            (x.re - x.re.round()).abs() <= 1e-6 * x.re.abs().max(1.0) && x.im.abs() <= 1e-6 * scale * df
        });
        if ok {
            let ints: Vec<Rational> = r.iter().map(|z| Rational::from_integer(BigInt::from((z.re * df).round() as i64))).collect();
            return Ok(HomoPoly2::new(ints).primitive());
        }
    }
    Err(Error::Precision("coefficients do not round to integers at double precision".into()))
}

/// `V`, `E`, `F` from the vertex, edge-midpoint and face-center images.
pub fn build_invariants(config: &Cp1Configuration) -> Result<Invariants> {
    let inv = Invariants {
        v: form_from_roots(&config.vertices)?,
        e: form_from_roots(&config.edge_midpoints)?,
        f: form_from_roots(&config.face_centers)?,
    };
    if (inv.v.degree(), inv.e.degree(), inv.f.degree()) != (12, 30, 20) {
        return Err(Error::consistency("invariant degrees are not (12, 30, 20)"));
    }
    Ok(inv)
}

type FormQ5 = Vec<CyclotomicQ5>;

fn form_mul(a: &FormQ5, b: &FormQ5) -> FormQ5 {
    let mut out = vec![CyclotomicQ5::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
    }
    out
}

/// Coefficients of `p(αz1 + βz2, γz1 + δz2)`.
pub fn substitute(p: &HomoPoly2, g: &Mat2Q5) -> Vec<CyclotomicQ5> {
    let l1 = vec![g[0][0].clone(), g[0][1].clone()];
    let l2 = vec![g[1][0].clone(), g[1][1].clone()];
    let c: Vec<CyclotomicQ5> = p.coeffs().iter().map(CyclotomicQ5::from_rational).collect();
    let mut l2_pow = vec![CyclotomicQ5::one()];
    let mut acc = vec![c[0].clone()];
    for cj in &c[1..] {
        l2_pow = form_mul(&l2_pow, &l2);
        acc = form_mul(&acc, &l1);
        for (a, b) in acc.iter_mut().zip(&l2_pow) {
            *a = &*a + &(cj * b);
        }
    }
    acc
}

/// Exact test of `p∘g = p` for every matrix.
pub fn invariance_check(p: &HomoPoly2, mats: &[Mat2Q5]) -> bool {
    let target: Vec<CyclotomicQ5> = p.coeffs().iter().map(CyclotomicQ5::from_rational).collect();
    mats.par_iter().all(|g| substitute(p, g) == target)
}

/// Primitive integer `(a, b, c)` with `a·V⁵ + b·E² + c·F³ = 0`, `b > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Syzygy {
    #[serde(serialize_with = "ser_int")]
    pub a: BigInt,
    #[serde(serialize_with = "ser_int")]
    pub b: BigInt,
    #[serde(serialize_with = "ser_int")]
    pub c: BigInt,
}

fn ser_int<S: serde::Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

impl Syzygy {
    /// `−a/c`, the value of `F³/V⁵` where `E` vanishes.
    pub fn norm(&self) -> Rational {
        -Rational::new(self.a.clone(), self.c.clone())
    }

    /// `a·v⁵ + b·e² + c·f³` relative to the sum of the term magnitudes.
    pub fn relative_residual(&self, v: Complex64, e: Complex64, f: Complex64) -> f64 {
        let (a, b, c) = (to_f64(&self.a), to_f64(&self.b), to_f64(&self.c));
        let terms = [a * v.powu(5), b * e.powu(2), c * f.powu(3)];
        let scale: f64 = terms.iter().map(|t| t.norm()).sum();
        if scale == 0.0 {
            0.0
        } else {
            (terms[0] + terms[1] + terms[2]).norm() / scale
        }
    }
}

fn to_f64(x: &BigInt) -> f64 {
    rational_to_f64(&Rational::from_integer(x.clone()))
}

/// Exact kernel of the 61×3 system spanned by `V⁵, E², F³`.
pub fn syzygy_constants(v: &HomoPoly2, e: &HomoPoly2, f: &HomoPoly2) -> Result<Syzygy> {
    if (v.degree(), e.degree(), f.degree()) != (12, 30, 20) {
        return Err(Error::Domain(format!(
            "expected degrees (12, 30, 20), got ({}, {}, {})",
            v.degree(),
            e.degree(),
            f.degree()
        )));
    }
    let cols = [v.pow(5), e.pow(2), f.pow(3)];
    let rows: Vec<Vec<Rational>> = (0..=60).map(|k| cols.iter().map(|p| p.coeffs()[k].clone()).collect()).collect();
    let kernel = nullspace(&rows);
    if kernel.len() != 1 {
        return Err(Error::consistency(format!("syzygy space has dimension {}", kernel.len())));
    }
    let x = &kernel[0];
    let den = x.iter().fold(BigInt::from(1), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<BigInt> = x.iter().map(|r| (r * Rational::from_integer(den.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    let g = if ints[1].is_negative() { -g } else { g };
    let [a, b, c]: [BigInt; 3] = ints.into_iter().map(|v| v / &g).collect::<Vec<_>>().try_into().expect("three constants");
    if b.is_zero() || c.is_zero() {
        return Err(Error::consistency("degenerate syzygy"));
    }
    Ok(Syzygy { a, b, c })
}

/// `ℐ = (F³/V⁵)/norm` with precomputed float coefficients.
#[derive(Clone, Debug)]
pub struct IcosahedralMap {
    v: Vec<f64>,
    f: Vec<f64>,
    v_scale: f64,
    norm: f64,
}

impl IcosahedralMap {
    pub fn new(v: &HomoPoly2, f: &HomoPoly2, norm: &Rational) -> Result<Self> {
        if v.degree() * 5 != f.degree() * 3 {
            return Err(Error::Domain("F³/V⁵ is not of degree zero".into()));
        }
        let norm = rational_to_f64(norm);
        if norm == 0.0 {
            return Err(Error::DivisionByZero);
        }
        Ok(IcosahedralMap { v: v.coeffs_f64(), f: f.coeffs_f64(), v_scale: v.l1_norm(), norm })
    }

    pub fn eval(&self, z: ProjectivePointC) -> SpherePoint {
        let z = z.normalized();
        let vz = eval_f64(&self.v, z.z1, z.z2);
        if vz.norm() <= 1e-12 * self.v_scale {
            return SpherePoint::Infinity;
        }
        let fz = eval_f64(&self.f, z.z1, z.z2);
        SpherePoint::Finite(fz.powu(3) / (vz.powu(5) * self.norm))
    }

    pub fn eval_at(&self, w: SpherePoint) -> SpherePoint {
        self.eval(ProjectivePointC::from_sphere(w))
    }
}

pub fn icosahedral_map(z: ProjectivePointC, v: &HomoPoly2, f: &HomoPoly2, norm: &Rational) -> Result<SpherePoint> {
    Ok(IcosahedralMap::new(v, f, norm)?.eval(z))
}

/// Values of `V, E, F` at a point of ℂ², with the syzygy residual.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OrbitTriple {
    pub v: Complex64,
    pub e: Complex64,
    pub f: Complex64,
    pub residual: f64,
}

pub fn orbit_triple(p: (Complex64, Complex64), inv: &Invariants, syz: &Syzygy) -> OrbitTriple {
    let (v, e, f) = (inv.v.eval(p.0, p.1), inv.e.eval(p.0, p.1), inv.f.eval(p.0, p.1));
    OrbitTriple { v, e, f, residual: syz.relative_residual(v, e, f) }
}
