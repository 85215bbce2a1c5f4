use std::collections::BTreeMap;

use num_complex::Complex64;
use num_traits::Zero;
use serde::Serialize;

use super::invariants::Syzygy;
use super::poly::HomoPoly2;
use crate::error::{Error, Result};
use crate::geometry3d::SpherePoint;
use crate::numberfield::{rational_from_f64, rational_to_f64, Rational};

/// Ascending-power univariate polynomial over ℚ.
type UPoly = Vec<Rational>;

fn trim(mut p: UPoly) -> UPoly {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn is_const(p: &UPoly) -> bool {
    p.len() <= 1
}

fn deriv(p: &UPoly) -> UPoly {
    if p.len() <= 1 {
        return vec![Rational::zero()];
    }
    p.iter().enumerate().skip(1).map(|(k, c)| c * Rational::from_integer(k.into())).collect()
}

fn sub(a: &UPoly, b: &UPoly) -> UPoly {
    let n = a.len().max(b.len());
    trim((0..n).map(|k| a.get(k).cloned().unwrap_or_default() - b.get(k).cloned().unwrap_or_default()).collect())
}

fn divrem(a: &UPoly, b: &UPoly) -> (UPoly, UPoly) {
    let b = trim(b.clone());
    let lead = b.last().expect("nonempty").clone();
    let mut r = trim(a.clone());
    if r.len() < b.len() {
        return (vec![Rational::zero()], r);
    }
    let mut q = vec![Rational::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !(r.len() == 1 && r[0].is_zero()) {
        let shift = r.len() - b.len();
        let c = r.last().expect("nonempty") / &lead;
        for (k, bk) in b.iter().enumerate() {
            r[k + shift] = &r[k + shift] - &c * bk;
        }
        q[shift] = c;
        r.pop();
        r = trim(r);
        if r.len() < b.len() {
            break;
        }
    }
    (trim(q), r)
}

fn monic(p: UPoly) -> UPoly {
    let lead = p.last().expect("nonempty").clone();
    if lead.is_zero() {
        return p;
    }
    p.into_iter().map(|c| c / &lead).collect()
}

fn gcd(a: &UPoly, b: &UPoly) -> UPoly {
    let (mut a, mut b) = (trim(a.clone()), trim(b.clone()));
    while !(b.len() == 1 && b[0].is_zero()) {
        let (_, r) = divrem(&a, &b);
        a = b;
        b = r;
    }
    monic(a)
}

fn exact_div(a: &UPoly, b: &UPoly) -> UPoly {
    divrem(a, b).0
}

/// Yun's algorithm: squarefree `a_i` with `p = lead · Π a_i^i`.
fn squarefree(p: &UPoly) -> Vec<(UPoly, u32)> {
    let p = trim(p.clone());
    let mut out = Vec::new();
    if is_const(&p) {
        return out;
    }
    let dp = deriv(&p);
    let a0 = gcd(&p, &dp);
    let mut b = exact_div(&p, &a0);
    let mut c = exact_div(&dp, &a0);
    let mut d = sub(&c, &deriv(&b));
    let mut i = 1;
    while !is_const(&b) {
        let a = gcd(&b, &d);
        b = exact_div(&b, &a);
        c = exact_div(&d, &a);
        d = sub(&c, &deriv(&b));
        if !is_const(&a) {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

/// Simultaneous Newton iteration with Aberth's correction on a polynomial
/// with ascending complex coefficients.
pub fn aberth_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let mut c: Vec<Complex64> = coeffs.to_vec();
    while c.len() > 1 && c.last().is_some_and(|z| z.norm() == 0.0) {
        c.pop();
    }
    let n = c.len() - 1;
    if n == 0 {
        return Ok(Vec::new());
    }
    let lead = c[n];
    let c: Vec<Complex64> = c.iter().map(|z| z / lead).collect();
    let radius = 1.0 + c[..n].iter().map(|z| z.norm()).fold(0.0, f64::max).powf(1.0 / n as f64);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius * 0.5, std::f64::consts::TAU * (k as f64 + 0.25) / n as f64 + 0.4))
        .collect();
    let eval = |x: Complex64| {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for a in c.iter().rev() {
            dp = dp * x + p;
            p = p * x + a;
        }
        (p, dp)
    };
    for _ in 0..1000 {
        let mut moved: f64 = 0.0;
        for i in 0..n {
            let (p, dp) = eval(z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..n).filter(|&j| j != i).map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j])).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            z[i] -= step;
            moved = moved.max(step.norm() / z[i].norm().max(1.0));
        }
        if moved < 1e-15 {
            return Ok(z);
        }
    }
    let worst = z.iter().map(|&x| eval(x).0.norm()).fold(0.0, f64::max);
    if worst < 1e-10 * c.iter().map(|z| z.norm()).sum::<f64>() {
        Ok(z)
    } else {
        Err(Error::Precision("root finder did not converge".into()))
    }
}

/// A root on ℂP¹ with its multiplicity.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SheetRoot {
    #[serde(serialize_with = "ser_point")]
    pub point: SpherePoint,
    pub multiplicity: u32,
}

fn ser_point<S: serde::Serializer>(p: &SpherePoint, s: S) -> std::result::Result<S::Ok, S::Error> {
    match p {
        SpherePoint::Infinity => s.serialize_str("inf"),
        SpherePoint::Finite(z) => serde::Serialize::serialize(&[z.re, z.im], s),
    }
}

/// Preimage of a value under `ℐ`, with multiplicities.
#[derive(Clone, Debug, Serialize)]
pub struct SheetCount {
    pub roots: Vec<SheetRoot>,
}

impl SheetCount {
    pub fn total(&self) -> u32 {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }

    /// multiplicity ↦ number of distinct points.
    pub fn profile(&self) -> BTreeMap<u32, usize> {
        let mut m = BTreeMap::new();
        for r in &self.roots {
            *m.entry(r.multiplicity).or_insert(0) += 1;
        }
        m
    }

    pub fn min_separation(&self) -> f64 {
        let pts: Vec<Complex64> = self.roots.iter().filter_map(|r| r.point.finite()).collect();
        let mut best = f64::INFINITY;
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                best = best.min((pts[i] - pts[j]).norm());
            }
        }
        best
    }
}

/// Dehomogenizes at `t = z1/z2`; ascending in `t`.
fn dehomogenize(p: &HomoPoly2) -> UPoly {
    p.coeffs().iter().rev().cloned().collect()
}

fn exact_sheets(g: &HomoPoly2) -> Result<SheetCount> {
    let d = g.degree();
    let u = trim(dehomogenize(g));
    if u.len() == 1 && u[0].is_zero() {
        return Err(Error::Domain("the fibre polynomial vanishes identically".into()));
    }
    let mut roots = Vec::new();
    let at_inf = (d + 1 - u.len()) as u32;
    if at_inf > 0 {
        roots.push(SheetRoot { point: SpherePoint::Infinity, multiplicity: at_inf });
    }
    for (factor, m) in squarefree(&u) {
        let cf: Vec<Complex64> = factor.iter().map(|r| Complex64::new(rational_to_f64(r), 0.0)).collect();
        for z in aberth_roots(&cf)? {
            roots.push(SheetRoot { point: SpherePoint::Finite(z), multiplicity: m });
        }
    }
    Ok(SheetCount { roots })
}

fn numeric_sheets(f3: &HomoPoly2, v5: &HomoPoly2, w: Complex64) -> Result<SheetCount> {
    let d = f3.degree();
    let c: Vec<Complex64> = (0..=d)
        .map(|k| {
            let (a, b) = (rational_to_f64(&f3.coeffs()[d - k]), rational_to_f64(&v5.coeffs()[d - k]));
            Complex64::new(a, 0.0) - w * b
        })
        .collect();
    let deg = c.iter().rposition(|z| z.norm() != 0.0).unwrap_or(0);
    let mut roots = Vec::new();
    if deg < d {
        roots.push(SheetRoot { point: SpherePoint::Infinity, multiplicity: (d - deg) as u32 });
    }
    let found = aberth_roots(&c[..=deg])?;
    let mut clusters: Vec<(Complex64, u32)> = Vec::new();
    for z in found {
        match clusters.iter_mut().find(|(c, _)| (*c - z).norm() < 1e-6) {
            Some(entry) => entry.1 += 1,
            None => clusters.push((z, 1)),
        }
    }
    roots.extend(clusters.into_iter().map(|(z, m)| SheetRoot { point: SpherePoint::Finite(z), multiplicity: m }));
    Ok(SheetCount { roots })
}

/// Roots of `F³ − w·norm·V⁵` on ℂP¹; `w = ∞` gives the roots of `V⁵`.
/// Real `w` is handled exactly up to the final rooting of squarefree parts.
pub fn sheet_count(w: SpherePoint, v: &HomoPoly2, f: &HomoPoly2, syz: &Syzygy) -> Result<SheetCount> {
    let (v5, f3) = (v.pow(5), f.pow(3));
    if v5.degree() != f3.degree() {
        return Err(Error::Domain("F³ and V⁵ have different degrees".into()));
    }
    let norm = syz.norm();
    match w {
        SpherePoint::Infinity => exact_sheets(&v5),
        SpherePoint::Finite(z) if z.im == 0.0 => {
            let wr = rational_from_f64(z.re).ok_or_else(|| Error::Domain("w is not finite".into()))?;
            let scaled = v5.scale(&-(wr * &norm));
            exact_sheets(&f3.add(&scaled)?)
        }
        SpherePoint::Finite(z) => {
            let scaled = v5.scale(&norm);
            numeric_sheets(&f3, &scaled, z)
        }
    }
}
