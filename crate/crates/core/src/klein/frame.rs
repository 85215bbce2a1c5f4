use std::collections::HashMap;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry3d::{gamma_frame, icosahedron_model, mat3_apply, stereographic, SpherePoint, Vector3G};
use crate::icosian::{GammaGroup, GoldenQuaternion};
use crate::numberfield::{CyclotomicQ5, GoldenRational};

/// 2×2 complex matrix, row-major.
pub type Mat2C = [[Complex64; 2]; 2];

/// 2×2 matrix over ℚ(ζ₅), row-major.
pub type Mat2Q5 = [[CyclotomicQ5; 2]; 2];

/// `a + bi + cj + dk ↦ [[a + bi, c + di], [−c + di, a − bi]]`.
pub fn su2_matrix(q: &GoldenQuaternion) -> Mat2C {
    let [a, b, c, d] = q.to_f64();
    [
        [Complex64::new(a, b), Complex64::new(c, d)],
        [Complex64::new(-c, d), Complex64::new(a, -b)],
    ]
}

pub fn mat2_mul(a: &Mat2C, b: &Mat2C) -> Mat2C {
    std::array::from_fn(|i| std::array::from_fn(|j| a[i][0] * b[0][j] + a[i][1] * b[1][j]))
}

/// Inverse of a determinant-one matrix.
pub fn mat2_inv_sl(a: &Mat2C) -> Mat2C {
    [[a[1][1], -a[0][1]], [-a[1][0], a[0][0]]]
}

pub fn q5_mul(a: &Mat2Q5, b: &Mat2Q5) -> Mat2Q5 {
    std::array::from_fn(|i| std::array::from_fn(|j| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j])))
}

pub fn q5_det(a: &Mat2Q5) -> CyclotomicQ5 {
    &(&a[0][0] * &a[1][1]) - &(&a[0][1] * &a[1][0])
}

pub fn q5_to_c(a: &Mat2Q5) -> Mat2C {
    std::array::from_fn(|i| std::array::from_fn(|j| a[i][j].embed()))
}

/// Möbius action `w ↦ (αw + β)/(γw + δ)` on the Riemann sphere.
pub fn mobius(m: &Mat2C, w: SpherePoint) -> SpherePoint {
    let (num, den) = match w {
        SpherePoint::Infinity => (m[0][0], m[1][0]),
        SpherePoint::Finite(w) => (m[0][0] * w + m[0][1], m[1][0] * w + m[1][1]),
    };
    if den.norm() <= 1e-13 * num.norm() {
        SpherePoint::Infinity
    } else {
        SpherePoint::Finite(num / den)
    }
}

/// Icosahedron data on ℂP¹ in the canonical frame.
#[derive(Clone, Debug)]
pub struct Cp1Configuration {
    pub vertices: Vec<SpherePoint>,
    pub edge_midpoints: Vec<SpherePoint>,
    pub face_centers: Vec<SpherePoint>,
    /// The SU(2) change of frame applied after projection.
    pub frame: Mat2C,
}

/// Sends a model point to the sphere coordinate on which `su2_matrix(q)`
/// acts by Möbius transformations compatibly with `x ↦ q·x·q⁻¹`.
fn raw_projection(v: &Vector3G) -> SpherePoint {
    let x = mat3_apply(&gamma_frame(), v).to_f64();
    stereographic([x[2], -x[1], x[0]])
}

fn on_ring(w: SpherePoint, r: f64) -> bool {
    w.finite().is_some_and(|z| (z.norm() - r).abs() < 1e-9)
}

/// Projects the icosahedron so that one vertex goes to ∞, its antipode to 0,
/// and a vertex of the ring at radius 1/Φ lands on the positive real axis.
pub fn cp1_configuration() -> Result<Cp1Configuration> {
    let model = icosahedron_model();
    let raw: Vec<SpherePoint> = model.vertices.iter().map(raw_projection).collect();
    let a = raw[0]
        .finite()
        .filter(|z| z.norm() > 1e-9)
        .ok_or_else(|| Error::Frame("reference vertex projects to 0 or ∞".into()))?;
    let alpha = 1.0 / (1.0 + 1.0 / a.norm_sqr()).sqrt();
    let beta = Complex64::new(alpha, 0.0) / a.conj();
    let p: Mat2C = [[Complex64::new(alpha, 0.0), beta], [-beta.conj(), Complex64::new(alpha, 0.0)]];
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let lower = raw
        .iter()
        .map(|&w| mobius(&p, w))
        .find(|&w| on_ring(w, 1.0 / phi))
        .and_then(SpherePoint::finite)
        .ok_or_else(|| Error::Frame("no vertex on the inner ring".into()))?;
    let half = lower.arg() / 2.0;
    let d: Mat2C = [
        [Complex64::from_polar(1.0, -half), Complex64::new(0.0, 0.0)],
        [Complex64::new(0.0, 0.0), Complex64::from_polar(1.0, half)],
    ];
    let frame = mat2_mul(&d, &p);
    let project = |v: &Vector3G| mobius(&frame, raw_projection(v));
    let config = Cp1Configuration {
        vertices: model.vertices.iter().map(project).collect(),
        edge_midpoints: model.edge_midpoints.iter().map(project).collect(),
        face_centers: model.face_centers.iter().map(project).collect(),
        frame,
    };
    check_vertices(&config.vertices)?;
    Ok(config)
}

fn check_vertices(vs: &[SpherePoint]) -> Result<()> {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let inf = vs.iter().filter(|w| **w == SpherePoint::Infinity).count();
    let zero = vs.iter().filter(|w| w.finite().is_some_and(|z| z.norm() < 1e-9)).count();
    let inner: Vec<Complex64> = vs.iter().filter(|w| on_ring(**w, 1.0 / phi)).filter_map(|w| w.finite()).collect();
    let outer: Vec<Complex64> = vs.iter().filter(|w| on_ring(**w, phi)).filter_map(|w| w.finite()).collect();
    if (inf, zero, inner.len(), outer.len()) != (1, 1, 5, 5) {
        return Err(Error::Frame(format!(
            "vertex images split as ∞:{inf} 0:{zero} inner:{} outer:{}",
            inner.len(),
            outer.len()
        )));
    }
    let step = std::f64::consts::TAU / 5.0;
    let on_grid = |z: &Complex64, offset: f64| {
        let t = (z.arg() - offset) / step;
        (t - t.round()).abs() < 1e-9
    };
    if !inner.iter().all(|z| on_grid(z, 0.0)) || !outer.iter().all(|z| on_grid(z, std::f64::consts::PI)) {
        return Err(Error::Frame("vertex rings are not at the expected angles".into()));
    }
    Ok(())
}

/// Finds `(m + n√5)/20` within `tol` of `x`.
fn recognize_golden(x: f64, tol: f64) -> Option<GoldenRational> {
    let s5 = 5f64.sqrt();
    let mut found = None;
    for n in -60i64..=60 {
        let m = (20.0 * x - n as f64 * s5).round();
        if ((m + n as f64 * s5) / 20.0 - x).abs() <= tol {
            if found.is_some() {
                return None;
            }
            found = Some(GoldenRational::from_ints(m as i64, n, 20));
        }
    }
    found
}

/// Recognizes `z` as `x + y·(ζ − ζ⁴)` with `x, y ∈ ℚ(√5)`; note
/// `ζ − ζ⁴ = i·√(2 + Φ)`.
pub fn recognize_q5(z: Complex64, tol: f64) -> Option<CyclotomicQ5> {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let x = recognize_golden(z.re, tol)?;
    let y = recognize_golden(z.im / (2.0 + phi).sqrt(), tol)?;
    let unit = &CyclotomicQ5::zeta() - &CyclotomicQ5::zeta_pow(4);
    let out = &CyclotomicQ5::from_golden(&x) + &(&CyclotomicQ5::from_golden(&y) * &unit);
    ((out.embed() - z).norm() <= 4.0 * tol).then_some(out)
}

/// The 120 matrices of Γ in the canonical frame, exactly over ℚ(ζ₅), indexed
/// like `gamma`. Certified exactly: every determinant is 1, the map is
/// injective, and it is multiplicative on all 14 400 pairs.
pub fn exact_group_matrices(gamma: &GammaGroup, config: &Cp1Configuration) -> Result<Vec<Mat2Q5>> {
    let frame_inv = mat2_inv_sl(&config.frame);
    let mats: Vec<Mat2Q5> = gamma
        .elements()
        .iter()
        .map(|q| {
            let n = mat2_mul(&mat2_mul(&config.frame, &su2_matrix(q)), &frame_inv);
            let mut out: Vec<CyclotomicQ5> = Vec::with_capacity(4);
            for z in n.iter().flatten() {
                out.push(recognize_q5(*z, 1e-8).ok_or_else(|| Error::Frame(format!("entry {z} of the image of {q} is not recognized")))?);
            }
            let [a, b, c, d]: [CyclotomicQ5; 4] = out.try_into().expect("four entries");
            Ok([[a, b], [c, d]])
        })
        .collect::<Result<_>>()?;
    let one = CyclotomicQ5::one();
    if mats.iter().any(|m| q5_det(m) != one) {
        return Err(Error::consistency("exact matrix with determinant other than 1"));
    }
    let index: HashMap<&Mat2Q5, usize> = mats.iter().enumerate().map(|(i, m)| (m, i)).collect();
    if index.len() != mats.len() {
        return Err(Error::consistency("two elements of Γ have the same exact matrix"));
    }
    let els = gamma.elements();
    (0..els.len()).into_par_iter().try_for_each(|a| {
        for b in 0..els.len() {
            let ab = gamma.index_of(&(&els[a] * &els[b])).expect("Γ is closed");
            if index.get(&q5_mul(&mats[a], &mats[b])) != Some(&ab) {
                return Err(Error::consistency("exact matrices are not closed under multiplication"));
            }
        }
        Ok(())
    })?;
    Ok(mats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::icosian::gamma_enumerate;

    #[test]
    fn su2_is_a_homomorphism() {
        let g = gamma_enumerate().unwrap();
        for p in g.elements().iter().step_by(7) {
            for q in g.elements().iter().step_by(5) {
                let lhs = su2_matrix(&(p * q));
                let rhs = mat2_mul(&su2_matrix(p), &su2_matrix(q));
                for i in 0..2 {
                    for j in 0..2 {
                        assert!((lhs[i][j] - rhs[i][j]).norm() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn vertex_images() {
        let c = cp1_configuration().unwrap();
        assert_eq!((c.vertices.len(), c.edge_midpoints.len(), c.face_centers.len()), (12, 30, 20));
        let radii: Vec<f64> = c.vertices.iter().filter_map(|w| w.finite()).map(|z| z.norm()).filter(|r| *r > 1e-9).collect();
        let (r1, r2) = (radii.iter().cloned().fold(f64::MAX, f64::min), radii.iter().cloned().fold(0.0, f64::max));
        assert!((r1 * r2 - 1.0).abs() < 1e-9);
        assert!(c.vertices.iter().any(|w| w.finite().is_some_and(|z| (z - Complex64::new(r1, 0.0)).norm() < 1e-9)));
    }

    #[test]
    fn mobius_action_permutes_vertices() {
        let g = gamma_enumerate().unwrap();
        let c = cp1_configuration().unwrap();
        let inv = mat2_inv_sl(&c.frame);
        let close = |a: SpherePoint, b: SpherePoint| match (a, b) {
            (SpherePoint::Infinity, SpherePoint::Infinity) => true,
            (SpherePoint::Finite(x), SpherePoint::Finite(y)) => (x - y).norm() < 1e-8,
            _ => false,
        };
        for q in g.elements() {
            let n = mat2_mul(&mat2_mul(&c.frame, &su2_matrix(q)), &inv);
            for set in [&c.vertices, &c.edge_midpoints, &c.face_centers] {
                for &w in set.iter() {
                    let img = mobius(&n, w);
                    assert!(set.iter().any(|&u| close(u, img)));
                }
            }
        }
    }

    #[test]
    fn recognition() {
        let phi = GoldenRational::phi();
        let z = &CyclotomicQ5::from_golden(&phi) * &CyclotomicQ5::zeta_pow(3);
        assert_eq!(recognize_q5(z.embed(), 1e-8), Some(z));
        assert_eq!(recognize_q5(Complex64::new(0.123456789, 0.0), 1e-8), None);
    }

    #[test]
    fn exact_matrices() {
        let g = gamma_enumerate().unwrap();
        let c = cp1_configuration().unwrap();
        let mats = exact_group_matrices(&g, &c).unwrap();
        assert_eq!(mats.len(), 120);
        let zero = CyclotomicQ5::zero();
        let diagonal: Vec<&Mat2Q5> = mats.iter().filter(|m| m[0][1] == zero && m[1][0] == zero).collect();
        assert_eq!(diagonal.len(), 10);
        let (z2, z3) = (CyclotomicQ5::zeta_pow(2), CyclotomicQ5::zeta_pow(3));
        assert!(diagonal.iter().any(|m| m[0][0] == z3 && m[1][1] == z2));
        // the order-10 diagonal elements are the negatives of ζ-power pairs
        let neg = [[-&z3, zero.clone()], [zero.clone(), -&z2]];
        assert!(diagonal.contains(&&neg));
        for m in &diagonal {
            let (a, d) = (&m[0][0], &m[1][1]);
            let k = (0..5).find(|&k| *a == CyclotomicQ5::zeta_pow(k) || *a == -&CyclotomicQ5::zeta_pow(k)).unwrap();
            let sign = if *a == CyclotomicQ5::zeta_pow(k) { 1 } else { -1 };
            let expect_d = CyclotomicQ5::zeta_pow((5 - k) % 5).scale_int(sign);
            assert_eq!(*d, expect_d);
        }
    }
}
