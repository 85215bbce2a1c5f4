use nalgebra::DMatrix;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{conjugacy_classes, FiniteGroupTable};
use crate::error::{Error, Result};
use crate::icosian::GammaGroup;
use crate::numberfield::{rat, rat_int, GoldenRational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugacyClass {
    pub representative: usize,
    pub size: usize,
    pub element_order: u32,
    pub elements: Vec<usize>,
}

/// Irreducible characters (rows) on conjugacy classes (columns).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterTable {
    pub order: usize,
    pub classes: Vec<ConjugacyClass>,
    pub chars: Vec<Vec<GoldenRational>>,
    pub dims: Vec<u32>,
    pub identity_class: usize,
    /// Seed of the linear combination that separated the characters.
    pub seed_used: u64,
}

#[derive(Clone, Copy, Debug)]
pub struct CharacterTableOptions {
    pub seed: u64,
    pub attempts: u32,
    /// Tolerance for recognizing values in ℤ[Φ]/2.
    pub tolerance: f64,
}

impl Default for CharacterTableOptions {
    fn default() -> Self {
        CharacterTableOptions {
            seed: 120,
            attempts: 8,
            tolerance: 1e-6,
        }
    }
}

#[derive(Serialize)]
struct ClassJson {
    representative: usize,
    size: usize,
    element_order: u32,
}

#[derive(Serialize)]
struct TableJson {
    order: usize,
    classes: Vec<ClassJson>,
    dims: Vec<u32>,
    chars: Vec<Vec<String>>,
}

impl CharacterTable {
    /// Σ_c |c|·χ_i(c)·χ_j(c), exactly. Values are real, so no conjugation.
    pub fn inner(&self, a: &[GoldenRational], b: &[GoldenRational]) -> GoldenRational {
        self.classes
            .iter()
            .enumerate()
            .map(|(c, cl)| (&a[c] * &b[c]).scale(&rat_int(cl.size as i64)))
            .sum()
    }

    /// Both orthogonality relations, exactly over ℚ(√5).
    pub fn verify(&self) -> Result<()> {
        let n = self.classes.len();
        let order = GoldenRational::from_int(self.order as i64);
        if self.chars.len() != n {
            return Err(Error::consistency(format!("{} characters for {n} classes", self.chars.len())));
        }
        for i in 0..n {
            for k in 0..n {
                let expect = if i == k { order.clone() } else { GoldenRational::zero() };
                if self.inner(&self.chars[i], &self.chars[k]) != expect {
                    return Err(Error::consistency(format!("rows {i} and {k} are not orthogonal")));
                }
            }
        }
        for r in 0..n {
            for s in 0..n {
                let sum: GoldenRational = (0..n).map(|i| &self.chars[i][r] * &self.chars[i][s]).sum();
                let expect = if r == s {
                    GoldenRational::from_rational(rat(self.order as i64, self.classes[r].size as i64))
                } else {
                    GoldenRational::zero()
                };
                if sum != expect {
                    return Err(Error::consistency(format!("columns {r} and {s} are not orthogonal")));
                }
            }
        }
        if self.chars[0].iter().any(|v| *v != GoldenRational::one()) {
            return Err(Error::consistency("first row is not the trivial character"));
        }
        for (i, row) in self.chars.iter().enumerate() {
            if row[self.identity_class] != GoldenRational::from_int(self.dims[i] as i64) {
                return Err(Error::consistency(format!("dimension of row {i} disagrees with χ(1)")));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(TableJson {
            order: self.order,
            classes: self
                .classes
                .iter()
                .map(|c| ClassJson {
                    representative: c.representative,
                    size: c.size,
                    element_order: c.element_order,
                })
                .collect(),
            dims: self.dims.clone(),
            chars: self.chars.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect(),
        })
        .expect("serializable")
    }
}

/// The character `g ↦ 2·Re(g)` of Γ acting on ℍ ≅ ℂ² by left multiplication,
/// evaluated on class representatives.
pub fn defining_character(gamma: &GammaGroup, classes: &[ConjugacyClass]) -> Vec<GoldenRational> {
    classes
        .iter()
        .map(|c| gamma.get(c.representative).real().scale(&rat_int(2)))
        .collect()
}

/// Finds `a + bΦ` with `2a, 2b` integers of absolute value ≤ 16 within `tol`
/// of `x`; `None` when there is no such value or more than one.
fn recognize(x: f64, tol: f64) -> Option<GoldenRational> {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let mut found = None;
    for b2 in -16i64..=16 {
        let a = x - b2 as f64 / 2.0 * phi;
        let a2 = (2.0 * a).round();
        if (2.0 * a - a2).abs() <= 2.0 * tol && a2.abs() <= 16.0 {
            if found.is_some() {
                return None;
            }
            found = Some(GoldenRational::from_phi_coords(rat(a2 as i64, 2), rat(b2, 2)));
        }
    }
    found
}

fn class_coefficients(t: &FiniteGroupTable, classes: &[ConjugacyClass]) -> Vec<DMatrix<f64>> {
    let n = classes.len();
    let mut class_of = vec![0; t.order];
    for (i, c) in classes.iter().enumerate() {
        for &g in &c.elements {
            class_of[g] = i;
        }
    }
    // M_r[s][t] = #{x ∈ C_r : x⁻¹·g_t ∈ C_s}
    (0..n)
        .map(|r| {
            let mut m = DMatrix::<f64>::zeros(n, n);
            for (tt, ct) in classes.iter().enumerate() {
                for &x in &classes[r].elements {
                    let y = t.mul[t.inv[x]][ct.representative];
                    m[(class_of[y], tt)] += 1.0;
                }
            }
            m
        })
        .collect()
}

fn attempt(
    t: &FiniteGroupTable,
    classes: &[ConjugacyClass],
    coeffs: &[DMatrix<f64>],
    identity_class: usize,
    seed: u64,
    tol: f64,
) -> Result<Vec<(u32, Vec<GoldenRational>)>> {
    let n = classes.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = DMatrix::<f64>::zeros(n, n);
    for c in coeffs {
        m += c * rng.random_range(1..=100) as f64;
    }
    let eig = m.clone().complex_eigenvalues();
    if eig.iter().any(|z| z.im.abs() > 1e-6 * (1.0 + z.re.abs())) {
        return Err(Error::NumericRecognition("complex eigenvalue in class algebra".into()));
    }
    let mut lambdas: Vec<f64> = eig.iter().map(|z| z.re).collect();
    lambdas.sort_by(f64::total_cmp);
    if lambdas.windows(2).any(|w| (w[1] - w[0]).abs() < 1e-3) {
        return Err(Error::NumericRecognition("eigenvalue collision".into()));
    }
    let mut rows = Vec::with_capacity(n);
    for lambda in lambdas {
        let shifted = &m - DMatrix::<f64>::identity(n, n) * lambda;
        let svd = shifted.svd(false, true);
        let v_t = svd.v_t.ok_or_else(|| Error::NumericRecognition("SVD failed".into()))?;
        let k = svd
            .singular_values
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .map(|(k, _)| k)
            .expect("nonempty");
        let mut omega: Vec<f64> = v_t.row(k).iter().copied().collect();
        let pivot = omega[identity_class];
        if pivot.abs() < 1e-9 {
            return Err(Error::NumericRecognition("eigenvector vanishes at the identity".into()));
        }
        omega.iter_mut().for_each(|w| *w /= pivot);
        let norm: f64 = omega.iter().zip(classes).map(|(w, c)| w * w / c.size as f64).sum();
        let chi1 = (t.order as f64 / norm).sqrt();
        let dim = chi1.round();
        if (chi1 - dim).abs() > tol.max(1e-9) * 1e3 || dim < 1.0 {
            return Err(Error::NumericRecognition(format!("degree {chi1} is not an integer")));
        }
        let values: Vec<GoldenRational> = omega
            .iter()
            .zip(classes)
            .map(|(w, c)| recognize(dim * w / c.size as f64, tol))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::NumericRecognition("character value outside ℤ[Φ]/2".into()))?;
        rows.push((dim.to_u32().expect("small"), values));
    }
    Ok(rows)
}

/// Burnside–Dixon: class-multiplication coefficients, a random integer
/// combination diagonalized numerically, character values recognized in
/// ℤ[Φ]/2, and the result checked exactly by both orthogonality relations.
pub fn character_table(t: &FiniteGroupTable, opts: CharacterTableOptions) -> Result<CharacterTable> {
    let classes: Vec<ConjugacyClass> = conjugacy_classes(t)
        .into_iter()
        .map(|els| ConjugacyClass {
            representative: els[0],
            size: els.len(),
            element_order: t.element_order(els[0]),
            elements: els,
        })
        .collect();
    let identity_class = classes
        .iter()
        .position(|c| c.elements == [t.identity])
        .expect("identity has a class");
    let coeffs = class_coefficients(t, &classes);
    let mut last = Error::NumericRecognition("no attempts made".into());
    for k in 0..opts.attempts.max(1) {
        let seed = opts.seed + k as u64;
        let mut rows = match attempt(t, &classes, &coeffs, identity_class, seed, opts.tolerance) {
            Ok(rows) => rows,
            Err(e) => {
                last = e;
                continue;
            }
        };
        let nontrivial = |r: &[GoldenRational]| r.iter().any(|v| *v != GoldenRational::one());
        rows.sort_by(|a, b| {
            (a.0, nontrivial(&a.1))
                .cmp(&(b.0, nontrivial(&b.1)))
                .then_with(|| a.1.cmp(&b.1))
        });
        let table = CharacterTable {
            order: t.order,
            dims: rows.iter().map(|r| r.0).collect(),
            chars: rows.into_iter().map(|r| r.1).collect(),
            classes: classes.clone(),
            identity_class,
            seed_used: seed,
        };
        match table.verify() {
            Ok(()) => return Ok(table),
            Err(e) => last = Error::NumericRecognition(format!("recognized table fails exact checks: {e}")),
        }
    }
    Err(last)
}
