//! Exact positive-definite lattices given by rational Gram matrices.

mod enumerate;
mod io;
mod isometry;
mod roots;

pub use enumerate::{quadratic_form, short_vectors};
pub use io::{lattice_from_json, lattice_to_json, LatticeFile};
pub use isometry::{lattice_isometry, verify_isometry, IsometryOptions};
pub use roots::{e8_diagram, graph_iso_e8, root_basis_and_diagram, DynkinGraph, RootSystem};

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, QMatrix};
use crate::numberfield::{format_rational, rat, rat_int, Rational};

/// A lattice by its Gram matrix, optionally with basis rows in ambient
/// coordinates (then `gram = basis · basisᵀ`).
#[derive(Clone, Debug, PartialEq)]
pub struct IntegerLattice {
    gram: QMatrix,
    basis: Option<QMatrix>,
}

impl IntegerLattice {
    /// Validates squareness, symmetry and positive definiteness.
    pub fn from_gram(gram: QMatrix) -> Result<Self> {
        if !linalg::is_square(&gram) || gram.is_empty() {
            return Err(Error::MalformedLattice("Gram matrix is not square".into()));
        }
        if !linalg::is_symmetric(&gram) {
            return Err(Error::MalformedLattice("Gram matrix is not symmetric".into()));
        }
        if !is_positive_definite(&gram) {
            return Err(Error::MalformedLattice("Gram matrix is not positive definite".into()));
        }
        Ok(IntegerLattice { gram, basis: None })
    }

    pub fn from_basis(basis: QMatrix) -> Result<Self> {
        let gram = linalg::mat_mul(&basis, &linalg::transpose(&basis));
        let mut l = Self::from_gram(gram)?;
        l.basis = Some(basis);
        Ok(l)
    }

    pub fn from_int_gram(rows: &[&[i64]]) -> Result<Self> {
        Self::from_gram(rows.iter().map(|r| r.iter().map(|&v| rat_int(v)).collect()).collect())
    }

    pub fn identity(n: usize) -> Self {
        IntegerLattice {
            gram: linalg::identity(n),
            basis: None,
        }
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &QMatrix {
        &self.gram
    }

    pub fn basis(&self) -> Option<&QMatrix> {
        self.basis.as_ref()
    }

    pub fn det(&self) -> Rational {
        linalg::det(&self.gram)
    }

    /// Same lattice in the basis given by the rows of `u` (which must be
    /// unimodular for the result to be the same lattice).
    pub fn transformed(&self, u: &[Vec<Rational>]) -> Result<Self> {
        let gram = linalg::congruence(u, &self.gram);
        let mut l = Self::from_gram(gram)?;
        l.basis = self.basis.as_ref().map(|b| linalg::mat_mul(u, b));
        Ok(l)
    }

    pub fn gram_strings(&self) -> Vec<Vec<String>> {
        self.gram.iter().map(|r| r.iter().map(format_rational).collect()).collect()
    }
}

fn is_positive_definite(g: &[Vec<Rational>]) -> bool {
    // leading principal minors via elimination pivots
    let n = g.len();
    let mut a = g.to_vec();
    for i in 0..n {
        if !a[i][i].is_positive() {
            return false;
        }
        for r in i + 1..n {
            let f = &a[r][i] / &a[i][i];
            for c in i..n {
                let t = &f * &a[i][c];
                a[r][c] -= t;
            }
        }
    }
    true
}

/// The displayed 8×8 basis: six rows `e_i − e_{i+1}`, then `e6 + e7`, then
/// `−½(1, …, 1)`.
pub fn e8_standard_basis() -> IntegerLattice {
    let mut rows: QMatrix = Vec::new();
    for i in 0..6 {
        let mut r = vec![Rational::zero(); 8];
        r[i] = Rational::one();
        r[i + 1] = -Rational::one();
        rows.push(r);
    }
    let mut r = vec![Rational::zero(); 8];
    r[5] = Rational::one();
    r[6] = Rational::one();
    rows.push(r);
    rows.push(vec![rat(-1, 2); 8]);
    IntegerLattice::from_basis(rows).expect("standard E8 basis is nondegenerate")
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EvenUnimodularReport {
    pub even: bool,
    pub integral: bool,
    #[serde(serialize_with = "crate::lattice::io::ser_rational")]
    pub det: Rational,
}

impl EvenUnimodularReport {
    pub fn unimodular(&self) -> bool {
        self.integral && self.det.abs().is_one()
    }
}

/// Even iff every entry is an integer and every diagonal entry is even.
pub fn even_unimodular_check(gram: &[Vec<Rational>]) -> Result<EvenUnimodularReport> {
    if !linalg::is_square(gram) || gram.is_empty() {
        return Err(Error::MalformedLattice("Gram matrix is not square".into()));
    }
    if !linalg::is_symmetric(gram) {
        return Err(Error::MalformedLattice("Gram matrix is not symmetric".into()));
    }
    let integral = linalg::is_integral(gram);
    let even = integral
        && (0..gram.len()).all(|i| {
            let d = gram[i][i].to_integer();
            num_integer::Integer::is_even(&d)
        });
    Ok(EvenUnimodularReport {
        even,
        integral,
        det: linalg::det(gram),
    })
}

/// Coordinates all in ℤ or all in ℤ + ½, with even coordinate sum.
pub fn e8_coordinate_membership(v: &[Rational]) -> bool {
    if v.len() != 8 {
        return false;
    }
    let two = rat_int(2);
    let doubled: Vec<Rational> = v.iter().map(|x| x * &two).collect();
    if !doubled.iter().all(Rational::is_integer) {
        return false;
    }
    let all_int = v.iter().all(Rational::is_integer);
    let all_half = v.iter().all(|x| !x.is_integer());
    if !(all_int || all_half) {
        return false;
    }
    let sum: Rational = v.iter().cloned().fold(Rational::zero(), |a, b| a + b);
    sum.is_integer() && num_integer::Integer::is_even(&sum.to_integer())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn standard_basis_gram() {
        let e8 = e8_standard_basis();
        let g = e8.gram();
        for i in 0..8 {
            assert_eq!(g[i][i], rat_int(2));
            for j in 0..8 {
                if i != j {
                    assert!(g[i][j] == rat_int(0) || g[i][j] == rat_int(-1));
                }
            }
        }
        assert_eq!(linalg::det(e8.basis().unwrap()).abs(), rat_int(1));
    }

    #[test]
    fn even_unimodular_reports() {
        let r = even_unimodular_check(e8_standard_basis().gram()).unwrap();
        assert!(r.even && r.unimodular());
        assert_eq!(r.det, rat_int(1));
        let z8 = even_unimodular_check(IntegerLattice::identity(8).gram()).unwrap();
        assert!(!z8.even);
        assert_eq!(z8.det, rat_int(1));
        let a1 = even_unimodular_check(&[vec![rat_int(2)]]).unwrap();
        assert!(a1.even);
        assert_eq!(a1.det, rat_int(2));
        assert!(matches!(
            even_unimodular_check(&[vec![rat_int(2), rat_int(1)], vec![rat_int(0), rat_int(2)]]),
            Err(Error::MalformedLattice(_))
        ));
        assert!(even_unimodular_check(&[vec![rat_int(2), rat_int(1)]]).is_err());
    }

    #[test]
    fn coordinate_membership() {
        let v = |xs: [i64; 8], d: i64| xs.map(|x| rat(x, d)).to_vec();
        assert!(e8_coordinate_membership(&v([1, -1, 0, 0, 0, 0, 0, 0], 1)));
        assert!(e8_coordinate_membership(&v([1; 8], 2)));
        assert!(!e8_coordinate_membership(&v([1, 0, 0, 0, 0, 0, 0, 0], 1)));
        assert!(!e8_coordinate_membership(&v([1, 1, 1, 1, 1, 1, 1, 2], 2)));
        assert!(!e8_coordinate_membership(&v([1, 1, 1, 1, 1, 1, 1, -1], 2)));
    }

    #[test]
    fn rejects_indefinite() {
        assert!(IntegerLattice::from_int_gram(&[&[1, 2], &[2, 1]]).is_err());
    }

    fn arb_unimodular() -> impl Strategy<Value = QMatrix> {
        // product of elementary row operations
        prop::collection::vec((0usize..8, 0usize..8, -2i64..=2), 1..20).prop_map(|ops| {
            let mut u = linalg::identity(8);
            for (i, j, k) in ops {
                if i == j {
                    u.swap(i, (i + 1) % 8);
                    continue;
                }
                let row_j = u[j].clone();
                for (x, y) in u[i].iter_mut().zip(&row_j) {
                    *x += rat_int(k) * y;
                }
            }
            u
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn certification_is_basis_invariant(u in arb_unimodular()) {
            let e8 = e8_standard_basis();
            let t = e8.transformed(&u).unwrap();
            let r = even_unimodular_check(t.gram()).unwrap();
            prop_assert!(r.even);
            prop_assert_eq!(r.det, rat_int(1));
        }
    }
}
