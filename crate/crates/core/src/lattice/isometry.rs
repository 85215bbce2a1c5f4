use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use super::{even_unimodular_check, quadratic_form, short_vectors, IntegerLattice};
use crate::error::{Error, Result};
use crate::linalg;
use crate::numberfield::{rat_int, Rational};

#[derive(Clone, Copy, Debug)]
pub struct IsometryOptions {
    /// Maximum number of partial assignments explored.
    pub node_budget: u64,
}

impl Default for IsometryOptions {
    fn default() -> Self {
        IsometryOptions { node_budget: 10_000_000 }
    }
}

fn scaled_int_gram(g: &[Vec<Rational>], scale: &BigInt) -> Option<Vec<Vec<i128>>> {
    g.iter()
        .map(|r| {
            r.iter()
                .map(|v| (v * Rational::from_integer(scale.clone())).to_integer().to_i128())
                .collect()
        })
        .collect()
}

fn apply(g: &[Vec<i128>], x: &[i64]) -> Vec<i128> {
    g.iter()
        .map(|row| row.iter().zip(x).map(|(a, &b)| a * b as i128).sum())
        .collect()
}

fn dot(a: &[i128], b: &[i64]) -> i128 {
    a.iter().zip(b).map(|(x, &y)| x * y as i128).sum()
}

fn profile(form: &[i128], shell: &[Vec<i64>]) -> Vec<i128> {
    let mut p: Vec<i128> = shell.iter().map(|s| dot(form, s)).collect();
    p.sort_unstable();
    p
}

/// `U` is integral with `|det U| = 1` and `U·G1·Uᵀ = G2`.
pub fn verify_isometry(l1: &IntegerLattice, l2: &IntegerLattice, u: &[Vec<i64>]) -> bool {
    let n = l1.rank();
    if l2.rank() != n || u.len() != n || u.iter().any(|r| r.len() != n) {
        return false;
    }
    let uq: Vec<Vec<Rational>> = u.iter().map(|r| r.iter().map(|&v| rat_int(v)).collect()).collect();
    linalg::det(&uq).abs().is_one() && linalg::congruence(&uq, l1.gram()) == *l2.gram()
}

struct Search<'a> {
    target: Vec<Vec<i128>>,
    cands: Vec<Vec<usize>>,
    vecs: &'a [Vec<i64>],
    forms: Vec<Vec<i128>>,
    chosen: Vec<usize>,
    nodes: u64,
    budget: u64,
    l1: &'a IntegerLattice,
    l2: &'a IntegerLattice,
}

impl Search<'_> {
    fn run(&mut self) -> Result<Option<Vec<Vec<i64>>>> {
        let i = self.chosen.len();
        if i == self.target.len() {
            let u: Vec<Vec<i64>> = self.chosen.iter().map(|&c| self.vecs[c].clone()).collect();
            return Ok(verify_isometry(self.l1, self.l2, &u).then_some(u));
        }
        for k in 0..self.cands[i].len() {
            let c = self.cands[i][k];
            let fits = (0..i).all(|j| dot(&self.forms[self.chosen[j]], &self.vecs[c]) == self.target[i][j]);
            if !fits {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::SearchBudgetExceeded(self.budget));
            }
            self.chosen.push(c);
            if let Some(u) = self.run()? {
                return Ok(Some(u));
            }
            self.chosen.pop();
        }
        Ok(None)
    }
}

/// Searches for an integral unimodular `U` with `U·G1·Uᵀ = G2`: row `i` of
/// `U` is the image in `L1` of the `i`-th basis vector of `L2`. `Ok(None)`
/// certifies that no isometry exists.
pub fn lattice_isometry(
    l1: &IntegerLattice,
    l2: &IntegerLattice,
    opts: IsometryOptions,
) -> Result<Option<Vec<Vec<i64>>>> {
    let n = l1.rank();
    if l2.rank() != n || l1.det() != l2.det() {
        return Ok(None);
    }
    let (r1, r2) = (even_unimodular_check(l1.gram())?, even_unimodular_check(l2.gram())?);
    if r1.even != r2.even || r1.integral != r2.integral {
        return Ok(None);
    }
    let scale = l1
        .gram()
        .iter()
        .chain(l2.gram())
        .flatten()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let (Some(g1), Some(g2)) = (scaled_int_gram(l1.gram(), &scale), scaled_int_gram(l2.gram(), &scale)) else {
        return Err(Error::Domain("Gram entries too large for the search".into()));
    };
    let max_norm = l2.gram().iter().enumerate().map(|(i, r)| r[i].clone()).max().expect("nonempty");
    let shell1 = short_vectors(l1, &max_norm);
    let shell2 = short_vectors(l2, &max_norm);
    if shell1.len() != shell2.len() {
        return Ok(None);
    }
    let forms: Vec<Vec<i128>> = shell1.iter().map(|v| apply(&g1, v)).collect();
    let profiles1: Vec<Vec<i128>> = forms.iter().map(|f| profile(f, &shell1)).collect();
    let mut cands = Vec::with_capacity(n);
    for i in 0..n {
        let want = profile(&g2[i], &shell2);
        let norm_i = &l2.gram()[i][i];
        let c: Vec<usize> = (0..shell1.len())
            .filter(|&k| profiles1[k] == want && quadratic_form(l1, &shell1[k]) == *norm_i)
            .collect();
        if c.is_empty() {
            return Ok(None);
        }
        cands.push(c);
    }
    let mut search = Search {
        target: g2,
        cands,
        vecs: &shell1,
        forms,
        chosen: Vec::with_capacity(n),
        nodes: 0,
        budget: opts.node_budget,
        l1,
        l2,
    };
    search.run()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::icosian::{gamma_enumerate, icosian_zbasis};
    use crate::lattice::e8_standard_basis;

    fn icosian_lattice() -> IntegerLattice {
        let b = icosian_zbasis(&gamma_enumerate().unwrap()).unwrap();
        IntegerLattice::from_gram(b.gram).unwrap()
    }

    #[test]
    fn icosian_form_is_isometric_to_e8() {
        let (l1, l2) = (icosian_lattice(), e8_standard_basis());
        let u = lattice_isometry(&l1, &l2, IsometryOptions::default()).unwrap().unwrap();
        assert!(verify_isometry(&l1, &l2, &u));
    }

    #[test]
    fn identity_is_accepted() {
        let e8 = e8_standard_basis();
        let id: Vec<Vec<i64>> = (0..8).map(|i| (0..8).map(|j| (i == j) as i64).collect()).collect();
        assert!(verify_isometry(&e8, &e8, &id));
        let mut bad = id.clone();
        bad[0][1] = 1;
        assert!(!verify_isometry(&e8, &e8, &bad));
        assert!(lattice_isometry(&e8, &e8, IsometryOptions::default()).unwrap().is_some());
    }

    #[test]
    fn inequivalent_lattices() {
        let e8 = e8_standard_basis();
        let z8 = IntegerLattice::identity(8);
        assert_eq!(lattice_isometry(&e8, &z8, IsometryOptions::default()).unwrap(), None);
        let a2 = IntegerLattice::from_int_gram(&[&[2, -1], &[-1, 2]]).unwrap();
        let other = IntegerLattice::from_int_gram(&[&[2, 1], &[1, 2]]).unwrap();
        assert!(lattice_isometry(&a2, &other, IsometryOptions::default()).unwrap().is_some());
        let a1a1 = IntegerLattice::from_int_gram(&[&[2, 0], &[0, 2]]).unwrap();
        assert_eq!(lattice_isometry(&a2, &a1a1, IsometryOptions::default()).unwrap(), None);
    }

    #[test]
    fn same_invariants_different_lattice() {
        // equal rank and determinant, but only one of them is even
        let x = IntegerLattice::from_int_gram(&[&[2, 0], &[0, 2]]).unwrap();
        let y = IntegerLattice::from_int_gram(&[&[1, 0], &[0, 4]]).unwrap();
        assert_eq!(lattice_isometry(&y, &x, IsometryOptions::default()).unwrap(), None);
    }

    #[test]
    fn budget_is_enforced() {
        let (l1, l2) = (icosian_lattice(), e8_standard_basis());
        let r = lattice_isometry(&l1, &l2, IsometryOptions { node_budget: 3 });
        assert!(matches!(r, Err(Error::SearchBudgetExceeded(3))));
    }
}
