use num_traits::{Signed, ToPrimitive, Zero};

use super::IntegerLattice;
use crate::linalg;
use crate::numberfield::{rat_int, rational_to_f64, Rational};

/// `xᵀ G x` for an integer coefficient vector.
pub fn quadratic_form(l: &IntegerLattice, x: &[i64]) -> Rational {
    let v: Vec<Rational> = x.iter().map(|&c| rat_int(c)).collect();
    linalg::bilinear(&v, l.gram(), &v)
}

/// Upper-triangular decomposition `Q(x) = Σ q_ii (x_i + Σ_{j>i} q_ij x_j)²`.
fn triangular_form(g: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = g.len();
    let mut q = g.to_vec();
    for i in 0..n {
        for j in i + 1..n {
            q[j][i] = q[i][j].clone();
            q[i][j] = &q[i][j] / &q[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                let t = &q[k][i] * &q[i][l];
                q[k][l] -= t;
            }
        }
    }
    q
}

struct Search<'a> {
    q: Vec<Vec<Rational>>,
    lattice: &'a IntegerLattice,
    bound: &'a Rational,
    x: Vec<i64>,
    out: Vec<Vec<i64>>,
}

impl Search<'_> {
    fn level(&mut self, i: usize, budget: Rational) {
        let n = self.x.len();
        let mut center = Rational::zero();
        for j in i + 1..n {
            if self.x[j] != 0 {
                center -= &self.q[i][j] * rat_int(self.x[j]);
            }
        }
        let radius2 = &budget / &self.q[i][i];
        // float window, widened by one on each side; membership is exact
        let c = rational_to_f64(&center);
        let s = rational_to_f64(&radius2).max(0.0).sqrt();
        let lo = (c - s).floor().to_i64().unwrap_or(i64::MIN / 2) - 1;
        let hi = (c + s).ceil().to_i64().unwrap_or(i64::MAX / 2) + 1;
        for xi in lo..=hi {
            let d = rat_int(xi) - &center;
            let used = &d * &d;
            if used > radius2 {
                continue;
            }
            self.x[i] = xi;
            let rest = &budget - &self.q[i][i] * used;
            if i == 0 {
                if self.x.iter().any(|&v| v != 0) && quadratic_form(self.lattice, &self.x) <= *self.bound {
                    self.out.push(self.x.clone());
                }
            } else {
                self.level(i - 1, rest);
            }
        }
        self.x[i] = 0;
    }
}

/// All nonzero coefficient vectors `x` with `xᵀ G x ≤ bound`, sorted by norm
/// and then lexicographically.
pub fn short_vectors(l: &IntegerLattice, bound: &Rational) -> Vec<Vec<i64>> {
    let n = l.rank();
    if n == 0 || bound.is_negative() {
        return Vec::new();
    }
    let mut s = Search {
        q: triangular_form(l.gram()),
        lattice: l,
        bound,
        x: vec![0; n],
        out: Vec::new(),
    };
    s.level(n - 1, bound.clone());
    let mut keyed: Vec<(Rational, Vec<i64>)> = s.out.into_iter().map(|x| (quadratic_form(l, &x), x)).collect();
    keyed.sort();
    keyed.into_iter().map(|(_, x)| x).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{e8_coordinate_membership, e8_standard_basis};
    use crate::numberfield::rat;
    use std::collections::HashSet;

    /// Every E8 vector of norm ≤ 4 from its coordinate description: all
    /// coordinates in [−2, 2], or all in {±½, ±3/2}.
    fn ambient_e8_vectors(max_norm: i64) -> HashSet<Vec<Rational>> {
        let mut out = HashSet::new();
        let mut rec = |vals: &[i64], den: i64| {
            let k = vals.len() as u32;
            for code in 0..k.pow(8) {
                let mut c = code;
                let v: Vec<Rational> = (0..8)
                    .map(|_| {
                        let r = rat(vals[(c % k) as usize], den);
                        c /= k;
                        r
                    })
                    .collect();
                let norm: Rational = v.iter().map(|x| x * x).sum();
                if !norm.is_zero() && norm <= rat_int(max_norm) && e8_coordinate_membership(&v) {
                    out.insert(v);
                }
            }
        };
        rec(&[-2, -1, 0, 1, 2], 1);
        rec(&[-3, -1, 1, 3], 2);
        out
    }

    #[test]
    fn e8_shells_match_coordinate_oracle() {
        let e8 = e8_standard_basis();
        let basis = e8.basis().unwrap();
        let found = short_vectors(&e8, &rat_int(4));
        let n2 = found.iter().filter(|x| quadratic_form(&e8, x) == rat_int(2)).count();
        assert_eq!(n2, 240);
        assert_eq!(found.len(), 240 + 2160);
        let ambient: HashSet<Vec<Rational>> = found
            .iter()
            .map(|x| {
                let c: Vec<Rational> = x.iter().map(|&v| rat_int(v)).collect();
                linalg::vec_mat(&c, basis)
            })
            .collect();
        assert_eq!(ambient, ambient_e8_vectors(4));
    }

    #[test]
    fn sorted_and_symmetric() {
        let e8 = e8_standard_basis();
        let found = short_vectors(&e8, &rat_int(2));
        let set: HashSet<&Vec<i64>> = found.iter().collect();
        for x in &found {
            let neg: Vec<i64> = x.iter().map(|v| -v).collect();
            assert!(set.contains(&neg));
        }
        let mut sorted = found.clone();
        sorted.sort();
        assert_eq!(sorted, found);
    }

    #[test]
    fn small_lattices() {
        let z2 = IntegerLattice::identity(2);
        assert_eq!(short_vectors(&z2, &rat_int(1)).len(), 4);
        assert_eq!(short_vectors(&z2, &rat_int(2)).len(), 8);
        assert!(short_vectors(&z2, &rat(1, 2)).is_empty());
        let a2 = IntegerLattice::from_int_gram(&[&[2, -1], &[-1, 2]]).unwrap();
        assert_eq!(short_vectors(&a2, &rat_int(2)).len(), 6);
    }
}
