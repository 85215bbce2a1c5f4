//! Finite-group computations on a multiplication table.

mod character;
mod mckay;

pub use character::{character_table, defining_character, CharacterTable, CharacterTableOptions, ConjugacyClass};
pub use mckay::{mckay_graph, McKayGraph};

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::icosian::GammaGroup;

/// Cayley table of a finite group with elements `0..order`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteGroupTable {
    pub order: usize,
    pub mul: Vec<Vec<usize>>,
    pub inv: Vec<usize>,
    pub identity: usize,
}

impl FiniteGroupTable {
    /// Builds and validates a table from raw products.
    pub fn from_mul(mul: Vec<Vec<usize>>) -> Result<Self> {
        let order = mul.len();
        if order == 0 || mul.iter().any(|r| r.len() != order || r.iter().any(|&x| x >= order)) {
            return Err(Error::consistency("table is not square over its index set"));
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|g| mul[e][g] == g && mul[g][e] == g))
            .ok_or_else(|| Error::consistency("no identity element"))?;
        let inv: Vec<usize> = (0..order)
            .map(|g| (0..order).find(|&h| mul[g][h] == identity))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::consistency("element without inverse"))?;
        let t = FiniteGroupTable { order, mul, inv, identity };
        t.check_latin()?;
        Ok(t)
    }

    pub fn check_latin(&self) -> Result<()> {
        let n = self.order;
        for g in 0..n {
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            for h in 0..n {
                row[self.mul[g][h]] = true;
                col[self.mul[h][g]] = true;
            }
            if !(row.iter().all(|&b| b) && col.iter().all(|&b| b)) {
                return Err(Error::consistency(format!("row or column {g} is not a permutation")));
            }
            if self.mul[g][self.inv[g]] != self.identity || self.mul[self.inv[g]][g] != self.identity {
                return Err(Error::consistency(format!("inverse of {g} is inconsistent")));
            }
        }
        Ok(())
    }

    /// Associativity over every triple.
    pub fn check_associativity(&self) -> Result<()> {
        let n = self.order;
        let bad = (0..n).into_par_iter().find_any(|&a| {
            (0..n).any(|b| {
                let ab = self.mul[a][b];
                (0..n).any(|c| self.mul[ab][c] != self.mul[a][self.mul[b][c]])
            })
        });
        match bad {
            Some(a) => Err(Error::consistency(format!("associativity fails at {a}"))),
            None => Ok(()),
        }
    }

    pub fn op(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn pow(&self, g: usize, n: u32) -> usize {
        (0..n).fold(self.identity, |acc, _| self.mul[acc][g])
    }

    pub fn element_order(&self, g: usize) -> u32 {
        let mut x = g;
        let mut k = 1;
        while x != self.identity {
            x = self.mul[x][g];
            k += 1;
        }
        k
    }

    pub fn conjugate(&self, g: usize, by: usize) -> usize {
        self.mul[self.mul[by][g]][self.inv[by]]
    }

    /// Subgroup generated by `gens`, as a sorted index set.
    pub fn generated(&self, gens: &[usize]) -> BTreeSet<usize> {
        let mut seen = BTreeSet::from([self.identity]);
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul[x][g];
                if seen.insert(y) {
                    frontier.push(y);
                }
            }
        }
        seen
    }

    /// Table of `G/N` for a normal subgroup `N`, with cosets numbered by
    /// smallest representative; also returns the projection.
    pub fn quotient(&self, normal: &BTreeSet<usize>) -> Result<(FiniteGroupTable, Vec<usize>)> {
        let mut proj = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for g in 0..self.order {
            if proj[g] != usize::MAX {
                continue;
            }
            for &n in normal {
                proj[self.mul[g][n]] = reps.len();
            }
            reps.push(g);
        }
        let mul: Vec<Vec<usize>> = reps
            .iter()
            .map(|&a| reps.iter().map(|&b| proj[self.mul[a][b]]).collect())
            .collect();
        for a in 0..self.order {
            for b in 0..self.order {
                if proj[self.mul[a][b]] != mul[proj[a]][proj[b]] {
                    return Err(Error::Domain("subgroup is not normal".into()));
                }
            }
        }
        Ok((FiniteGroupTable::from_mul(mul)?, proj))
    }
}

/// Multiplication table of Γ in its canonical element order.
pub fn build_cayley(gamma: &GammaGroup) -> Result<FiniteGroupTable> {
    let els = gamma.elements();
    let mul: Vec<Vec<usize>> = els
        .par_iter()
        .map(|p| {
            els.iter()
                .map(|q| {
                    gamma
                        .index_of(&(p * q))
                        .ok_or_else(|| Error::consistency(format!("product {p}·{q} leaves Γ")))
                })
                .collect::<Result<Vec<usize>>>()
        })
        .collect::<Result<_>>()?;
    FiniteGroupTable::from_mul(mul)
}

/// Conjugation orbits sorted by (size, smallest element).
pub fn conjugacy_classes(t: &FiniteGroupTable) -> Vec<Vec<usize>> {
    let mut assigned = vec![false; t.order];
    let mut classes = Vec::new();
    for g in 0..t.order {
        if assigned[g] {
            continue;
        }
        let orbit: BTreeSet<usize> = (0..t.order).map(|h| t.conjugate(g, h)).collect();
        for &x in &orbit {
            assigned[x] = true;
        }
        classes.push(orbit.into_iter().collect::<Vec<_>>());
    }
    classes.sort_by_key(|c| (c.len(), c[0]));
    classes
}

/// The center and the subgroup generated by all commutators.
pub fn center_and_commutator(t: &FiniteGroupTable) -> (BTreeSet<usize>, BTreeSet<usize>) {
    let center = (0..t.order)
        .filter(|&z| (0..t.order).all(|g| t.mul[z][g] == t.mul[g][z]))
        .collect();
    let comms: BTreeSet<usize> = (0..t.order)
        .flat_map(|a| (0..t.order).map(move |b| (a, b)))
        .map(|(a, b)| t.mul[t.mul[a][b]][t.mul[t.inv[a]][t.inv[b]]])
        .collect();
    let gens: Vec<usize> = comms.into_iter().collect();
    (center, t.generated(&gens))
}

/// A triple with `v⁵ = e² = f³ = v·e·f`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PresentationWitness {
    pub v: usize,
    pub e: usize,
    pub f: usize,
    /// The common value of the four words.
    pub z: usize,
}

/// The common value of `v⁵, e², f³, vef` when they agree, the value is
/// central and `v, e, f` generate the whole group.
pub fn check_presentation(t: &FiniteGroupTable, v: usize, e: usize, f: usize) -> Option<usize> {
    let z = t.pow(v, 5);
    let vef = t.mul[t.mul[v][e]][f];
    if t.pow(e, 2) != z || t.pow(f, 3) != z || vef != z {
        return None;
    }
    if (0..t.order).any(|g| t.mul[z][g] != t.mul[g][z]) {
        return None;
    }
    (t.generated(&[v, e, f]).len() == t.order).then_some(z)
}

/// Searches `v` of order 10 and `e` of order 4, with `f` forced by
/// `vef = v⁵`; then checks the relations hold with value 1 in the quotient
/// by the center.
pub fn presentation_witness(t: &FiniteGroupTable) -> Result<PresentationWitness> {
    let (center, _) = center_and_commutator(t);
    let (q, proj) = t.quotient(&center)?;
    for v in (0..t.order).filter(|&v| t.element_order(v) == 10) {
        let z = t.pow(v, 5);
        let vinv = t.inv[v];
        for e in (0..t.order).filter(|&e| t.element_order(e) == 4) {
            let f = t.mul[t.mul[t.inv[e]][vinv]][z];
            if t.element_order(f) != 6 {
                continue;
            }
            if check_presentation(t, v, e, f) != Some(z) {
                continue;
            }
            let (pv, pe, pf) = (proj[v], proj[e], proj[f]);
            let one = q.identity;
            let quotient_ok = q.pow(pv, 5) == one
                && q.pow(pe, 2) == one
                && q.pow(pf, 3) == one
                && q.mul[q.mul[pv][pe]][pf] == one;
            if quotient_ok {
                return Ok(PresentationWitness { v, e, f, z });
            }
        }
    }
    Err(Error::consistency("no presentation witness found"))
}
