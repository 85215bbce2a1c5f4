use std::collections::{BTreeSet, HashSet};

use num_traits::{One, Zero};
use serde::Serialize;

use super::{quadratic_form, short_vectors, IntegerLattice};
use crate::error::{Error, Result};
use crate::linalg::{self, QMatrix};
use crate::numberfield::{rat_int, Rational};

/// Undirected simple graph on `0..nodes`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DynkinGraph {
    pub nodes: usize,
    pub edges: BTreeSet<(usize, usize)>,
}

impl DynkinGraph {
    pub fn new(nodes: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let edges = edges
            .into_iter()
            .filter(|(a, b)| a != b)
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        DynkinGraph { nodes, edges }
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors(v).len()
    }

    pub fn is_connected(&self) -> bool {
        if self.nodes == 0 {
            return true;
        }
        let mut seen = vec![false; self.nodes];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for w in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// For a tree with a single branch node, the lengths of the three legs
    /// counted in nodes including the branch node, sorted descending.
    pub fn leg_lengths(&self) -> Option<Vec<usize>> {
        if self.edges.len() + 1 != self.nodes || !self.is_connected() {
            return None;
        }
        let branches: Vec<usize> = (0..self.nodes).filter(|&v| self.degree(v) >= 3).collect();
        let [b] = branches[..] else { return None };
        let mut legs = Vec::new();
        for start in self.neighbors(b) {
            let (mut prev, mut cur, mut len) = (b, start, 2);
            loop {
                let next: Vec<usize> = self.neighbors(cur).into_iter().filter(|&w| w != prev).collect();
                match next[..] {
                    [] => break,
                    [w] => {
                        prev = cur;
                        cur = w;
                        len += 1;
                    }
                    _ => return None,
                }
            }
            legs.push(len);
        }
        legs.sort_unstable_by(|a, b| b.cmp(a));
        Some(legs)
    }

    pub fn to_dot(&self, name: &str, labels: &[String]) -> String {
        let mut s = format!("graph {name} {{\n");
        for v in 0..self.nodes {
            let label = labels.get(v).cloned().unwrap_or_else(|| v.to_string());
            s.push_str(&format!("  n{v} [label=\"{label}\"];\n"));
        }
        for (a, b) in &self.edges {
            s.push_str(&format!("  n{a} -- n{b};\n"));
        }
        s.push_str("}\n");
        s
    }
}

/// The E8 diagram: a path of seven nodes `0 – … – 6` with node 7 attached
/// to node 4, so the legs have 5, 3 and 2 nodes.
pub fn e8_diagram() -> DynkinGraph {
    DynkinGraph::new(8, (0..6).map(|i| (i, i + 1)).chain([(4, 7)]))
}

/// Backtracking search for an isomorphism onto [`e8_diagram`].
pub fn graph_iso_e8(g: &DynkinGraph) -> Option<Vec<usize>> {
    graph_isomorphism(g, &e8_diagram())
}

/// A bijection `m` with `g` edge `(a, b)` iff `h` edge `(m[a], m[b])`.
pub fn graph_isomorphism(g: &DynkinGraph, h: &DynkinGraph) -> Option<Vec<usize>> {
    if g.nodes != h.nodes || g.edges.len() != h.edges.len() {
        return None;
    }
    let mut dg: Vec<usize> = (0..g.nodes).map(|v| g.degree(v)).collect();
    let mut dh: Vec<usize> = (0..h.nodes).map(|v| h.degree(v)).collect();
    let (deg_g, deg_h) = (dg.clone(), dh.clone());
    dg.sort_unstable();
    dh.sort_unstable();
    if dg != dh {
        return None;
    }
    fn extend(g: &DynkinGraph, h: &DynkinGraph, dg: &[usize], dh: &[usize], m: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let v = m.len();
        if v == g.nodes {
            return true;
        }
        for w in 0..h.nodes {
            if used[w] || dg[v] != dh[w] {
                continue;
            }
            if (0..v).all(|u| g.has_edge(u, v) == h.has_edge(m[u], w)) {
                m.push(w);
                used[w] = true;
                if extend(g, h, dg, dh, m, used) {
                    return true;
                }
                used[w] = false;
                m.pop();
            }
        }
        false
    }
    let mut m = Vec::with_capacity(g.nodes);
    let mut used = vec![false; h.nodes];
    extend(g, h, &deg_g, &deg_h, &mut m, &mut used).then_some(m)
}

/// Roots, a positive system, its simple roots and their diagram.
#[derive(Clone, Debug)]
pub struct RootSystem {
    pub roots: Vec<Vec<i64>>,
    pub positive: Vec<Vec<i64>>,
    pub simple: Vec<Vec<i64>>,
    pub cartan: QMatrix,
    pub graph: DynkinGraph,
}

fn lex_positive(x: &[i64], reversed: bool) -> bool {
    let first = if reversed {
        x.iter().rev().find(|&&v| v != 0)
    } else {
        x.iter().find(|&&v| v != 0)
    };
    first.is_some_and(|&v| v > 0)
}

fn rank_of(rows: &[Vec<i64>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let q: QMatrix = rows.iter().map(|r| r.iter().map(|&v| rat_int(v)).collect()).collect();
    let cols = rows[0].len();
    cols - linalg::nullspace(&q).len()
}

fn decompose(rows: &[Vec<i64>], target: &[i64]) -> Option<Vec<Rational>> {
    let q: QMatrix = rows.iter().map(|r| r.iter().map(|&v| rat_int(v)).collect()).collect();
    let t: Vec<Rational> = target.iter().map(|&v| rat_int(v)).collect();
    linalg::solve_left(&q, &t)
}

/// Norm-2 vectors of an even lattice with minimum 2, split by a lexicographic
/// functional on coefficients; simple roots are the positive roots that are
/// not a sum of two positive roots.
pub fn root_basis_and_diagram(l: &IntegerLattice) -> Result<RootSystem> {
    let report = super::even_unimodular_check(l.gram())?;
    if !report.even {
        return Err(Error::NoRootSystem("lattice is not even".into()));
    }
    let two = rat_int(2);
    let roots = short_vectors(l, &two);
    if roots.is_empty() {
        return Err(Error::NoRootSystem("no vectors of norm 2".into()));
    }
    let span = rank_of(&roots);
    for reversed in [false, true] {
        let positive: Vec<Vec<i64>> = roots.iter().filter(|x| lex_positive(x, reversed)).cloned().collect();
        let pos_set: HashSet<&Vec<i64>> = positive.iter().collect();
        let mut decomposable: HashSet<Vec<i64>> = HashSet::new();
        for (i, a) in positive.iter().enumerate() {
            for b in &positive[i..] {
                let s: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                if pos_set.contains(&s) {
                    decomposable.insert(s);
                }
            }
        }
        let simple: Vec<Vec<i64>> = positive.iter().filter(|r| !decomposable.contains(*r)).cloned().collect();
        if simple.len() != span {
            continue;
        }
        let gram = l.gram();
        let coeff = |x: &[i64]| x.iter().map(|&v| rat_int(v)).collect::<Vec<_>>();
        let cartan: QMatrix = simple
            .iter()
            .map(|a| simple.iter().map(|b| linalg::bilinear(&coeff(a), gram, &coeff(b))).collect())
            .collect();
        let mut edges = Vec::new();
        for i in 0..simple.len() {
            if cartan[i][i] != two {
                return Err(Error::consistency("simple root of norm other than 2"));
            }
            for j in 0..i {
                let c = &cartan[i][j];
                if c == &-Rational::one() {
                    edges.push((j, i));
                } else if !c.is_zero() {
                    return Err(Error::consistency(format!("simple roots pair to {c}")));
                }
            }
        }
        if simple.len() == l.rank() {
            for r in &positive {
                let c = decompose(&simple, r).ok_or_else(|| Error::consistency("simple roots are dependent"))?;
                if c.iter().any(|v| !v.is_integer() || v < &Rational::zero()) {
                    return Err(Error::consistency("positive root outside the simple cone"));
                }
            }
        }
        debug_assert!(roots.iter().all(|x| quadratic_form(l, x) == two));
        return Ok(RootSystem {
            graph: DynkinGraph::new(simple.len(), edges),
            roots,
            positive,
            simple,
            cartan,
        });
    }
    Err(Error::DegenerateFunctional { found: 0, rank: span })
}
