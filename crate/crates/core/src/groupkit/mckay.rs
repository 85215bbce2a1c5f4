use serde::Serialize;

use super::CharacterTable;
use crate::error::{Error, Result};
use crate::lattice::DynkinGraph;
use crate::numberfield::{rat, GoldenRational};

/// Tensor-with-`V` multiplicities between irreducibles, nodes in character
/// table order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct McKayGraph {
    pub dims: Vec<u32>,
    pub adjacency: Vec<Vec<u32>>,
}

/// `a_ij = (1/|G|) Σ_c |c|·χ_V(c)·χ_i(c)·χ_j(c)`, computed exactly.
pub fn mckay_graph(ct: &CharacterTable, defining: &[GoldenRational]) -> Result<McKayGraph> {
    let n = ct.chars.len();
    if defining.len() != ct.classes.len() {
        return Err(Error::Domain("defining character has the wrong number of classes".into()));
    }
    let inv_order = rat(1, ct.order as i64);
    let mut adjacency = vec![vec![0u32; n]; n];
    for i in 0..n {
        for j in 0..n {
            let prod: Vec<GoldenRational> = (0..ct.classes.len())
                .map(|c| &(&defining[c] * &ct.chars[i][c]) * &ct.chars[j][c])
                .collect();
            let ones = vec![GoldenRational::one(); ct.classes.len()];
            let m = ct.inner(&prod, &ones).scale(&inv_order);
            let value = m
                .as_rational()
                .filter(|r| r.is_integer())
                .and_then(|r| u32::try_from(r.to_integer()).ok())
                .ok_or_else(|| Error::consistency(format!("multiplicity a[{i}][{j}] = {m} is not a natural number")))?;
            adjacency[i][j] = value;
        }
    }
    Ok(McKayGraph {
        dims: ct.dims.clone(),
        adjacency,
    })
}

impl McKayGraph {
    pub fn nodes(&self) -> usize {
        self.dims.len()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.nodes()).all(|i| (0..self.nodes()).all(|j| self.adjacency[i][j] == self.adjacency[j][i]))
    }

    /// `2·d_i = Σ_j a_ij·d_j` at every node.
    pub fn is_balanced(&self) -> bool {
        (0..self.nodes()).all(|i| {
            let s: u32 = (0..self.nodes()).map(|j| self.adjacency[i][j] * self.dims[j]).sum();
            s == 2 * self.dims[i]
        })
    }

    pub fn is_simple(&self) -> bool {
        (0..self.nodes()).all(|i| self.adjacency[i][i] == 0 && self.adjacency[i].iter().all(|&a| a <= 1))
    }

    /// Underlying simple graph with the listed nodes removed and the rest
    /// renumbered in order.
    pub fn dynkin_without(&self, removed: &[usize]) -> DynkinGraph {
        let keep: Vec<usize> = (0..self.nodes()).filter(|v| !removed.contains(v)).collect();
        let mut edges = Vec::new();
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate().skip(a + 1) {
                if self.adjacency[i][j] > 0 {
                    edges.push((a, b));
                }
            }
        }
        DynkinGraph::new(keep.len(), edges)
    }

    /// Affine E8 with its dimension labels: the chain 1–2–3–4–5–6–4–2 from the
    /// trivial node, with a 3 hanging off the 6.
    pub fn is_affine_e8(&self) -> bool {
        if self.nodes() != 9 || !self.is_simple() || !self.is_symmetric() {
            return false;
        }
        let g = self.dynkin_without(&[]);
        if g.edges.len() != 8 || !g.is_connected() {
            return false;
        }
        let Some(start) = self.dims.iter().position(|&d| d == 1) else {
            return false;
        };
        let mut chain = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        let mut branch = None;
        loop {
            let next: Vec<usize> = g.neighbors(cur).into_iter().filter(|&w| w != prev).collect();
            let step = match next.len() {
                0 => break,
                1 => next[0],
                2 => {
                    // continue along the longer side, remember the branch
                    let (leaf, on): (Vec<usize>, Vec<usize>) = next.iter().partition(|&&w| g.degree(w) == 1);
                    if leaf.len() != 1 || on.len() != 1 || branch.is_some() {
                        return false;
                    }
                    branch = Some((cur, leaf[0]));
                    on[0]
                }
                _ => return false,
            };
            prev = cur;
            cur = step;
            chain.push(cur);
        }
        let labels: Vec<u32> = chain.iter().map(|&v| self.dims[v]).collect();
        let Some((b, leaf)) = branch else { return false };
        labels == [1, 2, 3, 4, 5, 6, 4, 2] && self.dims[b] == 6 && self.dims[leaf] == 3
    }

    pub fn to_dot(&self) -> String {
        let labels: Vec<String> = self.dims.iter().map(u32::to_string).collect();
        let mut s = String::from("graph mckay {\n");
        for (v, l) in labels.iter().enumerate() {
            s.push_str(&format!("  n{v} [label=\"{l}\"];\n"));
        }
        for i in 0..self.nodes() {
            for j in i + 1..self.nodes() {
                for _ in 0..self.adjacency[i][j] {
                    s.push_str(&format!("  n{i} -- n{j};\n"));
                }
            }
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }
}
