//! The 600-cell on the 120 elements of Γ.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry3d::icosahedron_model;
use crate::groupkit::FiniteGroupTable;
use crate::icosian::{GammaGroup, GoldenQuaternion};
use crate::numberfield::GoldenRational;

/// Vertices, edges, triangles and tetrahedra as sorted index tuples.
#[derive(Clone, Debug, Serialize)]
pub struct CellComplex600 {
    pub vertices: Vec<usize>,
    pub edges: Vec<[usize; 2]>,
    pub triangles: Vec<[usize; 3]>,
    pub tetrahedra: Vec<[usize; 4]>,
    /// Inner product of adjacent vertices.
    #[serde(skip)]
    pub min_dot: GoldenRational,
    #[serde(skip)]
    pub adjacency: Vec<BTreeSet<usize>>,
}

impl CellComplex600 {
    pub fn counts(&self) -> [usize; 4] {
        [self.vertices.len(), self.edges.len(), self.triangles.len(), self.tetrahedra.len()]
    }

    pub fn euler_characteristic(&self) -> i64 {
        let [v, e, t, c] = self.counts().map(|x| x as i64);
        v - e + t - c
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(BTreeSet::len).collect()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].contains(&b)
    }

    /// Triangles and tetrahedra containing each edge, in edge order.
    pub fn edge_incidences(&self) -> Vec<(usize, usize)> {
        self.edges
            .par_iter()
            .map(|&[a, b]| {
                let t = self.triangles.iter().filter(|f| f.contains(&a) && f.contains(&b)).count();
                let c = self.tetrahedra.iter().filter(|f| f.contains(&a) && f.contains(&b)).count();
                (t, c)
            })
            .collect()
    }

    /// Every triangle is a clique and every face of a tetrahedron is listed.
    pub fn is_consistent(&self) -> bool {
        let tris: BTreeSet<[usize; 3]> = self.triangles.iter().copied().collect();
        self.triangles.iter().all(|&[a, b, c]| self.has_edge(a, b) && self.has_edge(a, c) && self.has_edge(b, c))
            && self.tetrahedra.iter().all(|&[a, b, c, d]| {
                [[a, b, c], [a, b, d], [a, c, d], [b, c, d]].iter().all(|f| tris.contains(f))
            })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }
}

/// Builds the complex from exact inner products `Re(p·q̄)`; edges join
/// pairs at the largest value below 1.
pub fn cell_complex(gamma: &GammaGroup) -> Result<CellComplex600> {
    complex_on(gamma.elements())
}

/// Same construction on any list of unit quaternions, in the given order.
pub fn complex_on(els: &[GoldenQuaternion]) -> Result<CellComplex600> {
    let n = els.len();
    let one = GoldenRational::one();
    let dots: Vec<Vec<GoldenRational>> = els.par_iter().map(|p| els.iter().map(|q| p.re_inner(q)).collect()).collect();
    let min_dot = dots
        .iter()
        .flatten()
        .filter(|d| **d < one)
        .max()
        .cloned()
        .ok_or_else(|| Error::consistency("no pair of distinct vertices"))?;
    let adjacency: Vec<BTreeSet<usize>> = (0..n).map(|i| (0..n).filter(|&j| dots[i][j] == min_dot).collect()).collect();
    let edges: Vec<[usize; 2]> = (0..n).flat_map(|i| adjacency[i].range(i + 1..).map(move |&j| [i, j])).collect();
    let per_root: Vec<(Vec<[usize; 3]>, Vec<[usize; 4]>)> = (0..n)
        .into_par_iter()
        .map(|a| {
            let mut tris = Vec::new();
            let mut tets = Vec::new();
            for &b in adjacency[a].range(a + 1..) {
                let common: Vec<usize> = adjacency[a].intersection(&adjacency[b]).copied().filter(|&c| c > b).collect();
                for (k, &c) in common.iter().enumerate() {
                    tris.push([a, b, c]);
                    for &d in &common[k + 1..] {
                        if adjacency[c].contains(&d) {
                            tets.push([a, b, c, d]);
                        }
                    }
                }
            }
            (tris, tets)
        })
        .collect();
    let (triangles, tetrahedra) = per_root.into_iter().fold((Vec::new(), Vec::new()), |(mut t, mut c), (a, b)| {
        t.extend(a);
        c.extend(b);
        (t, c)
    });
    Ok(CellComplex600 { vertices: (0..n).collect(), edges, triangles, tetrahedra, min_dot, adjacency })
}

/// Neighbors of a vertex and the comparison of their shape with the
/// icosahedron.
#[derive(Clone, Debug)]
pub struct VertexFigure {
    pub vertex: usize,
    pub neighbors: Vec<usize>,
    /// Sorted `⟨u_i, u_j⟩/⟨u_i, u_i⟩` over pairs `i < j`, where `u_i` is the
    /// component of the i-th neighbor orthogonal to the vertex.
    pub ratios: Vec<GoldenRational>,
    pub icosahedron_ratios: Vec<GoldenRational>,
    /// Whether every map `x ↦ (v·g·v̄)·x·ḡ` permutes the neighbor set.
    pub stabilizer_permutes: bool,
    /// Elements `g` with `g·v = v`.
    pub left_stabilizer: Vec<usize>,
}

impl VertexFigure {
    pub fn matches_icosahedron(&self) -> bool {
        self.ratios == self.icosahedron_ratios
    }
}

fn normalized_gram_multiset<T>(pts: &[T], dot: impl Fn(&T, &T) -> GoldenRational) -> Result<Vec<GoldenRational>> {
    let norm = dot(&pts[0], &pts[0]);
    if pts.iter().any(|p| dot(p, p) != norm) || norm.is_zero() {
        return Err(Error::consistency("points are not on a common sphere"));
    }
    let inv = norm.inv()?;
    let mut out = Vec::new();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            out.push(&dot(&pts[i], &pts[j]) * &inv);
        }
    }
    out.sort();
    Ok(out)
}

/// `table` is the multiplication table of `gamma` in the same element order.
pub fn vertex_figure(c: &CellComplex600, gamma: &GammaGroup, table: &FiniteGroupTable, v: usize) -> Result<VertexFigure> {
    if table.order != gamma.order() {
        return Err(Error::Domain("multiplication table does not match Γ".into()));
    }
    let neighbors: Vec<usize> = c.adjacency.get(v).ok_or_else(|| Error::Domain(format!("no vertex {v}")))?.iter().copied().collect();
    if neighbors.len() != 12 {
        return Err(Error::consistency(format!("vertex {v} has {} neighbors", neighbors.len())));
    }
    let p = gamma.get(v);
    let projected: Vec<GoldenQuaternion> = neighbors
        .iter()
        .map(|&n| {
            let q = gamma.get(n);
            q - &p.scale(&q.re_inner(p))
        })
        .collect();
    let ratios = normalized_gram_multiset(&projected, |a, b| a.re_inner(b))?;
    let model = icosahedron_model();
    let icosahedron_ratios = normalized_gram_multiset(&model.vertices, |a, b| a.dot(b))?;
    let nset: BTreeSet<usize> = neighbors.iter().copied().collect();
    let m = &table.mul;
    let vbar = table.inv[v];
    let stabilizer_permutes = (0..table.order).all(|g| {
        let left = m[m[v][g]][vbar];
        let gbar = table.inv[g];
        let act = |x: usize| m[m[left][x]][gbar];
        act(v) == v && neighbors.iter().map(|&n| act(n)).collect::<BTreeSet<_>>() == nset
    });
    let left_stabilizer = (0..table.order).filter(|&g| m[g][v] == v).collect();
    Ok(VertexFigure { vertex: v, neighbors, ratios, icosahedron_ratios, stabilizer_permutes, left_stabilizer })
}

/// Size of the orbit of `v` under left multiplication.
pub fn left_orbit_size(gamma: &GammaGroup, v: usize) -> usize {
    let p = gamma.get(v);
    gamma.elements().iter().filter_map(|g| gamma.index_of(&(g * p))).collect::<BTreeSet<_>>().len()
}
