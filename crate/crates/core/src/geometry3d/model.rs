use serde::Serialize;

use super::Vector3G;
use crate::numberfield::{rat, GoldenRational};

/// Vertices, edges, faces, edge midpoints and face centers of the
/// icosahedron with vertices at the cyclic permutations of (0, ±1, ±Φ).
#[derive(Clone, Debug, Serialize)]
pub struct IcosahedronModel {
    pub vertices: Vec<Vector3G>,
    pub edges: Vec<(usize, usize)>,
    pub faces: Vec<(usize, usize, usize)>,
    pub edge_midpoints: Vec<Vector3G>,
    pub face_centers: Vec<Vector3G>,
}

impl IcosahedronModel {
    pub fn vertex_index(&self, v: &Vector3G) -> Option<usize> {
        self.vertices.iter().position(|w| w == v)
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }
}

pub fn icosahedron_model() -> IcosahedronModel {
    let mut vertices = Vec::new();
    for s1 in [1, -1] {
        for s2 in [1, -1] {
            let base = [GoldenRational::zero(), GoldenRational::from_int(s1), GoldenRational::phi().scale(&rat(s2, 1))];
            for shift in 0..3 {
                vertices.push(Vector3G(std::array::from_fn(|i| base[(i + 3 - shift) % 3].clone())));
            }
        }
    }
    let n = vertices.len();
    let dist = |a: usize, b: usize| (&vertices[a] - &vertices[b]).norm2();
    let min = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .map(|(a, b)| dist(a, b))
        .min()
        .expect("nonempty");
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .filter(|&(a, b)| dist(a, b) == min)
        .collect();
    let adj = |a: usize, b: usize| edges.contains(&(a.min(b), a.max(b)));
    let mut faces = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if adj(a, b) && adj(b, c) && adj(a, c) {
                    faces.push((a, b, c));
                }
            }
        }
    }
    let half = GoldenRational::from_ints(1, 0, 2);
    let third = GoldenRational::from_ints(1, 0, 3);
    let edge_midpoints = edges.iter().map(|&(a, b)| (&vertices[a] + &vertices[b]).scale(&half)).collect();
    let face_centers = faces
        .iter()
        .map(|&(a, b, c)| (&(&vertices[a] + &vertices[b]) + &vertices[c]).scale(&third))
        .collect();
    IcosahedronModel {
        vertices,
        edges,
        faces,
        edge_midpoints,
        face_centers,
    }
}
