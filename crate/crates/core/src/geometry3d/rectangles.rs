use super::{IcosahedronModel, RotationGroup, Vector3G};
use crate::error::{Error, Result};
use crate::numberfield::GoldenRational;

/// Four vertices `{v, w, −v, −w}` forming a planar golden rectangle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rectangle {
    /// Sorted vertex indices.
    pub vertices: [usize; 4],
    /// Normal of the rectangle's plane (through the origin).
    pub normal: Vector3G,
}

/// Rectangles with sides of squared length 4 and 4Φ², the short sides being
/// icosahedron edges.
pub fn golden_rectangles(model: &IcosahedronModel) -> Vec<Rectangle> {
    let four = GoldenRational::from_int(4);
    let long = &four * &GoldenRational::phi().pow(2);
    let vs = &model.vertices;
    let mut out: Vec<Rectangle> = Vec::new();
    for a in 0..vs.len() {
        for b in 0..vs.len() {
            let (Some(na), Some(nb)) = (model.vertex_index(&-&vs[a]), model.vertex_index(&-&vs[b])) else {
                continue;
            };
            if b == a || b == na {
                continue;
            }
            let short_side = (&vs[a] - &vs[b]).norm2();
            let long_side = (&vs[a] - &vs[nb]).norm2();
            if short_side != four || long_side != long {
                continue;
            }
            let mut quad = [a, b, na, nb];
            quad.sort_unstable();
            if out.iter().any(|r| r.vertices == quad) {
                continue;
            }
            out.push(Rectangle {
                vertices: quad,
                normal: vs[a].cross(&vs[b]),
            });
        }
    }
    out
}

/// Triples of pairwise orthogonal golden rectangles covering all twelve
/// vertices, as sorted index triples into `rects`.
pub fn rectangle_partitions(rects: &[Rectangle]) -> Vec<[usize; 3]> {
    let orth = |i: usize, j: usize| rects[i].normal.dot(&rects[j].normal).is_zero();
    let disjoint = |i: usize, j: usize| rects[i].vertices.iter().all(|v| !rects[j].vertices.contains(v));
    let mut out = Vec::new();
    for a in 0..rects.len() {
        for b in a + 1..rects.len() {
            if !(orth(a, b) && disjoint(a, b)) {
                continue;
            }
            for c in b + 1..rects.len() {
                if orth(a, c) && orth(b, c) && disjoint(a, c) && disjoint(b, c) {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

/// For each rotation (in group order), the permutation it induces on the
/// five rectangle partitions.
pub fn rectangle_triples_action(group: &RotationGroup, model: &IcosahedronModel) -> Result<Vec<[usize; 5]>> {
    let rects = golden_rectangles(model);
    let parts = rectangle_partitions(&rects);
    if parts.len() != 5 {
        return Err(Error::consistency(format!("found {} golden-rectangle triples", parts.len())));
    }
    let vertex_sets: Vec<Vec<[usize; 4]>> = parts
        .iter()
        .map(|p| {
            let mut v: Vec<[usize; 4]> = p.iter().map(|&r| rects[r].vertices).collect();
            v.sort_unstable();
            v
        })
        .collect();
    let mut perms = Vec::with_capacity(group.order());
    for vp in &group.vertex_perms {
        let mut perm = [usize::MAX; 5];
        for (i, set) in vertex_sets.iter().enumerate() {
            let mut img: Vec<[usize; 4]> = set
                .iter()
                .map(|quad| {
                    let mut q = quad.map(|v| vp[v]);
                    q.sort_unstable();
                    q
                })
                .collect();
            img.sort_unstable();
            perm[i] = vertex_sets
                .iter()
                .position(|s| *s == img)
                .ok_or_else(|| Error::consistency("rotation does not permute the rectangle triples"))?;
        }
        perms.push(perm);
    }
    Ok(perms)
}

/// Parity of a permutation: `true` when even.
pub fn is_even_permutation(p: &[usize]) -> bool {
    let inversions = (0..p.len())
        .flat_map(|i| (i + 1..p.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| p[i] > p[j])
        .count();
    inversions % 2 == 0
}
