use std::collections::HashMap;

use super::{mat3_apply, mat3_identity, mat3_mul, mat3_transpose, IcosahedronModel, Mat3G, Vector3G};
use crate::error::{Error, Result};
use crate::icosian::{GammaGroup, GoldenQuaternion};
use crate::numberfield::GoldenRational;

/// Matrix of `x ↦ q·x·q⁻¹` on the pure quaternions, in the basis (i, j, k).
pub fn rotation_from_quaternion(q: &GoldenQuaternion) -> Result<Mat3G> {
    let inv = q
        .unit_inverse()
        .ok_or_else(|| Error::Domain(format!("{q} is not a unit quaternion")))?;
    let cols: [[GoldenRational; 3]; 3] = [GoldenQuaternion::i(), GoldenQuaternion::j(), GoldenQuaternion::k()].map(|e| {
        let img = &(q * &e) * &inv;
        let [_, x, y, z] = img.0;
        [x, y, z]
    });
    Ok(std::array::from_fn(|r| std::array::from_fn(|c| cols[c][r].clone())))
}

/// Orthogonal change of frame `(x, y, z) ↦ (x, −z, y)`. It carries the
/// model icosahedron onto the one whose vertices are the cyclic permutations
/// of (0, ±Φ, ±1), which is the icosahedron Γ actually preserves; conjugating
/// by it expresses Γ's rotations in the model's coordinates.
pub fn gamma_frame() -> Mat3G {
    let z = GoldenRational::zero;
    let one = GoldenRational::one;
    [[one(), z(), z()], [z(), z(), -one()], [z(), one(), z()]]
}

/// The image of Γ in SO(3), written in the model's frame.
#[derive(Clone, Debug)]
pub struct RotationGroup {
    /// 60 distinct rotations, in order of first appearance along Γ.
    pub matrices: Vec<Mat3G>,
    /// For each element of Γ, the index of its rotation.
    pub cover: Vec<usize>,
    /// Elements of Γ acting trivially.
    pub kernel: Vec<usize>,
    /// For each rotation, the induced permutation of the model's vertices.
    pub vertex_perms: Vec<Vec<usize>>,
}

impl RotationGroup {
    pub fn order(&self) -> usize {
        self.matrices.len()
    }

    pub fn identity_index(&self) -> usize {
        let id = mat3_identity();
        self.matrices.iter().position(|m| *m == id).expect("identity present")
    }
}

pub fn rotation_group(gamma: &GammaGroup, model: &IcosahedronModel) -> Result<RotationGroup> {
    let f = gamma_frame();
    let ft = mat3_transpose(&f);
    let mut matrices: Vec<Mat3G> = Vec::new();
    let mut seen: HashMap<Mat3G, usize> = HashMap::new();
    let mut cover = Vec::with_capacity(gamma.order());
    for q in gamma.elements() {
        let m = mat3_mul(&ft, &mat3_mul(&rotation_from_quaternion(q)?, &f));
        let idx = *seen.entry(m.clone()).or_insert_with(|| {
            matrices.push(m);
            matrices.len() - 1
        });
        cover.push(idx);
    }
    if matrices.len() != 60 {
        return Err(Error::consistency(format!("Γ has {} distinct rotations", matrices.len())));
    }
    let id = mat3_identity();
    let kernel: Vec<usize> = (0..gamma.order()).filter(|&g| matrices[cover[g]] == id).collect();
    let mut vertex_perms = Vec::with_capacity(60);
    for m in &matrices {
        let perm: Option<Vec<usize>> = model.vertices.iter().map(|v| model.vertex_index(&mat3_apply(m, v))).collect();
        match perm {
            Some(p) => vertex_perms.push(p),
            None => return Err(Error::consistency("a rotation of Γ moves the icosahedron off itself")),
        }
    }
    Ok(RotationGroup {
        matrices,
        cover,
        kernel,
        vertex_perms,
    })
}

/// Applies each matrix of the group to a vector; exposed for callers that
/// work with edge midpoints or face centers.
pub fn orbit(group: &RotationGroup, v: &Vector3G) -> Vec<Vector3G> {
    let mut out: Vec<Vector3G> = Vec::new();
    for m in &group.matrices {
        let w = mat3_apply(m, v);
        if !out.contains(&w) {
            out.push(w);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry3d::{icosahedron_model, mat3_det};
    use crate::icosian::gamma_enumerate;

    fn diag(a: i64, b: i64, c: i64) -> Mat3G {
        let d = [a, b, c];
        std::array::from_fn(|i| std::array::from_fn(|j| GoldenRational::from_int(if i == j { d[i] } else { 0 })))
    }

    #[test]
    fn basic_rotations() {
        assert_eq!(rotation_from_quaternion(&GoldenQuaternion::one()).unwrap(), mat3_identity());
        assert_eq!(rotation_from_quaternion(&GoldenQuaternion::i()).unwrap(), diag(1, -1, -1));
        let q = GoldenQuaternion::new(
            GoldenRational::from_ints(1, 0, 2),
            GoldenRational::from_ints(1, 0, 2),
            GoldenRational::from_ints(1, 0, 2),
            GoldenRational::from_ints(1, 0, 2),
        );
        assert_eq!(rotation_from_quaternion(&q).unwrap(), rotation_from_quaternion(&-&q).unwrap());
        let two = GoldenQuaternion::from_real(GoldenRational::from_int(2));
        assert!(matches!(rotation_from_quaternion(&two), Err(Error::Domain(_))));
    }

    #[test]
    fn homomorphism_over_gamma() {
        let g = gamma_enumerate().unwrap();
        let rs: Vec<Mat3G> = g.elements().iter().map(|q| rotation_from_quaternion(q).unwrap()).collect();
        for (a, p) in g.elements().iter().enumerate() {
            for (b, q) in g.elements().iter().enumerate() {
                let c = g.index_of(&(p * q)).unwrap();
                assert_eq!(rs[c], mat3_mul(&rs[a], &rs[b]));
            }
        }
    }

    #[test]
    fn group_of_sixty() {
        let g = gamma_enumerate().unwrap();
        let model = icosahedron_model();
        let rg = rotation_group(&g, &model).unwrap();
        assert_eq!(rg.order(), 60);
        assert_eq!(rg.kernel.len(), 2);
        let one = GoldenRational::one();
        for m in &rg.matrices {
            assert_eq!(mat3_mul(&mat3_transpose(m), m), mat3_identity());
            assert_eq!(mat3_det(m), one);
        }
        assert_eq!(orbit(&rg, &model.vertices[0]).len(), 12);
        assert_eq!(orbit(&rg, &model.edge_midpoints[0]).len(), 30);
        assert_eq!(orbit(&rg, &model.face_centers[0]).len(), 20);
    }

    #[test]
    fn unconjugated_image_preserves_the_other_icosahedron() {
        let g = gamma_enumerate().unwrap();
        let model = icosahedron_model();
        let f = gamma_frame();
        let moved: Vec<Vector3G> = model.vertices.iter().map(|v| mat3_apply(&f, v)).collect();
        for q in g.elements() {
            let r = rotation_from_quaternion(q).unwrap();
            assert!(moved.iter().all(|v| moved.contains(&mat3_apply(&r, v))));
        }
        let raw_fixes_model = g.elements().iter().all(|q| {
            let r = rotation_from_quaternion(q).unwrap();
            model.vertices.iter().all(|v| model.vertex_index(&mat3_apply(&r, v)).is_some())
        });
        assert!(!raw_fixes_model);
    }
}
