use std::collections::{HashMap, HashSet};

use serde::Serialize;

use super::GoldenQuaternion;
use crate::error::{Error, Result};
use crate::numberfield::{rat, GoldenRational};

/// The binary icosahedral group: 120 unit quaternions in canonical order.
#[derive(Clone, Debug)]
pub struct GammaGroup {
    elements: Vec<GoldenQuaternion>,
    index: HashMap<GoldenQuaternion, usize>,
}

#[derive(Serialize)]
struct GammaJson<'a> {
    order: usize,
    elements: &'a [GoldenQuaternion],
}

impl GammaGroup {
    fn from_elements(mut elements: Vec<GoldenQuaternion>) -> Self {
        elements.sort_by_cached_key(GoldenQuaternion::sort_key);
        elements.dedup();
        let index = elements.iter().cloned().enumerate().map(|(i, q)| (q, i)).collect();
        GammaGroup { elements, index }
    }

    pub fn elements(&self) -> &[GoldenQuaternion] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn get(&self, i: usize) -> &GoldenQuaternion {
        &self.elements[i]
    }

    pub fn index_of(&self, q: &GoldenQuaternion) -> Option<usize> {
        self.index.get(q).copied()
    }

    pub fn identity_index(&self) -> usize {
        self.index[&GoldenQuaternion::one()]
    }

    pub fn minus_one_index(&self) -> usize {
        self.index[&-&GoldenQuaternion::one()]
    }

    pub fn contains(&self, q: &GoldenQuaternion) -> bool {
        self.index.contains_key(q)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(GammaJson {
            order: self.order(),
            elements: &self.elements,
        })
        .expect("serializable")
    }
}

fn even_permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    let distinct = (0..4).all(|i| (0..i).all(|j| p[i] != p[j]));
                    if !distinct {
                        continue;
                    }
                    let inversions = (0..4)
                        .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
                        .filter(|&(i, j)| p[i] > p[j])
                        .count();
                    if inversions % 2 == 0 {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

/// The three coordinate families of Γ: all sign choices of
/// (±½, ±½, ±½, ±½); even permutations of (±1, 0, 0, 0); even permutations
/// of ½(±Φ, ±1, ±1/Φ, 0).
pub fn paper_families() -> [Vec<GoldenQuaternion>; 3] {
    let half = GoldenRational::from_ints(1, 0, 2);
    let signs = |n: u32| (0..1u32 << n).map(move |m| (0..n).map(move |b| if m >> b & 1 == 1 { -1 } else { 1 }));

    let halves: Vec<GoldenQuaternion> = signs(4)
        .map(|s| {
            let s: Vec<i64> = s.collect();
            GoldenQuaternion(std::array::from_fn(|i| half.scale(&rat(s[i], 1))))
        })
        .collect();

    let perms = even_permutations4();
    let mut units = Vec::new();
    for sign in [1, -1] {
        let base = [GoldenRational::from_int(sign), GoldenRational::zero(), GoldenRational::zero(), GoldenRational::zero()];
        for p in &perms {
            let q = GoldenQuaternion(std::array::from_fn(|i| base[p[i]].clone()));
            if !units.contains(&q) {
                units.push(q);
            }
        }
    }

    let base = [
        GoldenRational::phi().scale(&rat(1, 2)),
        half.clone(),
        GoldenRational::phi_inv().scale(&rat(1, 2)),
        GoldenRational::zero(),
    ];
    let mut golden = Vec::new();
    for s in signs(3) {
        let s: Vec<i64> = s.collect();
        let signed: [GoldenRational; 4] =
            std::array::from_fn(|i| if i < 3 { base[i].scale(&rat(s[i], 1)) } else { base[3].clone() });
        for p in &perms {
            golden.push(GoldenQuaternion(std::array::from_fn(|i| signed[p[i]].clone())));
        }
    }
    [halves, units, golden]
}

/// Closure of `gens` under multiplication (a finite group, so inverses come
/// for free).
pub fn generate_closure(gens: &[GoldenQuaternion]) -> Vec<GoldenQuaternion> {
    let mut seen: HashSet<GoldenQuaternion> = HashSet::new();
    let mut frontier = vec![GoldenQuaternion::one()];
    seen.insert(GoldenQuaternion::one());
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = &x * g;
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen.into_iter().collect()
}

/// The generating pair used to cross-check the coordinate description.
pub fn closure_generators() -> [GoldenQuaternion; 2] {
    let half = GoldenRational::from_ints(1, 0, 2);
    [
        GoldenQuaternion([half.clone(), half.clone(), half.clone(), half.clone()]),
        GoldenQuaternion::new(
            GoldenRational::phi().scale(&rat(1, 2)),
            half,
            GoldenRational::phi_inv().scale(&rat(1, 2)),
            GoldenRational::zero(),
        ),
    ]
}

/// Builds Γ from its explicit coordinates and certifies it: 120 distinct
/// unit quaternions, exact closure over all 14 400 products, and set equality
/// with the subgroup generated by [`closure_generators`].
pub fn gamma_enumerate() -> Result<GammaGroup> {
    let families = paper_families();
    let all: Vec<GoldenQuaternion> = families.iter().flatten().cloned().collect();
    let group = GammaGroup::from_elements(all.clone());
    if group.order() != 120 || all.len() != 120 {
        return Err(Error::consistency(format!(
            "Γ has {} distinct elements from {} listed",
            group.order(),
            all.len()
        )));
    }
    if let Some(q) = group.elements.iter().find(|q| q.norm2() != GoldenRational::one()) {
        return Err(Error::consistency(format!("non-unit element {q}")));
    }
    for p in &group.elements {
        for q in &group.elements {
            if !group.contains(&(p * q)) {
                return Err(Error::consistency(format!("product {p}·{q} leaves Γ")));
            }
        }
    }
    let generated = generate_closure(&closure_generators());
    if generated.len() != 120 {
        return Err(Error::consistency(format!(
            "generating pair only reaches a subgroup of order {}",
            generated.len()
        )));
    }
    if !generated.iter().all(|q| group.contains(q)) {
        return Err(Error::consistency("generator closure differs from the coordinate list"));
    }
    Ok(group)
}
