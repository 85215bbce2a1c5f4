use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde_json::json;

use super::{GammaGroup, GoldenQuaternion};
use crate::error::{Error, Result};
use crate::linalg::{self, QMatrix};
use crate::numberfield::{format_rational, rational_to_f64, Rational};

/// A ℤ-basis of the icosian ring together with its Gram matrix under the
/// integral trace form `⟨p, q⟩ = τ(p·q̄ + q·p̄)`.
#[derive(Clone, Debug)]
pub struct IcosianBasis {
    pub basis: Vec<GoldenQuaternion>,
    pub gram: QMatrix,
}

impl IcosianBasis {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Basis rows in ℚ⁸ coordinates.
    pub fn q8_rows(&self) -> QMatrix {
        self.basis.iter().map(|q| q.to_q8().to_vec()).collect()
    }

    /// Gram matrix of the rational norm `τ(Re(p·q̄))` itself, which is half
    /// of [`IcosianBasis::gram`].
    pub fn half_gram(&self) -> QMatrix {
        gram_of(&self.basis, |p, q| p.re_inner(q).tau())
    }

    /// Expresses `q` in the basis; `None` when `q` lies outside the ℚ-span.
    pub fn coordinates(&self, q: &GoldenQuaternion) -> Option<Vec<Rational>> {
        linalg::solve_left(&self.q8_rows(), &q.to_q8())
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "rank": self.rank(),
            "gram": self.gram.iter().map(|r| r.iter().map(format_rational).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "quaternions": self.basis,
        })
    }
}

fn gram_of(
    basis: &[GoldenQuaternion],
    form: impl Fn(&GoldenQuaternion, &GoldenQuaternion) -> Rational,
) -> QMatrix {
    basis
        .iter()
        .map(|p| basis.iter().map(|q| form(p, q)).collect())
        .collect()
}

/// Reads each element of Γ as a vector in ℚ⁸, clears denominators, and
/// extracts a ℤ-basis of the span by Hermite reduction.
pub fn icosian_zbasis(gamma: &GammaGroup) -> Result<IcosianBasis> {
    let scale = gamma
        .elements()
        .iter()
        .flat_map(|q| q.to_q8())
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let rows: Vec<Vec<BigInt>> = gamma
        .elements()
        .iter()
        .map(|q| {
            q.to_q8()
                .iter()
                .map(|r| (r * Rational::from_integer(scale.clone())).to_integer())
                .collect()
        })
        .collect();
    let hnf = linalg::hermite_rows(&rows);
    if hnf.len() != 8 {
        return Err(Error::consistency(format!("icosian span has rank {}", hnf.len())));
    }
    let inv_scale = Rational::new(BigInt::one(), scale);
    let basis: Vec<GoldenQuaternion> = hnf
        .iter()
        .map(|row| {
            let v: Vec<Rational> = row
                .iter()
                .map(|x| Rational::from_integer(x.clone()) * &inv_scale)
                .collect();
            GoldenQuaternion::from_q8(&v)
        })
        .collect();
    let gram = gram_of(&basis, GoldenQuaternion::trace_form);
    let out = IcosianBasis { basis, gram };
    for g in gamma.elements() {
        if !icosian_contains(g, &out) {
            return Err(Error::consistency(format!("{g} is not in the computed span")));
        }
    }
    Ok(out)
}

/// Membership in the icosian ring: exact solve plus integrality.
pub fn icosian_contains(q: &GoldenQuaternion, basis: &IcosianBasis) -> bool {
    basis
        .coordinates(q)
        .is_some_and(|c| c.iter().all(Rational::is_integer))
}

/// Float embedding `q ↦ (√α·ι₁(q), √β·ι₂(q))` with α = (1 + 1/√5)/2 and
/// β = (1 − 1/√5)/2, where ι₁, ι₂ are the two real embeddings of ℚ(√5). Its
/// squared Euclidean length is `τ(|q|²)`.
pub fn real_embedding(q: &GoldenQuaternion) -> [f64; 8] {
    let s5 = 5f64.sqrt();
    let alpha = ((1.0 + 1.0 / s5) / 2.0).sqrt();
    let beta = ((1.0 - 1.0 / s5) / 2.0).sqrt();
    let mut out = [0.0; 8];
    for (i, c) in q.components().iter().enumerate() {
        let x = rational_to_f64(c.x());
        let y = rational_to_f64(c.y());
        out[i] = alpha * (x + y * s5);
        out[4 + i] = beta * (x - y * s5);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::icosian::gamma_enumerate;
    use crate::numberfield::{rat, rat_int, GoldenRational};
    use num_traits::Zero;

    fn basis() -> IcosianBasis {
        icosian_zbasis(&gamma_enumerate().unwrap()).unwrap()
    }

    #[test]
    fn gram_is_even_unimodular() {
        let b = basis();
        assert_eq!(b.rank(), 8);
        assert!(linalg::is_symmetric(&b.gram));
        assert!(linalg::is_integral(&b.gram));
        assert!((0..8).all(|i| b.gram[i][i].to_integer().is_even()));
        assert_eq!(linalg::det(&b.gram), rat_int(1));
    }

    #[test]
    fn rational_norm_gram_is_half_scale() {
        let b = basis();
        let h = b.half_gram();
        for i in 0..8 {
            for j in 0..8 {
                assert_eq!(&h[i][j] * rat_int(2), b.gram[i][j]);
            }
        }
        assert_eq!(linalg::det(&h), rat(1, 256));
    }

    #[test]
    fn membership() {
        let g = gamma_enumerate().unwrap();
        let b = icosian_zbasis(&g).unwrap();
        assert!(g.elements().iter().all(|q| icosian_contains(q, &b)));
        let phi = GoldenQuaternion::from_real(GoldenRational::phi());
        assert!(icosian_contains(&phi, &b));
        let half = GoldenQuaternion::from_real(GoldenRational::from_ints(1, 0, 2));
        assert!(!icosian_contains(&half, &b));
    }

    #[test]
    fn embedding_realizes_the_rational_norm() {
        let b = basis();
        let h = b.half_gram();
        let emb: Vec<[f64; 8]> = b.basis.iter().map(real_embedding).collect();
        for i in 0..8 {
            for j in 0..8 {
                let d: f64 = (0..8).map(|k| emb[i][k] * emb[j][k]).sum();
                assert!((d - rational_to_f64(&h[i][j])).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn integer_span_has_even_norms_and_polarizes() {
        use rand::{Rng, SeedableRng};
        let b = basis();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let combo = |c: &[i64]| {
            c.iter().zip(&b.basis).fold(GoldenQuaternion::default(), |acc, (&k, q)| {
                &acc + &q.scale(&GoldenRational::from_int(k))
            })
        };
        for _ in 0..50 {
            let c1: Vec<i64> = (0..8).map(|_| rng.random_range(-4..=4)).collect();
            let c2: Vec<i64> = (0..8).map(|_| rng.random_range(-4..=4)).collect();
            let (p, q) = (combo(&c1), combo(&c2));
            let two = rat_int(2);
            let np = p.trace_form(&p);
            assert!(np.is_integer() && np.to_integer().is_even());
            assert_eq!(np, &p.icosian_norm2() * &two);
            let pq = p.trace_form(&q);
            assert!(pq.is_integer());
            let s = &p + &q;
            assert_eq!(s.trace_form(&s), &np + &two * &pq + q.trace_form(&q));
            assert!(!np.is_zero() || p.is_zero());
        }
    }
}
