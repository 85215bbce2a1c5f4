use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numberfield::{format_rational, rat_int, rational_to_f64, Rational};

/// Binary form `Σ_k c_k·z1^(d−k)·z2^k` with rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct HomoPoly2 {
    coeffs: Vec<Rational>,
}

#[derive(Serialize)]
struct PolyJson {
    degree: usize,
    coefficients: Vec<String>,
}

impl HomoPoly2 {
    /// `coeffs[k]` multiplies `z1^(d−k)·z2^k`; must be nonempty.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a form needs at least one coefficient");
        HomoPoly2 { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    pub fn zero(degree: usize) -> Self {
        Self::new(vec![Rational::zero(); degree + 1])
    }

    /// `c·z1^(d−k)·z2^k`.
    pub fn monomial(degree: usize, k: usize, c: Rational) -> Self {
        let mut p = Self::zero(degree);
        p.coeffs[k] = c;
        p
    }

    pub fn z1() -> Self {
        Self::from_ints(&[1, 0])
    }

    pub fn z2() -> Self {
        Self::from_ints(&[0, 1])
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        if self.degree() != o.degree() {
            return Err(Error::Domain(format!(
                "cannot add forms of degrees {} and {}",
                self.degree(),
                o.degree()
            )));
        }
        Ok(Self::new(self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect()))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = vec![Rational::zero(); self.degree() + o.degree() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::from_ints(&[1]);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// ∂/∂z1.
    pub fn d_z1(&self) -> Self {
        let d = self.degree();
        if d == 0 {
            return Self::zero(0);
        }
        Self::new((0..d).map(|k| &self.coeffs[k] * rat_int((d - k) as i64)).collect())
    }

    /// ∂/∂z2.
    pub fn d_z2(&self) -> Self {
        let d = self.degree();
        if d == 0 {
            return Self::zero(0);
        }
        Self::new((1..=d).map(|k| &self.coeffs[k] * rat_int(k as i64)).collect())
    }

    /// Value at `(z1, z2)`.
    pub fn eval(&self, z1: Complex64, z2: Complex64) -> Complex64 {
        let c = self.coeffs_f64();
        eval_f64(&c, z1, z2)
    }

    pub fn coeffs_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(rational_to_f64).collect()
    }

    /// Sum of absolute values of the coefficients, a bound for `|p|` on the
    /// unit bidisk.
    pub fn l1_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| rational_to_f64(c).abs()).sum()
    }

    /// Coprime integer coefficients with the first nonzero one positive.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let den = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
        let first_neg = ints.iter().find(|v| !v.is_zero()).is_some_and(Signed::is_negative);
        let g = if first_neg { -g } else { g };
        Self::new(ints.into_iter().map(|v| Rational::from_integer(v / &g)).collect())
    }

    /// The exact scalar `s` with `self = s·other`, if any.
    pub fn ratio_to(&self, other: &Self) -> Option<Rational> {
        if self.degree() != other.degree() || other.is_zero() {
            return None;
        }
        let k = other.coeffs.iter().position(|c| !c.is_zero())?;
        let s = &self.coeffs[k] / &other.coeffs[k];
        (other.scale(&s) == *self).then_some(s)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(PolyJson {
            degree: self.degree(),
            coefficients: self.coeffs.iter().map(format_rational).collect(),
        })
        .expect("serializable")
    }
}

pub(crate) fn eval_f64(c: &[f64], z1: Complex64, z2: Complex64) -> Complex64 {
    let d = c.len() - 1;
    let mut acc = Complex64::new(0.0, 0.0);
    let mut z2k = Complex64::new(1.0, 0.0);
    let mut terms = Vec::with_capacity(d + 1);
    for _ in 0..=d {
        terms.push(z2k);
        z2k *= z2;
    }
    let mut z1p = Complex64::new(1.0, 0.0);
    for k in (0..=d).rev() {
        acc += c[k] * z1p * terms[k];
        z1p *= z1;
    }
    acc
}

impl fmt::Display for HomoPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree();
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mono: Vec<String> = [(d - k, "z1"), (k, "z2")]
                .iter()
                .filter(|(e, _)| *e > 0)
                .map(|(e, v)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
                .collect();
            let coeff = format_rational(&mag);
            match (mono.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{coeff}")?,
                (false, true) => write!(f, "{}", mono.join("*"))?,
                (false, false) => write!(f, "{coeff}*{}", mono.join("*"))?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Which classical covariant to form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CovariantKind {
    /// `p_11·p_22 − p_12²`.
    Hessian,
    /// `p_1·q_2 − p_2·q_1`.
    Jacobian,
}

pub fn covariant(p: &HomoPoly2, q: Option<&HomoPoly2>, kind: CovariantKind) -> Result<HomoPoly2> {
    let sub = |a: HomoPoly2, b: HomoPoly2| -> HomoPoly2 {
        let nb = b.scale(&-Rational::one());
        a.add(&nb).expect("equal degrees")
    };
    match kind {
        CovariantKind::Hessian => {
            if p.degree() < 2 {
                return Ok(HomoPoly2::zero(0));
            }
            let (p1, p2) = (p.d_z1(), p.d_z2());
            Ok(sub(p1.d_z1().mul(&p2.d_z2()), p1.d_z2().mul(&p1.d_z2())))
        }
        CovariantKind::Jacobian => {
            let q = q.ok_or_else(|| Error::Domain("the Jacobian needs a second form".into()))?;
            if p.degree() == 0 || q.degree() == 0 {
                return Ok(HomoPoly2::zero((p.degree() + q.degree()).saturating_sub(2)));
            }
            Ok(sub(p.d_z1().mul(&q.d_z2()), p.d_z2().mul(&q.d_z1())))
        }
    }
}
