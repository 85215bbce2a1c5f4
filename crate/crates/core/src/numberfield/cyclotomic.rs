use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{format_pq, parse_rational, rational_to_f64, GoldenRational, Rational};
use crate::error::{Error, Result};

/// An element `c0 + c1·ζ + c2·ζ² + c3·ζ³` of ℚ(ζ₅), reduced modulo
/// `1 + ζ + ζ² + ζ³ + ζ⁴`.
///
/// Stored as four integer numerators over one positive common denominator,
/// fully reduced, so the representation is unique.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CyclotomicQ5 {
    num: [BigInt; 4],
    den: BigInt,
}

impl Default for CyclotomicQ5 {
    fn default() -> Self {
        CyclotomicQ5::zero()
    }
}

impl CyclotomicQ5 {
    fn normalized(mut num: [BigInt; 4], mut den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if den < BigInt::zero() {
            den = -den;
            for n in num.iter_mut() {
                *n = -&*n;
            }
        }
        let mut g = den.clone();
        for n in &num {
            if g.is_one() {
                break;
            }
            g = g.gcd(n);
        }
        if !g.is_one() {
            for n in num.iter_mut() {
                *n = &*n / &g;
            }
            den = den / g;
        }
        CyclotomicQ5 { num, den }
    }

    pub fn from_coeffs(c: [Rational; 4]) -> Self {
        let den = c
            .iter()
            .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let num = c.map(|r| r.numer() * (&den / r.denom()));
        Self::normalized(num, den)
    }

    pub fn coeffs(&self) -> [Rational; 4] {
        std::array::from_fn(|i| Rational::new(self.num[i].clone(), self.den.clone()))
    }

    pub fn zero() -> Self {
        CyclotomicQ5 {
            num: Default::default(),
            den: BigInt::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_rational(&Rational::one())
    }

    pub fn from_rational(r: &Rational) -> Self {
        let mut num: [BigInt; 4] = Default::default();
        num[0] = r.numer().clone();
        CyclotomicQ5 {
            num,
            den: r.denom().clone(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(n.into()))
    }

    /// ζᵏ for any integer `k`.
    pub fn zeta_pow(k: i64) -> Self {
        let k = k.rem_euclid(5) as usize;
        let mut num: [BigInt; 4] = Default::default();
        if k == 4 {
            for n in num.iter_mut() {
                *n = BigInt::from(-1);
            }
        } else {
            num[k] = BigInt::one();
        }
        CyclotomicQ5 { num, den: BigInt::one() }
    }

    pub fn zeta() -> Self {
        Self::zeta_pow(1)
    }

    /// The element `1 + 2ζ + 2ζ⁴`, whose square is 5.
    pub fn sqrt5() -> Self {
        &(&Self::one() + &Self::zeta().scale_int(2)) + &Self::zeta_pow(4).scale_int(2)
    }

    /// Image of `x + y√5` under √5 ↦ 1 + 2ζ + 2ζ⁴.
    pub fn from_golden(g: &GoldenRational) -> Self {
        &Self::from_rational(g.x()) + &Self::sqrt5().scale(g.y())
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.num[1..].iter().all(Zero::is_zero)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let num = self.num.clone().map(|n| n * r.numer());
        Self::normalized(num, &self.den * r.denom())
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&Rational::from_integer(k.into()))
    }

    /// Complex conjugation ζ ↦ ζ⁴ (the Galois automorphism k = 4).
    pub fn conj(&self) -> Self {
        self.galois(4)
    }

    /// Galois automorphism ζ ↦ ζᵏ, `k` coprime to 5.
    pub fn galois(&self, k: i64) -> Self {
        assert!(k.rem_euclid(5) != 0, "not an automorphism");
        let mut acc = CyclotomicQ5::zero();
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = CyclotomicQ5::zeta_pow(k * i as i64);
            let num = term.num.map(|n| n * c);
            acc = &acc + &CyclotomicQ5 { num, den: BigInt::one() };
        }
        Self::normalized(acc.num, &acc.den * &self.den)
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// the fifth cyclotomic polynomial.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let a: Vec<Rational> = self.coeffs().to_vec();
        let m: Vec<Rational> = vec![Rational::one(); 5];
        let s = poly_inverse_mod(&a, &m).ok_or(Error::DivisionByZero)?;
        let mut c: [Rational; 4] = Default::default();
        for (i, v) in s.into_iter().enumerate().take(4) {
            c[i] = v;
        }
        Ok(Self::from_coeffs(c))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    /// Numeric value under ζ ↦ e^{2πi/5}.
    pub fn embed(&self) -> Complex64 {
        let d = bigint_to_f64(&self.den);
        let mut z = Complex64::new(0.0, 0.0);
        for (k, n) in self.num.iter().enumerate() {
            let angle = 2.0 * std::f64::consts::PI * k as f64 / 5.0;
            z += Complex64::from_polar(1.0, angle) * (bigint_to_f64(n) / d);
        }
        z
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

fn bigint_to_f64(n: &BigInt) -> f64 {
    rational_to_f64(&Rational::from_integer(n.clone()))
}

fn trim(p: &mut Vec<Rational>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn poly_sub_scaled_shift(a: &mut Vec<Rational>, b: &[Rational], c: &Rational, shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, Rational::zero());
    }
    for (i, bi) in b.iter().enumerate() {
        a[i + shift] -= c * bi;
    }
    trim(a);
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    trim(&mut out);
    out
}

fn poly_divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead = b[db].clone();
    let mut q = vec![Rational::zero(); r.len().saturating_sub(db).max(1)];
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let c = r.last().unwrap() / &lead;
        q[shift] = c.clone();
        poly_sub_scaled_shift(&mut r, b, &c, shift);
    }
    trim(&mut q);
    (q, r)
}

/// `s` with `s·a ≡ 1 (mod m)`, or `None` when `gcd(a, m) ≠ 1`.
fn poly_inverse_mod(a: &[Rational], m: &[Rational]) -> Option<Vec<Rational>> {
    let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
    trim(&mut r0);
    trim(&mut r1);
    let (mut s0, mut s1): (Vec<Rational>, Vec<Rational>) = (Vec::new(), vec![Rational::one()]);
    while !r1.is_empty() {
        let (q, r) = poly_divrem(&r0, &r1);
        let mut s = s0.clone();
        let qs = poly_mul(&q, &s1);
        poly_sub_scaled_shift(&mut s, &qs, &Rational::one(), 0);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    // r0 is the gcd; it must be a nonzero constant
    if r0.len() != 1 {
        return None;
    }
    let c = r0[0].clone();
    let (_, s) = poly_divrem(&s0.iter().map(|v| v / &c).collect::<Vec<_>>(), m);
    Some(s)
}

impl Neg for &CyclotomicQ5 {
    type Output = CyclotomicQ5;
    fn neg(self) -> CyclotomicQ5 {
        CyclotomicQ5 {
            num: self.num.clone().map(|n| -n),
            den: self.den.clone(),
        }
    }
}

impl Add for &CyclotomicQ5 {
    type Output = CyclotomicQ5;
    fn add(self, rhs: &CyclotomicQ5) -> CyclotomicQ5 {
        if self.den == rhs.den {
            let num = std::array::from_fn(|i| &self.num[i] + &rhs.num[i]);
            return CyclotomicQ5::normalized(num, self.den.clone());
        }
        let num = std::array::from_fn(|i| &self.num[i] * &rhs.den + &rhs.num[i] * &self.den);
        CyclotomicQ5::normalized(num, &self.den * &rhs.den)
    }
}

impl Sub for &CyclotomicQ5 {
    type Output = CyclotomicQ5;
    fn sub(self, rhs: &CyclotomicQ5) -> CyclotomicQ5 {
        self + &(-rhs)
    }
}

impl Mul for &CyclotomicQ5 {
    type Output = CyclotomicQ5;
    fn mul(self, rhs: &CyclotomicQ5) -> CyclotomicQ5 {
        // cyclic convolution modulo x⁵ − 1, then fold ζ⁴ = −(1 + ζ + ζ² + ζ³)
        let mut c: [BigInt; 5] = Default::default();
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.num.iter().enumerate() {
                if !b.is_zero() {
                    c[(i + j) % 5] += a * b;
                }
            }
        }
        let [c0, c1, c2, c3, c4] = c;
        let num = [c0 - &c4, c1 - &c4, c2 - &c4, c3 - &c4];
        CyclotomicQ5::normalized(num, &self.den * &rhs.den)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for CyclotomicQ5 {
            type Output = CyclotomicQ5;
            fn $m(self, rhs: CyclotomicQ5) -> CyclotomicQ5 { (&self).$m(&rhs) }
        }
        impl $tr<&CyclotomicQ5> for CyclotomicQ5 {
            type Output = CyclotomicQ5;
            fn $m(self, rhs: &CyclotomicQ5) -> CyclotomicQ5 { (&self).$m(rhs) }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for CyclotomicQ5 {
    type Output = CyclotomicQ5;
    fn neg(self) -> CyclotomicQ5 {
        -&self
    }
}

impl fmt::Display for CyclotomicQ5 {
    /// `c0+c1*z+c2*z^2+c3*z^3` with each coefficient written `p/q`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.coeffs();
        write!(
            f,
            "{}+{}*z+{}*z^2+{}*z^3",
            format_pq(&c[0]),
            format_pq(&c[1]),
            format_pq(&c[2]),
            format_pq(&c[3])
        )
    }
}

impl FromStr for CyclotomicQ5 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::parse("cyclotomic", format!("invalid element {s:?}"));
        // split on '+' that start a new term (not the sign of a coefficient)
        let mut terms = Vec::new();
        let mut start = 0;
        let bytes = s.as_bytes();
        for i in 1..bytes.len() {
            if bytes[i] == b'+' {
                terms.push(&s[start..i]);
                start = i + 1;
            }
        }
        terms.push(&s[start..]);
        let mut c: [Rational; 4] = Default::default();
        for t in terms {
            let t = t.trim();
            let (coef, power) = if let Some(h) = t.strip_suffix("*z^3") {
                (h, 3)
            } else if let Some(h) = t.strip_suffix("*z^2") {
                (h, 2)
            } else if let Some(h) = t.strip_suffix("*z") {
                (h, 1)
            } else {
                (t, 0)
            };
            if coef.is_empty() {
                return Err(bad());
            }
            c[power] += parse_rational(coef)?;
        }
        Ok(CyclotomicQ5::from_coeffs(c))
    }
}

impl serde::Serialize for CyclotomicQ5 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for CyclotomicQ5 {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
