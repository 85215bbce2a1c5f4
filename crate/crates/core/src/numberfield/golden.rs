use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};

use super::{format_pq, parse_rational, rat, rational_to_f64, sign_of, Rational};
use crate::error::{Error, Result};

/// An element `x + y·√5` of the golden field ℚ(√5).
///
/// Both coordinates are kept in lowest terms by `BigRational`, so equality
/// and hashing are componentwise.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GoldenRational {
    x: Rational,
    y: Rational,
}

impl GoldenRational {
    pub fn new(x: Rational, y: Rational) -> Self {
        GoldenRational { x, y }
    }

    pub fn from_rational(x: Rational) -> Self {
        GoldenRational { x, y: Rational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat(n, 1))
    }

    /// `(n + m√5)/d` from small integers.
    pub fn from_ints(n: i64, m: i64, d: i64) -> Self {
        GoldenRational::new(rat(n, d), rat(m, d))
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn sqrt5() -> Self {
        GoldenRational::new(Rational::zero(), Rational::one())
    }

    /// The golden ratio Φ = (1 + √5)/2.
    pub fn phi() -> Self {
        Self::from_ints(1, 1, 2)
    }

    /// 1/Φ = Φ − 1 = (−1 + √5)/2.
    pub fn phi_inv() -> Self {
        Self::from_ints(-1, 1, 2)
    }

    /// `a + b·Φ` for rationals `a`, `b`.
    pub fn from_phi_coords(a: Rational, b: Rational) -> Self {
        let half = rat(1, 2);
        GoldenRational::new(&a + &b * &half, &b * &half)
    }

    /// Rational part.
    pub fn x(&self) -> &Rational {
        &self.x
    }

    /// Coefficient of √5.
    pub fn y(&self) -> &Rational {
        &self.y
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.y.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.x)
    }

    /// Galois conjugate `x − y√5`.
    pub fn conj(&self) -> Self {
        GoldenRational::new(self.x.clone(), -&self.y)
    }

    /// Field norm `x² − 5y²` (product with the Galois conjugate).
    pub fn field_norm(&self) -> Rational {
        &self.x * &self.x - rat(5, 1) * &self.y * &self.y
    }

    /// Trace-like map τ(x + y√5) = x + y that turns the quaternionic norm of
    /// an icosian into a positive-definite rational quadratic form.
    pub fn tau(&self) -> Rational {
        &self.x + &self.y
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.field_norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(GoldenRational::new(&self.x / &n, -&self.y / &n))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        GoldenRational::new(&self.x * r, &self.y * r)
    }

    /// Sign under the real embedding √5 > 0, decided exactly.
    pub fn signum(&self) -> i32 {
        let sx = sign_of(&self.x);
        let sy = sign_of(&self.y);
        if sy == 0 {
            return sx;
        }
        if sx == 0 || sx == sy {
            return sy;
        }
        // opposite signs: the larger of x² and 5y² wins
        let x2 = &self.x * &self.x;
        let y2 = rat(5, 1) * &self.y * &self.y;
        if x2 > y2 {
            sx
        } else {
            sy
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.x) + rational_to_f64(&self.y) * 5f64.sqrt()
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

impl Ord for GoldenRational {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

impl PartialOrd for GoldenRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GoldenRational {
    /// `p/q+r/s*sqrt5`, e.g. Φ is `1/2+1/2*sqrt5`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}*sqrt5", format_pq(&self.x), format_pq(&self.y))
    }
}

impl FromStr for GoldenRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let Some(head) = s.strip_suffix("*sqrt5") else {
            return Ok(GoldenRational::from_rational(parse_rational(s)?));
        };
        // the separating '+' is the first one after a possible leading sign
        let split = head
            .char_indices()
            .skip(1)
            .find(|&(_, c)| c == '+')
            .map(|(i, _)| i)
            .ok_or_else(|| Error::parse("golden", format!("missing '+' in {s:?}")))?;
        let x = parse_rational(&head[..split])?;
        let y = parse_rational(&head[split + 1..])?;
        Ok(GoldenRational::new(x, y))
    }
}

impl serde::Serialize for GoldenRational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for GoldenRational {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<Rational> for GoldenRational {
    fn from(r: Rational) -> Self {
        GoldenRational::from_rational(r)
    }
}

impl Neg for &GoldenRational {
    type Output = GoldenRational;
    fn neg(self) -> GoldenRational {
        GoldenRational::new(-&self.x, -&self.y)
    }
}

impl Neg for GoldenRational {
    type Output = GoldenRational;
    fn neg(self) -> GoldenRational {
        GoldenRational::new(-self.x, -self.y)
    }
}

impl Add for &GoldenRational {
    type Output = GoldenRational;
    fn add(self, rhs: &GoldenRational) -> GoldenRational {
        GoldenRational::new(&self.x + &rhs.x, &self.y + &rhs.y)
    }
}

impl Sub for &GoldenRational {
    type Output = GoldenRational;
    fn sub(self, rhs: &GoldenRational) -> GoldenRational {
        GoldenRational::new(&self.x - &rhs.x, &self.y - &rhs.y)
    }
}

impl Mul for &GoldenRational {
    type Output = GoldenRational;
    fn mul(self, rhs: &GoldenRational) -> GoldenRational {
        // (a + b√5)(c + d√5) = (ac + 5bd) + (ad + bc)√5
        let x = &self.x * &rhs.x + rat(5, 1) * &self.y * &rhs.y;
        let y = &self.x * &rhs.y + &self.y * &rhs.x;
        GoldenRational::new(x, y)
    }
}

impl AddAssign<&GoldenRational> for GoldenRational {
    fn add_assign(&mut self, rhs: &GoldenRational) {
        self.x += &rhs.x;
        self.y += &rhs.y;
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for GoldenRational {
            type Output = GoldenRational;
            fn $m(self, rhs: GoldenRational) -> GoldenRational { (&self).$m(&rhs) }
        }
        impl $tr<&GoldenRational> for GoldenRational {
            type Output = GoldenRational;
            fn $m(self, rhs: &GoldenRational) -> GoldenRational { (&self).$m(rhs) }
        }
        impl $tr<GoldenRational> for &GoldenRational {
            type Output = GoldenRational;
            fn $m(self, rhs: GoldenRational) -> GoldenRational { self.$m(&rhs) }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl std::iter::Sum for GoldenRational {
    fn sum<I: Iterator<Item = GoldenRational>>(iter: I) -> Self {
        iter.fold(GoldenRational::zero(), |acc, v| acc + v)
    }
}

impl Zero for GoldenRational {
    fn zero() -> Self {
        GoldenRational::default()
    }
    fn is_zero(&self) -> bool {
        GoldenRational::is_zero(self)
    }
}

impl One for GoldenRational {
    fn one() -> Self {
        GoldenRational::from_int(1)
    }
}
