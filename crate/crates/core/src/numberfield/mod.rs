//! Exact arithmetic in the golden field ℚ(√5) and the cyclotomic field ℚ(ζ₅).
//!
//! Both fields sit on top of arbitrary-precision rationals, so no operation
//! here can overflow. The golden field carries every icosian coordinate; the
//! cyclotomic field carries the exact 2×2 matrices of the binary icosahedral
//! group in the frame where Klein's invariants have integer coefficients.

mod cyclotomic;
mod golden;

pub use cyclotomic::CyclotomicQ5;
pub use golden::GoldenRational;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number used throughout the crate.
pub type Rational = BigRational;

/// Shorthand for `n/d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Formats a rational as `p/q`, always with an explicit denominator.
pub fn format_pq(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Formats a rational in its shortest form: `p` for integers, `p/q` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format_pq(r)
    }
}

/// Parses `p`, `p/q`, `-p/q` (whitespace tolerated) into a rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::parse("rational", format!("invalid rational {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Exact conversion from a finite `f64`; `None` for NaN and infinities.
pub fn rational_from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    // numerator and denominator can exceed f64 range independently
    use num_traits::ToPrimitive;
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => r.to_f64().unwrap_or(f64::NAN),
    }
}

pub(crate) fn sign_of(r: &Rational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_text_forms() {
        assert_eq!(format_pq(&rat(2, 4)), "1/2");
        assert_eq!(format_pq(&rat_int(3)), "3/1");
        assert_eq!(format_rational(&rat_int(-3)), "-3");
        assert_eq!(format_rational(&rat(-6, 4)), "-3/2");
        assert_eq!(parse_rational(" -3 / 6 ").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("7").unwrap(), rat_int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn float_conversion_is_exact() {
        assert_eq!(rational_from_f64(0.5).unwrap(), rat(1, 2));
        assert_eq!(rational_from_f64(-3.0).unwrap(), rat_int(-3));
        assert!(rational_from_f64(f64::NAN).is_none());
        assert_eq!(rational_to_f64(&rat(1, 4)), 0.25);
    }
}
