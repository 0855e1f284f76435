//! Scalar abstraction shared by every solver.
//!
//! All algorithms are written once against [`Scalar`] and run either in
//! exact rational arithmetic ([`crate::Rational`]) or in `f64` with an
//! absolute comparison tolerance.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

/// Number type the solvers are generic over.
pub trait Scalar:
    Num + Signed + Clone + PartialOrd + Debug + Display + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    /// `true` when arithmetic is exact and comparisons need no tolerance.
    const EXACT: bool;

    /// Absolute tolerance used by the approximate comparison helpers.
    fn tolerance() -> Self;

    /// `num / den` as a scalar. Panics when `den == 0`.
    fn from_ratio(num: i64, den: i64) -> Self;

    /// Parses `"3"`, `"-1.25"` or `"3/2"`.
    fn parse_token(token: &str) -> Option<Self>;

    fn is_integral(&self) -> bool;

    /// Canonical textual form used by the instance writer.
    fn to_token(&self) -> String {
        self.to_string()
    }

    fn from_int(v: i64) -> Self {
        Self::from_ratio(v, 1)
    }

    fn approx_eq(&self, other: &Self) -> bool {
        (self.clone() - other.clone()).abs() <= Self::tolerance()
    }

    /// `self <= other` up to tolerance.
    fn approx_le(&self, other: &Self) -> bool {
        *self <= other.clone() + Self::tolerance()
    }

    /// `self < other` by more than the tolerance.
    fn definitely_lt(&self, other: &Self) -> bool {
        self.clone() + Self::tolerance() < *other
    }

    fn is_positive_tol(&self) -> bool {
        *self > Self::tolerance()
    }

    fn min_of(a: Self, b: Self) -> Self {
        if b < a {
            b
        } else {
            a
        }
    }

    fn max_of(a: Self, b: Self) -> Self {
        if b > a {
            b
        } else {
            a
        }
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn tolerance() -> Self {
        1e-9
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        num as f64 / den as f64
    }

    fn parse_token(token: &str) -> Option<Self> {
        match token.split_once('/') {
            Some((n, d)) => {
                let n = f64::from_str(n).ok()?;
                let d = f64::from_str(d).ok()?;
                (d != 0.0).then(|| n / d)
            }
            None => f64::from_str(token).ok().filter(|v| v.is_finite()),
        }
    }

    fn is_integral(&self) -> bool {
        (self - self.round()).abs() <= 1e-9
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn tolerance() -> Self {
        BigRational::zero()
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn parse_token(token: &str) -> Option<Self> {
        if let Some((n, d)) = token.split_once('/') {
            let n = BigInt::from_str(n).ok()?;
            let d = BigInt::from_str(d).ok()?;
            if d.is_zero() {
                return None;
            }
            return Some(BigRational::new(n, d));
        }
        parse_decimal(token)
    }

    fn is_integral(&self) -> bool {
        self.is_integer()
    }

    fn to_token(&self) -> String {
        if self.denom().is_one() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
}

/// Exact decimal parse: `-12.375` becomes `-12375/1000` reduced.
fn parse_decimal(token: &str) -> Option<BigRational> {
    let (negative, body) = match token.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, token.strip_prefix('+').unwrap_or(token)),
    };
    if body.is_empty() {
        return None;
    }
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let numer = BigInt::from_str(&digits).ok()?;
    let denom = num_traits::pow(BigInt::from(10u8), frac_part.len());
    let value = BigRational::new(numer, denom);
    Some(if negative { -value } else { value })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::from_ratio(n, d)
    }

    #[test]
    fn parses_rational_tokens() {
        assert_eq!(BigRational::parse_token("3/2"), Some(q(3, 2)));
        assert_eq!(BigRational::parse_token("1.5"), Some(q(3, 2)));
        assert_eq!(BigRational::parse_token("-0.25"), Some(q(-1, 4)));
        assert_eq!(BigRational::parse_token("7"), Some(q(7, 1)));
        assert_eq!(BigRational::parse_token(".5"), Some(q(1, 2)));
        assert_eq!(BigRational::parse_token("1/0"), None);
        assert_eq!(BigRational::parse_token("abc"), None);
        assert_eq!(BigRational::parse_token("1e3"), None);
        assert_eq!(BigRational::parse_token(""), None);
    }

    #[test]
    fn parses_float_tokens() {
        assert_eq!(f64::parse_token("3/2"), Some(1.5));
        assert_eq!(f64::parse_token("2.25"), Some(2.25));
        assert_eq!(f64::parse_token("inf"), None);
        assert_eq!(f64::parse_token("1/0"), None);
    }

    #[test]
    fn canonical_tokens() {
        assert_eq!(q(6, 4).to_token(), "3/2");
        assert_eq!(q(4, 2).to_token(), "2");
        assert_eq!(q(-1, 3).to_token(), "-1/3");
    }

    #[test]
    fn tolerance_helpers() {
        assert!(1.0f64.approx_eq(&(1.0 + 1e-12)));
        assert!(q(1, 3).approx_eq(&q(2, 6)));
        assert!(q(1, 3).approx_le(&q(1, 3)));
        assert!(!q(1, 3).definitely_lt(&q(1, 3)));
        assert!(q(1, 3).definitely_lt(&q(1, 2)));
        assert!(!(1e-12f64).is_positive_tol());
    }
}
