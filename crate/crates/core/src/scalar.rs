//! A small numeric abstraction so the polygon machinery runs both in exact
//! rational arithmetic and in binary64.

use std::cmp::Ordering;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rationals.
pub type Q = BigRational;

pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + PartialOrd
    + num_traits::Num
    + std::ops::Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_i64(v: i64) -> Self;
    fn to_f64(&self) -> f64;
    fn is_exact() -> bool;
    /// Sign of `self`, treating magnitudes below `tol * scale` as zero for floats.
    fn sign_tol(&self, scale: f64) -> Ordering;
    fn total_cmp(&self, other: &Self) -> Ordering;
    fn abs_val(&self) -> Self;
    fn half(&self) -> Self {
        self.clone() / Self::from_i64(2)
    }
}

/// Relative tolerance used by the binary64 instantiation.
pub const FLOAT_TOL: f64 = 1e-11;

impl Scalar for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn is_exact() -> bool {
        false
    }
    fn sign_tol(&self, scale: f64) -> Ordering {
        let tol = FLOAT_TOL * scale.max(1e-300);
        if *self > tol {
            Ordering::Greater
        } else if *self < -tol {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }
    fn total_cmp(&self, other: &Self) -> Ordering {
        f64::total_cmp(self, other)
    }
    fn abs_val(&self) -> Self {
        self.abs()
    }
}

impl Scalar for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn is_exact() -> bool {
        true
    }
    fn sign_tol(&self, _scale: f64) -> Ordering {
        if self.is_positive() {
            Ordering::Greater
        } else if self.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }
    fn total_cmp(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }
    fn abs_val(&self) -> Self {
        self.abs()
    }
}

/// Builds `p/q` as an exact rational.
pub fn q(p: i64, d: i64) -> Q {
    Q::new(BigInt::from(p), BigInt::from(d))
}

pub fn q_int(p: i64) -> Q {
    Q::from_integer(BigInt::from(p))
}

/// Parses `"p/q"`, `"p"` or a finite decimal such as `"0.25"` into an exact rational.
pub fn parse_rational(text: &str) -> Option<Q> {
    let t = text.trim();
    if let Some((a, b)) = t.split_once('/') {
        let num: BigInt = a.trim().parse().ok()?;
        let den: BigInt = b.trim().parse().ok()?;
        if den.is_zero() {
            return None;
        }
        return Some(Q::new(num, den));
    }
    if let Some((ip, fp)) = t.split_once('.') {
        let neg = ip.trim_start().starts_with('-');
        let digits = format!("{}{}", ip.trim_start_matches(['-', '+']), fp);
        let num: BigInt = digits.parse().ok()?;
        let den = num_traits::pow(BigInt::from(10), fp.len());
        let r = Q::new(num, den);
        return Some(if neg { -r } else { r });
    }
    let num: BigInt = t.parse().ok()?;
    Some(Q::from_integer(num))
}

/// Formats an exact rational as `"p/q"` (or `"p"` for integers).
pub fn format_rational(r: &Q) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Integer power of an exact rational (negative exponents allowed for nonzero bases).
pub fn q_pow(base: &Q, exp: i32) -> Q {
    if exp >= 0 {
        num_traits::pow(base.clone(), exp as usize)
    } else {
        num_traits::pow(base.recip(), (-exp) as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        assert_eq!(parse_rational("3/6").unwrap(), q(1, 2));
        assert_eq!(parse_rational("-0.25").unwrap(), q(-1, 4));
        assert_eq!(parse_rational("7").unwrap(), q_int(7));
        assert!(parse_rational("1/0").is_none());
        assert_eq!(format_rational(&q(4, 6)), "2/3");
        assert_eq!(format_rational(&q_int(-3)), "-3");
    }

    #[test]
    fn float_sign_tolerance() {
        assert_eq!(1e-14_f64.sign_tol(1.0), Ordering::Equal);
        assert_eq!((-1e-3_f64).sign_tol(1.0), Ordering::Less);
    }
}
