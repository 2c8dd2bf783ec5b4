//! Coefficient field abstraction.
//!
//! Everything in the crate is written against [`Scalar`], a field with an
//! ordering. The exact instantiation is [`BigRational`]; `f64` and `f32` are
//! provided for floating cross-checks and for the Monte Carlo evaluator.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive, Zero};

/// An ordered field usable as a polynomial coefficient.
pub trait Scalar:
    Clone + Debug + Display + PartialOrd + Num + Signed + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    /// Whether arithmetic is exact. Floating instantiations answer `false`.
    const EXACT: bool;

    fn from_rational(r: &BigRational) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("every scalar type represents small integers")
    }

    fn from_u64_lossy(n: u64) -> Self {
        Self::from_u64(n).expect("every scalar type represents u64 values")
    }

    fn ratio(num: i64, den: i64) -> Self {
        Self::from_int(num) / Self::from_int(den)
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }

    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_u64_lossy(n: u64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_rational(r: &BigRational) -> Self {
        r.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {
    const EXACT: bool = false;

    fn from_rational(r: &BigRational) -> Self {
        r.to_f32().unwrap_or(f32::NAN)
    }
}

/// `base^exp` by repeated squaring.
pub fn pow<T: Scalar>(base: &T, mut exp: u32) -> T {
    let mut acc = T::one();
    let mut b = base.clone();
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b.clone();
        }
        exp >>= 1;
        if exp > 0 {
            b = b.clone() * b;
        }
    }
    acc
}

/// Parses `"p"` or `"p/q"` into an exact rational.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => Some(BigRational::from_integer(text.parse().ok()?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_helpers() {
        assert_eq!(BigRational::ratio(6, 4), BigRational::ratio(3, 2));
        assert_eq!(pow(&BigRational::ratio(2, 3), 3), BigRational::ratio(8, 27));
        assert_eq!(pow(&2.0f64, 10), 1024.0);
        assert_eq!(pow(&BigRational::from_int(7), 0), BigRational::from_int(1));
    }

    #[test]
    fn parse_rational_forms() {
        assert_eq!(parse_rational("5"), Some(BigRational::from_int(5)));
        assert_eq!(parse_rational(" -3/6 "), Some(BigRational::ratio(-1, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn float_conversion_is_close() {
        let r = BigRational::ratio(1, 3);
        let f = f64::from_rational(&r);
        assert!((f - 1.0 / 3.0).abs() <= f64::EPSILON);
    }
}
