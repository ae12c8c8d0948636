//! Scalar abstraction for the exact linear algebra.
//!
//! Anything that behaves like a field (ring operations plus multiplicative
//! inverse) qualifies. Integer types do not implement `Inv`, so they are
//! excluded by construction.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Inv, One, Zero};

use crate::error::{Error, Result};

pub trait Field:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + FromPrimitive
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Inv<Output = Self>
    + Send
    + Sync
{
    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("every field in use embeds the integers")
    }
}

impl<T> Field for T where
    T: Clone
        + Debug
        + PartialEq
        + Zero
        + One
        + FromPrimitive
        + Neg<Output = T>
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Div<Output = T>
        + Inv<Output = T>
        + Send
        + Sync
{
}

/// Parses `"p/q"` or `"p"` into an exact rational.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let text = text.trim();
    let bad = || Error::Parse(format!("`{text}` is not a rational of the form p/q"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// Renders a rational as `"p/q"`, or `"p"` when integral.
pub fn format_rational(value: &BigRational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Decimal approximation used only for display when explicitly requested.
pub fn approximate(value: &BigRational, digits: usize) -> String {
    use num_integer::Integer;
    let negative = value.numer() < &BigInt::zero();
    let numer = if negative {
        -value.numer().clone()
    } else {
        value.numer().clone()
    };
    let denom = value.denom().clone();
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = numer * &scale;
    let (q, r) = scaled.div_rem(&denom);
    let q = if r * 2 >= denom { q + 1 } else { q };
    let (int_part, frac_part) = q.div_rem(&scale);
    let sign = if negative && !(int_part.is_zero() && frac_part.is_zero()) {
        "-"
    } else {
        ""
    };
    if digits == 0 {
        format!("≈{sign}{int_part}")
    } else {
        format!(
            "≈{sign}{int_part}.{:0>width$}",
            frac_part.to_string(),
            width = digits
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!(
            parse_rational("29/60").unwrap(),
            BigRational::new(29.into(), 60.into())
        );
        assert_eq!(
            parse_rational("-2").unwrap(),
            BigRational::from_integer((-2).into())
        );
        assert_eq!(
            parse_rational(" 4/2 ").unwrap(),
            BigRational::from_integer(2.into())
        );
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn formats_and_approximates() {
        let r = BigRational::new(3.into(), 8.into());
        assert_eq!(format_rational(&r), "3/8");
        assert_eq!(approximate(&r, 4), "≈0.3750");
        assert_eq!(approximate(&-r, 2), "≈-0.38");
        assert_eq!(format_rational(&BigRational::from_integer(7.into())), "7");
    }
}
