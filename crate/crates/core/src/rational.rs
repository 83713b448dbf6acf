//! Parsing and formatting for the exact rational scalar type.
//!
//! The canonical text form is `"num"` for integers and `"num/den"` otherwise,
//! always in lowest terms with a positive denominator (the representation
//! `BigRational` maintains internally).

use alloc::string::{String, ToString};
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Error produced when a rational literal cannot be read.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseRationalError {
    /// The text is not of the form `int` or `int/int`.
    Malformed(String),
    /// The denominator part is zero.
    ZeroDenominator(String),
}

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseRationalError::Malformed(s) => write!(f, "malformed rational literal `{s}`"),
            ParseRationalError::ZeroDenominator(s) => {
                write!(f, "rational literal `{s}` has a zero denominator")
            }
        }
    }
}

impl core::error::Error for ParseRationalError {}

/// Reads a rational from its canonical text form, `"-3"` or `"5/7"`.
///
/// Whitespace is not accepted; the sign belongs to the numerator.
pub fn parse_rational(s: &str) -> Result<BigRational, ParseRationalError> {
    let malformed = || ParseRationalError::Malformed(s.to_string());
    let (num_part, den_part) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let numer: BigInt = num_part.parse().map_err(|_| malformed())?;
    let denom: BigInt = match den_part {
        Some(d) => d.parse().map_err(|_| malformed())?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(ParseRationalError::ZeroDenominator(s.to_string()));
    }
    Ok(BigRational::new(numer, denom))
}

/// Writes a rational in canonical text form: `"num"` when the denominator is
/// one, `"num/den"` otherwise.
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        let mut s = q.numer().to_string();
        s.push('/');
        s.push_str(&q.denom().to_string());
        s
    }
}

/// Convenience constructor for small rationals.
///
/// Panics if `den` is zero.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Convenience constructor for small integers as rationals.
pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Sign of a rational as -1, 0 or 1.
pub fn sign(q: &BigRational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

/// True when every value in the slice is ≥ 0 or every value is ≤ 0.
///
/// Zeros are compatible with both signs, so an all-zero slice qualifies.
pub fn all_same_sign(values: &[&BigRational]) -> bool {
    let mut seen_pos = false;
    let mut seen_neg = false;
    for v in values {
        match sign(v) {
            1 => seen_pos = true,
            -1 => seen_neg = true,
            _ => {}
        }
    }
    !(seen_pos && seen_neg)
}
