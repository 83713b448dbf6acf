//! Dense univariate polynomials with exact rational coefficients.
//!
//! Coefficients are stored ascending by degree and kept normalized: the
//! zero polynomial is the empty vector, and a nonzero polynomial never has a
//! trailing zero coefficient.  The zero polynomial has no degree
//! ([`RatPoly::degree`] returns `None`, standing in for "minus infinity");
//! `-1` is never used as a degree sentinel.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::rational::{format_rational, parse_rational, ParseRationalError};

/// A univariate polynomial over `BigRational`, coefficients ascending by
/// degree.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

/// Error produced when reading a polynomial from coefficient strings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsePolyError {
    /// Index of the offending coefficient.
    pub index: usize,
    /// The underlying rational parse failure.
    pub cause: ParseRationalError,
}

impl fmt::Display for ParsePolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "coefficient {}: {}", self.index, self.cause)
    }
}

impl core::error::Error for ParsePolyError {}

impl RatPoly {
    /// Builds a polynomial from coefficients ascending by degree, trimming
    /// trailing zeros.
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    /// The zero polynomial.
    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    /// The constant polynomial `c`.
    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c·x^deg`.
    pub fn monomial(c: BigRational, deg: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigRational::zero(); deg + 1];
        coeffs[deg] = c;
        RatPoly { coeffs }
    }

    /// Builds a polynomial from small integer coefficients ascending by
    /// degree.
    pub fn from_int_coeffs(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    /// The monic linear polynomial `x − r`.
    pub fn linear_from_root(r: &BigRational) -> Self {
        Self::new(vec![-r.clone(), BigRational::one()])
    }

    /// Reads a polynomial from coefficient strings ascending by degree, each
    /// in the `"num"` / `"num/den"` form.
    pub fn from_coeff_strings<S: AsRef<str>>(coeffs: &[S]) -> Result<Self, ParsePolyError> {
        let parsed: Result<Vec<_>, _> = coeffs
            .iter()
            .enumerate()
            .map(|(index, s)| {
                parse_rational(s.as_ref()).map_err(|cause| ParsePolyError { index, cause })
            })
            .collect();
        Ok(Self::new(parsed?))
    }

    /// Canonical coefficient strings ascending by degree.
    ///
    /// The zero polynomial yields `["0"]` so the text form is never an empty
    /// array.
    pub fn coeff_strings(&self) -> Vec<String> {
        if self.coeffs.is_empty() {
            return vec!["0".to_string()];
        }
        self.coeffs.iter().map(format_rational).collect()
    }

    /// True for the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial (which has no degree).
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `x^i` (zero when `i` exceeds the degree).
    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Coefficients ascending by degree; empty for the zero polynomial.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Leading coefficient, or `None` for the zero polynomial.
    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    /// Value at `x` by Horner's rule.
    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Product with a scalar.
    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// `self^n` by repeated squaring; `p^0 = 1` including for `p = 0`.
    pub fn pow(&self, n: usize) -> Self {
        let mut base = self.clone();
        let mut exp = n;
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Euclidean division: returns `(q, r)` with `self = q·divisor + r` and
    /// either `r = 0` or `deg r < deg divisor`.
    ///
    /// Returns `None` when `divisor` is the zero polynomial.
    pub fn div_rem(&self, divisor: &Self) -> Option<(Self, Self)> {
        let d_deg = divisor.degree()?;
        let d_lead = divisor.leading_coeff().expect("nonzero divisor");
        let mut rem = self.coeffs.clone();
        if rem.len() <= d_deg {
            return Some((Self::zero(), self.clone()));
        }
        let q_len = rem.len() - d_deg;
        let mut quot = vec![BigRational::zero(); q_len];
        for qi in (0..q_len).rev() {
            let lead = rem[qi + d_deg].clone();
            if lead.is_zero() {
                continue;
            }
            let factor = lead / d_lead;
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                let t = dc * &factor;
                rem[qi + j] = &rem[qi + j] - t;
            }
            quot[qi] = factor;
        }
        rem.truncate(d_deg);
        Some((Self::new(quot), Self::new(rem)))
    }

    /// Exact quotient; panics if the division leaves a remainder.
    ///
    /// Intended for cofactor computations such as `p / gcd(p, p')` where
    /// divisibility is guaranteed.
    pub fn exact_div(&self, divisor: &Self) -> Self {
        let (q, r) = self
            .div_rem(divisor)
            .expect("exact_div: division by the zero polynomial");
        assert!(r.is_zero(), "exact_div: nonzero remainder");
        q
    }

    /// Rescales by the positive rational that makes the coefficients coprime
    /// integers.  The sign of every coefficient is preserved, so sign
    /// analysis (Sturm chains, positivity) is unaffected.
    pub fn content_normalized(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in &self.coeffs {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let factor = BigRational::new(den_lcm, num_gcd);
        self.scale(&factor)
    }

    /// Content-normalized with a positive leading coefficient.  Useful as a
    /// canonical representative when only the root set matters.
    pub fn primitive_positive(&self) -> Self {
        let p = self.content_normalized();
        match p.leading_coeff() {
            Some(lc) if lc.is_negative() => -&p,
            _ => p,
        }
    }

    /// Monic multiple of `gcd(self, other)`; zero when both inputs are zero.
    ///
    /// Remainders are content-normalized at every Euclidean step to keep
    /// coefficient growth in check.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.content_normalized();
        let mut b = other.content_normalized();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor in gcd loop");
            a = b;
            b = r.content_normalized();
        }
        match a.leading_coeff() {
            Some(lc) => {
                let inv = BigRational::one() / lc;
                a.scale(&inv)
            }
            None => a,
        }
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatPoly({self})")
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit_coeff = mag.is_one() && i > 0;
            if !unit_coeff {
                write!(f, "{}", format_rational(&mag))?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &RatPoly {
    type Output = RatPoly;

    fn add(self, rhs: &RatPoly) -> RatPoly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (i, c) in short.coeffs.iter().enumerate() {
            coeffs[i] = &coeffs[i] + c;
        }
        RatPoly::new(coeffs)
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;

    fn sub(self, rhs: &RatPoly) -> RatPoly {
        self + &(-rhs)
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;

    fn neg(self) -> RatPoly {
        RatPoly {
            coeffs: self.coeffs.iter().map(Neg::neg).collect(),
        }
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;

    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut coeffs =
            vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + a * b;
            }
        }
        RatPoly::new(coeffs)
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for RatPoly {
            type Output = RatPoly;
            fn $method(self, rhs: RatPoly) -> RatPoly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&RatPoly> for RatPoly {
            type Output = RatPoly;
            fn $method(self, rhs: &RatPoly) -> RatPoly {
                (&self).$method(rhs)
            }
        }
        impl $trait<RatPoly> for &RatPoly {
            type Output = RatPoly;
            fn $method(self, rhs: RatPoly) -> RatPoly {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for RatPoly {
    type Output = RatPoly;

    fn neg(self) -> RatPoly {
        -&self
    }
}
