//! Multiplier sequences for the standard, Legendre and Jacobi bases.
//!
//! A sequence `{γₙ}` is a multiplier sequence for a polynomial basis `{Pₙ}`
//! when the diagonal operator `T[Pₙ] = γₙ·Pₙ` preserves hyperbolicity.  For
//! the three families handled here the diagonal operator is a quadratic
//! differential operator, so membership reduces to a closed-form inequality
//! in the family parameters; [`decide_ms`] evaluates that inequality and
//! cross-checks it against the full operator decision from [`crate::quad_hp`].

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::poly::RatPoly;
use crate::quad_hp::{Certificate, QuadOperator, Verdict};
use crate::rational::all_same_sign;
use crate::BigRational;

/// Errors of the sequence layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MultiplierError {
    /// The family parameters are outside the decidable range: a zero
    /// leading parameter for Legendre or Jacobi, or a Jacobi exponent
    /// below −1.
    InvalidSpec,
    /// A basis polynomial was requested for Jacobi exponents that do not
    /// define a genuine graded basis (`α, β > −1` is required there, while
    /// the membership inequality itself tolerates the value −1).
    InvalidParameter,
}

impl fmt::Display for MultiplierError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MultiplierError::InvalidSpec => {
                write!(f, "sequence family parameters are outside the decidable range")
            }
            MultiplierError::InvalidParameter => {
                write!(f, "basis polynomials require Jacobi exponents strictly above -1")
            }
        }
    }
}

impl core::error::Error for MultiplierError {}

/// A sequence family together with its exact parameters.
///
/// The induced sequences, indexed from n = 0, are
///
/// * standard basis `xⁿ`: `γₙ = A·n(n−1) + B·n + C`,
/// * Legendre basis `Pₙ`: `γₙ = A·n(n+1) + B`,
/// * Jacobi basis `Pₙ^{(α,β)}`: `γₙ = A·n(n+α+β+1) + B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SequenceSpec {
    Standard {
        a: BigRational,
        b: BigRational,
        c: BigRational,
    },
    Legendre {
        a: BigRational,
        b: BigRational,
    },
    Jacobi {
        a: BigRational,
        b: BigRational,
        alpha: BigRational,
        beta: BigRational,
    },
}

/// The polynomial basis a [`SequenceSpec`] acts on, without the sequence
/// parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BasisFamily {
    Standard,
    Legendre,
    Jacobi { alpha: BigRational, beta: BigRational },
}

impl SequenceSpec {
    /// Checks the family parameters: Legendre and Jacobi need `A ≠ 0`, and
    /// Jacobi exponents must satisfy `α, β ≥ −1`.  (The standard family is
    /// unconstrained; `A = 0` degenerates to an affine sequence.)
    pub fn validate(&self) -> Result<(), MultiplierError> {
        let minus_one = -BigRational::one();
        match self {
            SequenceSpec::Standard { .. } => Ok(()),
            SequenceSpec::Legendre { a, .. } => {
                if a.is_zero() {
                    Err(MultiplierError::InvalidSpec)
                } else {
                    Ok(())
                }
            }
            SequenceSpec::Jacobi { a, alpha, beta, .. } => {
                if a.is_zero() || *alpha < minus_one || *beta < minus_one {
                    Err(MultiplierError::InvalidSpec)
                } else {
                    Ok(())
                }
            }
        }
    }

    /// The basis this spec diagonalizes over.
    pub fn basis_family(&self) -> BasisFamily {
        match self {
            SequenceSpec::Standard { .. } => BasisFamily::Standard,
            SequenceSpec::Legendre { .. } => BasisFamily::Legendre,
            SequenceSpec::Jacobi { alpha, beta, .. } => BasisFamily::Jacobi {
                alpha: alpha.clone(),
                beta: beta.clone(),
            },
        }
    }

    /// The n-th sequence term, exactly.
    pub fn term(&self, n: usize) -> BigRational {
        let n = BigRational::from_integer(n.into());
        match self {
            SequenceSpec::Standard { a, b, c } => {
                a * (&n * (&n - BigRational::one())) + b * &n + c
            }
            SequenceSpec::Legendre { a, b } => a * (&n * (&n + BigRational::one())) + b,
            SequenceSpec::Jacobi { a, b, alpha, beta } => {
                a * (&n * (&n + alpha + beta + BigRational::one())) + b
            }
        }
    }
}

/// The terms `γ₀ … γ_N` (inclusive) of the sequence.
pub fn sequence_terms(spec: &SequenceSpec, n_max: usize) -> Vec<BigRational> {
    (0..=n_max).map(|n| spec.term(n)).collect()
}

/// The quadratic differential operator whose diagonal action on the family
/// basis realizes the sequence:
///
/// * standard: `A·x²D² + B·xD + C`,
/// * Legendre: `A(x²−1)D² + 2A·xD + B`,
/// * Jacobi:   `A(x²−1)D² + A((α+β+2)x − (β−α))D + B`.
pub fn operator_of(spec: &SequenceSpec) -> Result<QuadOperator, MultiplierError> {
    spec.validate()?;
    let op = match spec {
        SequenceSpec::Standard { a, b, c } => QuadOperator::new(
            RatPoly::monomial(a.clone(), 2),
            RatPoly::monomial(b.clone(), 1),
            RatPoly::constant(c.clone()),
        ),
        SequenceSpec::Legendre { a, b } => QuadOperator::new(
            RatPoly::from_int_coeffs(&[-1, 0, 1]).scale(a),
            RatPoly::monomial(a + a, 1),
            RatPoly::constant(b.clone()),
        ),
        SequenceSpec::Jacobi { a, b, alpha, beta } => {
            let two = BigRational::from_integer(2.into());
            let q1 = RatPoly::new(vec![a * -(beta - alpha), a * (alpha + beta + &two)]);
            QuadOperator::new(
                RatPoly::from_int_coeffs(&[-1, 0, 1]).scale(a),
                q1,
                RatPoly::constant(b.clone()),
            )
        }
    };
    // The component degrees are 2/1/0 by construction.
    Ok(op.expect("diagonal operators satisfy the degree caps"))
}

/// Membership decision together with its evidence.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiplierCertificate {
    /// Whether the sequence multiplies hyperbolic polynomials to hyperbolic
    /// polynomials, decided by the family's closed-form inequality.
    pub is_multiplier: bool,
    /// The full operator-route certificate for the induced operator.  Absent
    /// exactly when the operator is not genuinely quadratic (standard family
    /// with `A = 0`); present otherwise, with a verdict that always matches
    /// `is_multiplier`.
    pub operator_certificate: Option<Certificate>,
    /// The first terms `γ₀ … γ₇` of the sequence.
    pub sequence_head: Vec<BigRational>,
}

/// Number of terms shown in [`MultiplierCertificate::sequence_head`].
const SEQUENCE_HEAD_LEN: usize = 8;

/// Decides whether the described sequence is a multiplier sequence.
///
/// The verdict comes from the family's closed-form inequality:
///
/// * standard: `A, B, C` of the same sign (zeros are compatible with
///   either sign) and `B² − 4AC ≥ 0`,
/// * Legendre: `0 ≤ B/A ≤ 1`,
/// * Jacobi:   `0 ≤ B/A ≤ (α+1)(β+1)`, with `α, β ≥ −1`.
///
/// Whenever the induced operator is genuinely quadratic the independent
/// decision from [`QuadOperator::decide_hp`] is computed as well and the two
/// verdicts are asserted to agree; both are returned.
pub fn decide_ms(spec: &SequenceSpec) -> Result<MultiplierCertificate, MultiplierError> {
    spec.validate()?;
    let is_multiplier = match spec {
        SequenceSpec::Standard { a, b, c } => {
            let discriminant = b * b - BigRational::from_integer(4.into()) * a * c;
            all_same_sign(&[a, b, c]) && !discriminant.is_negative()
        }
        SequenceSpec::Legendre { a, b } => {
            let ratio = b / a;
            !ratio.is_negative() && ratio <= BigRational::one()
        }
        SequenceSpec::Jacobi { a, b, alpha, beta } => {
            let ratio = b / a;
            let cap = (alpha + BigRational::one()) * (beta + BigRational::one());
            !ratio.is_negative() && ratio <= cap
        }
    };
    let quadratic = match spec {
        SequenceSpec::Standard { a, .. } => !a.is_zero(),
        _ => true,
    };
    let operator_certificate = if quadratic {
        let certificate = operator_of(spec)?.decide_hp_with_budget(None);
        let operator_says = match certificate.verdict {
            Verdict::Preserves => true,
            Verdict::NotPreserves => false,
            Verdict::HypothesesViolated => {
                unreachable!("a nonzero leading parameter yields a degree-2 operator")
            }
        };
        assert_eq!(
            operator_says, is_multiplier,
            "closed-form inequality and operator decision disagree for {spec:?}"
        );
        Some(certificate)
    } else {
        None
    };
    Ok(MultiplierCertificate {
        is_multiplier,
        operator_certificate,
        sequence_head: sequence_terms(spec, SEQUENCE_HEAD_LEN - 1),
    })
}

/// The n-th basis polynomial: `xⁿ`, the Legendre polynomial `Pₙ`, or the
/// Jacobi polynomial `Pₙ^{(α,β)}` (which requires `α, β > −1`), with exact
/// rational coefficients via the classical three-term recurrences.
pub fn basis_poly(family: &BasisFamily, n: usize) -> Result<RatPoly, MultiplierError> {
    match family {
        BasisFamily::Standard => Ok(RatPoly::monomial(BigRational::one(), n)),
        BasisFamily::Legendre => Ok(legendre_poly(n)),
        BasisFamily::Jacobi { alpha, beta } => {
            let minus_one = -BigRational::one();
            if *alpha <= minus_one || *beta <= minus_one {
                return Err(MultiplierError::InvalidParameter);
            }
            Ok(jacobi_poly(alpha, beta, n))
        }
    }
}

/// `P₀ = 1`, `P₁ = x`, `(n+1)·P_{n+1} = (2n+1)·x·Pₙ − n·P_{n−1}`.
fn legendre_poly(n: usize) -> RatPoly {
    let mut prev = RatPoly::one();
    let mut cur = RatPoly::monomial(BigRational::one(), 1);
    match n {
        0 => return prev,
        1 => return cur,
        _ => {}
    }
    for m in 1..n {
        let m_rat = BigRational::from_integer(m.into());
        let two_m_plus_1 = &m_rat + &m_rat + BigRational::one();
        let next = (RatPoly::monomial(two_m_plus_1, 1) * &cur - prev.scale(&m_rat))
            .scale(&(BigRational::one() / (m_rat + BigRational::one())));
        prev = cur;
        cur = next;
    }
    cur
}

/// `P₀ = 1`, `P₁ = (α+β+2)x/2 + (α−β)/2`, and for n ≥ 2
///
/// ```text
/// 2n(n+α+β)(2n+α+β−2)·Pₙ
///   = (2n+α+β−1)·[(2n+α+β)(2n+α+β−2)·x + α²−β²]·P_{n−1}
///     − 2(n+α−1)(n+β−1)(2n+α+β)·P_{n−2},
/// ```
///
/// whose leading factor never vanishes for `α, β > −1`.
fn jacobi_poly(alpha: &BigRational, beta: &BigRational, n: usize) -> RatPoly {
    let one = BigRational::one();
    let two = BigRational::from_integer(2.into());
    let s = alpha + beta;
    let mut prev = RatPoly::one();
    let mut cur = RatPoly::new(vec![(alpha - beta) / &two, (&s + &two) / &two]);
    match n {
        0 => return prev,
        1 => return cur,
        _ => {}
    }
    for m in 2..=n {
        let m_rat = BigRational::from_integer(m.into());
        let two_m_s = &two * &m_rat + &s;
        let lead = &two * &m_rat * (&m_rat + &s) * (&two_m_s - &two);
        let x_part = RatPoly::new(vec![
            alpha * alpha - beta * beta,
            &two_m_s * (&two_m_s - &two),
        ])
        .scale(&(&two_m_s - &one));
        let tail = &two * (&m_rat + alpha - &one) * (&m_rat + beta - &one) * &two_m_s;
        let next = (x_part * &cur - prev.scale(&tail)).scale(&(one.clone() / lead));
        prev = cur;
        cur = next;
    }
    cur
}

/// Checks the exact diagonal identity `T[Pₙ] = γₙ·Pₙ` for `n = 0 … N`,
/// where `T = operator_of(spec)` and `Pₙ` is the family basis.  The
/// identity holds for every valid spec, whether or not the sequence is a
/// multiplier sequence.
pub fn verify_diagonal(spec: &SequenceSpec, n_max: usize) -> Result<bool, MultiplierError> {
    let op = operator_of(spec)?;
    let family = spec.basis_family();
    for n in 0..=n_max {
        let basis = basis_poly(&family, n)?;
        if op.apply(&basis) != basis.scale(&spec.term(n)) {
            return Ok(false);
        }
    }
    Ok(true)
}
