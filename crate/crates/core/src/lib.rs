//! Exact decision procedures for quadratic differential operators that
//! preserve real-rootedness.
//!
//! The crate answers one central question: given T = Q2·D² + Q1·D + Q0 with
//! deg Q2 ≤ 2, deg Q1 ≤ 1 and Q0 constant, does T map every real-rooted
//! (hyperbolic) polynomial to a hyperbolic polynomial?  The decision runs in
//! exact rational arithmetic and is reached by two independent routes that
//! are cross-checked against each other:
//!
//! * [`quad_hp::decide_hp`] tests sign-definiteness of the Wronskian
//!   combination W[Q0,Q2]² − W[Q0,Q1]·W[Q1,Q2] together with the proper
//!   position chain Q0 ≪ Q1 ≪ Q2,
//! * [`quad_hp::decide_hp_closed_form`] evaluates the equivalent coefficient
//!   inequalities directly, with no root extraction.
//!
//! Supporting modules: [`poly`] (dense univariate polynomials over
//! `BigRational`), [`real_roots`] (Sturm chains, square-free decomposition,
//! exact root isolation), [`interlace`] (interlacing zeros and proper
//! position), [`symbol_probe`] (the only floating-point module: numeric
//! corroboration through zeros of the operator symbol in the upper
//! half-plane) and
//! [`multiplier`] (multiplier sequences for the standard, Legendre and
//! Jacobi bases).
//!
//! The crate is `no_std` (it allocates, so `alloc` is required); everything
//! involving files, JSON or a terminal lives in the companion CLI crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod interlace;
pub mod multiplier;
pub mod poly;
pub mod quad_hp;
pub mod rational;
pub mod real_roots;
pub mod symbol_probe;

pub use num_rational::BigRational;

pub use poly::RatPoly;
pub use quad_hp::{Certificate, QuadOperator, SearchBudget, Verdict};
pub use real_roots::{is_hyperbolic, is_nonpositive_on_r};


