//! Floating-point corroboration via the operator's two-variable symbol.
//!
//! The symbol of `T = Q₂D² + Q₁D + Q₀` is `Q₀(x) − Q₁(x)w + Q₂(x)w²`.  An
//! operator preserves hyperbolicity exactly when the symbol has no zero with
//! both `x` and `w` in the open upper half-plane.  This module samples the
//! symbol randomly ([`monte_carlo_probe`]) and, for non-preserving
//! parameters, constructs an explicit near-zero pair ([`construct_violation`]
//! and [`construct_violation_repeated`]).
//!
//! This is the only inexact module in the crate: nothing here feeds a
//! verdict; outputs carry their residuals so callers can judge them.

// Float comparisons are written in negated form (`!(x > 0.0)`) on purpose:
// a NaN produced by a degenerate configuration must fall through to the
// failure branch rather than silently pass.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use core::fmt;

use num_complex::Complex64;
// `Float` supplies sqrt/acos/cos/powf portably: this crate is `no_std`, so
// the inherent `std` methods on `f64` are unavailable outside tests.
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::ToPrimitive;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::poly::RatPoly;
use crate::quad_hp::QuadOperator;

/// A point of ℂ as a plain coordinate pair.  "Upper half-plane" always
/// means `im > 0` strictly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexPoint {
    pub re: f64,
    pub im: f64,
}

impl ComplexPoint {
    pub fn new(re: f64, im: f64) -> Self {
        ComplexPoint { re, im }
    }

    pub fn in_upper_half_plane(&self) -> bool {
        self.im > 0.0
    }

    fn to_complex(self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    fn from_complex(z: Complex64) -> Self {
        ComplexPoint { re: z.re, im: z.im }
    }
}

/// A constructed near-zero of a normalized symbol: `x`, `w` strictly in the
/// upper half-plane, with the achieved residual.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StabilityWitness {
    pub x: ComplexPoint,
    pub w: ComplexPoint,
    pub residual: f64,
}

/// Errors of the constructive builders.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbeError {
    /// The requested value lies in the range where no violation exists
    /// (the operator-side parameters are those of a preserver).
    InvalidRange,
    /// The numeric construction could not certify a witness.  This should
    /// not happen for valid inputs and indicates a bug or a degenerate
    /// argument (such as coinciding shifts).
    ConstructionFailed,
}

impl fmt::Display for ProbeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProbeError::InvalidRange => {
                write!(f, "no violation exists for parameters in the preserving range")
            }
            ProbeError::ConstructionFailed => {
                write!(f, "numeric construction failed to certify a witness")
            }
        }
    }
}

impl core::error::Error for ProbeError {}

fn eval_complex(p: &RatPoly, z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for c in p.coeffs().iter().rev() {
        acc = acc * z + Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0);
    }
    acc
}

/// The symbol `Q₀(x) − Q₁(x)·w + Q₂(x)·w²` in complex float arithmetic.
pub fn symbol(op: &QuadOperator, x: ComplexPoint, w: ComplexPoint) -> Complex64 {
    let x = x.to_complex();
    let w = w.to_complex();
    eval_complex(op.q0(), x) - eval_complex(op.q1(), x) * w + eval_complex(op.q2(), x) * w * w
}

/// Result of a random symbol scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeResult {
    /// Smallest `|symbol|` seen.
    pub min_abs: f64,
    /// Where the minimum occurred.
    pub argmin: (ComplexPoint, ComplexPoint),
}

/// Scans the symbol at `samples` pseudo-random upper-half-plane pairs,
/// deterministic in `seed`: real parts uniform in [−10³, 10³], imaginary
/// parts log-uniform in [10⁻³, 10³].  Returns the smallest `|symbol|` and
/// its location.  A preserving operator can never produce an exact zero;
/// the magnitude is a consistency signal, not a verdict.
pub fn monte_carlo_probe(op: &QuadOperator, samples: u64, seed: u64) -> ProbeResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut unit = move || (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
    let mut best = ProbeResult {
        min_abs: f64::INFINITY,
        argmin: (ComplexPoint::new(0.0, 1.0), ComplexPoint::new(0.0, 1.0)),
    };
    for _ in 0..samples.max(1) {
        let x = ComplexPoint::new(-1e3 + 2e3 * unit(), 10f64.powf(-3.0 + 6.0 * unit()));
        let w = ComplexPoint::new(-1e3 + 2e3 * unit(), 10f64.powf(-3.0 + 6.0 * unit()));
        let v = symbol(op, x, w).norm();
        if v < best.min_abs {
            best.min_abs = v;
            best.argmin = (x, w);
        }
    }
    best
}

const BRACKET_TOLERANCE: f64 = 1e-12;
const RESIDUAL_TOLERANCE: f64 = 1e-9;
const MAX_HALVINGS: u32 = 60;

/// Constructs `x`, `w` in the open upper half-plane with
/// `((x + r1)·w − a)·((x + r2)·w − b) = r` up to the reported residual.
///
/// This realizes a zero of the normalized symbol
/// `((x+r1)w − a)((x+r2)w − b) − r`; for an operator with `Q₂`-roots
/// `ρ₁, ρ₂`, call it with shifts `r1 = −ρ₁`, `r2 = −ρ₂` and `r = ab − R`.
///
/// `a` and `b` may be negative; the preserving range (where no violation
/// exists and `InvalidRange` is returned) is `a ≥ 0`, `b ≥ 0`, `r ∈ [0, ab]`.
/// Requires `r1 ≠ r2`.
pub fn construct_violation(
    a: f64,
    b: f64,
    r1: f64,
    r2: f64,
    r: f64,
) -> Result<StabilityWitness, ProbeError> {
    if !(a.is_finite() && b.is_finite() && r1.is_finite() && r2.is_finite() && r.is_finite())
        || r1 == r2
    {
        return Err(ProbeError::ConstructionFailed);
    }
    if a >= 0.0 && b >= 0.0 && r >= 0.0 && r <= a * b {
        return Err(ProbeError::InvalidRange);
    }
    // Normalize so the first shift is the smaller one; the target product is
    // symmetric under swapping the (shift, offset) pairs.
    let (s1, oa, s2, ob) = if r1 < r2 {
        (r1, a, r2, b)
    } else {
        (r2, b, r1, a)
    };
    let pair = if r < 0.0 {
        let s = (-r).sqrt();
        if oa < ob + 2.0 * s {
            negative_product_case1(oa, ob, s1, s2, s)
        } else {
            negative_product_case2(oa, ob, s1, s2, s)
        }
    } else if r == 0.0 {
        zero_product_case(oa, ob, s1, s2)
    } else {
        positive_product_case(oa, ob, s1, s2, r)
    };
    let (x, w) = pair.ok_or(ProbeError::ConstructionFailed)?;
    certify(a, b, r1, r2, r, x, w)
}

/// Final acceptance: strict upper-half-plane membership and residual check
/// against the original (unswapped) arguments.
fn certify(
    a: f64,
    b: f64,
    r1: f64,
    r2: f64,
    r: f64,
    x: Complex64,
    w: Complex64,
) -> Result<StabilityWitness, ProbeError> {
    let product = ((x + r1) * w - a) * ((x + r2) * w - b);
    let residual = (product - r).norm();
    if x.im > 0.0 && w.im > 0.0 && residual <= RESIDUAL_TOLERANCE {
        Ok(StabilityWitness {
            x: ComplexPoint::from_complex(x),
            w: ComplexPoint::from_complex(w),
            residual,
        })
    } else {
        Err(ProbeError::ConstructionFailed)
    }
}

/// Core assembly: given factor endpoints `A`, `B` with `Im A < Im B` and
/// `B` in the upper half-plane, rotate by the angle θ₀ at which the rotated
/// imaginary parts agree (found by bisection on `[0, Arg B]`), then
///
/// ```text
/// k₀ = (r2 − r1) / Re(e^{−iθ₀}(B − A)),   w = e^{iθ₀}/k₀,
/// x  = (k₀·e^{−iθ₀}·(A + B) − r1 − r2) / 2,
/// ```
///
/// which realizes `(x + r1)·w = A` and `(x + r2)·w = B`.
fn assemble_upper(a_pt: Complex64, b_pt: Complex64, r1: f64, r2: f64) -> Option<(Complex64, Complex64)> {
    let f = |theta: f64| {
        let rot = Complex64::from_polar(1.0, -theta);
        (a_pt * rot).im - (b_pt * rot).im
    };
    let theta0 = bisect(f, 0.0, b_pt.arg())?;
    let rot = Complex64::from_polar(1.0, -theta0);
    let denom = ((b_pt - a_pt) * rot).re;
    if denom == 0.0 {
        return None;
    }
    let k0 = (r2 - r1) / denom;
    let w = Complex64::from_polar(1.0, theta0) / k0;
    let x = (rot * (a_pt + b_pt) * k0 - r1 - r2) / 2.0;
    Some((x, w))
}

/// Mirror image of [`assemble_upper`] for `B` in the lower half-plane:
/// rotation by `e^{+iθ}` on `[0, −Arg B]`, `w = e^{−iθ₀}/k₀`.
fn assemble_lower(a_pt: Complex64, b_pt: Complex64, r1: f64, r2: f64) -> Option<(Complex64, Complex64)> {
    let f = |theta: f64| {
        let rot = Complex64::from_polar(1.0, theta);
        (a_pt * rot).im - (b_pt * rot).im
    };
    let theta0 = bisect(f, 0.0, -b_pt.arg())?;
    let rot = Complex64::from_polar(1.0, theta0);
    let denom = ((b_pt - a_pt) * rot).re;
    if denom == 0.0 {
        return None;
    }
    let k0 = (r2 - r1) / denom;
    let w = Complex64::from_polar(1.0, -theta0) / k0;
    let x = (rot * (a_pt + b_pt) * k0 - r1 - r2) / 2.0;
    Some((x, w))
}

/// Bisection for a sign change from negative to positive on `[lo, hi]`.
fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> Option<f64> {
    if !(lo < hi) || !(f(lo) < 0.0) || !(f(hi) > 0.0) {
        return None;
    }
    while hi - lo > BRACKET_TOLERANCE {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

/// Negative product, `a < b + 2√|r|`: place the `a`-factor in the second
/// quadrant and the `b`-factor in the first, at radii `k·s` and `s/k` with
/// `k < 1`, so the product is exactly `−s² = r`.
fn negative_product_case1(a: f64, b: f64, r1: f64, r2: f64, s: f64) -> Option<(Complex64, Complex64)> {
    // Choose the opening angle so that half of the case inequality's slack
    // survives: cos φ = (a − b)/(4s) + 1/2 sits strictly between the
    // boundary value (a − b)/(2s) and 1.
    let phi = ((a - b) / (4.0 * s) + 0.5).max(0.0).acos();
    let margin = b + 2.0 * s * phi.cos() - a;
    if !(margin > 0.0) {
        return None;
    }
    // Pull k up toward 1 until the angular ordering of A and B is certain.
    for j in 1..MAX_HALVINGS {
        let k = 1.0 - 0.5f64.powi(j as i32);
        if a / k - k * b - 2.0 * s * phi.cos() <= -0.5 * margin {
            let a_pt = Complex64::from_polar(k * s, core::f64::consts::PI - phi) + a;
            let b_pt = Complex64::from_polar(s / k, phi) + b;
            return assemble_upper(a_pt, b_pt, r1, r2);
        }
    }
    None
}

/// Negative product, `a ≥ b + 2√|r|`: the reflected configuration, factors
/// in the third and fourth quadrants with `k > 1`.
fn negative_product_case2(a: f64, b: f64, r1: f64, r2: f64, s: f64) -> Option<(Complex64, Complex64)> {
    let phi = core::f64::consts::FRAC_PI_4;
    // b − a + 2s·cos φ ≤ (√2 − 2)·s < 0, so pushing k down toward 1 always
    // reaches the required ordering.
    let margin = a - 2.0 * s * phi.cos() - b;
    if !(margin > 0.0) {
        return None;
    }
    for j in 1..MAX_HALVINGS {
        let k = 1.0 + 0.5f64.powi(j as i32);
        if k * b - a / k + 2.0 * s * phi.cos() <= -0.5 * margin {
            let a_pt = Complex64::from_polar(k * s, phi - core::f64::consts::PI) + a;
            let b_pt = Complex64::from_polar(s / k, -phi) + b;
            return assemble_lower(a_pt, b_pt, r1, r2);
        }
    }
    None
}

/// Zero product with `a < 0` or `b < 0`: make one factor vanish outright by
/// solving `(x + shift)·w = negative constant` with both parts on the
/// positive imaginary axis.
fn zero_product_case(a: f64, b: f64, r1: f64, r2: f64) -> Option<(Complex64, Complex64)> {
    let (value, shift) = if a < 0.0 {
        (a, r1)
    } else if b < 0.0 {
        (b, r2)
    } else {
        return None;
    };
    let t = (-value).sqrt();
    let w = Complex64::new(0.0, t);
    let x = Complex64::new(-shift, t);
    Some((x, w))
}

/// Positive product: write `r = a′b′` with `a′ > a`, `b′ > b` both positive,
/// and open the factors to an angle `φ` near π (the `a`-factor just below
/// the negative real axis, the `b`-factor just above), keeping both real
/// parts negative.
fn positive_product_case(a: f64, b: f64, r1: f64, r2: f64, r: f64) -> Option<(Complex64, Complex64)> {
    let a_floor = a.max(0.0);
    let b_floor = b.max(0.0);
    let a_dash = if a_floor > 0.0 && b_floor > 0.0 {
        a_floor * (r / (a_floor * b_floor)).sqrt()
    } else if a_floor > 0.0 {
        2.0 * a_floor
    } else if b_floor > 0.0 {
        r / (2.0 * b_floor)
    } else {
        r.sqrt()
    };
    let b_dash = r / a_dash;
    if !(a_dash > a && b_dash > b) {
        return None;
    }
    // Open to an angle past π/2 with cos φ strictly below −max(a/a′, b/b′);
    // that bound is < 1 because a < a′ and b < b′, so a midpoint (or the
    // vertical axis, when the bound is itself negative) always works.
    let bound = (a / a_dash).max(b / b_dash);
    let cos_phi = if bound <= -1.0 { 0.0 } else { -0.5 * (1.0 + bound) };
    let phi = cos_phi.acos();
    let a_pt = Complex64::from_polar(a_dash, -phi) + a;
    let b_pt = Complex64::from_polar(b_dash, phi) + b;
    assemble_upper(a_pt, b_pt, r1, r2)
}

/// Repeated-shift analogue: constructs `x`, `w` in the open upper
/// half-plane with `z = (x + r)·w` solving `z² − a·z + big_r = 0`, possible
/// exactly when a root lies off the nonnegative real axis.  The preserving
/// range (rejected as `InvalidRange`) is `a ≥ 0` with `big_r ∈ [0, a²/4]`.
pub fn construct_violation_repeated(
    a: f64,
    r: f64,
    big_r: f64,
) -> Result<StabilityWitness, ProbeError> {
    if !(a.is_finite() && r.is_finite() && big_r.is_finite()) {
        return Err(ProbeError::ConstructionFailed);
    }
    if a >= 0.0 && big_r >= 0.0 && big_r <= a * a / 4.0 {
        return Err(ProbeError::InvalidRange);
    }
    let disc = a * a - 4.0 * big_r;
    let z = if disc >= 0.0 {
        // Both roots real; the smaller one is negative for every parameter
        // choice outside the preserving range.
        Complex64::new(0.5 * (a - disc.sqrt()), 0.0)
    } else {
        Complex64::new(0.5 * a, 0.5 * (-disc).sqrt())
    };
    if z.im == 0.0 && z.re >= 0.0 {
        return Err(ProbeError::ConstructionFailed);
    }
    // Split the argument evenly between the two factors of z = (x + r)·w.
    let phi = z.arg(); // in (0, π] since z is real-negative or upper
    let w = Complex64::from_polar(1.0, 0.5 * phi);
    let x = z / w - r;
    let root_residual = (z * z - a * z + big_r).norm();
    let split_residual = ((x + r) * w - z).norm();
    if !(x.im > 0.0
        && w.im > 0.0
        && root_residual <= BRACKET_TOLERANCE
        && split_residual <= BRACKET_TOLERANCE)
    {
        return Err(ProbeError::ConstructionFailed);
    }
    let z_eff = (x + r) * w;
    Ok(StabilityWitness {
        x: ComplexPoint::from_complex(x),
        w: ComplexPoint::from_complex(w),
        residual: (z_eff * z_eff - a * z_eff + big_r).norm(),
    })
}
