//! Exact real-root analysis: Sturm chains, square-free decomposition, root
//! counting, root isolation, hyperbolicity and global sign tests.
//!
//! Everything here is exact rational arithmetic.  Root counts are counts of
//! *distinct* real roots; multiplicities are recovered separately through the
//! square-free decomposition.  Rational roots are always reported exactly;
//! irrational roots are isolated in open intervals with rational endpoints
//! that can be refined to any width.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::poly::RatPoly;
use crate::rational::sign;

/// Error for operations that need a nonzero polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RootError {
    /// The zero polynomial has no meaningful root data.
    ZeroPolynomial,
}

impl fmt::Display for RootError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootError::ZeroPolynomial => write!(f, "operation undefined for the zero polynomial"),
        }
    }
}

impl core::error::Error for RootError {}

/// An evaluation point on the extended real line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Endpoint {
    NegInfinity,
    Value(BigRational),
    PosInfinity,
}

/// Canonical Sturm sequence: s₀ = p, s₁ = p′, sₖ₊₁ = −rem(sₖ₋₁, sₖ), each
/// element content-normalized (a positive rescale, so signs are untouched).
pub struct SturmChain {
    chain: Vec<RatPoly>,
}

impl SturmChain {
    /// Builds the chain.  Errors on the zero polynomial.
    pub fn new(p: &RatPoly) -> Result<Self, RootError> {
        if p.is_zero() {
            return Err(RootError::ZeroPolynomial);
        }
        let mut chain = vec![p.content_normalized()];
        let d = p.derivative();
        if !d.is_zero() {
            chain.push(d.content_normalized());
            loop {
                let k = chain.len();
                let (_, rem) = chain[k - 2]
                    .div_rem(&chain[k - 1])
                    .expect("chain elements are nonzero");
                if rem.is_zero() {
                    break;
                }
                chain.push((-&rem).content_normalized());
            }
        }
        Ok(SturmChain { chain })
    }

    /// The chain elements, starting with the (rescaled) input polynomial.
    pub fn elements(&self) -> &[RatPoly] {
        &self.chain
    }

    /// Number of sign variations at `t`, zeros dropped.
    ///
    /// On the chain of a square-free polynomial, dropping zeros makes this
    /// the right limit V(t⁺), so V(lo) − V(hi) counts distinct roots in the
    /// half-open interval (lo, hi].
    pub fn variations_at(&self, t: &Endpoint) -> usize {
        let mut count = 0;
        let mut prev = 0i32;
        for p in &self.chain {
            let s = match t {
                Endpoint::Value(x) => sign(&p.eval(x)),
                Endpoint::PosInfinity => p.leading_coeff().map_or(0, sign_of),
                Endpoint::NegInfinity => p.leading_coeff().map_or(0, |lc| {
                    let s = sign_of(lc);
                    if p.degree().unwrap_or(0) % 2 == 1 {
                        -s
                    } else {
                        s
                    }
                }),
            };
            if s == 0 {
                continue;
            }
            if prev != 0 && s != prev {
                count += 1;
            }
            prev = s;
        }
        count
    }

    /// Distinct roots in (lo, hi], valid when the chain was built from a
    /// square-free polynomial.
    fn count_half_open(&self, lo: &Endpoint, hi: &Endpoint) -> usize {
        let a = self.variations_at(lo);
        let b = self.variations_at(hi);
        a.saturating_sub(b)
    }
}

fn sign_of(q: &BigRational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

/// Square-free decomposition `p = lc · ∏ factorᵢ^multᵢ` (Yun's algorithm).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareFreeDecomposition {
    /// Product of the distinct factors: same roots as `p`, all simple.
    /// Primitive with positive leading coefficient; the constant 1 when `p`
    /// is a nonzero constant.
    pub square_free: RatPoly,
    /// Nonconstant square-free pairwise-coprime factors with their
    /// multiplicities, multiplicity ascending.
    pub factors: Vec<(RatPoly, usize)>,
}

/// Splits a nonzero polynomial into square-free factors by multiplicity.
pub fn square_free_part(p: &RatPoly) -> Result<SquareFreeDecomposition, RootError> {
    if p.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    let mut factors: Vec<(RatPoly, usize)> = Vec::new();
    if p.degree() == Some(0) {
        return Ok(SquareFreeDecomposition {
            square_free: RatPoly::one(),
            factors,
        });
    }
    let deriv = p.derivative();
    let g = p.gcd(&deriv);
    let mut b = p.exact_div(&g);
    let mut d = &deriv.exact_div(&g) - &b.derivative();
    let mut mult = 1usize;
    loop {
        let a = b.gcd(&d);
        if a.degree().is_some_and(|da| da >= 1) {
            factors.push((a.primitive_positive(), mult));
        }
        b = b.exact_div(&a);
        if b.degree() == Some(0) {
            break;
        }
        d = &d.exact_div(&a) - &b.derivative();
        mult += 1;
    }
    let mut square_free = RatPoly::one();
    for (f, _) in &factors {
        square_free = &square_free * f;
    }
    Ok(SquareFreeDecomposition {
        square_free: square_free.primitive_positive(),
        factors,
    })
}

/// Number of distinct real roots of `p` in the half-open interval (lo, hi].
///
/// Infinite endpoints extend the interval to the whole line.  Returns 0 when
/// `lo ≥ hi`.  Errors on the zero polynomial.
pub fn count_real_roots(p: &RatPoly, lo: &Endpoint, hi: &Endpoint) -> Result<usize, RootError> {
    if p.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    if !endpoint_lt(lo, hi) {
        return Ok(0);
    }
    let sqf = square_free_part(p)?.square_free;
    if sqf.degree() == Some(0) {
        return Ok(0);
    }
    let chain = SturmChain::new(&sqf)?;
    Ok(chain.count_half_open(lo, hi))
}

fn endpoint_lt(a: &Endpoint, b: &Endpoint) -> bool {
    match (a, b) {
        (Endpoint::NegInfinity, Endpoint::NegInfinity) => false,
        (Endpoint::NegInfinity, _) => true,
        (_, Endpoint::PosInfinity) => !matches!(a, Endpoint::PosInfinity),
        (Endpoint::Value(x), Endpoint::Value(y)) => x < y,
        _ => false,
    }
}

/// An open interval with rational endpoints containing exactly one real root
/// of `p`, known to be irrational.
#[derive(Debug, Clone)]
pub struct IsolatedInterval {
    pub lo: BigRational,
    pub hi: BigRational,
    pub multiplicity: usize,
    /// Square-free factor whose unique root in (lo, hi) this is.  The factor
    /// changes sign across the interval and has no rational roots inside it.
    factor: RatPoly,
}

impl IsolatedInterval {
    /// The defining square-free factor.
    pub fn factor(&self) -> &RatPoly {
        &self.factor
    }

    /// Interval width `hi − lo`.
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    /// One bisection step: halves the interval, keeping the root.
    pub fn refine(&mut self) {
        let two = BigRational::from_integer(BigInt::from(2));
        let mid = (&self.lo + &self.hi) / two;
        let sign_lo = sign(&self.factor.eval(&self.lo));
        let sign_mid = sign(&self.factor.eval(&mid));
        debug_assert!(sign_mid != 0, "interval midpoint cannot be a root");
        if sign_mid == sign_lo {
            self.lo = mid;
        } else {
            self.hi = mid;
        }
    }

    /// Refines until the width drops below `width`.
    pub fn refine_to_width(&mut self, width: &BigRational) {
        while &self.width() >= width {
            self.refine();
        }
    }

    /// Refines until the rational `point` lies outside the closed interval.
    /// The contained root must differ from `point` (always true here, since
    /// the root is irrational).
    pub fn refine_away_from(&mut self, point: &BigRational) {
        while &self.lo <= point && point <= &self.hi {
            self.refine();
        }
    }

    /// True when the closed intervals touch or overlap.
    pub fn overlaps(&self, other: &IsolatedInterval) -> bool {
        !(self.hi < other.lo || other.hi < self.lo)
    }
}

/// Complete description of the real roots of a polynomial.
#[derive(Debug, Clone)]
pub struct RootIsolation {
    /// Rational roots with multiplicities, ascending.  Every rational root
    /// is reported here exactly.
    pub exact_roots: Vec<(BigRational, usize)>,
    /// Isolating intervals for the irrational roots, ascending, pairwise
    /// disjoint and disjoint from every exact root.
    pub intervals: Vec<IsolatedInterval>,
}

impl RootIsolation {
    /// Number of distinct real roots.
    pub fn distinct_count(&self) -> usize {
        self.exact_roots.len() + self.intervals.len()
    }

    /// Number of real roots counted with multiplicity.
    pub fn total_multiplicity(&self) -> usize {
        self.exact_roots.iter().map(|(_, m)| m).sum::<usize>()
            + self.intervals.iter().map(|i| i.multiplicity).sum::<usize>()
    }
}

/// Isolates every real root of a nonzero polynomial: rational roots exactly,
/// irrational roots in pairwise-disjoint open intervals.
pub fn isolate_roots(p: &RatPoly) -> Result<RootIsolation, RootError> {
    let decomposition = square_free_part(p)?;
    let mut exact_roots: Vec<(BigRational, usize)> = Vec::new();
    let mut intervals: Vec<IsolatedInterval> = Vec::new();

    for (factor, mult) in &decomposition.factors {
        let (roots, ivs) = isolate_square_free(factor);
        for r in roots {
            exact_roots.push((r, *mult));
        }
        for (lo, hi) in ivs {
            intervals.push(IsolatedInterval {
                lo,
                hi,
                multiplicity: *mult,
                factor: factor.clone(),
            });
        }
    }

    exact_roots.sort_by(|a, b| a.0.cmp(&b.0));

    // Roots of distinct Yun factors are distinct, so every interval can be
    // pushed off every exact root and away from every other interval.
    for iv in &mut intervals {
        for (r, _) in &exact_roots {
            iv.refine_away_from(r);
        }
    }
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..intervals.len() {
            for j in (i + 1)..intervals.len() {
                let (a, b) = split_pair(&mut intervals, i, j);
                while a.overlaps(b) {
                    a.refine();
                    b.refine();
                    changed = true;
                }
            }
        }
    }
    intervals.sort_by(|a, b| a.lo.cmp(&b.lo));

    Ok(RootIsolation {
        exact_roots,
        intervals,
    })
}

fn split_pair(
    v: &mut [IsolatedInterval],
    i: usize,
    j: usize,
) -> (&mut IsolatedInterval, &mut IsolatedInterval) {
    debug_assert!(i < j);
    let (head, tail) = v.split_at_mut(j);
    (&mut head[i], &mut tail[0])
}

/// Cauchy bound: every real root of `p` lies strictly inside (−B, B).
fn cauchy_bound(p: &RatPoly) -> BigRational {
    let lc = p.leading_coeff().expect("nonzero polynomial").abs();
    let deg = p.degree().unwrap_or(0);
    let mut max = BigRational::zero();
    for i in 0..deg {
        let q = p.coeff(i).abs() / &lc;
        if q > max {
            max = q;
        }
    }
    BigRational::one() + max
}

/// Root isolation for a square-free primitive integer polynomial with
/// positive leading coefficient.  Returns the rational roots exactly and
/// open isolating intervals for the irrational roots.
fn isolate_square_free(f: &RatPoly) -> (Vec<BigRational>, Vec<(BigRational, BigRational)>) {
    let deg = match f.degree() {
        Some(d) if d >= 1 => d,
        _ => return (Vec::new(), Vec::new()),
    };
    if deg == 1 {
        let root = -f.coeff(0) / f.coeff(1);
        return (vec![root], Vec::new());
    }

    // Monic integer transform y = L·x: rational roots of f become integer
    // roots of b(y) = L^(d−1)·f(y/L), so "rational" can be decided by
    // testing a single integer candidate per isolating interval.
    let lead = f.coeff(deg);
    let mut b_coeffs = vec![BigRational::one()]; // coefficient of y^deg
    let mut power = BigRational::one(); // L^(deg−1−i)
    for i in (0..deg).rev() {
        b_coeffs.push(f.coeff(i) * &power);
        power *= &lead;
    }
    b_coeffs.reverse();
    let b = RatPoly::new(b_coeffs);

    let chain = SturmChain::new(&b).expect("nonzero polynomial");
    let bound = cauchy_bound(&b);
    let mut exact_y: Vec<BigRational> = Vec::new();
    let mut intervals_y: Vec<(BigRational, BigRational)> = Vec::new();
    let mut stack = vec![(-bound.clone(), bound)];

    while let Some((lo, hi)) = stack.pop() {
        let n = chain.count_half_open(&Endpoint::Value(lo.clone()), &Endpoint::Value(hi.clone()));
        if n == 0 {
            continue;
        }
        if n == 1 {
            match single_root_kind(&b, &lo, &hi) {
                RootKind::Exact(r) => exact_y.push(r),
                RootKind::Irrational(lo, hi) => intervals_y.push((lo, hi)),
            }
            continue;
        }
        let two = BigRational::from_integer(BigInt::from(2));
        let mid = (&lo + &hi) / &two;
        if b.eval(&mid).is_zero() {
            // Exact hit while splitting; carve out a root-free neighborhood
            // so both remaining pieces have non-root endpoints.
            debug_assert!(mid.denom().is_one(), "rational root of monic integer polynomial");
            let mut delta = (&hi - &lo) / BigRational::from_integer(BigInt::from(4));
            loop {
                let a = &mid - &delta;
                let c = &mid + &delta;
                if !b.eval(&a).is_zero()
                    && !b.eval(&c).is_zero()
                    && chain.count_half_open(&Endpoint::Value(a.clone()), &Endpoint::Value(c.clone()))
                        == 1
                {
                    stack.push((lo, a));
                    stack.push((c, hi));
                    break;
                }
                delta /= &two;
            }
            exact_y.push(mid);
        } else {
            stack.push((lo, mid.clone()));
            stack.push((mid, hi));
        }
    }

    // Map back through x = y/L (L > 0 preserves order).
    let exact: Vec<BigRational> = exact_y.into_iter().map(|y| y / &lead).collect();
    let mut intervals: Vec<(BigRational, BigRational)> = intervals_y
        .into_iter()
        .map(|(lo, hi)| (lo / &lead, hi / &lead))
        .collect();
    intervals.sort_by(|a, b| a.0.cmp(&b.0));
    (exact, intervals)
}

enum RootKind {
    Exact(BigRational),
    Irrational(BigRational, BigRational),
}

/// Classifies the unique root of square-free monic-integer `b` in (lo, hi):
/// either the one integer candidate in the interval is a root (rational), or
/// no integer candidate survives and the root is irrational.
fn single_root_kind(b: &RatPoly, lo: &BigRational, hi: &BigRational) -> RootKind {
    let two = BigRational::from_integer(BigInt::from(2));
    let mut lo = lo.clone();
    let mut hi = hi.clone();
    loop {
        let first = lo.floor() + BigRational::one();
        let last = hi.ceil() - BigRational::one();
        if first > last {
            return RootKind::Irrational(lo, hi);
        }
        if first == last {
            if b.eval(&first).is_zero() {
                return RootKind::Exact(first);
            }
            // The only rational candidate fails, but it may sit between the
            // endpoints and the irrational root; shrink past it.
            let sign_lo = sign(&b.eval(&lo));
            let sign_first = sign(&b.eval(&first));
            if sign_first == sign_lo {
                lo = first;
            } else {
                hi = first;
            }
            return RootKind::Irrational(lo, hi);
        }
        let mid = (&lo + &hi) / &two;
        let v = b.eval(&mid);
        if v.is_zero() {
            return RootKind::Exact(mid);
        }
        if sign(&v) == sign(&b.eval(&lo)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

/// True when `p` is hyperbolic: identically zero, constant, or with every
/// complex root real.
pub fn is_hyperbolic(p: &RatPoly) -> bool {
    let deg = match p.degree() {
        None => return true,
        Some(d) => d,
    };
    match deg {
        0 | 1 => true,
        2 => {
            let (a, b, c) = (p.coeff(2), p.coeff(1), p.coeff(0));
            &b * &b - BigRational::from_integer(BigInt::from(4)) * &a * &c
                >= BigRational::zero()
        }
        _ => {
            let sqf = square_free_part(p)
                .expect("nonzero polynomial")
                .square_free;
            let sqf_deg = sqf.degree().unwrap_or(0);
            let chain = SturmChain::new(&sqf).expect("nonzero polynomial");
            chain.count_half_open(&Endpoint::NegInfinity, &Endpoint::PosInfinity) == sqf_deg
        }
    }
}

/// True when `p(t) ≤ 0` for every real `t`.
///
/// Holds exactly when `p` is identically zero, or has even degree, negative
/// leading coefficient, and every real root of even multiplicity.
pub fn is_nonpositive_on_r(p: &RatPoly) -> bool {
    let deg = match p.degree() {
        None => return true,
        Some(d) => d,
    };
    if deg % 2 == 1 {
        return false;
    }
    if p.leading_coeff().is_none_or(|lc| !lc.is_negative()) {
        return false;
    }
    if deg == 0 {
        return true;
    }
    let decomposition = square_free_part(p).expect("nonzero polynomial");
    for (factor, mult) in &decomposition.factors {
        if mult % 2 == 1
            && count_real_roots(factor, &Endpoint::NegInfinity, &Endpoint::PosInfinity)
                .expect("factor is nonzero")
                > 0
        {
            return false;
        }
    }
    true
}
