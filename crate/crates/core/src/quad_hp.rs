//! The central decision: does `T = Q₂D² + Q₁D + Q₀` preserve hyperbolicity?
//!
//! Here `Q₂` is quadratic, `Q₁` at most linear, `Q₀` constant, and `D` is
//! differentiation.  Two independent routes answer the question:
//!
//! * [`QuadOperator::decide_hp`] checks the structural criterion directly —
//!   a Wronskian combination `w(x)` must be nonpositive on the whole line
//!   and the coefficients must sit in a proper-position chain
//!   `Q₀ ≪ Q₁ ≪ Q₂`;
//! * [`QuadOperator::decide_hp_closed_form`] evaluates an equivalent
//!   inequality in the raw coefficients, with no root extraction at all.
//!
//! Both produce a [`Certificate`] with shared evidence; agreement of the two
//! verdicts is a strong self-check and is exercised heavily in the tests.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::interlace::{proper_position, wronskian, ProperPositionReport};
use crate::poly::RatPoly;
use crate::rational::{all_same_sign, sign};
use crate::real_roots::{is_hyperbolic, is_nonpositive_on_r};

fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Error for operator construction with out-of-range degrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OperatorError {
    /// A coefficient polynomial exceeds its degree cap (2, 1, 0 for
    /// `Q₂`, `Q₁`, `Q₀` respectively).
    DegreeTooHigh {
        slot: usize,
        max_allowed: usize,
        found: usize,
    },
}

impl fmt::Display for OperatorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperatorError::DegreeTooHigh {
                slot,
                max_allowed,
                found,
            } => write!(
                f,
                "Q{slot} must have degree at most {max_allowed}, found {found}"
            ),
        }
    }
}

impl core::error::Error for OperatorError {}

/// A differential operator `T = Q₂D² + Q₁D + Q₀` with `deg Q₂ ≤ 2`,
/// `deg Q₁ ≤ 1`, `deg Q₀ ≤ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadOperator {
    q2: RatPoly,
    q1: RatPoly,
    q0: RatPoly,
}

/// Outcome of a preservation decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Preserves,
    NotPreserves,
    /// The operator fits the container but not the decision's hypotheses
    /// (e.g. `Q₂` is not genuinely quadratic).
    HypothesesViolated,
}

/// Which condition failed, when the verdict is negative.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailureReason {
    /// `w(x) = W[Q₀,Q₂]² − W[Q₀,Q₁]·W[Q₁,Q₂]` takes a positive value.
    WPositiveSomewhere,
    /// The chain `Q₀ ≪ Q₁ ≪ Q₂` does not hold (for the closed-form route:
    /// the corresponding coefficient-sign or root-configuration condition).
    ChainBroken,
    /// A degree hypothesis is not met.
    DegreeMismatch,
}

/// Scale-free parameters of the operator's symbol factorization, available
/// when `Q₂` splits over the rationals.
///
/// Writing the roots of `Q₂` as `r1 ≤ r2` (or a double root `r`), dividing
/// everything by the leading coefficient of `Q₂`, and decomposing
/// `Q₁/c₂ = b(x − r1) + a(x − r2)`, the operator preserves hyperbolicity
/// exactly when `a ≥ 0`, `b ≥ 0` and `ratio = Q₀/c₂ ∈ [0, ab]` (for a
/// double root: `a ≥ 0` and `ratio ∈ [0, a²/4]`).
#[derive(Debug, Clone, PartialEq)]
pub enum ClosedFormParams {
    Distinct {
        a: BigRational,
        b: BigRational,
        r1: BigRational,
        r2: BigRational,
        ratio: BigRational,
    },
    Repeated {
        a: BigRational,
        root: BigRational,
        ratio: BigRational,
    },
}

/// A concrete refutation: a hyperbolic input whose image is not hyperbolic.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub input: RatPoly,
    pub image: RatPoly,
}

/// Full outcome of a preservation decision, with supporting evidence.
#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub verdict: Verdict,
    /// The discriminant-like combination `W[Q₀,Q₂]² − W[Q₀,Q₁]·W[Q₁,Q₂]`.
    pub w_poly: RatPoly,
    /// Proper-position reports for `Q₀ ≪ Q₁` and `Q₁ ≪ Q₂`.
    pub chain: [ProperPositionReport; 2],
    pub closed_form: Option<ClosedFormParams>,
    pub witness: Option<Witness>,
    pub failure_reason: Option<FailureReason>,
}

/// Budget for the deterministic counterexample search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchBudget {
    /// Highest input degree tried.
    pub max_degree: usize,
    /// Roots and shifts are drawn from integers and half-integers in
    /// `[−grid_bound, grid_bound]`.
    pub grid_bound: i64,
    /// Hard cap on the number of candidates tested.
    pub max_candidates: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_degree: 4,
            grid_bound: 20,
            max_candidates: 5000,
        }
    }
}

impl QuadOperator {
    /// Validates the degree caps (2, 1, 0) and builds the operator.
    pub fn new(q2: RatPoly, q1: RatPoly, q0: RatPoly) -> Result<Self, OperatorError> {
        for (slot, poly, max_allowed) in [(2usize, &q2, 2usize), (1, &q1, 1), (0, &q0, 0)] {
            if let Some(found) = poly.degree() {
                if found > max_allowed {
                    return Err(OperatorError::DegreeTooHigh {
                        slot,
                        max_allowed,
                        found,
                    });
                }
            }
        }
        Ok(QuadOperator { q2, q1, q0 })
    }

    pub fn q2(&self) -> &RatPoly {
        &self.q2
    }

    pub fn q1(&self) -> &RatPoly {
        &self.q1
    }

    pub fn q0(&self) -> &RatPoly {
        &self.q0
    }

    /// Applies the operator: `T[p] = Q₂p″ + Q₁p′ + Q₀p`.
    pub fn apply(&self, p: &RatPoly) -> RatPoly {
        let dp = p.derivative();
        let ddp = dp.derivative();
        &(&(&self.q2 * &ddp) + &(&self.q1 * &dp)) + &(&self.q0 * p)
    }

    /// The combination `w(x) = W[Q₀,Q₂]² − W[Q₀,Q₁]·W[Q₁,Q₂]`, where
    /// `W[f,g] = f·g′ − f′·g`.  Nonpositivity of `w` on the whole line is
    /// one half of the preservation criterion.
    pub fn wronskian_discriminant(&self) -> RatPoly {
        let w02 = wronskian(&self.q0, &self.q2);
        let w01 = wronskian(&self.q0, &self.q1);
        let w12 = wronskian(&self.q1, &self.q2);
        &(&w02 * &w02) - &(&w01 * &w12)
    }

    /// Decides preservation by the structural criterion, attaching a
    /// counterexample found within the default search budget when the
    /// verdict is negative.
    pub fn decide_hp(&self) -> Certificate {
        self.decide_hp_with_budget(Some(&SearchBudget::default()))
    }

    /// Decides preservation by the structural criterion: `w(x) ≤ 0` on all
    /// of ℝ and the chain `Q₀ ≪ Q₁ ≪ Q₂` in proper position.  With a
    /// budget, a negative verdict triggers a counterexample search whose
    /// result (if any) is attached as the witness.
    pub fn decide_hp_with_budget(&self, budget: Option<&SearchBudget>) -> Certificate {
        let w_poly = self.wronskian_discriminant();
        let chain = [
            proper_position(&self.q0, &self.q1),
            proper_position(&self.q1, &self.q2),
        ];
        let closed_form = self.closed_form_params();
        if self.q2.degree() != Some(2) {
            return Certificate {
                verdict: Verdict::HypothesesViolated,
                w_poly,
                chain,
                closed_form,
                witness: None,
                failure_reason: Some(FailureReason::DegreeMismatch),
            };
        }
        let chain_ok = chain[0].holds && chain[1].holds;
        let w_ok = is_nonpositive_on_r(&w_poly);
        let (verdict, failure_reason) = if chain_ok && w_ok {
            (Verdict::Preserves, None)
        } else if !chain_ok {
            (Verdict::NotPreserves, Some(FailureReason::ChainBroken))
        } else {
            (Verdict::NotPreserves, Some(FailureReason::WPositiveSomewhere))
        };
        let witness = if verdict == Verdict::NotPreserves {
            budget.and_then(|b| falsify(self, b))
        } else {
            None
        };
        Certificate {
            verdict,
            w_poly,
            chain,
            closed_form,
            witness,
            failure_reason,
        }
    }

    /// Decides preservation purely from the coefficients, with no root
    /// extraction, interlacing test, or sign analysis of `w`.
    ///
    /// With `Q₂ = c₂x² + px + q`, `Q₁` zero or `c₁(x − r₃)`, `Q₀ = c₀`, and
    /// `Δ = p² − 4c₂q`, the operator preserves hyperbolicity exactly when
    /// `c₀, c₁, c₂` share a sign (zeros are compatible with either) and:
    ///
    /// * `Δ > 0`: `−c₁²·c₂·Q₂(r₃)/Δ − c₀c₂ ≥ 0`;
    /// * `Δ = 0`: `Q₁` vanishes at the double root and `c₁²/4 − c₀c₂ ≥ 0`;
    /// * `Δ < 0`: never.
    ///
    /// A nonzero constant `Q₁` is outside this route's hypotheses.
    pub fn decide_hp_closed_form(&self) -> Certificate {
        let w_poly = self.wronskian_discriminant();
        let chain = [
            proper_position(&self.q0, &self.q1),
            proper_position(&self.q1, &self.q2),
        ];
        let closed_form = self.closed_form_params();
        let mut certificate = Certificate {
            verdict: Verdict::HypothesesViolated,
            w_poly,
            chain,
            closed_form,
            witness: None,
            failure_reason: Some(FailureReason::DegreeMismatch),
        };
        if self.q2.degree() != Some(2) || self.q1.degree() == Some(0) {
            return certificate;
        }
        let c2 = self.q2.coeff(2);
        let p = self.q2.coeff(1);
        let q = self.q2.coeff(0);
        let c0 = self.q0.coeff(0);
        let c1 = self.q1.coeff(1);
        let disc = &p * &p - big(4) * &c2 * &q;
        let same_sign = all_same_sign(&[&c0, &c1, &c2]);

        let (preserves, reason) = match sign(&disc) {
            -1 => (false, FailureReason::ChainBroken),
            1 => {
                let c_value = if c1.is_zero() {
                    -(&c0 * &c2)
                } else {
                    let r3 = -self.q1.coeff(0) / &c1;
                    -(&c1 * &c1 * &c2 * self.q2.eval(&r3)) / &disc - &c0 * &c2
                };
                if !same_sign {
                    (false, FailureReason::ChainBroken)
                } else if !c_value.is_negative() {
                    (true, FailureReason::ChainBroken)
                } else {
                    (false, FailureReason::WPositiveSomewhere)
                }
            }
            _ => {
                let rho = -&p / (big(2) * &c2);
                let root_matches = c1.is_zero() || -self.q1.coeff(0) / &c1 == rho;
                if !root_matches || !same_sign {
                    (false, FailureReason::ChainBroken)
                } else if !(&c1 * &c1 / big(4) - &c0 * &c2).is_negative() {
                    (true, FailureReason::ChainBroken)
                } else {
                    (false, FailureReason::WPositiveSomewhere)
                }
            }
        };
        if preserves {
            certificate.verdict = Verdict::Preserves;
            certificate.failure_reason = None;
        } else {
            certificate.verdict = Verdict::NotPreserves;
            certificate.failure_reason = Some(reason);
        }
        certificate
    }

    /// Symbol-factorization parameters, when `Q₂` splits over ℚ and `Q₁`
    /// is compatible (zero, genuinely linear, or vanishing at the double
    /// root in the repeated case).
    pub fn closed_form_params(&self) -> Option<ClosedFormParams> {
        if self.q2.degree() != Some(2) {
            return None;
        }
        let c2 = self.q2.coeff(2);
        let p = self.q2.coeff(1);
        let q = self.q2.coeff(0);
        let ratio = self.q0.coeff(0) / &c2;
        let disc = &p * &p - big(4) * &c2 * &q;
        match sign(&disc) {
            -1 => None,
            0 => {
                let root = -&p / (big(2) * &c2);
                if self.q1.is_zero() {
                    return Some(ClosedFormParams::Repeated {
                        a: BigRational::zero(),
                        root,
                        ratio,
                    });
                }
                if self.q1.degree() == Some(1) {
                    let c1 = self.q1.coeff(1);
                    if -self.q1.coeff(0) / &c1 == root {
                        return Some(ClosedFormParams::Repeated {
                            a: c1 / &c2,
                            root,
                            ratio,
                        });
                    }
                }
                None
            }
            _ => {
                let sq = rational_sqrt(&disc)?;
                let rho1 = (-&p - &sq) / (big(2) * &c2);
                let rho2 = (-&p + &sq) / (big(2) * &c2);
                let (r1, r2) = if rho1 < rho2 { (rho1, rho2) } else { (rho2, rho1) };
                if self.q1.is_zero() {
                    return Some(ClosedFormParams::Distinct {
                        a: BigRational::zero(),
                        b: BigRational::zero(),
                        r1,
                        r2,
                        ratio,
                    });
                }
                if self.q1.degree() == Some(1) {
                    let c1 = self.q1.coeff(1);
                    let r3 = -self.q1.coeff(0) / &c1;
                    let scaled = &c1 / &c2;
                    let denom = &r2 - &r1;
                    let a = &scaled * (&r3 - &r1) / &denom;
                    let b = &scaled * (&r2 - &r3) / &denom;
                    return Some(ClosedFormParams::Distinct { a, b, r1, r2, ratio });
                }
                None
            }
        }
    }
}

/// Exact square root of a nonnegative rational, when it exists.
fn rational_sqrt(value: &BigRational) -> Option<BigRational> {
    if value.is_negative() {
        return None;
    }
    let sn = value.numer().sqrt();
    let sd = value.denom().sqrt();
    if &(&sn * &sn) == value.numer() && &(&sd * &sd) == value.denom() {
        Some(BigRational::new(sn, sd))
    } else {
        None
    }
}

/// Report of the quarter-inequality between a quadratic's roots `r1 ≠ r2`
/// and a linear's root `r3`: `4(r1 − r3)(r3 − r2) ≤ (r2 − r1)²`, with
/// equality exactly when `r3` is the midpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuarterBoundReport {
    pub lhs: BigRational,
    pub rhs: BigRational,
    pub holds: bool,
    pub equality: bool,
}

/// Error for the quarter-bound check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuarterBoundError {
    /// The two quadratic roots coincide.
    DegenerateRoots,
}

impl fmt::Display for QuarterBoundError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuarterBoundError::DegenerateRoots => {
                write!(f, "the quadratic roots must be distinct")
            }
        }
    }
}

impl core::error::Error for QuarterBoundError {}

/// Evaluates `4(r1 − r3)(r3 − r2) ≤ (r2 − r1)²` exactly.
pub fn quarter_bound_check(
    r1: &BigRational,
    r2: &BigRational,
    r3: &BigRational,
) -> Result<QuarterBoundReport, QuarterBoundError> {
    if r1 == r2 {
        return Err(QuarterBoundError::DegenerateRoots);
    }
    let lhs = big(4) * (r1 - r3) * (r3 - r2);
    let d = r2 - r1;
    let rhs = &d * &d;
    Ok(QuarterBoundReport {
        holds: lhs <= rhs,
        equality: lhs == rhs,
        lhs,
        rhs,
    })
}

/// Deterministic counterexample search: walks a fixed family of hyperbolic
/// inputs (monomials, then shifted powers, then products of distinct linear
/// factors over a half-integer grid) and returns the first whose image under
/// the operator is not hyperbolic.
pub fn falsify(op: &QuadOperator, budget: &SearchBudget) -> Option<Witness> {
    enum Step {
        Found(Witness),
        Survived,
        BudgetSpent,
    }
    fn test(op: &QuadOperator, budget: &SearchBudget, tested: &mut usize, input: RatPoly) -> Step {
        if *tested >= budget.max_candidates {
            return Step::BudgetSpent;
        }
        *tested += 1;
        let image = op.apply(&input);
        if !is_hyperbolic(&image) {
            Step::Found(Witness { input, image })
        } else {
            Step::Survived
        }
    }

    let mut tested = 0usize;

    // Family 1: monomials xⁿ.
    for n in 1..=budget.max_degree {
        match test(op, budget, &mut tested, RatPoly::monomial(BigRational::one(), n)) {
            Step::Found(w) => return Some(w),
            Step::BudgetSpent => return None,
            Step::Survived => {}
        }
    }

    let grid: Vec<BigRational> = (-2 * budget.grid_bound..=2 * budget.grid_bound)
        .map(|k| BigRational::new(BigInt::from(k), BigInt::from(2)))
        .collect();

    // Family 2: shifted powers (x − r)ⁿ, nonzero shifts.
    for n in 1..=budget.max_degree {
        for r in &grid {
            if r.is_zero() {
                continue;
            }
            match test(op, budget, &mut tested, RatPoly::linear_from_root(r).pow(n)) {
                Step::Found(w) => return Some(w),
                Step::BudgetSpent => return None,
                Step::Survived => {}
            }
        }
    }

    // Family 3: products of n distinct grid roots, in lexicographic order
    // of the root combination.
    for n in 2..=budget.max_degree.min(grid.len()) {
        let mut combo: Vec<usize> = (0..n).collect();
        loop {
            let input = combo.iter().fold(RatPoly::one(), |acc, &i| {
                &acc * &RatPoly::linear_from_root(&grid[i])
            });
            match test(op, budget, &mut tested, input) {
                Step::Found(w) => return Some(w),
                Step::BudgetSpent => return None,
                Step::Survived => {}
            }
            // Advance to the next lexicographic combination.
            let mut advanced = false;
            for i in (0..n).rev() {
                if combo[i] < grid.len() - n + i {
                    combo[i] += 1;
                    for j in (i + 1)..n {
                        combo[j] = combo[j - 1] + 1;
                    }
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                break; // all combinations of this size exhausted
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn poly(coeffs: &[i64]) -> RatPoly {
        RatPoly::from_int_coeffs(coeffs)
    }

    /// (x² − 1)D² + s·2x·D + c for s = ±1: the eight benchmark operators.
    fn bench_op(s: i64, c: i64) -> QuadOperator {
        QuadOperator::new(poly(&[-1, 0, 1]), poly(&[0, 2 * s]), poly(&[c])).unwrap()
    }

    #[test]
    fn constructor_enforces_degree_caps() {
        assert!(QuadOperator::new(poly(&[0, 0, 0, 1]), RatPoly::zero(), RatPoly::zero()).is_err());
        assert!(QuadOperator::new(poly(&[1, 0, 1]), poly(&[0, 0, 1]), RatPoly::zero()).is_err());
        assert_eq!(
            QuadOperator::new(poly(&[1, 0, 1]), RatPoly::zero(), poly(&[0, 1])),
            Err(OperatorError::DegreeTooHigh {
                slot: 0,
                max_allowed: 0,
                found: 1
            })
        );
        assert!(QuadOperator::new(poly(&[1]), RatPoly::zero(), poly(&[3])).is_ok());
    }

    #[test]
    fn apply_matches_hand_computations() {
        let t4 = bench_op(1, 2);
        let cube = RatPoly::linear_from_root(&int(10)).pow(3);
        assert_eq!(t4.apply(&cube), poly(&[-1940, 1194, -240, 14]));

        let t5 = bench_op(-1, -1);
        assert_eq!(t5.apply(&RatPoly::monomial(int(1), 2)), poly(&[-2, 0, -3]));

        let t8 = bench_op(-1, 2);
        assert_eq!(t8.apply(&cube), poly(&[-1940, -6, 0, 2]));

        let t1 = bench_op(1, -1);
        assert_eq!(t1.apply(&poly(&[-1, 0, 1])), poly(&[-1, 0, 5]));
        assert_eq!(t1.apply(&poly(&[-3, 0, 1])), poly(&[1, 0, 5]));
    }

    #[test]
    fn wronskian_discriminant_oracles() {
        assert_eq!(bench_op(1, 0).wronskian_discriminant(), RatPoly::zero());
        assert_eq!(bench_op(1, 1).wronskian_discriminant(), poly(&[-4]));
        assert_eq!(bench_op(1, 2).wronskian_discriminant(), poly(&[-8, 0, 8]));
        assert_eq!(bench_op(1, -1).wronskian_discriminant(), poly(&[4, 0, 8]));
        assert_eq!(bench_op(-1, 1).wronskian_discriminant(), poly(&[-4]));
    }

    #[test]
    fn benchmark_table_verdicts() {
        let cases = [
            (1, -1, Verdict::NotPreserves, Some(FailureReason::WPositiveSomewhere)),
            (1, 0, Verdict::Preserves, None),
            (1, 1, Verdict::Preserves, None),
            (1, 2, Verdict::NotPreserves, Some(FailureReason::WPositiveSomewhere)),
            (-1, -1, Verdict::NotPreserves, Some(FailureReason::ChainBroken)),
            (-1, 0, Verdict::NotPreserves, Some(FailureReason::ChainBroken)),
            (-1, 1, Verdict::NotPreserves, Some(FailureReason::ChainBroken)),
            (-1, 2, Verdict::NotPreserves, Some(FailureReason::ChainBroken)),
        ];
        for (s, c, verdict, reason) in cases {
            let cert = bench_op(s, c).decide_hp_with_budget(None);
            assert_eq!(cert.verdict, verdict, "operator s={s} c={c}");
            assert_eq!(cert.failure_reason, reason, "operator s={s} c={c}");
        }
    }

    #[test]
    fn both_routes_agree_on_the_benchmark_table() {
        for s in [1, -1] {
            for c in [-1, 0, 1, 2] {
                let op = bench_op(s, c);
                assert_eq!(
                    op.decide_hp_with_budget(None).verdict,
                    op.decide_hp_closed_form().verdict,
                    "operator s={s} c={c}"
                );
            }
        }
    }

    #[test]
    fn closed_form_parameters_when_q2_splits() {
        let t3 = bench_op(1, 1);
        assert_eq!(
            t3.closed_form_params(),
            Some(ClosedFormParams::Distinct {
                a: int(1),
                b: int(1),
                r1: int(-1),
                r2: int(1),
                ratio: int(1),
            })
        );

        // Repeated root at 0 with Q₁ = x vanishing there.
        let op = QuadOperator::new(poly(&[0, 0, 1]), poly(&[0, 1]), RatPoly::constant(rat(1, 4)))
            .unwrap();
        assert_eq!(
            op.closed_form_params(),
            Some(ClosedFormParams::Repeated {
                a: int(1),
                root: int(0),
                ratio: rat(1, 4),
            })
        );
        // Boundary of the repeated-root criterion: ratio = a²/4.
        assert_eq!(op.decide_hp_with_budget(None).verdict, Verdict::Preserves);
        assert_eq!(op.decide_hp_closed_form().verdict, Verdict::Preserves);

        // Irrational split: parameters unavailable, decisions still agree.
        let op = QuadOperator::new(poly(&[-2, 0, 1]), poly(&[0, 1]), RatPoly::zero()).unwrap();
        assert_eq!(op.closed_form_params(), None);
        assert_eq!(op.decide_hp_with_budget(None).verdict, Verdict::Preserves);
        assert_eq!(op.decide_hp_closed_form().verdict, Verdict::Preserves);

        // Q₁ not vanishing at the double root: no parameterization.
        let op = QuadOperator::new(poly(&[0, 0, 1]), poly(&[1, 1]), RatPoly::zero()).unwrap();
        assert_eq!(op.closed_form_params(), None);
        assert_eq!(op.decide_hp_closed_form().verdict, Verdict::NotPreserves);
    }

    #[test]
    fn hypotheses_violations_are_flagged() {
        // Q₂ merely linear.
        let op = QuadOperator::new(poly(&[0, 1]), poly(&[0, 1]), poly(&[1])).unwrap();
        let cert = op.decide_hp_with_budget(None);
        assert_eq!(cert.verdict, Verdict::HypothesesViolated);
        assert_eq!(cert.failure_reason, Some(FailureReason::DegreeMismatch));
        assert_eq!(
            op.decide_hp_closed_form().verdict,
            Verdict::HypothesesViolated
        );

        // Nonzero constant Q₁: outside the closed-form route's hypotheses,
        // decidable (negatively) by the structural route.
        let op = QuadOperator::new(poly(&[-1, 0, 1]), poly(&[1]), RatPoly::zero()).unwrap();
        assert_eq!(
            op.decide_hp_closed_form().verdict,
            Verdict::HypothesesViolated
        );
        let cert = op.decide_hp_with_budget(None);
        assert_eq!(cert.verdict, Verdict::NotPreserves);
        assert_eq!(cert.failure_reason, Some(FailureReason::ChainBroken));
    }

    #[test]
    fn zero_q1_operators_decide_correctly() {
        // (x² − 1)D²: multiplies the second derivative by a hyperbolic
        // quadratic, so hyperbolicity survives.
        let op = QuadOperator::new(poly(&[-1, 0, 1]), RatPoly::zero(), RatPoly::zero()).unwrap();
        assert_eq!(op.decide_hp_with_budget(None).verdict, Verdict::Preserves);
        assert_eq!(op.decide_hp_closed_form().verdict, Verdict::Preserves);

        // (x² + 1)D²: the non-hyperbolic factor leaks into every image of
        // degree ≥ 3.
        let op = QuadOperator::new(poly(&[1, 0, 1]), RatPoly::zero(), RatPoly::zero()).unwrap();
        assert_eq!(op.decide_hp_with_budget(None).verdict, Verdict::NotPreserves);
        assert_eq!(op.decide_hp_closed_form().verdict, Verdict::NotPreserves);

        // (x² − 1)D² + c with c ≠ 0 fails.
        let op = QuadOperator::new(poly(&[-1, 0, 1]), RatPoly::zero(), poly(&[-1])).unwrap();
        assert_eq!(op.decide_hp_with_budget(None).verdict, Verdict::NotPreserves);
        assert_eq!(op.decide_hp_closed_form().verdict, Verdict::NotPreserves);
    }

    #[test]
    fn falsify_finds_the_first_counterexample() {
        // The search hits x² immediately for this operator.
        let t5 = bench_op(-1, -1);
        let w = falsify(&t5, &SearchBudget::default()).unwrap();
        assert_eq!(w.input, RatPoly::monomial(int(1), 2));
        assert_eq!(w.image, poly(&[-2, 0, -3]));
        assert!(is_hyperbolic(&w.input));
        assert!(!is_hyperbolic(&w.image));

        // Monomials and shifted powers all survive this operator; the first
        // refutation is a product of two far-apart grid roots.
        let t1 = bench_op(1, -1);
        let w = falsify(&t1, &SearchBudget::default()).unwrap();
        let expected =
            &RatPoly::linear_from_root(&int(-20)) * &RatPoly::linear_from_root(&rat(3, 2));
        assert_eq!(w.input, expected);
        assert!(is_hyperbolic(&w.input));
        assert!(!is_hyperbolic(&w.image));
        assert_eq!(w.image, t1.apply(&w.input));

        // Preserving operators yield nothing, however hard we look.
        let t3 = bench_op(1, 1);
        let tiny = SearchBudget {
            max_degree: 3,
            grid_bound: 2,
            max_candidates: 300,
        };
        assert_eq!(falsify(&t3, &tiny), None);

        // The candidate cap is respected.
        let zero_budget = SearchBudget {
            max_degree: 4,
            grid_bound: 20,
            max_candidates: 0,
        };
        assert_eq!(falsify(&t5, &zero_budget), None);
    }

    #[test]
    fn decide_attaches_witnesses_for_failures() {
        let cert = bench_op(-1, -1).decide_hp();
        assert_eq!(cert.verdict, Verdict::NotPreserves);
        let w = cert.witness.expect("witness found within default budget");
        assert!(!is_hyperbolic(&w.image));

        let cert = bench_op(1, 1).decide_hp();
        assert_eq!(cert.verdict, Verdict::Preserves);
        assert_eq!(cert.witness, None);
    }

    #[test]
    fn quarter_bound_is_sharp_at_the_midpoint() {
        let report = quarter_bound_check(&int(0), &int(2), &int(1)).unwrap();
        assert!(report.holds);
        assert!(report.equality);
        assert_eq!(report.lhs, int(4));
        assert_eq!(report.rhs, int(4));

        let report = quarter_bound_check(&int(0), &int(2), &int(0)).unwrap();
        assert!(report.holds);
        assert!(!report.equality);

        // r3 outside the root interval makes the left side negative.
        let report = quarter_bound_check(&int(0), &int(2), &int(5)).unwrap();
        assert!(report.holds);
        assert!(report.lhs.is_negative());

        assert_eq!(
            quarter_bound_check(&int(1), &int(1), &int(0)),
            Err(QuarterBoundError::DegenerateRoots)
        );
    }
}
