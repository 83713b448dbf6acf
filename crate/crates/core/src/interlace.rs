//! Interlacing of real zeros and the "proper position" relation.
//!
//! Two real-rooted polynomials interlace when their sorted root multisets
//! alternate (ties allowed); proper position additionally pins down which
//! polynomial leads, through the relative sign of the leading coefficients.
//! All root comparisons are exact: rational roots compare directly,
//! irrational roots through isolating intervals refined on demand, and
//! potential coincidences are settled by a gcd witness instead of epsilons.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_rational::BigRational;

use crate::poly::RatPoly;
use crate::rational::sign;
use crate::real_roots::{count_real_roots, isolate_roots, Endpoint, IsolatedInterval, RootError};

/// Wronskian `W[f, g] = f·g′ − f′·g`.
pub fn wronskian(f: &RatPoly, g: &RatPoly) -> RatPoly {
    &(f * &g.derivative()) - &(&f.derivative() * g)
}

/// Which alternation pattern the sorted root multisets realize (α = roots of
/// the first polynomial, β = roots of the second, both with multiplicity).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InterlacingForm {
    /// Equal counts, α leads: α₁ ≤ β₁ ≤ α₂ ≤ … ≤ αₙ ≤ βₙ.
    Form1,
    /// Equal counts, β leads: β₁ ≤ α₁ ≤ β₂ ≤ … ≤ βₙ ≤ αₙ.
    Form2,
    /// α has one more root and brackets β: α₁ ≤ β₁ ≤ … ≤ βₙ₋₁ ≤ αₙ.
    Form3,
    /// β has one more root and brackets α: β₁ ≤ α₁ ≤ … ≤ αₙ ≤ βₙ₊₁.
    Form4,
    /// Both degrees ≤ 1: such pairs interlace by convention.
    LowDegree,
    /// One side is the zero polynomial, which is in proper position with
    /// everything by convention.
    ZeroConvention,
}

/// Relative sign of the two leading coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LeadingSignRelation {
    Same,
    Opposite,
    /// Undefined because one side is the zero polynomial.
    NotApplicable,
}

/// Outcome of a proper-position test `f ≪ g`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProperPositionReport {
    /// Whether `f ≪ g` holds.
    pub holds: bool,
    /// The interlacing pattern found, if any.  When `holds` is true this is
    /// the pattern that, combined with the sign relation, establishes the
    /// relation; when false it still reports a pattern that holds on the
    /// roots alone, for diagnostics.
    pub interlacing_form: Option<InterlacingForm>,
    /// Relative leading signs of `f` and `g`.
    pub leading_sign_relation: LeadingSignRelation,
    /// The Wronskian `W[g, f] = g·f′ − g′·f`, nonnegative on the whole line
    /// whenever `f ≪ g` holds with both sides nonzero.
    pub wronskian: RatPoly,
}

/// A real root known either exactly or through an isolating interval.
enum Root {
    Exact(BigRational),
    Bracket(IsolatedInterval),
}

/// Distinct real roots of one polynomial, ascending, with multiplicities.
struct RootSet {
    roots: Vec<(Root, usize)>,
    total_multiplicity: usize,
}

fn root_set(p: &RatPoly) -> Result<RootSet, RootError> {
    let iso = isolate_roots(p)?;
    let total = iso.total_multiplicity();
    let mut roots = Vec::with_capacity(iso.exact_roots.len() + iso.intervals.len());
    let mut exacts = iso.exact_roots.into_iter().peekable();
    let mut brackets = iso.intervals.into_iter().peekable();
    loop {
        let take_exact = match (exacts.peek(), brackets.peek()) {
            (Some((r, _)), Some(iv)) => r < &iv.lo,
            (Some(_), None) => true,
            (None, Some(_)) => false,
            (None, None) => break,
        };
        if take_exact {
            let (r, m) = exacts.next().unwrap();
            roots.push((Root::Exact(r), m));
        } else {
            let iv = brackets.next().unwrap();
            let m = iv.multiplicity;
            roots.push((Root::Bracket(iv), m));
        }
    }
    Ok(RootSet {
        roots,
        total_multiplicity: total,
    })
}

/// Exact order of two roots, refining isolating intervals as needed.  A
/// possible coincidence of two bracketed roots is decided by whether the gcd
/// of the defining factors has a root in the intervals' intersection.
fn compare_roots(a: &mut Root, b: &mut Root) -> Ordering {
    match (a, b) {
        (Root::Exact(x), Root::Exact(y)) => (*x).cmp(y),
        (Root::Exact(x), Root::Bracket(iv)) => {
            iv.refine_away_from(x);
            if *x < iv.lo {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        }
        (Root::Bracket(iv), Root::Exact(y)) => {
            iv.refine_away_from(y);
            if iv.hi < *y {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        }
        (Root::Bracket(iva), Root::Bracket(ivb)) => {
            let h = iva.factor().gcd(ivb.factor());
            if h.degree().is_some_and(|d| d >= 1) {
                let lo = iva.lo.clone().max(ivb.lo.clone());
                let hi = iva.hi.clone().min(ivb.hi.clone());
                if lo < hi
                    && count_real_roots(&h, &Endpoint::Value(lo), &Endpoint::Value(hi))
                        .expect("gcd of nonzero factors is nonzero")
                        > 0
                {
                    return Ordering::Equal;
                }
            }
            while iva.overlaps(ivb) {
                iva.refine();
                ivb.refine();
            }
            if iva.hi < ivb.lo {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        }
    }
}

/// Pairwise order of every distinct root of `a` against every distinct root
/// of `b`: `cross[i][j]` compares `a.roots[i]` with `b.roots[j]`.
fn cross_matrix(a: &mut RootSet, b: &mut RootSet) -> Vec<Vec<Ordering>> {
    let mut cross = vec![vec![Ordering::Equal; b.roots.len()]; a.roots.len()];
    for (i, (ra, _)) in a.roots.iter_mut().enumerate() {
        for (j, (rb, _)) in b.roots.iter_mut().enumerate() {
            cross[i][j] = compare_roots(ra, rb);
        }
    }
    cross
}

/// Distinct-root indices repeated by multiplicity, ascending.
fn expanded(set: &RootSet) -> Vec<usize> {
    let mut out = Vec::with_capacity(set.total_multiplicity);
    for (i, (_, m)) in set.roots.iter().enumerate() {
        for _ in 0..*m {
            out.push(i);
        }
    }
    out
}

struct FormChecker<'a> {
    alpha: &'a [usize],
    beta: &'a [usize],
    cross: &'a [Vec<Ordering>],
}

impl FormChecker<'_> {
    fn alpha_le(&self, i: usize, j: usize) -> bool {
        self.cross[self.alpha[i]][self.beta[j]] != Ordering::Greater
    }

    fn beta_le(&self, j: usize, i: usize) -> bool {
        self.cross[self.alpha[i]][self.beta[j]] != Ordering::Less
    }

    fn holds(&self, form: InterlacingForm) -> bool {
        let n = self.alpha.len();
        let m = self.beta.len();
        match form {
            InterlacingForm::Form1 => {
                n == m
                    && (0..n).all(|k| self.alpha_le(k, k))
                    && (0..n.saturating_sub(1)).all(|k| self.beta_le(k, k + 1))
            }
            InterlacingForm::Form2 => {
                n == m
                    && (0..n).all(|k| self.beta_le(k, k))
                    && (0..n.saturating_sub(1)).all(|k| self.alpha_le(k, k + 1))
            }
            InterlacingForm::Form3 => {
                n == m + 1 && (0..m).all(|k| self.alpha_le(k, k) && self.beta_le(k, k + 1))
            }
            InterlacingForm::Form4 => {
                m == n + 1 && (0..n).all(|k| self.beta_le(k, k) && self.alpha_le(k, k + 1))
            }
            _ => false,
        }
    }
}

/// Decides whether the real zeros of `f` and `g` interlace, and if so in
/// which pattern (the first match among the four forms, in order).
///
/// Both degree ≤ 1 is interlacing by convention.  Degrees differing by more
/// than one, or a polynomial with a non-real zero, cannot interlace.
/// Errors if either polynomial is identically zero.
pub fn have_interlacing_zeros(
    f: &RatPoly,
    g: &RatPoly,
) -> Result<(bool, Option<InterlacingForm>), RootError> {
    if f.is_zero() || g.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    let df = f.degree().expect("nonzero");
    let dg = g.degree().expect("nonzero");
    if df <= 1 && dg <= 1 {
        return Ok((true, Some(InterlacingForm::LowDegree)));
    }
    if df.abs_diff(dg) >= 2 {
        return Ok((false, None));
    }
    let mut rf = root_set(f)?;
    let mut rg = root_set(g)?;
    if rf.total_multiplicity != df || rg.total_multiplicity != dg {
        return Ok((false, None));
    }
    let cross = cross_matrix(&mut rf, &mut rg);
    let alpha = expanded(&rf);
    let beta = expanded(&rg);
    let checker = FormChecker {
        alpha: &alpha,
        beta: &beta,
        cross: &cross,
    };
    for form in [
        InterlacingForm::Form1,
        InterlacingForm::Form2,
        InterlacingForm::Form3,
        InterlacingForm::Form4,
    ] {
        if checker.holds(form) {
            return Ok((true, Some(form)));
        }
    }
    Ok((false, None))
}

/// Decides the proper-position relation `f ≪ g`.
///
/// Conventions: the zero polynomial is in proper position with every
/// real-rooted polynomial (and with zero), and any two polynomials of
/// degree at most one are in proper position.
/// Otherwise the relation requires interlacing zeros in a pattern compatible
/// with the relative leading signs: α-leading or β-bracketing patterns with
/// equal signs, β-leading or α-bracketing patterns with opposite signs.
pub fn proper_position(f: &RatPoly, g: &RatPoly) -> ProperPositionReport {
    let w = wronskian(g, f);
    if f.is_zero() || g.is_zero() {
        // The convention extends the relation over hyperbolic polynomials:
        // the zero polynomial pairs with anything real-rooted, never with a
        // polynomial that has non-real zeros.
        let other_hyperbolic = crate::real_roots::is_hyperbolic(if f.is_zero() { g } else { f });
        return ProperPositionReport {
            holds: other_hyperbolic,
            interlacing_form: other_hyperbolic.then_some(InterlacingForm::ZeroConvention),
            leading_sign_relation: LeadingSignRelation::NotApplicable,
            wronskian: w,
        };
    }
    let relation = if sign(f.leading_coeff().expect("nonzero"))
        == sign(g.leading_coeff().expect("nonzero"))
    {
        LeadingSignRelation::Same
    } else {
        LeadingSignRelation::Opposite
    };
    let df = f.degree().expect("nonzero");
    let dg = g.degree().expect("nonzero");
    if df <= 1 && dg <= 1 {
        return ProperPositionReport {
            holds: true,
            interlacing_form: Some(InterlacingForm::LowDegree),
            leading_sign_relation: relation,
            wronskian: w,
        };
    }
    if df.abs_diff(dg) >= 2 {
        return ProperPositionReport {
            holds: false,
            interlacing_form: None,
            leading_sign_relation: relation,
            wronskian: w,
        };
    }

    let mut report = ProperPositionReport {
        holds: false,
        interlacing_form: None,
        leading_sign_relation: relation,
        wronskian: w,
    };
    let (mut rf, mut rg) = match (root_set(f), root_set(g)) {
        (Ok(a), Ok(b)) => (a, b),
        _ => unreachable!("both polynomials are nonzero"),
    };
    if rf.total_multiplicity != df || rg.total_multiplicity != dg {
        return report; // non-real zeros: no interlacing possible
    }
    let cross = cross_matrix(&mut rf, &mut rg);
    let alpha = expanded(&rf);
    let beta = expanded(&rg);
    let checker = FormChecker {
        alpha: &alpha,
        beta: &beta,
        cross: &cross,
    };
    let (qualifying, other) = match relation {
        LeadingSignRelation::Same => (
            [InterlacingForm::Form1, InterlacingForm::Form4],
            [InterlacingForm::Form2, InterlacingForm::Form3],
        ),
        _ => (
            [InterlacingForm::Form2, InterlacingForm::Form3],
            [InterlacingForm::Form1, InterlacingForm::Form4],
        ),
    };
    for form in qualifying {
        if checker.holds(form) {
            report.holds = true;
            report.interlacing_form = Some(form);
            return report;
        }
    }
    for form in other {
        if checker.holds(form) {
            report.interlacing_form = Some(form);
            return report;
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn poly(coeffs: &[i64]) -> RatPoly {
        RatPoly::from_int_coeffs(coeffs)
    }

    #[test]
    fn wronskian_oracles() {
        assert_eq!(wronskian(&poly(&[1]), &poly(&[0, 2])), poly(&[2]));
        assert_eq!(
            wronskian(&poly(&[0, 2]), &poly(&[-1, 0, 1])),
            poly(&[2, 0, 2])
        );
        // Antisymmetry spot check.
        assert_eq!(
            wronskian(&poly(&[-1, 0, 1]), &poly(&[0, 2])),
            -&poly(&[2, 0, 2])
        );
    }

    #[test]
    fn interlacing_detects_the_bracketing_patterns() {
        // 2x against x² − 1: one root between two.
        let (ok, form) = have_interlacing_zeros(&poly(&[0, 2]), &poly(&[-1, 0, 1])).unwrap();
        assert!(ok);
        assert_eq!(form, Some(InterlacingForm::Form4));

        // Swapped arguments turn the bracket around.
        let (ok, form) = have_interlacing_zeros(&poly(&[-1, 0, 1]), &poly(&[0, 2])).unwrap();
        assert!(ok);
        assert_eq!(form, Some(InterlacingForm::Form3));

        // Equal-count staggered roots: {−2, 1} against {−1, 2}.
        let f = &poly(&[2, 1]) * &poly(&[-1, 1]);
        let g = &poly(&[1, 1]) * &poly(&[-2, 1]);
        let (ok, form) = have_interlacing_zeros(&f, &g).unwrap();
        assert!(ok);
        assert_eq!(form, Some(InterlacingForm::Form1));
    }

    #[test]
    fn interlacing_respects_conventions_and_limits() {
        // Degree ≤ 1 pairs interlace by convention.
        let (ok, form) = have_interlacing_zeros(&poly(&[5]), &poly(&[-3, 1])).unwrap();
        assert!(ok);
        assert_eq!(form, Some(InterlacingForm::LowDegree));

        // Degree gap of two.
        let (ok, form) = have_interlacing_zeros(&poly(&[2]), &poly(&[-1, 0, 1])).unwrap();
        assert!(!ok);
        assert_eq!(form, None);

        // Double root at 1 cannot straddle the root at 2.
        let f = RatPoly::linear_from_root(&int(1)).pow(2);
        let (ok, form) = have_interlacing_zeros(&f, &poly(&[-2, 1])).unwrap();
        assert!(!ok);
        assert_eq!(form, None);

        // Non-real zeros never interlace.
        let (ok, _) = have_interlacing_zeros(&poly(&[1, 0, 1]), &poly(&[0, 1])).unwrap();
        assert!(!ok);

        // Nested (not alternating) roots: ±2 against ±1.
        let (ok, _) = have_interlacing_zeros(&poly(&[-4, 0, 1]), &poly(&[-1, 0, 1])).unwrap();
        assert!(!ok);

        assert_eq!(
            have_interlacing_zeros(&RatPoly::zero(), &poly(&[1])),
            Err(RootError::ZeroPolynomial)
        );
    }

    #[test]
    fn interlacing_handles_irrational_and_shared_roots() {
        // ±√2 inside {−√3, 0, √3}.
        let f = poly(&[-2, 0, 1]);
        let g = poly(&[0, -3, 0, 1]);
        let (ok, form) = have_interlacing_zeros(&f, &g).unwrap();
        assert!(ok);
        assert_eq!(form, Some(InterlacingForm::Form4));

        // Shared irrational roots: x² − 2 against x(x² − 2), ties allowed.
        let g = poly(&[0, -2, 0, 1]);
        let (ok, form) = have_interlacing_zeros(&f, &g).unwrap();
        assert!(ok);
        assert_eq!(form, Some(InterlacingForm::Form4));

        // Identical polynomials tie everywhere.
        let (ok, form) = have_interlacing_zeros(&f, &f).unwrap();
        assert!(ok);
        assert_eq!(form, Some(InterlacingForm::Form1));
    }

    #[test]
    fn proper_position_conventions() {
        let g = poly(&[-1, 0, 1]);
        let r = proper_position(&RatPoly::zero(), &g);
        assert!(r.holds);
        assert_eq!(r.interlacing_form, Some(InterlacingForm::ZeroConvention));
        assert_eq!(r.leading_sign_relation, LeadingSignRelation::NotApplicable);

        let r = proper_position(&g, &RatPoly::zero());
        assert!(r.holds);

        let r = proper_position(&RatPoly::zero(), &RatPoly::zero());
        assert!(r.holds);

        // The zero convention does not extend to non-real-rooted partners.
        let r = proper_position(&RatPoly::zero(), &poly(&[1, 0, 1]));
        assert!(!r.holds);
        assert_eq!(r.interlacing_form, None);

        // Degree ≤ 1 pairs hold regardless of signs.
        let r = proper_position(&poly(&[1]), &poly(&[0, 2]));
        assert!(r.holds);
        assert_eq!(r.interlacing_form, Some(InterlacingForm::LowDegree));
        let r = proper_position(&poly(&[-1]), &poly(&[0, 2]));
        assert!(r.holds);
        assert_eq!(r.leading_sign_relation, LeadingSignRelation::Opposite);
    }

    #[test]
    fn proper_position_uses_signs_to_orient_patterns() {
        // 2x ≪ x² − 1 with matching signs.
        let r = proper_position(&poly(&[0, 2]), &poly(&[-1, 0, 1]));
        assert!(r.holds);
        assert_eq!(r.interlacing_form, Some(InterlacingForm::Form4));
        assert_eq!(r.leading_sign_relation, LeadingSignRelation::Same);
        assert_eq!(r.wronskian, poly(&[-2, 0, -2])); // W[x²−1, 2x]

        // −2x against x² − 1: same pattern, wrong sign pairing.
        let r = proper_position(&poly(&[0, -2]), &poly(&[-1, 0, 1]));
        assert!(!r.holds);
        assert_eq!(r.interlacing_form, Some(InterlacingForm::Form4));
        assert_eq!(r.leading_sign_relation, LeadingSignRelation::Opposite);

        // Negating the quadratic restores matching signs: −2x ≪ 1 − x².
        let r = proper_position(&poly(&[0, -2]), &poly(&[1, 0, -1]));
        assert!(r.holds);
        assert_eq!(r.leading_sign_relation, LeadingSignRelation::Same);

        // Constant against a quadratic: degree gap two, no pattern.
        let r = proper_position(&poly(&[2]), &poly(&[-1, 0, 1]));
        assert!(!r.holds);
        assert_eq!(r.interlacing_form, None);
    }
}
