//! JSON layer and command runners for the `quadhp` binary.
//!
//! Everything the binary prints is produced here, so the format is testable
//! without spawning a process.  The conventions are fixed:
//!
//! * polynomials travel as JSON arrays of coefficients ascending by degree;
//!   on input each entry may be an integer or a `"num/den"` string, on
//!   output entries are always canonical rational strings,
//! * every command prints exactly one JSON document on standard output,
//! * errors are JSON objects `{"error": {"kind": …, "message": …}}`,
//! * exit codes: 0 for a computed verdict (either way), 2 for violated
//!   hypotheses, invalid specs/ranges and malformed input, 1 for internal
//!   failures.

use quadhp_core::interlace::{InterlacingForm, LeadingSignRelation, ProperPositionReport};
use quadhp_core::multiplier::{
    basis_poly, decide_ms, sequence_terms, BasisFamily, MultiplierCertificate, MultiplierError,
    SequenceSpec,
};
use quadhp_core::quad_hp::{falsify, ClosedFormParams, FailureReason, Witness};
use quadhp_core::rational::{format_rational, parse_rational};
use quadhp_core::symbol_probe::{
    construct_violation, construct_violation_repeated, monte_carlo_probe, ProbeError, ProbeResult,
    StabilityWitness,
};
use quadhp_core::{BigRational, Certificate, QuadOperator, RatPoly, SearchBudget, Verdict};
use serde::Serialize;

/// Environment variable overriding the default counterexample search depth
/// (the `--max-degree` flag still wins when given).
pub const MAX_DEGREE_ENV: &str = "QUADHP_MAX_DEGREE";

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

/// What went wrong, coarse enough to map onto an exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed argv values: unparsable polynomials, rationals or flags.
    InvalidInput,
    /// Violation requested for parameters in the preserving range.
    InvalidRange,
    /// Sequence-family parameters outside the family's domain.
    InvalidSpec,
    /// A bug or numeric breakdown; exit code 1 instead of 2.
    Internal,
}

impl ErrorKind {
    fn as_str(self) -> &'static str {
        match self {
            ErrorKind::InvalidInput => "invalid_input",
            ErrorKind::InvalidRange => "invalid_range",
            ErrorKind::InvalidSpec => "invalid_spec",
            ErrorKind::Internal => "internal",
        }
    }
}

/// An error ready to be printed as a JSON object and turned into an exit
/// code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub kind: ErrorKind,
    pub message: String,
}

impl CliError {
    pub fn invalid_input(message: impl Into<String>) -> Self {
        CliError {
            kind: ErrorKind::InvalidInput,
            message: message.into(),
        }
    }

    pub fn internal(message: impl Into<String>) -> Self {
        CliError {
            kind: ErrorKind::Internal,
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.kind {
            ErrorKind::Internal => 1,
            _ => 2,
        }
    }

    /// The single-line JSON document for standard output.
    pub fn to_json_line(&self) -> String {
        serde_json::json!({
            "error": { "kind": self.kind.as_str(), "message": self.message }
        })
        .to_string()
    }
}

// ---------------------------------------------------------------------------
// Input parsing
// ---------------------------------------------------------------------------

/// Parses a polynomial argument: a JSON array of coefficients ascending by
/// degree, each an integer or a `"num/den"` string.  `label` names the flag
/// in error messages.
pub fn parse_poly_arg(label: &str, text: &str) -> Result<RatPoly, CliError> {
    let raw: Vec<serde_json::Value> = serde_json::from_str(text).map_err(|e| {
        CliError::invalid_input(format!(
            "--{label}: expected a JSON array of integer or \"num/den\" coefficients \
             ascending by degree: {e}"
        ))
    })?;
    let bad = |i: usize, why: &dyn core::fmt::Display| {
        CliError::invalid_input(format!("--{label}: coefficient {i}: {why}"))
    };
    let mut coeffs = Vec::with_capacity(raw.len());
    for (i, entry) in raw.into_iter().enumerate() {
        let value = match entry {
            serde_json::Value::Number(n) => {
                if let Some(v) = n.as_i64() {
                    BigRational::from_integer(v.into())
                } else if let Some(v) = n.as_u64() {
                    BigRational::from_integer(v.into())
                } else {
                    return Err(bad(
                        i,
                        &"not an integer; write fractions and huge values as \"num/den\" strings",
                    ));
                }
            }
            serde_json::Value::String(s) => {
                parse_rational(&s).map_err(|e| bad(i, &e))?
            }
            other => return Err(bad(i, &format!("unsupported JSON value {other}"))),
        };
        coeffs.push(value);
    }
    Ok(RatPoly::new(coeffs))
}

/// Parses a rational argument (`"3"`, `"-7/2"`, …).
pub fn parse_rational_arg(label: &str, text: &str) -> Result<BigRational, CliError> {
    parse_rational(text).map_err(|e| CliError::invalid_input(format!("--{label}: {e}")))
}

/// Builds the operator from three polynomial arguments, enforcing the
/// degree caps 2, 1, 0.
pub fn build_operator(q2: &str, q1: &str, q0: &str) -> Result<QuadOperator, CliError> {
    let q2 = parse_poly_arg("q2", q2)?;
    let q1 = parse_poly_arg("q1", q1)?;
    let q0 = parse_poly_arg("q0", q0)?;
    QuadOperator::new(q2, q1, q0).map_err(|e| CliError::invalid_input(e.to_string()))
}

/// The search budget after applying the `QUADHP_MAX_DEGREE` environment
/// override and any explicit flags (flags win over the environment).
pub fn effective_budget(
    max_degree: Option<usize>,
    grid_bound: Option<i64>,
    max_candidates: Option<usize>,
) -> Result<SearchBudget, CliError> {
    let mut budget = SearchBudget::default();
    if let Ok(value) = std::env::var(MAX_DEGREE_ENV) {
        budget.max_degree = value.parse().map_err(|_| {
            CliError::invalid_input(format!(
                "{MAX_DEGREE_ENV}: expected a nonnegative integer, got {value:?}"
            ))
        })?;
    }
    if let Some(d) = max_degree {
        budget.max_degree = d;
    }
    if let Some(g) = grid_bound {
        budget.grid_bound = g;
    }
    if let Some(c) = max_candidates {
        budget.max_candidates = c;
    }
    Ok(budget)
}

// ---------------------------------------------------------------------------
// Output documents
// ---------------------------------------------------------------------------

fn poly_json(p: &RatPoly) -> Vec<String> {
    p.coeff_strings()
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Preserves => "preserves",
        Verdict::NotPreserves => "not_preserves",
        Verdict::HypothesesViolated => "hypotheses_violated",
    }
}

fn failure_name(r: FailureReason) -> &'static str {
    match r {
        FailureReason::WPositiveSomewhere => "w_positive_somewhere",
        FailureReason::ChainBroken => "chain_broken",
        FailureReason::DegreeMismatch => "degree_mismatch",
    }
}

fn form_name(f: InterlacingForm) -> &'static str {
    match f {
        InterlacingForm::Form1 => "form1",
        InterlacingForm::Form2 => "form2",
        InterlacingForm::Form3 => "form3",
        InterlacingForm::Form4 => "form4",
        InterlacingForm::LowDegree => "low-degree-convention",
        InterlacingForm::ZeroConvention => "zero-convention",
    }
}

fn sign_relation_name(r: LeadingSignRelation) -> &'static str {
    match r {
        LeadingSignRelation::Same => "same",
        LeadingSignRelation::Opposite => "opposite",
        LeadingSignRelation::NotApplicable => "not_applicable",
    }
}

#[derive(Debug, Serialize)]
pub struct ProperPositionJson {
    pub holds: bool,
    pub interlacing_form: Option<&'static str>,
    pub leading_sign_relation: &'static str,
    pub wronskian: Vec<String>,
}

impl ProperPositionJson {
    fn from_report(report: &ProperPositionReport) -> Self {
        ProperPositionJson {
            holds: report.holds,
            interlacing_form: report.interlacing_form.map(form_name),
            leading_sign_relation: sign_relation_name(report.leading_sign_relation),
            wronskian: poly_json(&report.wronskian),
        }
    }
}

#[derive(Debug, Serialize)]
#[serde(tag = "kind")]
pub enum ClosedFormJson {
    #[serde(rename = "distinct")]
    Distinct {
        a: String,
        b: String,
        r1: String,
        r2: String,
        #[serde(rename = "R")]
        ratio: String,
    },
    #[serde(rename = "repeated")]
    Repeated {
        a: String,
        #[serde(rename = "r")]
        root: String,
        #[serde(rename = "R")]
        ratio: String,
    },
}

impl ClosedFormJson {
    fn from_params(params: &ClosedFormParams) -> Self {
        match params {
            ClosedFormParams::Distinct { a, b, r1, r2, ratio } => ClosedFormJson::Distinct {
                a: format_rational(a),
                b: format_rational(b),
                r1: format_rational(r1),
                r2: format_rational(r2),
                ratio: format_rational(ratio),
            },
            ClosedFormParams::Repeated { a, root, ratio } => ClosedFormJson::Repeated {
                a: format_rational(a),
                root: format_rational(root),
                ratio: format_rational(ratio),
            },
        }
    }
}

#[derive(Debug, Serialize)]
pub struct WitnessJson {
    pub input: Vec<String>,
    pub image: Vec<String>,
}

impl WitnessJson {
    fn from_witness(witness: &Witness) -> Self {
        WitnessJson {
            input: poly_json(&witness.input),
            image: poly_json(&witness.image),
        }
    }
}

/// The `check-op` document: the structural route's certificate with the
/// closed-form route's verdict alongside, so a disagreement (a bug) is
/// visible to users.
#[derive(Debug, Serialize)]
pub struct CertificateJson {
    pub verdict: &'static str,
    pub closed_form_verdict: &'static str,
    pub w_poly: Vec<String>,
    pub chain: Vec<ProperPositionJson>,
    pub closed_form: Option<ClosedFormJson>,
    pub witness: Option<WitnessJson>,
    pub failure_reason: Option<&'static str>,
}

impl CertificateJson {
    pub fn from_decision(direct: &Certificate, closed_form_route: &Certificate) -> Self {
        CertificateJson {
            verdict: verdict_name(direct.verdict),
            closed_form_verdict: verdict_name(closed_form_route.verdict),
            w_poly: poly_json(&direct.w_poly),
            chain: direct.chain.iter().map(ProperPositionJson::from_report).collect(),
            closed_form: direct.closed_form.as_ref().map(ClosedFormJson::from_params),
            witness: direct.witness.as_ref().map(WitnessJson::from_witness),
            failure_reason: direct.failure_reason.map(failure_name),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct StabilityWitnessJson {
    pub x: [f64; 2],
    pub w: [f64; 2],
    pub residual: f64,
}

impl StabilityWitnessJson {
    fn from_witness(witness: &StabilityWitness) -> Self {
        StabilityWitnessJson {
            x: [witness.x.re, witness.x.im],
            w: [witness.w.re, witness.w.im],
            residual: witness.residual,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ArgminJson {
    pub x: [f64; 2],
    pub w: [f64; 2],
}

#[derive(Debug, Serialize)]
pub struct ProbeJson {
    pub min_abs: f64,
    pub argmin: ArgminJson,
    pub samples: u64,
    pub seed: u64,
}

impl ProbeJson {
    fn from_result(result: &ProbeResult, samples: u64, seed: u64) -> Self {
        let (x, w) = result.argmin;
        ProbeJson {
            min_abs: result.min_abs,
            argmin: ArgminJson {
                x: [x.re, x.im],
                w: [w.re, w.im],
            },
            samples,
            seed,
        }
    }
}

/// The `check-ms` document: the certificate schema of `check-op` (absent
/// fields are null when no genuinely quadratic operator is induced) plus
/// the head of the sequence.
#[derive(Debug, Serialize)]
pub struct CheckMsJson {
    pub verdict: &'static str,
    pub w_poly: Option<Vec<String>>,
    pub chain: Option<Vec<ProperPositionJson>>,
    pub closed_form: Option<ClosedFormJson>,
    pub witness: Option<WitnessJson>,
    pub failure_reason: Option<&'static str>,
    pub sequence_head: Vec<String>,
}

impl CheckMsJson {
    fn from_certificate(certificate: &MultiplierCertificate) -> Self {
        let verdict = if certificate.is_multiplier {
            "preserves"
        } else {
            "not_preserves"
        };
        let op_cert = certificate.operator_certificate.as_ref();
        CheckMsJson {
            verdict,
            w_poly: op_cert.map(|c| poly_json(&c.w_poly)),
            chain: op_cert
                .map(|c| c.chain.iter().map(ProperPositionJson::from_report).collect()),
            closed_form: op_cert
                .and_then(|c| c.closed_form.as_ref())
                .map(ClosedFormJson::from_params),
            witness: op_cert
                .and_then(|c| c.witness.as_ref())
                .map(WitnessJson::from_witness),
            failure_reason: op_cert.and_then(|c| c.failure_reason).map(failure_name),
            sequence_head: certificate.sequence_head.iter().map(format_rational).collect(),
        }
    }
}

// ---------------------------------------------------------------------------
// Command runners
// ---------------------------------------------------------------------------

/// One rendered JSON line plus the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CmdOutput {
    pub json: String,
    pub code: i32,
}

fn render(value: &impl Serialize, code: i32) -> Result<CmdOutput, CliError> {
    let json = serde_json::to_string(value)
        .map_err(|e| CliError::internal(format!("serialization failed: {e}")))?;
    Ok(CmdOutput { json, code })
}

/// `check-op`: decide preservation by both routes and report them
/// side-by-side.  Exit code 2 when the hypotheses are violated.
pub fn run_check_op(q2: &str, q1: &str, q0: &str) -> Result<CmdOutput, CliError> {
    let op = build_operator(q2, q1, q0)?;
    let budget = effective_budget(None, None, None)?;
    let direct = op.decide_hp_with_budget(Some(&budget));
    let closed = op.decide_hp_closed_form();
    let code = if direct.verdict == Verdict::HypothesesViolated {
        2
    } else {
        0
    };
    render(&CertificateJson::from_decision(&direct, &closed), code)
}

/// `apply`: print `T[p]` as a coefficient array.
pub fn run_apply(q2: &str, q1: &str, q0: &str, p: &str) -> Result<CmdOutput, CliError> {
    let op = build_operator(q2, q1, q0)?;
    let p = parse_poly_arg("p", p)?;
    render(&poly_json(&op.apply(&p)), 0)
}

/// `falsify`: search for a hyperbolic input with a non-hyperbolic image;
/// prints the witness or `null`.
pub fn run_falsify(
    q2: &str,
    q1: &str,
    q0: &str,
    max_degree: Option<usize>,
    grid_bound: Option<i64>,
    max_candidates: Option<usize>,
) -> Result<CmdOutput, CliError> {
    let op = build_operator(q2, q1, q0)?;
    let budget = effective_budget(max_degree, grid_bound, max_candidates)?;
    let witness = falsify(&op, &budget);
    render(&witness.as_ref().map(WitnessJson::from_witness), 0)
}

/// `probe`: deterministic random scan for the smallest `|symbol|` over the
/// upper half-plane.
pub fn run_probe(
    q2: &str,
    q1: &str,
    q0: &str,
    samples: u64,
    seed: u64,
) -> Result<CmdOutput, CliError> {
    let op = build_operator(q2, q1, q0)?;
    let result = monte_carlo_probe(&op, samples, seed);
    render(&ProbeJson::from_result(&result, samples, seed), 0)
}

/// Arguments of `construct-violation`; `b`, `r1`, `r2` belong to the
/// distinct-shift mode, `big_r` to the repeated mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ViolationArgs {
    pub repeated: bool,
    pub a: f64,
    pub b: Option<f64>,
    pub r1: Option<f64>,
    pub r2: Option<f64>,
    pub r: f64,
    pub big_r: Option<f64>,
}

fn probe_error(e: ProbeError) -> CliError {
    match e {
        ProbeError::InvalidRange => CliError {
            kind: ErrorKind::InvalidRange,
            message: e.to_string(),
        },
        ProbeError::ConstructionFailed => CliError::internal(e.to_string()),
    }
}

/// `construct-violation`: build a certified near-zero of the normalized
/// symbol with both coordinates in the upper half-plane.
pub fn run_construct_violation(args: ViolationArgs) -> Result<CmdOutput, CliError> {
    let witness = if args.repeated {
        if args.b.is_some() || args.r1.is_some() || args.r2.is_some() {
            return Err(CliError::invalid_input(
                "--repeated takes only --a, --r and --R",
            ));
        }
        let big_r = args
            .big_r
            .ok_or_else(|| CliError::invalid_input("--repeated requires --R"))?;
        construct_violation_repeated(args.a, args.r, big_r).map_err(probe_error)?
    } else {
        if args.big_r.is_some() {
            return Err(CliError::invalid_input("--R requires --repeated"));
        }
        let require = |name: &str, v: Option<f64>| {
            v.ok_or_else(|| CliError::invalid_input(format!("missing --{name}")))
        };
        let b = require("b", args.b)?;
        let r1 = require("r1", args.r1)?;
        let r2 = require("r2", args.r2)?;
        construct_violation(args.a, b, r1, r2, args.r).map_err(probe_error)?
    };
    render(&StabilityWitnessJson::from_witness(&witness), 0)
}

// ---------------------------------------------------------------------------
// Sequence families
// ---------------------------------------------------------------------------

/// Which diagonal family a sequence command addresses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Standard,
    Legendre,
    Jacobi,
}

/// Raw family parameters as given on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct FamilyParams<'a> {
    pub a: Option<&'a str>,
    pub b: Option<&'a str>,
    pub c: Option<&'a str>,
    pub alpha: Option<&'a str>,
    pub beta: Option<&'a str>,
}

fn require_param<'a>(name: &str, value: Option<&'a str>) -> Result<&'a str, CliError> {
    value.ok_or_else(|| CliError::invalid_input(format!("missing --{name}")))
}

fn reject_param(name: &str, value: Option<&str>, family: Family) -> Result<(), CliError> {
    if value.is_some() {
        return Err(CliError::invalid_input(format!(
            "--{name} does not apply to the {} family",
            family_name(family)
        )));
    }
    Ok(())
}

fn family_name(family: Family) -> &'static str {
    match family {
        Family::Standard => "standard",
        Family::Legendre => "legendre",
        Family::Jacobi => "jacobi",
    }
}

fn spec_error(e: MultiplierError) -> CliError {
    CliError {
        kind: ErrorKind::InvalidSpec,
        message: e.to_string(),
    }
}

/// Assembles and validates a sequence spec from command-line parameters.
pub fn build_spec(family: Family, params: FamilyParams<'_>) -> Result<SequenceSpec, CliError> {
    let a = parse_rational_arg("A", require_param("A", params.a)?)?;
    let b = parse_rational_arg("B", require_param("B", params.b)?)?;
    let spec = match family {
        Family::Standard => {
            reject_param("alpha", params.alpha, family)?;
            reject_param("beta", params.beta, family)?;
            let c = match params.c {
                Some(text) => parse_rational_arg("C", text)?,
                None => BigRational::from_integer(0.into()),
            };
            SequenceSpec::Standard { a, b, c }
        }
        Family::Legendre => {
            reject_param("C", params.c, family)?;
            reject_param("alpha", params.alpha, family)?;
            reject_param("beta", params.beta, family)?;
            SequenceSpec::Legendre { a, b }
        }
        Family::Jacobi => {
            reject_param("C", params.c, family)?;
            SequenceSpec::Jacobi {
                a,
                b,
                alpha: parse_rational_arg("alpha", require_param("alpha", params.alpha)?)?,
                beta: parse_rational_arg("beta", require_param("beta", params.beta)?)?,
            }
        }
    };
    spec.validate().map_err(spec_error)?;
    Ok(spec)
}

/// `check-ms`: decide whether the described sequence is a multiplier sequence
/// for its basis; certificate schema plus the sequence head.
pub fn run_check_ms(family: Family, params: FamilyParams<'_>) -> Result<CmdOutput, CliError> {
    let spec = build_spec(family, params)?;
    let certificate = decide_ms(&spec).map_err(spec_error)?;
    render(&CheckMsJson::from_certificate(&certificate), 0)
}

/// `gen-sequence`: the exact terms γ₀ … γ_N.
pub fn run_gen_sequence(
    family: Family,
    params: FamilyParams<'_>,
    n: usize,
) -> Result<CmdOutput, CliError> {
    let spec = build_spec(family, params)?;
    let terms: Vec<String> = sequence_terms(&spec, n).iter().map(format_rational).collect();
    render(&terms, 0)
}

/// `basis`: the n-th basis polynomial of the family as a coefficient array.
pub fn run_basis(
    family: Family,
    alpha: Option<&str>,
    beta: Option<&str>,
    n: usize,
) -> Result<CmdOutput, CliError> {
    let basis_family = match family {
        Family::Standard => {
            reject_param("alpha", alpha, family)?;
            reject_param("beta", beta, family)?;
            BasisFamily::Standard
        }
        Family::Legendre => {
            reject_param("alpha", alpha, family)?;
            reject_param("beta", beta, family)?;
            BasisFamily::Legendre
        }
        Family::Jacobi => BasisFamily::Jacobi {
            alpha: parse_rational_arg("alpha", require_param("alpha", alpha)?)?,
            beta: parse_rational_arg("beta", require_param("beta", beta)?)?,
        },
    };
    let poly = basis_poly(&basis_family, n).map_err(spec_error)?;
    render(&poly_json(&poly), 0)
}
