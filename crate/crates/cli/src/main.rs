//! The `quadhp` binary: argv in, one JSON document on standard output, exit
//! code 0 for computed verdicts, 2 for rejected input or hypotheses, 1 for
//! internal errors.

use clap::{Parser, Subcommand, ValueEnum};
use quadhp_cli::{
    run_apply, run_basis, run_check_ms, run_check_op, run_construct_violation, run_falsify,
    run_gen_sequence, run_probe, CliError, CmdOutput, Family, FamilyParams, ViolationArgs,
};

const POLY_HELP: &str = "JSON coefficient array, ascending by degree; entries are integers or \
                         \"num/den\" strings (x\u{b2}\u{2212}1 is \"[-1,0,1]\")";

#[derive(Parser)]
#[command(
    name = "quadhp",
    about = "Exact decisions for quadratic differential operators T = Q2*D\u{b2} + Q1*D + Q0 \
             acting on real-rooted polynomials",
    long_about = None,
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether T preserves real-rootedness; prints a certificate
    /// with the verdicts of both decision routes side by side.
    CheckOp {
        #[arg(long, help = POLY_HELP)]
        q2: String,
        #[arg(long, help = POLY_HELP)]
        q1: String,
        #[arg(long, help = POLY_HELP)]
        q0: String,
    },
    /// Apply T to a polynomial and print the image.
    Apply {
        #[arg(long, help = POLY_HELP)]
        q2: String,
        #[arg(long, help = POLY_HELP)]
        q1: String,
        #[arg(long, help = POLY_HELP)]
        q0: String,
        #[arg(long, help = POLY_HELP)]
        p: String,
    },
    /// Search for a real-rooted input whose image is not real-rooted;
    /// prints the witness pair or null.
    Falsify {
        #[arg(long, help = POLY_HELP)]
        q2: String,
        #[arg(long, help = POLY_HELP)]
        q1: String,
        #[arg(long, help = POLY_HELP)]
        q0: String,
        /// Highest input degree tried [default: 4, or QUADHP_MAX_DEGREE]
        #[arg(long)]
        max_degree: Option<usize>,
        /// Roots and shifts range over half-integers in [-B, B] [default: 20]
        #[arg(long)]
        grid_bound: Option<i64>,
        /// Hard cap on candidates tested [default: 5000]
        #[arg(long)]
        max_candidates: Option<usize>,
    },
    /// Scan the symbol Q0(x) - Q1(x)w + Q2(x)w\u{b2} at pseudo-random
    /// upper-half-plane pairs; prints the smallest magnitude seen.
    Probe {
        #[arg(long, help = POLY_HELP)]
        q2: String,
        #[arg(long, help = POLY_HELP)]
        q1: String,
        #[arg(long, help = POLY_HELP)]
        q0: String,
        /// Number of sample pairs
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        /// Seed of the deterministic generator
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Build a certified upper-half-plane near-zero (residual <= 1e-9) of
    /// ((x+r1)w - a)((x+r2)w - b) - r, or of (x+r)\u{b2}w\u{b2} - a(x+r)w + R
    /// with --repeated.
    ConstructViolation {
        /// Use the repeated-shift form with --a, --r and --R
        #[arg(long)]
        repeated: bool,
        #[arg(long, allow_hyphen_values = true)]
        a: f64,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        r1: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        r2: Option<f64>,
        /// Distinct mode: the product value r (violations exist for r
        /// outside [0, ab]); repeated mode: the common shift
        #[arg(long, allow_hyphen_values = true)]
        r: f64,
        /// Repeated mode: the value R (violations exist outside [0, a\u{b2}/4])
        #[arg(long = "R", allow_hyphen_values = true)]
        big_r: Option<f64>,
    },
    /// Decide whether {A, B, C, alpha, beta} describe a multiplier sequence
    /// for the chosen basis; prints a certificate plus the sequence head.
    CheckMs {
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Quadratic coefficient A (rational, e.g. "1" or "-3/2")
        #[arg(long = "A", allow_hyphen_values = true)]
        a: String,
        /// Linear coefficient B
        #[arg(long = "B", allow_hyphen_values = true)]
        b: String,
        /// Constant term C (standard family only; defaults to 0)
        #[arg(long = "C", allow_hyphen_values = true)]
        c: Option<String>,
        /// Jacobi exponent alpha (>= -1)
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        /// Jacobi exponent beta (>= -1)
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<String>,
    },
    /// Print the exact sequence terms gamma_0 ... gamma_N.
    GenSequence {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long = "A", allow_hyphen_values = true)]
        a: String,
        #[arg(long = "B", allow_hyphen_values = true)]
        b: String,
        #[arg(long = "C", allow_hyphen_values = true)]
        c: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<String>,
        /// Last index printed (inclusive)
        #[arg(long)]
        n: usize,
    },
    /// Print the n-th basis polynomial of a family as a coefficient array.
    Basis {
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Jacobi exponent alpha (> -1)
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        /// Jacobi exponent beta (> -1)
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<String>,
        /// Degree of the basis polynomial
        #[arg(long)]
        n: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Standard,
    Legendre,
    Jacobi,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::Standard => Family::Standard,
            FamilyArg::Legendre => Family::Legendre,
            FamilyArg::Jacobi => Family::Jacobi,
        }
    }
}

fn dispatch(cli: Cli) -> Result<CmdOutput, CliError> {
    match cli.command {
        Command::CheckOp { q2, q1, q0 } => run_check_op(&q2, &q1, &q0),
        Command::Apply { q2, q1, q0, p } => run_apply(&q2, &q1, &q0, &p),
        Command::Falsify {
            q2,
            q1,
            q0,
            max_degree,
            grid_bound,
            max_candidates,
        } => run_falsify(&q2, &q1, &q0, max_degree, grid_bound, max_candidates),
        Command::Probe {
            q2,
            q1,
            q0,
            samples,
            seed,
        } => run_probe(&q2, &q1, &q0, samples, seed),
        Command::ConstructViolation {
            repeated,
            a,
            b,
            r1,
            r2,
            r,
            big_r,
        } => run_construct_violation(ViolationArgs {
            repeated,
            a,
            b,
            r1,
            r2,
            r,
            big_r,
        }),
        Command::CheckMs {
            family,
            a,
            b,
            c,
            alpha,
            beta,
        } => run_check_ms(
            family.into(),
            FamilyParams {
                a: Some(&a),
                b: Some(&b),
                c: c.as_deref(),
                alpha: alpha.as_deref(),
                beta: beta.as_deref(),
            },
        ),
        Command::GenSequence {
            family,
            a,
            b,
            c,
            alpha,
            beta,
            n,
        } => run_gen_sequence(
            family.into(),
            FamilyParams {
                a: Some(&a),
                b: Some(&b),
                c: c.as_deref(),
                alpha: alpha.as_deref(),
                beta: beta.as_deref(),
            },
            n,
        ),
        Command::Basis {
            family,
            alpha,
            beta,
            n,
        } => run_basis(family.into(), alpha.as_deref(), beta.as_deref(), n),
    }
}

fn real_main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return 0;
            }
            let rendered = e.to_string();
            let message = rendered
                .lines()
                .take_while(|line| !line.starts_with("Usage:"))
                .map(str::trim)
                .filter(|line| !line.is_empty())
                .collect::<Vec<_>>()
                .join(" ")
                .trim_start_matches("error: ")
                .to_string();
            println!("{}", CliError::invalid_input(message).to_json_line());
            return 2;
        }
    };
    match dispatch(cli) {
        Ok(CmdOutput { json, code }) => {
            println!("{json}");
            code
        }
        Err(e) => {
            println!("{}", e.to_json_line());
            e.exit_code()
        }
    }
}

fn main() {
    let code = match std::panic::catch_unwind(real_main) {
        Ok(code) => code,
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unexpected panic".to_string());
            println!("{}", CliError::internal(message).to_json_line());
            1
        }
    };
    std::process::exit(code);
}
