//! `sendov-lab`: command-line checks for critical points of polynomials with
//! prescribed zeros.
//!
//! Exit codes: 0 success, 1 certificate invalid or hypothesis violated,
//! 2 input or parse error, 3 numerical non-convergence.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use sendov_core::error::{Error, ErrorKind};
use sendov_core::poly::PrescribedRoot;
use sendov_core::roots::SolverOptions;

mod commands;
pub mod config;
pub mod output;

use output::Format;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

/// Environment variable overriding the search seed.
pub const SEED_ENV: &str = "SENDOV_LAB_SEED";

#[derive(Debug, Parser)]
#[command(
    name = "sendov-lab",
    version,
    about = "Certify critical-point locations for polynomials with prescribed zeros"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Worker threads for parallel stages [default: available parallelism]
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(flatten)]
    solver: SolverArgs,
}

#[derive(Debug, Args)]
struct SolverArgs {
    /// Stop when every root update is below this
    #[arg(long, global = true, default_value_t = 1e-12)]
    solver_tol: f64,
    /// Residual bound, relative to the largest coefficient
    #[arg(long, global = true, default_value_t = 1e-9)]
    residual_tol: f64,
    #[arg(long, global = true, default_value_t = 200)]
    max_iter: usize,
    #[arg(long, global = true, default_value_t = 1e-6)]
    cluster_radius: f64,
}

impl SolverArgs {
    fn options(&self) -> Result<SolverOptions, String> {
        for (name, v) in [
            ("--solver-tol", self.solver_tol),
            ("--residual-tol", self.residual_tol),
            ("--cluster-radius", self.cluster_radius),
        ] {
            positive(name, v)?;
        }
        Ok(SolverOptions {
            tol: self.solver_tol,
            residual_tol: self.residual_tol,
            max_iter: self.max_iter,
            cluster_radius: self.cluster_radius,
        })
    }
}

fn positive(name: &str, v: f64) -> Result<f64, String> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(format!("{name} must be positive, got {v}"))
    }
}

/// A configuration given as a JSON file or inline.
#[derive(Debug, Args)]
struct ConfigArgs {
    /// JSON configuration file
    #[arg(long, conflicts_with_all = ["a", "n", "zero"])]
    input: Option<PathBuf>,
    /// Distinguished root `re,im`
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    a: Option<Complex64>,
    /// Multiplicity of `a`
    #[arg(long)]
    n: Option<u32>,
    /// Another root `re,im:mult`; repeatable
    #[arg(long = "zero", allow_hyphen_values = true, value_parser = parse_zero)]
    zero: Vec<PrescribedRoot>,
    /// Allow roots outside the closed unit disk (inline input only)
    #[arg(long, conflicts_with = "input")]
    unbounded: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Free critical points, nearest critical point to `a`, Gauss–Lucas
    Check(ConfigArgs),
    /// Two-root configuration `(z - a)^kmul (z - b)^rmul`
    Lemma {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        a: Complex64,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        b: Complex64,
        #[arg(long)]
        kmul: u32,
        #[arg(long)]
        rmul: u32,
    },
    /// Disk and half-plane certificate for `a` on the unit circle
    Thm1(ConfigArgs),
    /// The `|zeta - 1/2| <= 1/2` certificate
    Corollary1(ConfigArgs),
    /// Root of `(1-a)^k - (a(m-n)+n)/m` in `(0, 1)`
    A0 {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u64,
        #[arg(long, default_value_t = 1e-15)]
        tol: f64,
    },
    /// Modulus-bound certificate for real `a` in `(0, a0]`
    Thm2 {
        #[command(flatten)]
        config: ConfigArgs,
        /// Run outside `(0, a0]` and label the report advisory
        #[arg(long)]
        advisory: bool,
    },
    /// Degree threshold for an asymptotic family; `--format csv` emits the n-trace
    Thm3 {
        /// JSON family description
        #[arg(long)]
        input: PathBuf,
        /// Target radius around the witness [default: half the margin]
        #[arg(long)]
        rho: Option<f64>,
        #[arg(long, default_value_t = 10_000)]
        n_max: u32,
        #[arg(long, default_value_t = 10)]
        window: u32,
        #[arg(long, default_value_t = 1000)]
        probe_from: u32,
        #[arg(long, default_value_t = 2000)]
        probe_to: u32,
    },
    /// Both sides of the reciprocal-sum identity for `a` on the unit circle
    Identity {
        #[command(flatten)]
        config: ConfigArgs,
        #[arg(long, default_value_t = 1e-8)]
        identity_tol: f64,
    },
    /// Randomized maximization of the distance from `a` to its nearest critical point
    Search {
        /// JSON search space `{"n", "multiplicities", "a_mode", "seed"}`
        #[arg(long, conflicts_with_all = ["n", "mult", "a", "a_free"])]
        input: Option<PathBuf>,
        #[arg(long)]
        n: Option<u32>,
        /// Multiplicities of the free roots, comma separated
        #[arg(long, value_delimiter = ',')]
        mult: Vec<u32>,
        /// Fixed real `a` in `[0, 1]`
        #[arg(long, conflicts_with = "a_free")]
        a: Option<f64>,
        /// Search `a` over `[0, 1]`
        #[arg(long)]
        a_free: bool,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 32)]
        restarts: usize,
        #[arg(long, default_value_t = 400)]
        iters: usize,
    },
    /// Distance of every free critical point to the hull of the prescribed roots
    GaussLucas {
        #[command(flatten)]
        config: ConfigArgs,
        #[arg(long, default_value_t = 1e-7)]
        hull_tol: f64,
    },
}

fn parse_f64(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|_| format!("not a number: {s:?}"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("not finite: {s:?}"))
    }
}

/// `re,im` or a bare real.
fn parse_complex(s: &str) -> Result<Complex64, String> {
    match s.split_once(',') {
        Some((re, im)) => Ok(Complex64::new(parse_f64(re)?, parse_f64(im)?)),
        None => Ok(Complex64::new(parse_f64(s)?, 0.0)),
    }
}

/// `re,im:mult`; the multiplicity defaults to 1.
fn parse_zero(s: &str) -> Result<PrescribedRoot, String> {
    let (z, mult) = match s.rsplit_once(':') {
        Some((z, m)) => (z, m.trim().parse().map_err(|_| format!("bad multiplicity in {s:?}"))?),
        None => (s, 1),
    };
    Ok(PrescribedRoot::new(parse_complex(z)?, mult))
}

/// Failure of a command, mapped onto an exit code.
#[derive(Debug)]
enum Failure {
    Input(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<String> for Failure {
    fn from(e: String) -> Self {
        Failure::Input(e)
    }
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Input(_) => EXIT_INPUT,
            Failure::Core(e) => match e.kind() {
                ErrorKind::Input => EXIT_INPUT,
                ErrorKind::Hypothesis => EXIT_INVALID,
                ErrorKind::Numerical => EXIT_NUMERICAL,
            },
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Input(msg) => f.write_str(msg),
            Failure::Core(e) => write!(f, "{e}"),
        }
    }
}

/// Parses `argv` (program name first), runs the command, writes the report to
/// `stdout` and diagnostics to `stderr`, and returns the exit code.
pub fn run<I, T>(argv: I, stdout: &mut impl Write, stderr: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = stderr.write_all(rendered.as_bytes());
                EXIT_INPUT
            } else {
                let _ = stdout.write_all(rendered.as_bytes());
                EXIT_OK
            };
        }
    };

    let outcome = match cli.threads {
        Some(0) => Err(Failure::Input("--threads must be at least 1".into())),
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(|| commands::dispatch(&cli)),
            Err(e) => Err(Failure::Input(format!("cannot start thread pool: {e}"))),
        },
        None => commands::dispatch(&cli),
    };

    match outcome {
        Ok(report) => {
            if let Err(e) = output::emit(stdout, cli.format, &report.json, &report.table) {
                let _ = writeln!(stderr, "error: cannot write report: {e}");
                return EXIT_INPUT;
            }
            if let Some(note) = &report.diagnostic {
                let _ = writeln!(stderr, "{note}");
            }
            report.exit
        }
        Err(failure) => {
            let _ = writeln!(stderr, "error: {failure}");
            failure.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inline_parsers() {
        assert_eq!(parse_complex("-1,0.5").unwrap(), Complex64::new(-1.0, 0.5));
        assert_eq!(parse_complex("0.3").unwrap(), Complex64::new(0.3, 0.0));
        assert!(parse_complex("1,x").is_err());
        assert!(parse_complex("inf").is_err());
        let z = parse_zero("-0.5,0.25:3").unwrap();
        assert_eq!((z.z, z.mult), (Complex64::new(-0.5, 0.25), 3));
        assert_eq!(parse_zero("0,1").unwrap().mult, 1);
    }
}
