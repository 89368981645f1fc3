//! The `hcontract` command line.
//!
//! Every command builds a [`Report`] (a table plus verdicts) and renders it
//! as CSV or JSON. Rows are computed in parallel and collected in input
//! order, so output is byte-for-byte reproducible.

mod commands;
pub mod config;
pub mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use config::{Format, List, RunConfig, Span, OUTPUT_DIR_ENV};
pub use output::{Cell, Report, Verdict, SCHEMA_VERSION};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error(transparent)]
    Run(#[from] crate::Error),
}

#[derive(Debug, Parser)]
#[command(
    name = "hcontract",
    version,
    about = "Projector kernels on complex spheres and the Heisenberg group, and the contraction between them",
    after_help = "Settings resolve as: command-line flag, then --config file (key = value lines, keys spelled like the flags), then built-in default.\n\
                  Without --output, tables go to $HCONTRACT_OUTPUT_DIR/<command>.<ext> if that variable is set, else to stdout.\n\
                  Exit status is 0 when every verdict passes and no row failed, 1 otherwise, 2 on usage errors."
)]
pub struct Cli {
    /// Table format.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the table here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Flat key = value file with defaults for any flag.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Reserved; no command currently draws random numbers.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Jacobi and Laguerre polynomials.
    #[command(subcommand)]
    Specfun(SpecfunCmd),
    /// Bigraded harmonics on S^{2n+1}.
    #[command(subcommand)]
    Sphere(SphereCmd),
    /// Laguerre projectors and divisor sums on the Heisenberg group.
    #[command(subcommand)]
    Heis(HeisCmd),
    /// Contraction of the sphere onto the Heisenberg group.
    ///
    /// The test function is the bump exp(1 - 1/(1 - (r/R)^2)) e^{imt} for
    /// r < R (zero beyond), with R = --radius (default 1).
    #[command(subcommand)]
    Contract(ContractCmd),
}

#[derive(Debug, Subcommand)]
pub enum SpecfunCmd {
    /// Evaluate P_n^{(a,b)}(x) or L_k^{(a)}(x).
    Eval(EvalArgs),
    /// Mehler-Heine: cos^M(x/sqrt M) P_k^{(j-k,M)}(cos(2x/sqrt M)) against
    /// L_k^{(j-k)}(x^2) e^{-x^2/2}, with M = N - j - k.
    MehlerSweep(MehlerArgs),
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// Jacobi parameters `degree,alpha,beta`.
    #[arg(long, conflicts_with = "laguerre")]
    pub jacobi: Option<List<f64>>,
    /// Laguerre parameters `degree,alpha`.
    #[arg(long)]
    pub laguerre: Option<List<f64>>,
    /// Evaluation points.
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<List<f64>>,
}

#[derive(Debug, Args)]
pub struct MehlerArgs {
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub j: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<f64>,
    #[arg(long = "N")]
    pub big_n: Option<List<u64>>,
}

#[derive(Debug, Subcommand)]
pub enum SphereCmd {
    /// Dimensions and joint eigenvalues of H^{l,l'} for l, l' <= lmax.
    Dims(DimsArgs),
    /// Normalized zonal kernel at (theta, phi).
    Zonal(ZonalArgs),
    /// L^p -> L^2 norm brackets of pi_{l,l'} along a ray, with a slope fit.
    NormSweep(SphereSweepArgs),
}

#[derive(Debug, Args)]
pub struct DimsArgs {
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub lmax: Option<u32>,
}

#[derive(Debug, Args)]
pub struct ZonalArgs {
    #[arg(long)]
    pub n: Option<u32>,
    /// Bidegree `l,l'`.
    #[arg(long)]
    pub bd: Option<List<u32>>,
    #[arg(long)]
    pub theta: Option<List<f64>>,
    #[arg(long, allow_hyphen_values = true)]
    pub phi: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Ray {
    /// (l, l)
    Diagonal,
    /// (l, 0)
    Holomorphic,
    /// (0, l)
    Antiholomorphic,
}

impl std::str::FromStr for Ray {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        <Ray as ValueEnum>::from_str(s, true)
    }
}

#[derive(Debug, Args)]
pub struct SphereSweepArgs {
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long, value_enum)]
    pub ray: Option<Ray>,
    #[arg(long)]
    pub p: Option<f64>,
    /// Degrees `lo:hi`, swept dyadically.
    #[arg(long)]
    pub lrange: Option<Span>,
    /// Allowed |slope - predicted|.
    #[arg(long)]
    pub tolerance: Option<f64>,
    /// Minimum radial quadrature nodes (at least 32).
    #[arg(long)]
    pub radial_nodes: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum HeisCmd {
    /// Exact exponents alpha, beta, rho and the breakpoint p~.
    Exponents(ExponentArgs),
    /// Exact divisor-type sums d(N).
    #[command(name = "dN")]
    DN(DivisorArgs),
    /// Checks sum m^n (2k+n)^{n-1} = N^n d(N) in exact arithmetic.
    QnCheck(DivisorArgs),
    /// Norm brackets of P_{m,k} along k or |m|, with a slope fit.
    NormSweep(HeisSweepArgs),
    /// Bound curves for Q_N, Pi_N, M_N and E_{N/2,N}.
    Bounds(BoundsArgs),
}

#[derive(Debug, Args)]
pub struct ExponentArgs {
    #[arg(long)]
    pub n: Option<u32>,
    /// Exponents `p` as rationals (`10/7`) or decimals; default 1, p~, 2.
    #[arg(long)]
    pub p: Option<List<String>>,
}

#[derive(Debug, Args)]
pub struct DivisorArgs {
    #[arg(long)]
    pub n: Option<u32>,
    /// `N` or `lo:hi`.
    #[arg(long = "N")]
    pub big_n: Option<Span>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Axis {
    /// Sweep k with m fixed; abscissa 2k + n.
    K,
    /// Sweep m with k fixed; abscissa |m|.
    M,
}

impl std::str::FromStr for Axis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        <Axis as ValueEnum>::from_str(s, true)
    }
}

#[derive(Debug, Args)]
pub struct HeisSweepArgs {
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long, value_enum)]
    pub axis: Option<Axis>,
    #[arg(long)]
    pub p: Option<f64>,
    /// Swept values `lo:hi`, dyadic. Defaults: k 8:128, m 1:64.
    #[arg(long)]
    pub range: Option<Span>,
    /// Fixed m for a k-sweep.
    #[arg(long, allow_hyphen_values = true)]
    pub m: Option<i64>,
    /// Fixed k for an m-sweep.
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub tolerance: Option<f64>,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long = "N")]
    pub big_n: Option<Span>,
    #[arg(long)]
    pub p: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum ContractCmd {
    /// nu^{-n/p'} ||f_nu||_p against ||f||_p.
    Lemma2(Lemma2Args),
    /// nu^{-n/2} ||pi_{N-k,k} f_nu||_2 against ||P_{m,k} f||_2.
    Limit(LimitArgs),
    /// Inner products of scaled chart points against cos(|z-w|/sqrt nu) e^{i psi}.
    Diagnostic(DiagnosticArgs),
}

#[derive(Debug, Args)]
pub struct Lemma2Args {
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub p: Option<List<f64>>,
    #[arg(long)]
    pub nu: Option<List<u64>>,
    /// Bump radius R.
    #[arg(long)]
    pub radius: Option<f64>,
    /// Bump frequency in t.
    #[arg(long, allow_hyphen_values = true)]
    pub m: Option<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Schedule {
    /// N = |m| nu + 2k
    Shifted,
    /// N = |m| nu
    Rounded,
}

impl std::str::FromStr for Schedule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        <Schedule as ValueEnum>::from_str(s, true)
    }
}

#[derive(Debug, Args)]
pub struct LimitArgs {
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    pub m: Option<i64>,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub nu: Option<List<u64>>,
    /// Bump radius R.
    #[arg(long)]
    pub radius: Option<f64>,
    #[arg(long, value_enum)]
    pub schedule: Option<Schedule>,
    /// Largest acceptable final rel_err.
    #[arg(long)]
    pub tolerance: Option<f64>,
}

#[derive(Debug, Args)]
pub struct DiagnosticArgs {
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub nu: Option<List<u64>>,
}

/// Parses `args`, runs the command and returns the exit status.
pub fn run<I, T, W, E>(args: I, out: &mut W, err: &mut E) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
    W: Write,
    E: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                CliError::Usage(_) => 2,
                _ => 1,
            }
        }
    }
}

/// Runs a parsed command; `Ok(false)` when some verdict failed.
pub fn execute<W: Write>(cli: &Cli, out: &mut W) -> Result<bool, CliError> {
    let rc = RunConfig::new(cli.format, cli.output.clone(), cli.seed, cli.config.as_deref())?;
    let (stem, report) = commands::dispatch(&cli.command, &rc)?;
    report.emit(rc.format, rc.destination(stem).as_deref(), out)?;
    Ok(report.ok())
}
