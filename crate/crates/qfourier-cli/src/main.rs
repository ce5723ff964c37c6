mod cache;
mod cmd;
mod config;
mod grid;
mod output;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qfourier_core::QError;

use config::{OutputFormat, RunConfig};

/// q-trigonometric functions, their zeros and q-Fourier expansions.
#[derive(Parser, Debug)]
#[command(name = "qfourier", version)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Common {
    /// Base q in (0,1).
    #[arg(long, global = true)]
    pub q: Option<f64>,
    /// Series truncation tolerance.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[arg(long, global = true)]
    pub max_terms: Option<usize>,
    /// Starting Gauss–Legendre order.
    #[arg(long, global = true)]
    pub quad_order: Option<usize>,
    /// Flat key=value file; explicit flags win over its entries.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Zero table cache (default: $QFOURIER_CACHE_DIR, then ./.qfourier-cache).
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate C, S or E on real points.
    Eval(EvalArgs),
    /// Compute (or load from cache) a table of zeros.
    Zeros(ZerosArgs),
    /// q-Fourier coefficients of a builtin or sampled function.
    Coeffs(CoeffsArgs),
    /// Partial sums from a coefficient file.
    Synth(SynthArgs),
    /// Run a named verification suite.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FnKind {
    C,
    S,
    E,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Rep {
    Auto,
    Phi21,
    Phi22,
    Hermite,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    #[arg(long = "fn", value_enum, ignore_case = true)]
    pub func: FnKind,
    #[arg(long, allow_negative_numbers = true, conflicts_with = "omega_classical")]
    pub omega: Option<f64>,
    /// Classical frequency f, mapped to ω = f(1−q)/2.
    #[arg(long, allow_negative_numbers = true)]
    pub omega_classical: Option<f64>,
    /// Angle(s): a number, a comma list, or grid:start:end:count (pi allowed).
    #[arg(long, allow_hyphen_values = true, conflicts_with = "x")]
    pub theta: Option<String>,
    /// Point(s) x = cos θ in [−1, 1], same syntax as --theta.
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
    #[arg(long, value_enum, default_value = "auto")]
    pub rep: Rep,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Sine,
    Cosine,
}

#[derive(Args, Debug)]
pub struct ZerosArgs {
    #[arg(long)]
    pub count: usize,
    #[arg(long, value_enum, default_value = "sine")]
    pub kind: KindArg,
    /// CSV path; the JSON sidecar goes next to it with a .json extension.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FormArg {
    Real,
    Complex,
}

#[derive(Args, Debug)]
pub struct CoeffsArgs {
    /// one, x, x2, sign, step, mode:K:n, legendre:m
    #[arg(long = "fn", conflicts_with = "points")]
    pub func: Option<String>,
    /// File of `theta,f` rows, interpolated linearly.
    #[arg(long)]
    pub points: Option<PathBuf>,
    #[arg(long)]
    pub n_max: usize,
    #[arg(long, value_enum, default_value = "real")]
    pub form: FormArg,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Fail instead of computing a missing zero table.
    #[arg(long)]
    pub no_auto: bool,
}

#[derive(Args, Debug)]
pub struct SynthArgs {
    #[arg(long)]
    pub coeffs: PathBuf,
    #[arg(long, allow_hyphen_values = true, default_value = "grid:0:pi:33")]
    pub theta: String,
    /// Truncation order (default: every mode in the file).
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub no_auto: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Orthogonality,
    Identities,
    Limits,
    Asymptotics,
    Zeros,
    Generating,
    Legendre,
    All,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
}

/// Error with the process exit code it maps to.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub msg: String,
}

impl CliError {
    pub fn domain(msg: impl Into<String>) -> Self {
        CliError { code: 2, msg: msg.into() }
    }

    pub fn structural(msg: impl Into<String>) -> Self {
        CliError { code: 4, msg: msg.into() }
    }
}

impl From<QError> for CliError {
    fn from(e: QError) -> Self {
        let code = match e {
            QError::Domain(_) => 2,
            QError::Convergence { .. } => 3,
            QError::Structural(_) => 4,
        };
        CliError { code, msg: e.to_string() }
    }
}

pub type CliResult<T> = Result<T, CliError>;

fn run(cli: Cli) -> CliResult<u8> {
    let cfg = RunConfig::resolve(&cli.common)?;
    match cli.cmd {
        Command::Eval(a) => cmd::eval(&a, &cfg),
        Command::Zeros(a) => cmd::zeros(&a, &cfg),
        Command::Coeffs(a) => cmd::coeffs(&a, &cfg),
        Command::Synth(a) => cmd::synth(&a, &cfg),
        Command::Verify(a) => verify::run(a.suite, &cfg),
    }
    .map(|ok| if ok { 0 } else { 1 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.msg);
            ExitCode::from(e.code)
        }
    }
}
