use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod error;
mod expr;
mod output;
mod verify;

use error::CliError;

/// Solid spherical monogenics: basis evaluation, Gram matrices, series expansions
/// and the verification suite.
///
/// MONOGENICA_THREADS caps the worker threads. Exit status: 0 success,
/// 1 verification failure, 2 usage or input error.
#[derive(Parser, Debug)]
#[command(name = "monogenica", version, about, long_about = None)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate one basis element at one or more points.
    Eval(EvalArgs),
    /// Gram matrix of the orthonormal basis over a ball, ball exterior or sphere.
    Gram(GramArgs),
    /// Fourier, Taylor or Laurent expansion of a function spec.
    Expand(ExpandArgs),
    /// Laurent expansion on one or more spheres, with principal/secondary split.
    Laurent(LaurentArgs),
    /// Run the invariant suite and write a JSON report.
    Verify(VerifyArgs),
    /// Tables of operator factors, norms and family conversion factors.
    Table(TableArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Phi,
    Appell,
}

impl From<FamilyArg> for monogenica::BasisFamily {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Phi => monogenica::BasisFamily::OrthonormalPhi,
            FamilyArg::Appell => monogenica::BasisFamily::AppellA,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum GramDomain {
    Ball,
    Exterior,
    Sphere,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExpandKind {
    Fourier,
    Taylor,
    Laurent,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum LaurentPart {
    All,
    Principal,
    Secondary,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableOp {
    Derivative,
    Primitive,
    Norm,
    Convert,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
pub struct EvalArgs {
    #[arg(long, value_enum, default_value_t = FamilyArg::Phi)]
    pub family: FamilyArg,
    /// Signed degree k (k >= 0 inner, k <= -2 outer).
    #[arg(long)]
    pub k: i32,
    #[arg(long)]
    pub l: u32,
    /// Point as x0,x1,x2; repeatable.
    #[arg(long = "point", required = true, value_parser = output::parse_point)]
    pub points: Vec<[f64; 3]>,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct Orders {
    /// Quadrature orders n_r,n_theta,n_phi; defaults depend on the degree.
    #[arg(long, value_parser = output::parse_orders)]
    pub orders: Option<[usize; 3]>,
}

#[derive(Args, Debug)]
pub struct GramArgs {
    #[arg(long, value_enum, default_value_t = GramDomain::Ball)]
    pub domain: GramDomain,
    /// Largest |k| included.
    #[arg(long, default_value_t = 4)]
    pub n_max: usize,
    /// Radius of the ball, sphere, or excluded ball.
    #[arg(long, default_value_t = 1.0)]
    pub rho: f64,
    #[command(flatten)]
    pub orders: Orders,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
pub struct ExpandArgs {
    #[arg(long, value_enum, default_value_t = ExpandKind::Fourier)]
    pub kind: ExpandKind,
    /// Function spec, e.g. "A(2,1)*(1+e2) + kernel(0,0,1.5)".
    #[arg(long)]
    pub spec: String,
    /// Largest degree (Fourier, Taylor) or default |k| bound (Laurent).
    #[arg(long, default_value_t = 6)]
    pub n_max: usize,
    /// Sphere radius for Taylor and Laurent coefficients (Fourier uses the unit ball).
    #[arg(long, default_value_t = 1.0)]
    pub rho: f64,
    #[arg(long)]
    pub k_min: Option<i32>,
    #[arg(long)]
    pub k_max: Option<i32>,
    /// Basis family of the emitted coefficients (γ for appell, γ* for phi in Laurent expansions).
    #[arg(long, value_enum, default_value_t = FamilyArg::Appell)]
    pub family: FamilyArg,
    #[command(flatten)]
    pub orders: Orders,
    /// Coefficients with every component at most this are dropped.
    #[arg(long, default_value_t = 1e-12)]
    pub prune: f64,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// CSV file for the truncation-error table; printed to stderr otherwise.
    #[arg(long)]
    pub table: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
pub struct LaurentArgs {
    #[arg(long)]
    pub spec: String,
    /// Sphere radius; repeat to compare radii.
    #[arg(long = "rho", default_values_t = [1.0])]
    pub rhos: Vec<f64>,
    #[arg(long, default_value_t = -6)]
    pub k_min: i32,
    #[arg(long, default_value_t = 6)]
    pub k_max: i32,
    #[arg(long, value_enum, default_value_t = FamilyArg::Appell)]
    pub family: FamilyArg,
    #[arg(long, value_enum, default_value_t = LaurentPart::All)]
    pub part: LaurentPart,
    #[command(flatten)]
    pub orders: Orders,
    #[arg(long, default_value_t = 1e-12)]
    pub prune: f64,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 6)]
    pub n_max: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// More sample points and the high-degree evaluator checks.
    #[arg(long)]
    pub deep: bool,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[arg(long, value_enum)]
    pub op: TableOp,
    #[arg(long, value_enum, default_value_t = FamilyArg::Phi)]
    pub family: FamilyArg,
    #[arg(long, default_value_t = 6)]
    pub n_max: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("MONOGENICA_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| CliError::Usage(format!("MONOGENICA_THREADS must be a positive integer, got '{v}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(format!("cannot set thread count: {e}")))
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    configure_threads()?;
    match cli.command {
        Command::Eval(a) => commands::eval(&a),
        Command::Gram(a) => commands::gram(&a),
        Command::Expand(a) => commands::expand(&a),
        Command::Laurent(a) => commands::laurent(&a),
        Command::Verify(a) => verify::run(&a),
        Command::Table(a) => commands::table(&a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            // every failure other than a failed verification is a usage error
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
