use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use exactfact::diagnose::{
    check, CheckOptions, Claim, Diagnosis, DiagonalizationClaim, OrthogonalDiagonalizationClaim, SvdClaim,
};
use exactfact::error::Error;
use exactfact::factorize::SvdMode;
use exactfact::io::{parse_float_matrix, parse_matrix, parse_rational_matrix, read_matrix_file};
use exactfact::json::{render_diagnosis_json, render_trace_json};
use exactfact::matrix::ExactMatrix;
use exactfact::trace::{
    explain, render_diagnosis_latex, render_diagnosis_text, render_latex, render_text, ComputeMode, Operation,
    TextOptions, Trace,
};

#[derive(Parser)]
#[command(
    name = "exactfact",
    version,
    about = "Exact matrix factorizations with derivations, and a checker for claimed ones"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Decimal places for floating-point values in text and LaTeX output.
    #[arg(long, global = true, default_value_t = 12, value_parser = clap::value_parser!(u32).range(1..=17))]
    precision: u32,

    /// Reserved. No command uses randomness.
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Latex,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    Numeric,
    /// Exact, falling back to floating point when the spectrum is not rational or quadratic.
    Auto,
}

impl From<Mode> for ComputeMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Exact => ComputeMode::Exact,
            Mode::Numeric => ComputeMode::Numeric,
            Mode::Auto => ComputeMode::Auto,
        }
    }
}

#[derive(Args)]
struct Factor {
    /// Matrix file: {"rows": [["1", "-1/2"], ...]}
    file: PathBuf,

    #[arg(long, value_enum, default_value_t = Mode::Exact)]
    mode: Mode,
}

#[derive(Subcommand)]
enum Command {
    /// Characteristic polynomial, eigenvalues and eigenvectors.
    Eigen(Factor),
    /// A = P*D*P^-1.
    Diag(Factor),
    /// A = P*D*P^T for symmetric A.
    Orthdiag(Factor),
    /// M = U*Sigma*V^T.
    Svd {
        #[command(flatten)]
        factor: Factor,
        /// Keep only the rank-many singular triples.
        #[arg(long)]
        reduced: bool,
    },
    /// Moore-Penrose pseudoinverse from the reduced SVD.
    Pinv(Factor),
    /// Check a claimed factorization.
    #[command(subcommand)]
    Check(CheckCommand),
}

#[derive(Args)]
struct ClaimOptions {
    #[arg(long)]
    matrix: PathBuf,

    /// Tolerance for floating-point claims, relative to the size of the operands.
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,

    /// Read every factor as floating point.
    #[arg(long)]
    numeric: bool,
}

#[derive(Subcommand)]
enum CheckCommand {
    Diag {
        #[command(flatten)]
        claim: ClaimOptions,
        #[arg(long)]
        p: PathBuf,
        #[arg(long)]
        d: PathBuf,
        #[arg(long = "p-inv")]
        p_inv: Option<PathBuf>,
    },
    Orthdiag {
        #[command(flatten)]
        claim: ClaimOptions,
        #[arg(long)]
        p: PathBuf,
        #[arg(long)]
        d: PathBuf,
    },
    Svd {
        #[command(flatten)]
        claim: ClaimOptions,
        #[arg(long)]
        u: PathBuf,
        #[arg(long)]
        sigma: PathBuf,
        #[arg(long)]
        v: PathBuf,
        /// Whether the factors are claimed to be a full or a reduced SVD.
        #[arg(long, value_enum, default_value_t = Shape::Full)]
        mode: Shape,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Shape {
    Full,
    Reduced,
}

enum Report {
    Trace(Trace),
    Diagnosis(Diagnosis),
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::MalformedEntry { .. }
        | Error::RaggedRows { .. }
        | Error::EmptyMatrix
        | Error::Json(_)
        | Error::DimensionMismatch { .. }
        | Error::FieldMixing(_)
        | Error::FieldMismatch(_)
        | Error::InvalidOption(_)
        | Error::NotSymmetric => 2,
        Error::NoConvergence { .. } | Error::Overflow(_) => 4,
        _ => 3,
    }
}

fn load(path: &Path, numeric: bool) -> Result<ExactMatrix, Error> {
    let doc = read_matrix_file(path)?;
    if numeric {
        Ok(ExactMatrix::Float(parse_float_matrix(&doc)?))
    } else {
        parse_matrix(&doc)
    }
}

fn factor(op: Operation, f: &Factor) -> Result<Report, Error> {
    let a = parse_rational_matrix(&read_matrix_file(&f.file)?)?;
    explain(op, &a, f.mode.into()).map(Report::Trace)
}

fn run_check(c: &CheckCommand) -> Result<Report, Error> {
    let (opts, claim) = match c {
        CheckCommand::Diag { claim, p, d, p_inv } => (
            claim,
            Claim::Diagonalization(DiagonalizationClaim {
                a: load(&claim.matrix, claim.numeric)?,
                p: load(p, claim.numeric)?,
                d: load(d, claim.numeric)?,
                p_inv: p_inv.as_deref().map(|f| load(f, claim.numeric)).transpose()?,
            }),
        ),
        CheckCommand::Orthdiag { claim, p, d } => (
            claim,
            Claim::OrthogonalDiagonalization(OrthogonalDiagonalizationClaim {
                a: load(&claim.matrix, claim.numeric)?,
                p: load(p, claim.numeric)?,
                d: load(d, claim.numeric)?,
            }),
        ),
        CheckCommand::Svd {
            claim,
            u,
            sigma,
            v,
            mode,
        } => (
            claim,
            Claim::Svd(SvdClaim {
                m: load(&claim.matrix, claim.numeric)?,
                u: load(u, claim.numeric)?,
                sigma: load(sigma, claim.numeric)?,
                v: load(v, claim.numeric)?,
                mode: match mode {
                    Shape::Full => SvdMode::Full,
                    Shape::Reduced => SvdMode::Reduced,
                },
            }),
        ),
    };
    check(&claim, &CheckOptions { tol: opts.tol }).map(Report::Diagnosis)
}

fn run(cli: &Cli) -> Result<Report, Error> {
    match &cli.command {
        Command::Eigen(f) => factor(Operation::Eigen, f),
        Command::Diag(f) => factor(Operation::Diag, f),
        Command::Orthdiag(f) => factor(Operation::OrthDiag, f),
        Command::Svd { factor: f, reduced } => {
            let mode = if *reduced { SvdMode::Reduced } else { SvdMode::Full };
            factor(Operation::Svd(mode), f)
        }
        Command::Pinv(f) => factor(Operation::Pinv, f),
        Command::Check(c) => run_check(c),
    }
}

fn render(report: &Report, format: Format, opts: &TextOptions) -> String {
    match (report, format) {
        (Report::Trace(t), Format::Text) => render_text(t, opts),
        (Report::Trace(t), Format::Latex) => render_latex(t, opts),
        (Report::Trace(t), Format::Json) => render_trace_json(t),
        (Report::Diagnosis(d), Format::Text) => render_diagnosis_text(d, opts),
        (Report::Diagnosis(d), Format::Latex) => render_diagnosis_latex(d, opts),
        (Report::Diagnosis(d), Format::Json) => render_diagnosis_json(d),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let _ = cli.seed;
    let opts = TextOptions {
        precision: cli.precision as usize,
    };
    match run(&cli) {
        Ok(report) => {
            let out = render(&report, cli.format, &opts);
            if std::io::stdout().lock().write_all(out.as_bytes()).is_err() {
                return ExitCode::from(2);
            }
            match report {
                Report::Diagnosis(d) if !d.is_valid() => ExitCode::from(1),
                _ => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
