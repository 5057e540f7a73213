use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use submaj::harness::{replay, run_campaign, CampaignConfig, CampaignReport};
use submaj::inequalities::counterexample_tr;
use submaj::interpolation::{imag_grid, linear_grid, strip_evaluate};
use submaj::io::{read_matrix, read_profile};
use submaj::rearrangement::{default_tolerance, submajorizes};
use submaj::spectral::{default_spectral_tolerance, lambda_ab_equals_ba};
use submaj::{Error, Matrix, SingularProfile};

const PASS: u8 = 0;
const VIOLATION: u8 = 1;
const INPUT_ERROR: u8 = 2;

#[derive(Parser)]
#[command(name = "submaj", version, about = "Submajorization checks and seeded verification campaigns")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a seeded campaign (or replay one trial).
    Verify(VerifyArgs),
    /// Check `A ≺≺ B` between two matrix or profile files.
    Check {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Emit the optimal Ky Fan duality certificate of a matrix.
    Certify {
        a: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Sample F(z) = Tr(e^{zb} a e^{(1−z)b} c) on the strip as CSV.
    Strip {
        a: PathBuf,
        b: PathBuf,
        c: PathBuf,
        #[arg(long, default_value_t = 8.0)]
        ymax: f64,
        #[arg(long, default_value_t = 0.25)]
        ystep: f64,
        #[arg(long, default_value_t = 0.1)]
        theta_step: f64,
    },
    /// Match the eigenvalues of ab and ba.
    Spectral {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Reproduce a built-in counterexample.
    Reproduce {
        #[command(subcommand)]
        example: Example,
    },
}

#[derive(Subcommand)]
enum Example {
    /// a = [[0,1],[0,0]], b = diag(λ, μ): e^{θb} a e^{(1−θ)b} ≺≺ a e^b fails for λ > μ.
    CounterexampleTr {
        #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
        lambda: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        mu: f64,
        #[arg(long, default_value_t = 0.5)]
        theta: f64,
        /// Print the full result as JSON instead of text.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite to run; repeatable. Defaults to every suite.
    #[arg(long = "suite", visible_alias = "inequality")]
    suites: Vec<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Comma-separated matrix sizes.
    #[arg(long, value_delimiter = ',')]
    sizes: Option<Vec<usize>>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    threads: Option<usize>,
    /// JSON campaign config; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Write the JSON report here (`-` for stdout).
    #[arg(long)]
    json: Option<PathBuf>,
    /// Write one CSV row per verdict here (`-` for stdout).
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Leave wall-time fields out of the JSON report.
    #[arg(long)]
    no_timing: bool,
    /// Re-run a single trial, e.g. `bik_theorem_general/seed=0/n=4/trial=7`.
    #[arg(long)]
    replay: Option<String>,
}

/// Any error is reported as an input error (exit code 2).
#[derive(Debug)]
enum Failure {
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type CliResult = Result<u8, Failure>;

fn emit(path: &Path, text: &str) -> Result<(), Failure> {
    if path == Path::new("-") {
        print!("{text}");
        Ok(())
    } else {
        fs::write(path, text).map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

fn verify(args: VerifyArgs) -> CliResult {
    let mut config = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
            CampaignConfig::from_json(&text)?
        }
        None => CampaignConfig::default(),
    };
    if !args.suites.is_empty() {
        config.suites = args.suites;
    }
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    if let Some(sizes) = args.sizes {
        config.sizes = sizes;
    }
    if let Some(trials) = args.trials {
        config.trials_per_size = trials;
    }
    if args.threads.is_some() {
        config.threads = args.threads;
    }

    let report: CampaignReport = match &args.replay {
        Some(descriptor) => replay(&config, descriptor)?,
        None => run_campaign(&config)?,
    };
    let to_stdout = |p: &Option<PathBuf>| p.as_deref() == Some(Path::new("-"));
    if !to_stdout(&args.json) && !to_stdout(&args.csv) {
        print!("{}", report.summary_text());
        let s = &report.summary;
        println!(
            "total verdicts={} violations={} expected_failures={} => {}",
            s.total_verdicts,
            s.violations,
            s.expected_failures,
            if s.passed { "PASS" } else { "FAIL" }
        );
    }
    if let Some(path) = &args.json {
        emit(path, &(report.to_json(!args.no_timing) + "\n"))?;
    }
    if let Some(path) = &args.csv {
        emit(path, &report.to_csv())?;
    }
    Ok(if report.passed() { PASS } else { VIOLATION })
}

fn check(a: &Path, b: &Path, tol: Option<f64>) -> CliResult {
    let (left, right): (SingularProfile, SingularProfile) = (read_profile(a)?, read_profile(b)?);
    if let Some(t) = tol {
        if !(t >= 0.0) {
            return Err(Failure::Input(format!("tolerance {t} must be non-negative")));
        }
    }
    let verdict = submajorizes(&left, &right, tol.unwrap_or_else(|| default_tolerance(&right)));
    print!("{}", to_json(&verdict));
    Ok(if verdict.holds { PASS } else { VIOLATION })
}

fn certify(a: &Path, k: usize) -> CliResult {
    let report = submaj::duality::certificate_report(&read_matrix(a)?, k)?;
    print!("{}", to_json(&report));
    Ok(PASS)
}

fn strip(a: &Path, b: &Path, c: &Path, ymax: f64, ystep: f64, theta_step: f64) -> CliResult {
    for (name, v) in [("ymax", ymax), ("ystep", ystep), ("theta-step", theta_step)] {
        if !(v > 0.0) || !v.is_finite() {
            return Err(Failure::Input(format!("--{name} must be positive and finite, got {v}")));
        }
    }
    let (a, b, c): (Matrix, Matrix, Matrix) = (read_matrix(a)?, read_matrix(b)?, read_matrix(c)?);
    let grid = strip_evaluate(&a, &b, &c, &linear_grid(0.0, 1.0, theta_step), &imag_grid(ymax, ystep))?;
    print!("{}", grid.to_csv());
    Ok(PASS)
}

fn spectral(a: &Path, b: &Path, tol: Option<f64>) -> CliResult {
    let (a, b) = (read_matrix(a)?, read_matrix(b)?);
    let tol = match tol {
        Some(t) => t,
        None => default_spectral_tolerance(&a, &b)?,
    };
    let m = lambda_ab_equals_ba(&a, &b, tol)?;
    print!("{}", to_json(&m));
    Ok(if m.report.holds { PASS } else { VIOLATION })
}

fn fmt_profile(p: &SingularProfile) -> String {
    let items: Vec<String> = p.values().iter().map(|v| format!("{v:.12}")).collect();
    format!("[{}]", items.join(", "))
}

fn reproduce(example: Example) -> CliResult {
    match example {
        Example::CounterexampleTr { lambda, mu, theta, json } => {
            let r = counterexample_tr(lambda, mu, theta)?;
            if json {
                print!("{}", to_json(&r));
            } else {
                println!("a = [[0, 1], [0, 0]], b = diag({lambda}, {mu}), theta = {theta}");
                println!("left  mu(e^(theta b) a e^((1-theta) b)) = {}", fmt_profile(&r.left_profile));
                println!("right mu(a e^b)                          = {}", fmt_profile(&r.right_profile));
                println!("expected leading values: left {:.12}, right {:.12}", r.expected_left_leading, r.expected_right_leading);
                println!("margin = {:.12} at t = {}", r.verdict.margin, r.verdict.worst_t.unwrap_or(0.0));
                println!("{}", if r.verdict.holds { "submajorization holds" } else { "submajorization fails" });
            }
            Ok(if r.reproduced() { PASS } else { VIOLATION })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Verify(args) => verify(args),
        Command::Check { a, b, tol } => check(&a, &b, tol),
        Command::Certify { a, k } => certify(&a, k),
        Command::Strip { a, b, c, ymax, ystep, theta_step } => strip(&a, &b, &c, ymax, ystep, theta_step),
        Command::Spectral { a, b, tol } => spectral(&a, &b, tol),
        Command::Reproduce { example } => reproduce(example),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(INPUT_ERROR)
        }
    }
}
