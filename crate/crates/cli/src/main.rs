use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use holobreak_cli::config::{Overrides, Suite, SuiteConfig};
use holobreak_cli::eval::{evaluate, parse_point};
use holobreak_cli::suites::run_suite;
use holobreak_cli::CliError;

#[derive(Parser)]
#[command(name = "holobreak", version, about = "Checks Rankin-Cohen and Juhl transform identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and emit a JSON-lines report.
    Verify(VerifyArgs),
    /// Evaluate a sum or a named transform at a point.
    Eval(EvalArgs),
}

#[derive(Args)]
struct VerifyArgs {
    suite: Suite,
    /// Comma-separated lambda' values; p/q entries select exact arithmetic.
    #[arg(long)]
    lambda1: Option<String>,
    /// Comma-separated lambda'' values.
    #[arg(long)]
    lambda2: Option<String>,
    /// Comma-separated lambda values for the Juhl suites.
    #[arg(long)]
    lambda: Option<String>,
    /// Comma-separated dimensions.
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    ell_max: Option<u32>,
    /// Relative tolerance for float checks.
    #[arg(long)]
    tol: Option<f64>,
    /// Force exact rational arithmetic.
    #[arg(long)]
    exact: bool,
    #[arg(long)]
    seed: Option<u64>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Emit CSV instead of JSON lines.
    #[arg(long)]
    csv: bool,
    /// Truncation radius of the tube quadrature.
    #[arg(long)]
    radius: Option<f64>,
    /// Points per axis of the tube quadrature.
    #[arg(long)]
    order: Option<usize>,
    /// key = value file with the same keys as the flags; flags win.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct EvalArgs {
    expr: String,
    /// Comma-separated complex coordinates, e.g. 0.5+1i,-1+0.2i.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    at: String,
    #[arg(long)]
    json: bool,
}

fn verify(a: VerifyArgs) -> Result<bool, CliError> {
    let file = match &a.config {
        Some(p) => Overrides::from_file(p)?,
        None => Overrides::default(),
    };
    let flags = Overrides {
        lambda1: a.lambda1,
        lambda2: a.lambda2,
        lambda: a.lambda,
        n: a.n,
        ell_max: a.ell_max,
        tol: a.tol,
        exact: a.exact.then_some(true),
        seed: a.seed,
        report: a.report,
        csv: a.csv.then_some(true),
        radius: a.radius,
        order: a.order,
    };
    let cfg = SuiteConfig::resolve(a.suite, file.overlay(flags))?;
    let report = run_suite(&cfg)?;
    let mut sink: Box<dyn Write> = match &cfg.report {
        Some(p) => Box::new(std::io::BufWriter::new(std::fs::File::create(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?)),
        None => Box::new(std::io::stdout().lock()),
    };
    if cfg.csv {
        report.write_csv(&mut sink)?;
    } else {
        report.write_jsonl(&mut sink)?;
    }
    sink.flush()?;
    let s = &report.summary;
    eprintln!("{}: {}/{} passed ({} tier)", s.suite, s.passed, s.total, s.tier);
    Ok(report.all_passed())
}

fn eval(a: EvalArgs) -> Result<bool, CliError> {
    let point = parse_point(&a.at)?;
    let v = evaluate(&a.expr, &point)?;
    if a.json {
        println!("{}", serde_json::json!({ "value_re": v.re, "value_im": v.im }));
    } else {
        println!("{v}");
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Verify(a) => verify(a),
        Command::Eval(a) => eval(a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("holobreak: {e}");
            ExitCode::from(2)
        }
    }
}
