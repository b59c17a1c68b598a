use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ellsix::config::Config;
use ellsix::eval::{eval, EvalError};
use ellsix::{exit_code, run, UsageError, EXIT_NUMERIC, EXIT_PASS, EXIT_USAGE};

#[derive(Parser)]
#[command(
    name = "ellsix",
    version,
    about = "Elliptic 6j-symbols: evaluation and randomized identity verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification suites and write a JSON report (stdout unless --json is given).
    Verify(VerifyArgs),
    /// Evaluate one function and print its value as JSON.
    Eval(EvalArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// TOML configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Master seed (overrides the config).
    #[arg(long)]
    seed: Option<u64>,
    /// Suite to run; repeatable (overrides the config selection).
    #[arg(long = "suite", value_name = "ID")]
    suites: Vec<String>,
    /// Tolerance override, ID=VALUE; repeatable.
    #[arg(long = "tolerance", value_name = "ID=V")]
    tolerances: Vec<String>,
    /// Trials per suite (overrides the suite defaults).
    #[arg(long)]
    trials: Option<usize>,
    /// Worker threads; 0 uses one per core.
    #[arg(long)]
    threads: Option<usize>,
    /// Write the JSON report here.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Write per-trial residuals as CSV here.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// List suite ids and exit.
    #[arg(long)]
    list: bool,
}

#[derive(Args)]
struct EvalArgs {
    /// Expression: theta, pochhammer, phi, dwpf, pf, r6j, vnm, f, g, g_alt, weight, gamma.
    expr: String,
    /// JSON file with the arguments.
    #[arg(long, conflicts_with = "inline", required_unless_present = "inline")]
    args: Option<PathBuf>,
    /// Arguments as an inline JSON object.
    #[arg(long)]
    inline: Option<String>,
}

fn verify(a: VerifyArgs) -> Result<i32, UsageError> {
    if a.list {
        for s in ellsix::suites::SUITES {
            println!("{:<22} {}", s.id, s.identity);
        }
        return Ok(EXIT_PASS);
    }
    let mut config = match &a.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    if let Some(seed) = a.seed {
        config.seed = seed;
    }
    if !a.suites.is_empty() {
        config.suites = Some(a.suites.clone());
    }
    for t in &a.tolerances {
        config.set_tolerance(t)?;
    }
    if a.trials.is_some() {
        config.trials = a.trials;
    }
    if let Some(t) = a.threads {
        config.threads = t;
    }
    let report = run(&config)?;
    let json = report.to_json();
    match &a.json {
        Some(path) => std::fs::write(path, &json)
            .map_err(|e| UsageError(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{json}"),
    }
    if let Some(path) = &a.csv {
        let file = std::fs::File::create(path)
            .map_err(|e| UsageError(format!("cannot write {}: {e}", path.display())))?;
        report
            .write_csv(file)
            .map_err(|e| UsageError(format!("cannot write {}: {e}", path.display())))?;
    }
    for s in &report.suites {
        let verdict = if s.pass { "pass" } else { "FAIL" };
        let res = s
            .max_residual
            .map_or("-".to_string(), |r| format!("{r:.3e}"));
        eprintln!("{verdict} {:<22} max {res} tol {:.0e}", s.id, s.tolerance);
        if let Some(e) = &s.error {
            eprintln!("     {e}");
        }
    }
    Ok(exit_code(&report))
}

fn evaluate(a: EvalArgs) -> i32 {
    let text = match (&a.args, &a.inline) {
        (Some(path), _) => match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => {
                eprintln!("error: cannot read {}: {e}", path.display());
                return EXIT_USAGE;
            }
        },
        (None, Some(s)) => s.clone(),
        (None, None) => unreachable!("clap requires one of --args, --inline"),
    };
    let args: serde_json::Value = match serde_json::from_str(&text) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: arguments are not valid JSON: {e}");
            return EXIT_USAGE;
        }
    };
    match eval(&a.expr, &args) {
        Ok(v) => {
            println!("{v}");
            EXIT_PASS
        }
        Err(e) => {
            println!("{}", e.record());
            eprintln!("error: {e}");
            match e {
                EvalError::Usage(_) => EXIT_USAGE,
                EvalError::Numeric(_) => EXIT_NUMERIC,
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Verify(a) => verify(a).unwrap_or_else(|e| {
            eprintln!("error: {e}");
            EXIT_USAGE
        }),
        Command::Eval(a) => evaluate(a),
    };
    ExitCode::from(code as u8)
}
