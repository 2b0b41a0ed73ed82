//! Command-line front end: evaluation, derivative forms, the addition
//! pipeline, and the seeded verification suites, all reporting JSON.
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid input,
//! 3 pole/domain error, 4 degeneracy.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num::complex::Complex64;
use serde_json::json;

use weierp::engine::{self, AdditionConfig, RChoice};
use weierp::eval;
use weierp::symbolic::derivative_form;
use weierp::verify::{self, VerifyOptions};
use weierp::{Error, Lattice, LatticeSpec};

#[derive(Parser)]
#[command(name = "weierp", version, about = "Weierstrass elliptic functions and addition theorems")]
struct Cli {
    /// Lattice spec: inline JSON or a file path.
    /// {"periods": [[re,im],[re,im]]} (full periods) or
    /// {"invariants": {"g2": [re,im], "g3": [re,im]}}
    #[arg(long, global = true)]
    lattice: Option<String>,

    /// Seed for all randomized draws.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    /// Trials per identity and lattice in verification.
    #[arg(long, global = true, default_value_t = 100)]
    trials: usize,

    /// Override every identity tolerance.
    #[arg(long, global = true)]
    tol: Option<f64>,

    /// Emit JSON even for text-default commands.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Invariants g2, g3, half-period values and the discriminant.
    Invariants,
    /// Evaluate the n-th derivative of wp at a point (n = -2 is the constant 1).
    Eval(EvalArgs),
    /// Render the exact reduction of the n-th derivative to polynomials in wp.
    Derive(DeriveArgs),
    /// Solve an addition configuration at given points and report wp at the sum.
    Add(AddArgs),
    /// Print the solved lambdas and the mu table for a config and points.
    Mu(MuArgs),
    /// Run a verification suite (or "all") over the lattice battery.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct EvalArgs {
    /// Argument as JSON [re, im].
    #[arg(long)]
    z: String,
    /// Derivative order in {-2, 0, 1, 2, ...}.
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    n: i64,
}

#[derive(Args)]
struct DeriveArgs {
    #[arg(long, allow_negative_numbers = true)]
    n: i64,
}

#[derive(Args)]
struct AddArgs {
    /// Addition config: inline JSON or a file path.
    #[arg(long)]
    config: String,
    /// Points as JSON [[re,im], ...].
    #[arg(long)]
    points: String,
    /// Vieta index r, or "auto".
    #[arg(long, default_value = "auto")]
    r: String,
}

#[derive(Args)]
struct MuArgs {
    #[arg(long)]
    config: String,
    #[arg(long)]
    points: String,
}

#[derive(Args)]
struct VerifyArgs {
    /// classical | threeterm | triplication | invariants | fs | engine | symbolic | all
    #[arg(long, default_value = "all")]
    suite: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, Error> {
    match &cli.command {
        Command::Invariants => {
            let lat = required_lattice(cli)?;
            let (e1, e2, e3) = lat.half_period_values();
            print_json(&json!({
                "g2": pair(lat.g2()),
                "g3": pair(lat.g3()),
                "e1": pair(e1),
                "e2": pair(e2),
                "e3": pair(e3),
                "discriminant": pair(lat.discriminant()),
            }));
            Ok(ExitCode::SUCCESS)
        }
        Command::Eval(args) => {
            let lat = required_lattice(cli)?;
            let z = parse_complex(&args.z)?;
            let value = eval::wp_deriv(z, args.n, &lat)?;
            print_json(&json!({ "value": pair(value) }));
            Ok(ExitCode::SUCCESS)
        }
        Command::Derive(args) => {
            let form = derivative_form(args.n)?;
            if cli.json {
                print_json(&json!({ "n": args.n, "form": form.render() }));
            } else {
                println!("{}", form.render());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Add(args) => {
            let lat = required_lattice(cli)?;
            let config = load_config(&args.config)?;
            let points = parse_points(&args.points)?;
            let r_choice = match args.r.as_str() {
                "auto" => RChoice::Auto,
                s => RChoice::Fixed(s.parse().map_err(|_| {
                    Error::InvalidInput(format!("--r must be 'auto' or a positive integer, got '{s}'"))
                })?),
            };
            let report = engine::solve_for_config(&config, &points, &lat)?;
            let result = engine::wp_of_sum(&config, &report, &points, &lat, r_choice)?;
            print_json(&serde_json::to_value(&result).expect("serializable result"));
            Ok(ExitCode::SUCCESS)
        }
        Command::Mu(args) => {
            let lat = required_lattice(cli)?;
            let config = load_config(&args.config)?;
            let points = parse_points(&args.points)?;
            let report = engine::solve_for_config(&config, &points, &lat)?;
            let table = engine::mu_table(&config, &report, &lat)?;
            print_json(&json!({
                "ell": config.ell(),
                "lambdas": report.lambdas.iter().map(|&c| pair(c)).collect::<Vec<_>>(),
                "mu": table.mu.iter().map(|&c| pair(c)).collect::<Vec<_>>(),
                "system_det": pair(report.system_det),
                "condition_estimate": report.condition_estimate,
                "clash_flag": report.clash_flag,
            }));
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify(args) => {
            let opts = VerifyOptions {
                seed: cli.seed,
                trials: cli.trials,
                tol_override: cli.tol,
            };
            let report = verify::run(&args.suite, &opts)?;
            print_json(&serde_json::to_value(&report).expect("serializable report"));
            if report.pass {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::FAILURE)
            }
        }
    }
}

fn pair(c: Complex64) -> [f64; 2] {
    [c.re, c.im]
}

fn print_json(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("valid JSON"));
}

fn inline_or_file(arg: &str) -> Result<String, Error> {
    if arg.trim_start().starts_with('{') {
        Ok(arg.to_string())
    } else {
        std::fs::read_to_string(arg)
            .map_err(|e| Error::InvalidInput(format!("cannot read '{arg}': {e}")))
    }
}

fn required_lattice(cli: &Cli) -> Result<Lattice, Error> {
    let spec = cli
        .lattice
        .as_ref()
        .ok_or_else(|| Error::InvalidInput("--lattice is required for this command".into()))?;
    LatticeSpec::from_json(&inline_or_file(spec)?)?.build()
}

fn load_config(arg: &str) -> Result<AdditionConfig, Error> {
    AdditionConfig::from_json(&inline_or_file(arg)?)
}

fn parse_complex(s: &str) -> Result<Complex64, Error> {
    let pair: [f64; 2] = serde_json::from_str(s)
        .map_err(|e| Error::InvalidInput(format!("expected [re, im], got '{s}': {e}")))?;
    Ok(Complex64::new(pair[0], pair[1]))
}

fn parse_points(s: &str) -> Result<Vec<Complex64>, Error> {
    let pairs: Vec<[f64; 2]> = serde_json::from_str(s)
        .map_err(|e| Error::InvalidInput(format!("expected [[re, im], ...], got '{s}': {e}")))?;
    Ok(pairs.into_iter().map(|p| Complex64::new(p[0], p[1])).collect())
}
