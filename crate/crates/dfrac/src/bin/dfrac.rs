//! Command-line front end: apply fractional operators to tabulated or
//! builtin functions, run the identity suites, evaluate discrete
//! Mittag-Leffler functions, and solve linear Caputo fractional difference
//! equations. All numeric output is deterministic for fixed flags and seed.
//!
//! Exit codes: 0 success, 1 identity/tolerance failure, 2 usage or parse
//! error, 3 numerical non-convergence.

use std::fs::File;
use std::io::{BufReader, BufWriter};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use dfrac::fde::{self, FdeProblem, Method};
use dfrac::grid::{Direction, GridFn};
use dfrac::ml::{ml_eval, MlFamily, MlSpec};
use dfrac::ops::{
    caputo_diff, dual_caputo_diff, frac_sum, riemann_diff, Calculus, Family, OpSpec, Side,
};
use dfrac::verify::{run_all_suites, SweepConfig};
use dfrac::{falling, rising, Error, Rat};

#[derive(Parser)]
#[command(
    name = "dfrac",
    about = "Discrete fractional calculus: delta/nabla sums and differences, identity verification, Mittag-Leffler functions, and fractional difference equation solvers",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Apply a fractional operator to a CSV or builtin function
    Apply(ApplyArgs),
    /// Run identity suites and print one report row per suite
    Check(CheckArgs),
    /// Evaluate a discrete Mittag-Leffler function
    Ml(MlArgs),
    /// Solve a linear Caputo fractional difference initial value problem
    Solve(SolveArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Sum,
    Riemann,
    Caputo,
    DualCaputo,
}

#[derive(Clone, Copy, ValueEnum)]
enum CalculusArg {
    Delta,
    Nabla,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Ml,
    March,
    Picard,
}

#[derive(Args)]
struct ApplyArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long, value_enum)]
    calculus: CalculusArg,
    #[arg(long, value_enum)]
    side: SideArg,
    /// Operator order α as a rational ("1/2", "0.25", "2")
    #[arg(long)]
    order: String,
    /// Base point a (left) or b (right) as a rational
    #[arg(long)]
    base: String,
    /// Input CSV path (header "t,value"; rows outside the base become
    /// extension samples)
    #[arg(long, conflicts_with = "builtin")]
    input: Option<PathBuf>,
    /// Builtin input: one, ramp, square, or monomial:MU
    #[arg(long)]
    builtin: Option<String>,
    /// Grid length for builtin inputs
    #[arg(long, default_value_t = 16)]
    length: usize,
    /// Output CSV path (stdout when omitted)
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    /// Suite id or "all" (repeatable, comma-separated)
    #[arg(long, default_value = "all", value_delimiter = ',')]
    suite: Vec<String>,
    /// Orders to sweep (rationals, comma-separated)
    #[arg(long, value_delimiter = ',')]
    order: Vec<String>,
    /// Grid lengths to sweep (comma-separated)
    #[arg(long, value_delimiter = ',')]
    length: Vec<usize>,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Tolerance override (per-suite defaults otherwise)
    #[arg(long)]
    tol: Option<f64>,
    /// List the available suite ids and exit
    #[arg(long)]
    list: bool,
}

#[derive(Args)]
struct MlArgs {
    #[arg(long, value_enum)]
    family: CalculusArg,
    #[arg(long)]
    alpha: String,
    #[arg(long, default_value = "1")]
    beta: String,
    #[arg(long)]
    lambda: f64,
    /// Argument z as a rational
    #[arg(long)]
    z: String,
    /// Tail truncation tolerance
    #[arg(long, default_value_t = 1e-13)]
    tol: f64,
    /// Maximum number of series terms
    #[arg(long, default_value_t = 5000)]
    kmax: usize,
}

#[derive(Args)]
struct SolveArgs {
    /// JSON problem file (keys calculus, alpha, lambda, a, a0, N, forcing);
    /// overrides the individual flags
    #[arg(long)]
    problem: Option<PathBuf>,
    #[arg(long, value_enum, required_unless_present = "problem")]
    calculus: Option<CalculusArg>,
    #[arg(long, required_unless_present = "problem")]
    alpha: Option<String>,
    #[arg(long, required_unless_present = "problem", allow_hyphen_values = true)]
    lambda: Option<f64>,
    /// Base point a (defaults to α−1 in the delta case, 0 in the nabla case)
    #[arg(long)]
    a: Option<String>,
    #[arg(long, default_value_t = 1.0)]
    a0: f64,
    #[arg(long = "N", default_value_t = 12)]
    horizon: usize,
    /// Forcing: zero, one, ramp, or a CSV path
    #[arg(long, default_value = "zero")]
    forcing: String,
    #[arg(long, value_enum, default_value = "ml")]
    method: MethodArg,
    /// Picard iteration cap
    #[arg(long, default_value_t = 50)]
    iterations: usize,
    /// Output CSV path (stdout when omitted)
    #[arg(long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Apply(args) => cmd_apply(args),
        Command::Check(args) => cmd_check(args),
        Command::Ml(args) => cmd_ml(args),
        Command::Solve(args) => cmd_solve(args),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::NonConvergence { .. } => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn parse_rat(s: &str) -> Result<Rat, Error> {
    s.parse()
}

fn builtin_grid_fn(
    name: &str,
    calculus: Calculus,
    side: Side,
    base: &Rat,
    len: usize,
    ext: usize,
) -> Result<GridFn, Error> {
    use dfrac::grid::Grid;
    let grid = match side {
        Side::Left => Grid::forward(base.clone(), len),
        Side::Right => Grid::backward(base.clone(), len),
    };
    // distance from the base, mirrored on the right: ramp is t−a resp. b−t
    let dist = |t: &Rat| match side {
        Side::Left => t - base,
        Side::Right => base - t,
    };
    let f = if name == "one" {
        GridFn::sample(grid, ext, |_| 1.0)
    } else if name == "ramp" {
        GridFn::sample(grid, ext, |t| dist(t).to_f64())
    } else if name == "square" {
        GridFn::sample(grid, ext, |t| {
            let d = dist(t).to_f64();
            d * d
        })
    } else if let Some(mu) = name.strip_prefix("monomial:") {
        let mu: Rat = mu.parse()?;
        match calculus {
            // rising monomials in the nabla calculus, falling in the delta
            Calculus::Nabla => GridFn::sample(grid, ext, |t| rising(&dist(t), &mu).unwrap()),
            Calculus::Delta => GridFn::sample(grid, ext, |t| falling(&dist(t), &mu).unwrap()),
        }
    } else {
        return Err(Error::Parse(format!(
            "unknown builtin {name:?} (expected one, ramp, square, or monomial:MU)"
        )));
    };
    Ok(f)
}

fn cmd_apply(args: ApplyArgs) -> Result<ExitCode, Error> {
    let family = match args.family {
        FamilyArg::Sum => Family::Sum,
        FamilyArg::Riemann => Family::Riemann,
        FamilyArg::Caputo => Family::Caputo,
        FamilyArg::DualCaputo => Family::DualCaputo,
    };
    let calculus = match args.calculus {
        CalculusArg::Delta => Calculus::Delta,
        CalculusArg::Nabla => Calculus::Nabla,
    };
    let side = match args.side {
        SideArg::Left => Side::Left,
        SideArg::Right => Side::Right,
    };
    let order = parse_rat(&args.order)?;
    let base = parse_rat(&args.base)?;
    let spec = OpSpec::new(family, calculus, side, order, base.clone());

    let f = if let Some(path) = &args.input {
        let direction = match side {
            Side::Left => Direction::Forward,
            Side::Right => Direction::Backward,
        };
        GridFn::read_csv(BufReader::new(File::open(path)?), direction, &base)?
    } else if let Some(name) = &args.builtin {
        // nabla Caputo differences read n−1 samples outside the base grid
        let ext = if family == Family::Caputo && calculus == Calculus::Nabla {
            (spec.n()? - 1).max(0) as usize
        } else {
            0
        };
        builtin_grid_fn(name, calculus, side, &base, args.length, ext)?
    } else {
        return Err(Error::Parse("apply needs --input or --builtin".into()));
    };

    let out = match family {
        Family::Sum => frac_sum(&spec, &f)?,
        Family::Riemann => riemann_diff(&spec, &f)?,
        Family::Caputo => caputo_diff(&spec, &f)?,
        Family::DualCaputo => dual_caputo_diff(&spec, &f)?,
    };
    match &args.output {
        Some(path) => out.write_csv(BufWriter::new(File::create(path)?))?,
        None => out.write_csv(std::io::stdout().lock())?,
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_check(args: CheckArgs) -> Result<ExitCode, Error> {
    if args.list {
        for name in dfrac::verify::suite_names() {
            println!("{name}");
        }
        return Ok(ExitCode::SUCCESS);
    }
    let mut cfg = SweepConfig {
        seed: args.seed,
        tol: args.tol,
        only: args.suite.clone(),
        ..SweepConfig::default()
    };
    if !args.order.is_empty() {
        cfg.orders = args
            .order
            .iter()
            .map(|s| s.parse())
            .collect::<Result<_, _>>()?;
    }
    if !args.length.is_empty() {
        cfg.lengths = args.length.clone();
    }
    // validate suite names before any computation
    let known = dfrac::verify::suite_names();
    for s in &args.suite {
        if s != "all" && !known.contains(&s.as_str()) {
            return Err(Error::Parse(format!("unknown suite id {s:?}")));
        }
    }
    let reports = run_all_suites(&cfg)?;
    println!("suite,params,seed,residual,pass");
    let mut all_pass = true;
    for r in &reports {
        println!("{}", r.csv_row());
        all_pass &= r.pass;
    }
    Ok(if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_ml(args: MlArgs) -> Result<ExitCode, Error> {
    let family = match args.family {
        CalculusArg::Delta => MlFamily::Delta,
        CalculusArg::Nabla => MlFamily::Nabla,
    };
    let spec = MlSpec::new(
        family,
        parse_rat(&args.alpha)?,
        parse_rat(&args.beta)?,
        args.lambda,
    )
    .with_truncation(args.tol, args.kmax);
    let v = ml_eval(&spec, &parse_rat(&args.z)?)?;
    println!("{} K={}", v.value, v.terms);
    Ok(ExitCode::SUCCESS)
}

fn cmd_solve(args: SolveArgs) -> Result<ExitCode, Error> {
    let problem = if let Some(path) = &args.problem {
        fde::problem_from_json(&std::fs::read_to_string(path)?)?
    } else {
        let calculus = match args.calculus.unwrap() {
            CalculusArg::Delta => Calculus::Delta,
            CalculusArg::Nabla => Calculus::Nabla,
        };
        let alpha = parse_rat(args.alpha.as_ref().unwrap())?;
        let a = match (&args.a, calculus) {
            (Some(s), _) => parse_rat(s)?,
            (None, Calculus::Delta) => &alpha - 1,
            (None, Calculus::Nabla) => Rat::zero(),
        };
        let forcing = match args.forcing.as_str() {
            "zero" | "one" | "ramp" => {
                fde::builtin_forcing(&args.forcing, calculus, &a, args.horizon)?
            }
            path => {
                let base = match calculus {
                    Calculus::Delta => Rat::zero(),
                    Calculus::Nabla => &a + 1,
                };
                GridFn::read_csv(BufReader::new(File::open(path)?), Direction::Forward, &base)?
            }
        };
        FdeProblem::new(
            calculus,
            alpha,
            args.lambda.unwrap(),
            a,
            args.a0,
            forcing,
            args.horizon,
        )?
    };
    let method = match args.method {
        MethodArg::Ml => Method::MlClosedForm,
        MethodArg::March => Method::Marching,
        MethodArg::Picard => Method::Picard,
    };
    let report = fde::solve(&problem, method, args.iterations)?;
    match &args.output {
        Some(path) => report
            .solution
            .write_csv(BufWriter::new(File::create(path)?))?,
        None => report.solution.write_csv(std::io::stdout().lock())?,
    }
    eprintln!("residual = {:e}", report.residual);
    Ok(ExitCode::SUCCESS)
}
