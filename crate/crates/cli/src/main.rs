//! Command-line front end: price single contracts, invert quotes to implied
//! volatility (closed form, optionally checked against the iterative solver),
//! and run the full simulation study.
//!
//! Exit codes: 0 success, 2 usage or config error, 3 the closed form has no
//! solution for the quote, 4 the iterative oracle failed.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use powvol::{
    emit_table, implied_vol_closed_form_with_policy, implied_vol_iterative, price_power_call,
    run_study, DiscriminantPolicy, IvOutcome, IvStatus, MarketState, PayoffKind, PowerOptionSpec,
    PricingBreakdown, RootBranch, SolverConfig, StudyConfig, TableFormat,
};

const EXIT_USAGE: u8 = 2;
const EXIT_NO_SOLUTION: u8 = 3;
const EXIT_ORACLE_FAILURE: u8 = 4;

#[derive(Parser)]
#[command(name = "powvol", version, about = "European power call pricing and implied volatility")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Price a single power call contract
    Price(PriceArgs),
    /// Invert an observed call price to implied volatility
    Iv(IvArgs),
    /// Run the Monte-Carlo study over a (kind, strike, alpha) grid
    Simulate(SimulateArgs),
}

#[derive(Args)]
struct ContractArgs {
    /// Payoff convention: type1 pays (S^a - K)^+, type2 pays (S^a - K^a)^+
    #[arg(long, default_value = "type1")]
    kind: PayoffKind,
    /// Power exponent applied to the terminal spot
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    #[arg(long)]
    spot: f64,
    #[arg(long)]
    strike: f64,
    #[arg(long, default_value_t = 0.0)]
    rate: f64,
    /// Time to expiry in years
    #[arg(long)]
    tau: f64,
}

#[derive(Args)]
struct PriceArgs {
    #[command(flatten)]
    contract: ContractArgs,
    #[arg(long)]
    sigma: f64,
    /// Emit machine-readable JSON at full precision
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct IvArgs {
    #[command(flatten)]
    contract: ContractArgs,
    /// Observed call price to invert
    #[arg(long)]
    price: f64,
    /// Also solve with the iterative reference solver and report the gap
    #[arg(long)]
    check_iterative: bool,
    /// Force alpha = 1 (the Corrado-Miller case)
    #[arg(long)]
    corrado_miller: bool,
    /// Clamp negative discriminants to zero before root selection
    #[arg(long)]
    clamp_discriminant: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SimulateArgs {
    /// Flat key=value config file; flags override its entries
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Repetitions per cell
    #[arg(long)]
    reps: Option<usize>,
    /// Path discretization steps
    #[arg(long)]
    steps: Option<usize>,
    /// Initial spot
    #[arg(long)]
    spot: Option<f64>,
    /// Horizon (option expiry)
    #[arg(long)]
    tau: Option<f64>,
    /// True volatility used to simulate and price
    #[arg(long)]
    sigma: Option<f64>,
    #[arg(long)]
    rate: Option<f64>,
    #[arg(long, value_delimiter = ',')]
    strikes: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    alphas: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    kinds: Option<Vec<PayoffKind>>,
    /// Write the table here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
    /// Emit JSON instead of CSV
    #[arg(long)]
    json: bool,
    /// Clamp negative discriminants to zero before root selection
    #[arg(long)]
    clamp_discriminant: bool,
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Price(args) => cmd_price(args),
        Command::Iv(args) => cmd_iv(args),
        Command::Simulate(args) => cmd_simulate(args),
    }
}

fn usage_error(message: &str) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(EXIT_USAGE)
}

fn build_contract(args: &ContractArgs) -> Result<(MarketState, PowerOptionSpec), String> {
    let spec = PowerOptionSpec::new(args.alpha, args.strike, args.kind).map_err(|e| e.to_string())?;
    let market = MarketState::new(args.spot, args.rate, args.tau, None).map_err(|e| e.to_string())?;
    Ok((market, spec))
}

fn cmd_price(args: PriceArgs) -> ExitCode {
    let (mut market, spec) = match build_contract(&args.contract) {
        Ok(v) => v,
        Err(e) => return usage_error(&e),
    };
    if !(args.sigma > 0.0) {
        return usage_error(&format!("--sigma must be positive, got {}", args.sigma));
    }
    market.sigma = Some(args.sigma);
    let bd = match price_power_call(&market, &spec) {
        Ok(bd) => bd,
        Err(e) => return usage_error(&e.to_string()),
    };
    if args.json {
        println!("{}", price_json(&bd));
    } else {
        println!("price {}", sig6(bd.price));
        println!("d1 {}", sig6(bd.d1));
        println!("d2 {}", sig6(bd.d2));
    }
    ExitCode::SUCCESS
}

fn price_json(bd: &PricingBreakdown) -> String {
    serde_json::json!({ "price": bd.price, "d1": bd.d1, "d2": bd.d2 }).to_string()
}

fn cmd_iv(args: IvArgs) -> ExitCode {
    let mut contract = args.contract;
    if args.corrado_miller {
        contract.alpha = 1.0;
    }
    let (market, spec) = match build_contract(&contract) {
        Ok(v) => v,
        Err(e) => return usage_error(&e),
    };
    if !(args.price > 0.0) {
        return usage_error(&format!("--price must be positive, got {}", args.price));
    }
    let policy = if args.clamp_discriminant {
        DiscriminantPolicy::RepairNegative
    } else {
        DiscriminantPolicy::ClampTinyNegative
    };
    let outcome = match implied_vol_closed_form_with_policy(&market, &spec, args.price, policy) {
        Ok(o) => o,
        Err(e) => return usage_error(&e.to_string()),
    };

    let mut iterative: Option<Result<f64, String>> = None;
    if args.check_iterative {
        iterative = Some(
            implied_vol_iterative(&market, &spec, args.price, &SolverConfig::default())
                .map(|r| r.sigma)
                .map_err(|e| e.to_string()),
        );
    }

    if args.json {
        let gap = match (&iterative, outcome.sigma) {
            (Some(Ok(it)), Some(cf)) => Some((cf - it).abs()),
            _ => None,
        };
        let value = serde_json::json!({
            "status": status_str(outcome.status),
            "sigma": outcome.sigma,
            "xi": outcome.xi,
            "branch": outcome.branch.map(branch_str),
            "iterative_sigma": iterative.as_ref().and_then(|r| r.as_ref().ok().copied()),
            "gap": gap,
        });
        println!("{value}");
    } else {
        render_outcome_text(&outcome, &iterative);
    }

    if !outcome.is_solved() {
        eprintln!("{}", status_str(outcome.status));
        return ExitCode::from(EXIT_NO_SOLUTION);
    }
    if let Some(Err(e)) = &iterative {
        eprintln!("iterative solver failed: {e}");
        return ExitCode::from(EXIT_ORACLE_FAILURE);
    }
    ExitCode::SUCCESS
}

fn render_outcome_text(outcome: &IvOutcome, iterative: &Option<Result<f64, String>>) {
    println!("status {}", status_str(outcome.status));
    if let Some(sigma) = outcome.sigma {
        println!("sigma {}", sig6(sigma));
    }
    if let Some(xi) = outcome.xi {
        println!("xi {}", sig6(xi));
    }
    if let Some(branch) = outcome.branch {
        println!("branch {}", branch_str(branch));
    }
    if let (Some(Ok(it)), Some(cf)) = (iterative.as_ref(), outcome.sigma) {
        println!("iterative {}", sig6(*it));
        println!("gap {}", sig6((cf - it).abs()));
    }
}

fn status_str(status: IvStatus) -> &'static str {
    match status {
        IvStatus::Solved => "solved",
        IvStatus::NegativeDiscriminant => "negative-discriminant",
        IvStatus::WrongSignCondition => "wrong-sign-condition",
        IvStatus::NonPositiveRoot => "non-positive-root",
        IvStatus::DegenerateLinear => "degenerate-linear",
    }
}

fn branch_str(branch: RootBranch) -> &'static str {
    match branch {
        RootBranch::PlusRoot => "plus",
        RootBranch::MinusRoot => "minus",
        RootBranch::Linear => "linear",
    }
}

fn cmd_simulate(args: SimulateArgs) -> ExitCode {
    let mut config = StudyConfig::default();
    if let Some(path) = &args.config {
        let text = match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => return usage_error(&format!("--config {}: {e}", path.display())),
        };
        if let Err(e) = apply_config_file(&mut config, &text) {
            return usage_error(&format!("--config {}: {e}", path.display()));
        }
    }
    apply_flag_overrides(&mut config, &args);
    if let Err(e) = validate_config(&config) {
        return usage_error(&e);
    }

    let table = run_study(&config);
    let format = if args.json { TableFormat::Json } else { TableFormat::Csv };
    let bytes = emit_table(&table, format);
    match &args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &bytes) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_USAGE);
            }
            print_summary(&table);
        }
        None => {
            use std::io::Write;
            std::io::stdout().write_all(&bytes).expect("stdout");
        }
    }
    ExitCode::SUCCESS
}

fn apply_config_file(config: &mut StudyConfig, text: &str) -> Result<(), String> {
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("line {}: expected key=value, got `{line}`", lineno + 1))?;
        let (key, value) = (key.trim(), value.trim());
        let parse_err = |e: String| format!("line {}: key `{key}`: {e}", lineno + 1);
        match key {
            "seed" => config.seed = parse_scalar(value).map_err(parse_err)?,
            "reps" => config.num_reps = parse_scalar(value).map_err(parse_err)?,
            "steps" => config.num_steps = parse_scalar(value).map_err(parse_err)?,
            "spot" => config.s0 = parse_scalar(value).map_err(parse_err)?,
            "tau" => config.horizon = parse_scalar(value).map_err(parse_err)?,
            "sigma" => config.true_sigma = parse_scalar(value).map_err(parse_err)?,
            "rate" => config.rate = parse_scalar(value).map_err(parse_err)?,
            "strikes" => config.strikes = parse_list(value).map_err(parse_err)?,
            "alphas" => config.alphas = parse_list(value).map_err(parse_err)?,
            "kinds" => config.kinds = parse_list(value).map_err(parse_err)?,
            other => return Err(format!("line {}: unknown key `{other}`", lineno + 1)),
        }
    }
    Ok(())
}

fn parse_scalar<T: FromStr>(value: &str) -> Result<T, String>
where
    T::Err: std::fmt::Display,
{
    value.parse().map_err(|e: T::Err| e.to_string())
}

fn parse_list<T: FromStr>(value: &str) -> Result<Vec<T>, String>
where
    T::Err: std::fmt::Display,
{
    value.split(',').map(|v| parse_scalar(v.trim())).collect()
}

fn apply_flag_overrides(config: &mut StudyConfig, args: &SimulateArgs) {
    if let Some(v) = args.seed {
        config.seed = v;
    }
    if let Some(v) = args.reps {
        config.num_reps = v;
    }
    if let Some(v) = args.steps {
        config.num_steps = v;
    }
    if let Some(v) = args.spot {
        config.s0 = v;
    }
    if let Some(v) = args.tau {
        config.horizon = v;
    }
    if let Some(v) = args.sigma {
        config.true_sigma = v;
    }
    if let Some(v) = args.rate {
        config.rate = v;
    }
    if let Some(v) = &args.strikes {
        config.strikes = v.clone();
    }
    if let Some(v) = &args.alphas {
        config.alphas = v.clone();
    }
    if let Some(v) = &args.kinds {
        config.kinds = v.clone();
    }
    config.repair_discriminant = args.clamp_discriminant;
}

fn validate_config(config: &StudyConfig) -> Result<(), String> {
    if !(config.s0 > 0.0) {
        return Err(format!("spot must be positive, got {}", config.s0));
    }
    if !(config.horizon > 0.0) {
        return Err(format!("tau must be positive, got {}", config.horizon));
    }
    if !(config.true_sigma > 0.0) {
        return Err(format!("sigma must be positive, got {}", config.true_sigma));
    }
    if config.num_steps == 0 {
        return Err("steps must be at least 1".into());
    }
    if config.num_reps == 0 {
        return Err("reps must be at least 1".into());
    }
    if config.strikes.iter().any(|&k| !(k > 0.0)) {
        return Err("strikes must all be positive".into());
    }
    if config.alphas.iter().any(|&a| !(a > 0.0)) {
        return Err("alphas must all be positive".into());
    }
    if config.kinds.is_empty() || config.strikes.is_empty() || config.alphas.is_empty() {
        return Err("kinds, strikes and alphas must be non-empty".into());
    }
    Ok(())
}

fn print_summary(table: &powvol::StudyTable) {
    println!(
        "{:<6} {:>7} {:>6} {:>9} {:>11} {:>10}",
        "kind", "strike", "alpha", "dnr", "mean_sigma", "std_sigma"
    );
    for cell in &table.cells {
        println!(
            "{:<6} {:>7} {:>6} {:>9} {:>11} {:>10}",
            cell.kind.as_str(),
            cell.strike,
            cell.alpha,
            sig6(cell.dnr),
            cell.mean_sigma.map_or("NA".into(), sig6),
            cell.std_sigma.map_or("NA".into(), sig6),
        );
    }
}

// Six significant digits for human-readable output.
fn sig6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (5 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}
