//! Monte-Carlo study harness: simulate GBM paths, price along each path with
//! the true volatility, invert every observation with the closed-form
//! estimator, and aggregate solvability and accuracy indexes per
//! (kind, strike, alpha) cell.

use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::iv::{
    compute_intermediates, quadratic_coefficients, solve_largest_admissible_root,
    DiscriminantPolicy, RootBranch,
};
use crate::pricing::price_power_call;
use crate::rng::cell_rep_rng;
use crate::types::{MarketState, PayoffKind, PowerOptionSpec};

/// Parameters of the full simulation study.
#[derive(Debug, Clone, PartialEq)]
pub struct StudyConfig {
    /// Initial spot `S_0`.
    pub s0: f64,
    /// Horizon `T` (option expiry).
    pub horizon: f64,
    /// Volatility used to simulate paths and price along them.
    pub true_sigma: f64,
    /// Risk-free rate.
    pub rate: f64,
    /// Path discretization steps `N`.
    pub num_steps: usize,
    /// Repetitions `M` per cell.
    pub num_reps: usize,
    /// Master seed; every (strike, alpha, repetition) stream derives from it.
    pub seed: u64,
    pub alphas: Vec<f64>,
    pub strikes: Vec<f64>,
    pub kinds: Vec<PayoffKind>,
    /// Opt-in repair of negative discriminants before root selection.
    pub repair_discriminant: bool,
}

impl Default for StudyConfig {
    fn default() -> Self {
        StudyConfig {
            s0: 1.0,
            horizon: 1.0,
            true_sigma: 0.15,
            rate: 0.001,
            num_steps: 100,
            num_reps: 100,
            seed: 6,
            alphas: vec![0.4, 0.6, 0.8, 1.0, 1.2, 1.4, 1.6, 1.8, 2.0],
            strikes: vec![0.9, 1.0, 1.01],
            kinds: vec![PayoffKind::Type1, PayoffKind::Type2],
            repair_discriminant: false,
        }
    }
}

impl StudyConfig {
    fn policy(&self) -> DiscriminantPolicy {
        if self.repair_discriminant {
            DiscriminantPolicy::RepairNegative
        } else {
            DiscriminantPolicy::ClampTinyNegative
        }
    }
}

/// One simulated GBM path on a uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GbmPath {
    pub times: Vec<f64>,
    pub values: Vec<f64>,
}

/// Indexes of a single simulated experiment (one path).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StudyStats {
    /// Fraction of path observations with a non-negative discriminant.
    pub dnr: f64,
    /// Mean of solved implied vols along the path, when any.
    pub mean_sigma: Option<f64>,
    /// RMS deviation of solved implied vols around their path mean
    /// (1/L normalization), when any.
    pub std_sigma: Option<f64>,
    /// Observations with a non-negative discriminant.
    pub roots_exist: usize,
    /// Observations that produced a positive root.
    pub solved: usize,
    pub plus_branch: u32,
    pub minus_branch: u32,
    pub linear_branch: u32,
}

/// Aggregated indexes for one (kind, strike, alpha) cell.
///
/// `dnr` and `mean_sigma` are arithmetic means over repetitions (repetitions
/// without any solved observation are excluded from `mean_sigma`). `std_sigma`
/// is the RMS deviation of the per-repetition mean implied vols around the
/// configured true volatility; this is the divergence index the study tables
/// report. `within_path_std` keeps the mean of the per-path RMS deviations as
/// an additional diagnostic.
#[derive(Debug, Clone, PartialEq)]
pub struct CellStats {
    pub kind: PayoffKind,
    pub strike: f64,
    pub alpha: f64,
    pub dnr: f64,
    pub mean_sigma: Option<f64>,
    pub std_sigma: Option<f64>,
    pub within_path_std: Option<f64>,
    /// Repetitions that contributed at least one solved observation.
    pub reps_with_solutions: usize,
    pub plus_branch: u64,
    pub minus_branch: u64,
    pub linear_branch: u64,
}

/// Study results in deterministic cell order (kind, then strike, then alpha).
#[derive(Debug, Clone, PartialEq)]
pub struct StudyTable {
    pub cells: Vec<CellStats>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Json,
}

/// Simulates one GBM path with exact lognormal stepping:
/// `S_{t+dt} = S_t exp((r - sigma^2/2) dt + sigma dB)`, `dB ~ N(0, dt)`.
pub fn simulate_gbm_path<R: Rng + ?Sized>(config: &StudyConfig, rng: &mut R) -> GbmPath {
    let n = config.num_steps;
    let dt = config.horizon / n as f64;
    let drift = (config.rate - 0.5 * config.true_sigma * config.true_sigma) * dt;
    let vol_step = config.true_sigma * dt.sqrt();
    let mut times = Vec::with_capacity(n + 1);
    let mut values = Vec::with_capacity(n + 1);
    times.push(0.0);
    values.push(config.s0);
    let mut log_s = 0.0;
    for i in 1..=n {
        let z: f64 = rng.sample(StandardNormal);
        log_s += drift + vol_step * z;
        times.push(config.horizon * i as f64 / n as f64);
        values.push(config.s0 * log_s.exp());
    }
    GbmPath { times, values }
}

/// Runs one experiment: walk the path, price each observation with the true
/// sigma, invert with the closed form, and summarize.
///
/// Observation `i` (1-based) uses the spot at `t_{i-1}` with time to expiry
/// `tau_i = T - (i-1) T / N`, so the first observation prices the full-life
/// option at `S_0`.
pub fn run_single_experiment<R: Rng + ?Sized>(
    config: &StudyConfig,
    spec: &PowerOptionSpec,
    rng: &mut R,
) -> StudyStats {
    let path = simulate_gbm_path(config, rng);
    let n = config.num_steps;
    let policy = config.policy();
    let mut roots_exist = 0usize;
    let mut solved = Vec::new();
    let (mut plus, mut minus, mut linear) = (0u32, 0u32, 0u32);
    for i in 1..=n {
        let spot = path.values[i - 1];
        let tau = config.horizon * (n - (i - 1)) as f64 / n as f64;
        let market = MarketState { spot, rate: config.rate, tau, sigma: Some(config.true_sigma) };
        let price = match price_power_call(&market, spec) {
            Ok(bd) => bd.price,
            Err(_) => continue,
        };
        let inter = match compute_intermediates(&market, spec) {
            Ok(v) => v,
            Err(_) => continue,
        };
        let quad = quadratic_coefficients(&inter, price, spec.alpha);
        if quad.discriminant >= -1e-12 * quad.b * quad.b {
            roots_exist += 1;
        }
        let outcome = solve_largest_admissible_root(&quad, tau.sqrt(), policy);
        if let Some(sigma) = outcome.sigma {
            solved.push(sigma);
            match outcome.branch {
                Some(RootBranch::PlusRoot) => plus += 1,
                Some(RootBranch::MinusRoot) => minus += 1,
                Some(RootBranch::Linear) => linear += 1,
                None => {}
            }
        }
    }
    let (mean_sigma, std_sigma) = if solved.is_empty() {
        (None, None)
    } else {
        let len = solved.len() as f64;
        let mean = solved.iter().sum::<f64>() / len;
        let var = solved.iter().map(|s| (s - mean) * (s - mean)).sum::<f64>() / len;
        (Some(mean), Some(var.sqrt()))
    };
    StudyStats {
        dnr: roots_exist as f64 / n as f64,
        mean_sigma,
        std_sigma,
        roots_exist,
        solved: solved.len(),
        plus_branch: plus,
        minus_branch: minus,
        linear_branch: linear,
    }
}

/// Runs the full study over every (kind, strike, alpha) cell.
///
/// Cells may be evaluated concurrently; each repetition draws from a stream
/// derived from (seed, strike, alpha, repetition), so results are bit-identical
/// regardless of evaluation order, and the two payoff kinds see the same paths.
pub fn run_study(config: &StudyConfig) -> StudyTable {
    let mut descriptors = Vec::new();
    for &kind in &config.kinds {
        for &strike in &config.strikes {
            for &alpha in &config.alphas {
                descriptors.push((kind, strike, alpha));
            }
        }
    }
    let cells = descriptors
        .par_iter()
        .map(|&(kind, strike, alpha)| run_cell(config, kind, strike, alpha))
        .collect();
    StudyTable { cells }
}

fn run_cell(config: &StudyConfig, kind: PayoffKind, strike: f64, alpha: f64) -> CellStats {
    let spec = PowerOptionSpec { alpha, strike, kind };
    let mut dnr_sum = 0.0;
    let mut mean_sum = 0.0;
    let mut sq_dev_sum = 0.0;
    let mut within_sum = 0.0;
    let mut reps_with_solutions = 0usize;
    let (mut plus, mut minus, mut linear) = (0u64, 0u64, 0u64);
    for rep in 0..config.num_reps {
        let mut rng = cell_rep_rng(config.seed, strike, alpha, rep as u64);
        let stats = run_single_experiment(config, &spec, &mut rng);
        dnr_sum += stats.dnr;
        if let (Some(mean), Some(within)) = (stats.mean_sigma, stats.std_sigma) {
            reps_with_solutions += 1;
            mean_sum += mean;
            let dev = mean - config.true_sigma;
            sq_dev_sum += dev * dev;
            within_sum += within;
        }
        plus += stats.plus_branch as u64;
        minus += stats.minus_branch as u64;
        linear += stats.linear_branch as u64;
    }
    let (mean_sigma, std_sigma, within_path_std) = if reps_with_solutions == 0 {
        (None, None, None)
    } else {
        let m = reps_with_solutions as f64;
        (Some(mean_sum / m), Some((sq_dev_sum / m).sqrt()), Some(within_sum / m))
    };
    CellStats {
        kind,
        strike,
        alpha,
        dnr: dnr_sum / config.num_reps as f64,
        mean_sigma,
        std_sigma,
        within_path_std,
        reps_with_solutions,
        plus_branch: plus,
        minus_branch: minus,
        linear_branch: linear,
    }
}

#[derive(Serialize)]
struct Row<'a> {
    kind: &'a str,
    strike: f64,
    alpha: f64,
    dnr: f64,
    mean_sigma: Option<f64>,
    std_sigma: Option<f64>,
}

/// Serializes a study table with stable column order
/// (kind, strike, alpha, dnr, mean_sigma, std_sigma).
///
/// CSV uses `.` decimals, `\n` row separators, a header row, and `NA` for
/// cells without any solved observation; JSON uses `null`. Re-emission of the
/// same table is byte-identical.
pub fn emit_table(table: &StudyTable, format: TableFormat) -> Vec<u8> {
    match format {
        TableFormat::Csv => {
            let mut out = String::from("kind,strike,alpha,dnr,mean_sigma,std_sigma\n");
            for cell in &table.cells {
                out.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    cell.kind.as_str(),
                    cell.strike,
                    cell.alpha,
                    cell.dnr,
                    opt(cell.mean_sigma),
                    opt(cell.std_sigma),
                ));
            }
            out.into_bytes()
        }
        TableFormat::Json => {
            let rows: Vec<Row> = table
                .cells
                .iter()
                .map(|cell| Row {
                    kind: cell.kind.as_str(),
                    strike: cell.strike,
                    alpha: cell.alpha,
                    dnr: cell.dnr,
                    mean_sigma: cell.mean_sigma,
                    std_sigma: cell.std_sigma,
                })
                .collect();
            let mut bytes = serde_json::to_vec_pretty(&rows).expect("serializable rows");
            bytes.push(b'\n');
            bytes
        }
    }
}

fn opt(v: Option<f64>) -> String {
    match v {
        Some(x) => x.to_string(),
        None => "NA".to_string(),
    }
}
