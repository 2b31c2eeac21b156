//! Pricing and implied-volatility estimation for European power call options.
//!
//! A power call pays either `(S_T^alpha - K)^+` (type 1) or `(S_T^alpha - K^alpha)^+`
//! (type 2) at expiry. This crate provides:
//!
//! - closed-form prices for both payoff conventions (and the vanilla call as the
//!   `alpha = 1` special case),
//! - a closed-form implied-volatility estimator obtained from a quadratic Taylor
//!   approximation in `xi = sigma * sqrt(tau)`, generalizing the Corrado-Miller
//!   formula to power payoffs,
//! - an independent bracketed root-finding solver used as an accuracy oracle,
//! - a seeded Monte-Carlo study harness that simulates GBM paths and aggregates
//!   solvability and accuracy statistics for the estimator.

pub mod iv;
pub mod math;
pub mod pricing;
mod rng;
pub mod solver;
pub mod study;
mod types;

pub use iv::{
    compute_intermediates, corrado_miller_vanilla, implied_vol_closed_form,
    implied_vol_closed_form_with_policy, quadratic_coefficients, solve_largest_admissible_root,
    DiscriminantPolicy, Intermediates, IvOutcome, IvStatus, QuadraticIv, RootBranch,
};
pub use math::{std_normal_cdf, std_normal_cdf_series, Probability};
pub use pricing::{
    payoff, payoff_type1, payoff_type2, price_power_call, price_vanilla_call, PricingBreakdown,
};
pub use solver::{implied_vol_iterative, IterativeIv, SolverConfig};
pub use study::{
    emit_table, run_single_experiment, run_study, simulate_gbm_path, CellStats, GbmPath,
    StudyConfig, StudyStats, StudyTable, TableFormat,
};
pub use types::{Error, MarketState, PayoffKind, PowerOptionSpec};
