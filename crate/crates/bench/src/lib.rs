//! Shared fixtures for the criterion benchmarks.

use powvol::{MarketState, PayoffKind, PowerOptionSpec};

/// A mid-grid case: quadratic payoff, slightly in the money.
pub fn reference_case() -> (MarketState, PowerOptionSpec) {
    let market = MarketState::new(1.0, 0.001, 1.0, Some(0.15)).unwrap();
    let spec = PowerOptionSpec::new(2.0, 0.9, PayoffKind::Type1).unwrap();
    (market, spec)
}
