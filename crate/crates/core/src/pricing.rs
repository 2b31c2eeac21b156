//! Payoff evaluation and closed-form prices for the vanilla call and both
//! power-call conventions.

use crate::math::std_normal_cdf;
use crate::types::{Error, MarketState, PayoffKind, PowerOptionSpec};

/// Price together with the `d1`/`d2` arguments that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PricingBreakdown {
    pub d1: f64,
    pub d2: f64,
    pub price: f64,
}

/// Type-1 power payoff `(S_T^alpha - K)^+`.
pub fn payoff_type1(terminal_spot: f64, spec: &PowerOptionSpec) -> f64 {
    (terminal_spot.powf(spec.alpha) - spec.strike).max(0.0)
}

/// Type-2 power payoff `(S_T^alpha - K^alpha)^+`.
pub fn payoff_type2(terminal_spot: f64, spec: &PowerOptionSpec) -> f64 {
    (terminal_spot.powf(spec.alpha) - spec.strike.powf(spec.alpha)).max(0.0)
}

/// Payoff dispatched on the spec's convention.
pub fn payoff(terminal_spot: f64, spec: &PowerOptionSpec) -> f64 {
    match spec.kind {
        PayoffKind::Type1 => payoff_type1(terminal_spot, spec),
        PayoffKind::Type2 => payoff_type2(terminal_spot, spec),
    }
}

/// Black-Scholes price of a vanilla European call.
///
/// `C = S N(d1) - K e^{-r tau} N(d2)`. At `tau = 0` the intrinsic value is
/// returned instead of evaluating the degenerate `d` terms.
pub fn price_vanilla_call(market: &MarketState, strike: f64) -> Result<PricingBreakdown, Error> {
    if market.tau < 0.0 {
        return Err(Error::NonPositiveTau(market.tau));
    }
    if market.tau == 0.0 {
        let intrinsic = (market.spot - strike).max(0.0);
        let (d1, d2) = degenerate_d(market.spot - strike);
        return Ok(PricingBreakdown { d1, d2, price: intrinsic });
    }
    let sigma = market.sigma_or_err()?;
    let st = sigma * market.tau.sqrt();
    let d1 = ((market.spot / strike).ln() + (market.rate + 0.5 * sigma * sigma) * market.tau) / st;
    let d2 = d1 - st;
    let price = market.spot * std_normal_cdf(d1).value()
        - strike * (-market.rate * market.tau).exp() * std_normal_cdf(d2).value();
    Ok(PricingBreakdown { d1, d2, price: price.max(0.0) })
}

/// Closed-form price of a power call, either convention.
///
/// Type 1: `C = S^a e^{[(a-1)r + a(a-1)s^2/2] tau} N(d1 + (a-1) s sqrt(tau)) - K e^{-r tau} N(d2)`
/// with `d1 = [ln(S^a/K) + a(r + s^2/2) tau] / (a s sqrt(tau))`. Type 2 replaces
/// `K` by `K^a` in the discounted term and in `d1`'s logarithm. Exponents are
/// accumulated in log space before exponentiating so large `alpha * sigma` does
/// not overflow intermediate products.
pub fn price_power_call(
    market: &MarketState,
    spec: &PowerOptionSpec,
) -> Result<PricingBreakdown, Error> {
    if market.tau < 0.0 {
        return Err(Error::NonPositiveTau(market.tau));
    }
    let ln_k_eff = spec.ln_strike_eff();
    if market.tau == 0.0 {
        let intrinsic = payoff(market.spot, spec);
        let (d1, d2) = degenerate_d(spec.alpha * market.spot.ln() - ln_k_eff);
        return Ok(PricingBreakdown { d1, d2, price: intrinsic });
    }
    let sigma = market.sigma_or_err()?;
    let alpha = spec.alpha;
    let ln_s = market.spot.ln();
    let st = sigma * market.tau.sqrt();
    let d1 = (alpha * ln_s - ln_k_eff + alpha * (market.rate + 0.5 * sigma * sigma) * market.tau)
        / (alpha * st);
    let d2 = d1 - st;
    let growth_ln =
        ((alpha - 1.0) * market.rate + 0.5 * alpha * (alpha - 1.0) * sigma * sigma) * market.tau;
    let price = (alpha * ln_s + growth_ln).exp() * std_normal_cdf(d1 + (alpha - 1.0) * st).value()
        - (ln_k_eff - market.rate * market.tau).exp() * std_normal_cdf(d2).value();
    Ok(PricingBreakdown { d1, d2, price: price.max(0.0) })
}

// d1/d2 stand-ins for the tau = 0 limit: the CDF arguments diverge to the
// moneyness sign's infinity.
fn degenerate_d(log_moneyness_sign: f64) -> (f64, f64) {
    if log_moneyness_sign > 0.0 {
        (f64::INFINITY, f64::INFINITY)
    } else if log_moneyness_sign < 0.0 {
        (f64::NEG_INFINITY, f64::NEG_INFINITY)
    } else {
        (0.0, 0.0)
    }
}
