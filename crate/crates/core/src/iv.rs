//! Closed-form implied volatility for power calls.
//!
//! An observed price `C` is mapped to the quadratic
//! `(FW + X) xi^2 + sqrt(2 pi) [(F - X) - 2C] xi + 2 [(1/alpha) ln(F/X)] (F - X) = 0`
//! in `xi = sigma * sqrt(tau)`, and the largest admissible root is selected.
//! With `alpha = 1` the coefficients collapse to the Corrado-Miller form.

use crate::math::SQRT_2PI;
use crate::types::{Error, MarketState, PayoffKind, PowerOptionSpec};

/// Derived quantities the quadratic is built from.
///
/// Type 1: `X = K e^{-r tau}`, `F = S^alpha (K/X)^(alpha-1)`;
/// type 2 uses `K^alpha` in place of `K`. In both cases
/// `W = 2 alpha - 1 + (alpha - 1) ln(F/X)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Intermediates {
    pub big_f: f64,
    pub big_x: f64,
    pub big_w: f64,
    /// `ln(F/X)` carried separately; recomputing it from the exponentiated
    /// values would lose precision near `F = X`.
    pub ln_f_over_x: f64,
    pub kind: PayoffKind,
}

/// Coefficients of the implied-volatility quadratic `a xi^2 + b xi + c = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticIv {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub discriminant: f64,
}

/// Why (or how) the closed form produced a volatility.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IvStatus {
    Solved,
    /// `b^2 - 4ac < 0`: no real root at this observation.
    NegativeDiscriminant,
    /// `a > 0` with `b >= 0`: the admissibility condition `(F - X) - 2C < 0` fails.
    WrongSignCondition,
    /// The selected root is not strictly positive.
    NonPositiveRoot,
    /// `a = 0` and the linear fallback has no positive solution.
    DegenerateLinear,
}

/// Which root formula produced a solved outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootBranch {
    /// `a > 0`: `xi = (-b + sqrt(D)) / (2a)`.
    PlusRoot,
    /// `a < 0`: `xi = (-b - sqrt(D)) / (2a)`.
    MinusRoot,
    /// `a = 0`: `xi = -c / b`.
    Linear,
}

/// Result of a closed-form inversion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IvOutcome {
    pub status: IvStatus,
    pub sigma: Option<f64>,
    pub xi: Option<f64>,
    pub branch: Option<RootBranch>,
}

impl IvOutcome {
    fn failed(status: IvStatus) -> Self {
        IvOutcome { status, sigma: None, xi: None, branch: None }
    }

    pub fn is_solved(&self) -> bool {
        self.status == IvStatus::Solved
    }
}

/// How a negative discriminant is treated before root selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DiscriminantPolicy {
    /// Clamp only floating-point noise: `D` in `[-1e-12 b^2, 0)` becomes 0.
    /// Anything more negative is a genuine `NegativeDiscriminant`.
    #[default]
    ClampTinyNegative,
    /// Clamp every negative discriminant to 0. Opt-in repair; it raises the
    /// solve rate at the cost of accuracy.
    RepairNegative,
}

/// Builds `F`, `X`, `W` from market and contract parameters. Does not need sigma.
pub fn compute_intermediates(
    market: &MarketState,
    spec: &PowerOptionSpec,
) -> Result<Intermediates, Error> {
    if market.tau <= 0.0 {
        return Err(Error::NonPositiveTau(market.tau));
    }
    let ln_k_eff = spec.ln_strike_eff();
    let ln_x = ln_k_eff - market.rate * market.tau;
    // ln F = alpha ln S + (alpha - 1)(ln K_eff - ln X) = alpha ln S + (alpha - 1) r tau.
    let ln_f = spec.alpha * market.spot.ln() + (spec.alpha - 1.0) * (ln_k_eff - ln_x);
    let ln_f_over_x = ln_f - ln_x;
    Ok(Intermediates {
        big_f: ln_f.exp(),
        big_x: ln_x.exp(),
        big_w: 2.0 * spec.alpha - 1.0 + (spec.alpha - 1.0) * ln_f_over_x,
        ln_f_over_x,
        kind: spec.kind,
    })
}

/// Coefficients of the quadratic in `xi`. The same expression serves both
/// payoff conventions; only the intermediates differ.
pub fn quadratic_coefficients(inter: &Intermediates, call_price: f64, alpha: f64) -> QuadraticIv {
    let f = inter.big_f;
    let x = inter.big_x;
    let a = f * inter.big_w + x;
    let b = SQRT_2PI * ((f - x) - 2.0 * call_price);
    // ln(F/X) and F - X share a sign, so c >= 0 up to rounding in the product.
    let c = (2.0 * (inter.ln_f_over_x / alpha) * (f - x)).max(0.0);
    QuadraticIv { a, b, c, discriminant: b * b - 4.0 * a * c }
}

/// Selects the largest admissible root of the quadratic.
///
/// `a > 0`: requires `D >= 0` and `b < 0`, returns the plus branch.
/// `a < 0`: requires `D >= 0`, returns the minus branch (the larger root once
/// the division flips the sign). `a = 0`: linear fallback `xi = -c/b`.
/// A solved outcome always carries `xi > 0` and `sigma = xi / sqrt_tau`.
pub fn solve_largest_admissible_root(
    quad: &QuadraticIv,
    sqrt_tau: f64,
    policy: DiscriminantPolicy,
) -> IvOutcome {
    let mut disc = quad.discriminant;
    if disc < 0.0 {
        let repairable = match policy {
            DiscriminantPolicy::ClampTinyNegative => disc >= -1e-12 * quad.b * quad.b,
            DiscriminantPolicy::RepairNegative => true,
        };
        if repairable {
            disc = 0.0;
        } else {
            return IvOutcome::failed(IvStatus::NegativeDiscriminant);
        }
    }
    let (xi, branch) = if quad.a > 0.0 {
        if quad.b >= 0.0 {
            return IvOutcome::failed(IvStatus::WrongSignCondition);
        }
        ((-quad.b + disc.sqrt()) / (2.0 * quad.a), RootBranch::PlusRoot)
    } else if quad.a < 0.0 {
        ((-quad.b - disc.sqrt()) / (2.0 * quad.a), RootBranch::MinusRoot)
    } else {
        if quad.b == 0.0 {
            return IvOutcome::failed(IvStatus::DegenerateLinear);
        }
        let xi = -quad.c / quad.b;
        if !(xi > 0.0) {
            return IvOutcome::failed(IvStatus::DegenerateLinear);
        }
        (xi, RootBranch::Linear)
    };
    if !(xi > 0.0) {
        return IvOutcome::failed(IvStatus::NonPositiveRoot);
    }
    IvOutcome { status: IvStatus::Solved, sigma: Some(xi / sqrt_tau), xi: Some(xi), branch: Some(branch) }
}

/// Full closed-form inversion: intermediates, quadratic, root selection.
pub fn implied_vol_closed_form(
    market: &MarketState,
    spec: &PowerOptionSpec,
    call_price: f64,
) -> Result<IvOutcome, Error> {
    implied_vol_closed_form_with_policy(market, spec, call_price, DiscriminantPolicy::default())
}

/// [`implied_vol_closed_form`] with an explicit discriminant policy.
pub fn implied_vol_closed_form_with_policy(
    market: &MarketState,
    spec: &PowerOptionSpec,
    call_price: f64,
    policy: DiscriminantPolicy,
) -> Result<IvOutcome, Error> {
    let inter = compute_intermediates(market, spec)?;
    let quad = quadratic_coefficients(&inter, call_price, spec.alpha);
    Ok(solve_largest_admissible_root(&quad, market.tau.sqrt(), policy))
}

/// The Corrado-Miller estimator for a vanilla call: the `alpha = 1` case.
pub fn corrado_miller_vanilla(
    market: &MarketState,
    strike: f64,
    call_price: f64,
) -> Result<IvOutcome, Error> {
    let spec = PowerOptionSpec::new(1.0, strike, PayoffKind::Type1)?;
    implied_vol_closed_form(market, &spec, call_price)
}
