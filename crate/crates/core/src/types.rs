use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors produced by pricing, inversion and the iterative solver.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("tau must be non-negative, got {0}")]
    NonPositiveTau(f64),
    #[error("sigma is required for pricing but was not supplied")]
    MissingSigma,
    #[error("invalid {field}: {reason}")]
    InvalidInput { field: &'static str, reason: String },
    #[error("target price {price} is not attainable within the expanded bracket [{low}, {high}]")]
    NoBracket { price: f64, low: f64, high: f64 },
    #[error("root finding did not converge within {0} iterations")]
    MaxIterations(usize),
}

/// Payoff convention of a power call.
///
/// `Type1` pays `(S_T^alpha - K)^+`, `Type2` pays `(S_T^alpha - K^alpha)^+`.
/// The two coincide for `K = 1` and both reduce to the vanilla call at `alpha = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PayoffKind {
    Type1,
    Type2,
}

impl PayoffKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            PayoffKind::Type1 => "type1",
            PayoffKind::Type2 => "type2",
        }
    }
}

impl std::str::FromStr for PayoffKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "type1" | "1" => Ok(PayoffKind::Type1),
            "type2" | "2" => Ok(PayoffKind::Type2),
            other => Err(format!("unknown payoff kind `{other}` (expected type1 or type2)")),
        }
    }
}

/// Contract parameters of a power call option.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerOptionSpec {
    /// Power exponent `alpha > 0` applied to the terminal spot.
    pub alpha: f64,
    /// Strike `K > 0`.
    pub strike: f64,
    /// Payoff convention.
    pub kind: PayoffKind,
}

impl PowerOptionSpec {
    pub fn new(alpha: f64, strike: f64, kind: PayoffKind) -> Result<Self, Error> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::InvalidInput {
                field: "alpha",
                reason: format!("must be a finite positive number, got {alpha}"),
            });
        }
        if !(strike > 0.0) || !strike.is_finite() {
            return Err(Error::InvalidInput {
                field: "strike",
                reason: format!("must be a finite positive number, got {strike}"),
            });
        }
        Ok(Self { alpha, strike, kind })
    }

    /// Log of the effective strike term: `ln K` for type 1, `alpha * ln K` for type 2.
    ///
    /// Both pricing formulas and the implied-vol intermediates differ only in this
    /// quantity, so routing everything through it keeps the two kinds bit-identical
    /// whenever `K = 1`.
    pub(crate) fn ln_strike_eff(&self) -> f64 {
        match self.kind {
            PayoffKind::Type1 => self.strike.ln(),
            PayoffKind::Type2 => self.alpha * self.strike.ln(),
        }
    }
}

/// Market inputs for a single valuation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarketState {
    /// Spot price `S > 0`.
    pub spot: f64,
    /// Continuously compounded risk-free rate.
    pub rate: f64,
    /// Time to expiry `tau >= 0`.
    pub tau: f64,
    /// Volatility, when known. Inversion routines ignore it.
    pub sigma: Option<f64>,
}

impl MarketState {
    pub fn new(spot: f64, rate: f64, tau: f64, sigma: Option<f64>) -> Result<Self, Error> {
        if !(spot > 0.0) || !spot.is_finite() {
            return Err(Error::InvalidInput {
                field: "spot",
                reason: format!("must be a finite positive number, got {spot}"),
            });
        }
        if tau < 0.0 || !tau.is_finite() {
            return Err(Error::NonPositiveTau(tau));
        }
        if let Some(s) = sigma {
            if !(s > 0.0) || !s.is_finite() {
                return Err(Error::InvalidInput {
                    field: "sigma",
                    reason: format!("must be a finite positive number, got {s}"),
                });
            }
        }
        Ok(Self { spot, rate, tau, sigma })
    }

    pub(crate) fn sigma_or_err(&self) -> Result<f64, Error> {
        self.sigma.ok_or(Error::MissingSigma)
    }
}
