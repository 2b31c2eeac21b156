//! Independent implied-volatility oracle: bracketed iterative root finding on
//! the exact pricing function. Used to quantify the closed-form estimator's
//! approximation error, so it must not share any code path with the quadratic.

use crate::pricing::price_power_call;
use crate::types::{Error, MarketState, PowerOptionSpec};

/// Bracketing and convergence settings for [`implied_vol_iterative`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Absolute tolerance on sigma.
    pub tolerance: f64,
    pub max_iterations: usize,
    pub bracket_low: f64,
    pub bracket_high: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { tolerance: 1e-12, max_iterations: 200, bracket_low: 1e-6, bracket_high: 4.0 }
    }
}

/// A solved volatility, flagged when the price function was detected to be
/// non-monotone inside the bracket (possible for `alpha < 1`, where the power
/// payoff is concave and implied volatility need not be unique). The solution
/// is then the root on the leftmost straddling sub-interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterativeIv {
    pub sigma: f64,
    pub non_monotone: bool,
}

// Grid resolution for straddle detection inside the bracket.
const SCAN_POINTS: usize = 257;
const MAX_BRACKET_DOUBLINGS: usize = 10;

/// Inverts `price_power_call` for sigma by scanning for a sign change and
/// refining it with Brent's method. Deterministic for fixed inputs.
pub fn implied_vol_iterative(
    market: &MarketState,
    spec: &PowerOptionSpec,
    call_price: f64,
    config: &SolverConfig,
) -> Result<IterativeIv, Error> {
    if market.tau <= 0.0 {
        return Err(Error::NonPositiveTau(market.tau));
    }
    let f = |sigma: f64| -> f64 {
        let m = MarketState { sigma: Some(sigma), ..*market };
        price_power_call(&m, spec).map(|bd| bd.price).unwrap_or(f64::NAN) - call_price
    };

    let lo = config.bracket_low;
    let mut hi = config.bracket_high;
    for expansion in 0..=MAX_BRACKET_DOUBLINGS {
        let step = (hi - lo) / (SCAN_POINTS - 1) as f64;
        let mut prev_x = lo;
        let mut prev_f = f(lo);
        let mut prev_slope = 0.0f64;
        let mut non_monotone = false;
        let mut bracket: Option<(f64, f64, f64, f64)> = None;
        for i in 1..SCAN_POINTS {
            let x = lo + step * i as f64;
            let fx = f(x);
            let slope = fx - prev_f;
            if slope * prev_slope < 0.0 {
                non_monotone = true;
            }
            if bracket.is_none() && (prev_f == 0.0 || prev_f * fx <= 0.0) {
                bracket = Some((prev_x, prev_f, x, fx));
                // keep scanning the rest of the grid so the flag reflects the
                // whole bracket, then solve on the leftmost sub-interval
            }
            prev_slope = if slope != 0.0 { slope } else { prev_slope };
            prev_x = x;
            prev_f = fx;
        }
        if let Some((a, fa, b, fb)) = bracket {
            let sigma = brent(&f, a, fa, b, fb, config)?;
            return Ok(IterativeIv { sigma, non_monotone });
        }
        if expansion == MAX_BRACKET_DOUBLINGS {
            break;
        }
        hi *= 2.0;
    }
    Err(Error::NoBracket { price: call_price, low: lo, high: hi })
}

// Classic Brent: bisection interleaved with secant / inverse quadratic steps.
fn brent(
    f: &dyn Fn(f64) -> f64,
    mut a: f64,
    mut fa: f64,
    mut b: f64,
    mut fb: f64,
    config: &SolverConfig,
) -> Result<f64, Error> {
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.abs() < fb.abs() {
        std::mem::swap(&mut a, &mut b);
        std::mem::swap(&mut fa, &mut fb);
    }
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut mflag = true;
    for _ in 0..config.max_iterations {
        if fb == 0.0 || (b - a).abs() <= config.tolerance {
            return Ok(b);
        }
        let mut s = if fa != fc && fb != fc {
            // inverse quadratic interpolation
            a * fb * fc / ((fa - fb) * (fa - fc))
                + b * fa * fc / ((fb - fa) * (fb - fc))
                + c * fa * fb / ((fc - fa) * (fc - fb))
        } else {
            b - fb * (b - a) / (fb - fa)
        };
        let lower = (3.0 * a + b) / 4.0;
        let cond = !((lower.min(b) < s && s < lower.max(b))
            && (!mflag || (s - b).abs() < (b - c).abs() / 2.0)
            && (mflag || (s - b).abs() < (c - d).abs() / 2.0));
        if cond {
            s = (a + b) / 2.0;
            mflag = true;
        } else {
            mflag = false;
        }
        let fs = f(s);
        d = c;
        c = b;
        fc = fb;
        if fa * fs < 0.0 {
            b = s;
            fb = fs;
        } else {
            a = s;
            fa = fs;
        }
        if fa.abs() < fb.abs() {
            std::mem::swap(&mut a, &mut b);
            std::mem::swap(&mut fa, &mut fb);
        }
    }
    Err(Error::MaxIterations(config.max_iterations))
}
