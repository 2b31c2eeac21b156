//! Scalar numerical primitives: the standard-normal CDF and its truncated
//! Taylor series.

/// A probability in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Probability(f64);

impl Probability {
    /// Wraps a value, clamping floating-point spill outside `[0, 1]`.
    pub(crate) fn new(value: f64) -> Self {
        Probability(value.clamp(0.0, 1.0))
    }

    pub fn value(&self) -> f64 {
        self.0
    }
}

impl From<Probability> for f64 {
    fn from(p: Probability) -> f64 {
        p.0
    }
}

pub(crate) const SQRT_2PI: f64 = 2.506_628_274_631_000_7;
const FRAC_1_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

/// Standard-normal cumulative distribution function.
///
/// Hart's double-precision rational approximation (as given by West, 2005),
/// with a continued-fraction tail. Maximum absolute error is below 1e-15,
/// comfortably inside the 1e-12 budget the pricing layer relies on.
pub fn std_normal_cdf(x: f64) -> Probability {
    let xabs = x.abs();
    let tail = if xabs > 37.0 {
        0.0
    } else {
        let e = (-xabs * xabs / 2.0).exp();
        if xabs < 7.071_067_811_865_475 {
            let num = ((((((3.526_249_659_989_11e-2 * xabs + 0.700_383_064_443_688) * xabs
                + 6.373_962_203_531_65)
                * xabs
                + 33.912_866_078_383)
                * xabs
                + 112.079_291_497_871)
                * xabs
                + 221.213_596_169_931)
                * xabs
                + 220.206_867_912_376)
                * e;
            let den = ((((((8.838_834_764_831_84e-2 * xabs + 1.755_667_163_182_64) * xabs
                + 16.064_177_579_207)
                * xabs
                + 86.780_732_202_946_1)
                * xabs
                + 296.564_248_779_674)
                * xabs
                + 637.333_633_378_831)
                * xabs
                + 793.826_512_519_948)
                * xabs
                + 440.413_735_824_752;
            num / den
        } else {
            e / (SQRT_2PI * (xabs + 1.0 / (xabs + 2.0 / (xabs + 3.0 / (xabs + 4.0 / (xabs + 0.65))))))
        }
    };
    Probability::new(if x > 0.0 { 1.0 - tail } else { tail })
}

/// Truncated Taylor series of the standard-normal CDF around zero:
/// `N(x) = 1/2 + (x - x^3/6 + x^5/40 - ...) / sqrt(2*pi)`.
///
/// The general odd term is `(-1)^k x^(2k+1) / (2^k k! (2k+1))`. Retained as a
/// derivation-fidelity and validation tool; pricing always goes through
/// [`std_normal_cdf`].
pub fn std_normal_cdf_series(x: f64, num_terms: usize) -> f64 {
    assert!(num_terms >= 1, "num_terms must be at least 1");
    let x2 = x * x;
    let mut power = x; // (-1)^k x^(2k+1) / (2^k k!)
    let mut sum = x;
    for k in 1..num_terms {
        power *= -x2 / (2.0 * k as f64);
        sum += power / (2.0 * k as f64 + 1.0);
    }
    0.5 + FRAC_1_SQRT_2PI * sum
}
