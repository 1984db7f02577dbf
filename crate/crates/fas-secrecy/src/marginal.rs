//! One-dimensional fading-gain marginals.
//!
//! The shipped model is the Rayleigh gain (exponential) with scale `eta`.
//! Every consumer works through the CDF/PDF/quantile contract, so further
//! fading families slot in as new enum variants.

use crate::error::{Error, Result};

/// Fading-gain distribution of a single port or antenna branch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MarginalModel {
    /// |h|^2 of a Rayleigh-faded entry: exponential with rate `eta`.
    RayleighExponential { eta: f64 },
}

impl MarginalModel {
    pub fn rayleigh(eta: f64) -> Result<Self> {
        if !(eta > 0.0) || !eta.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "rayleigh scale eta must be positive and finite, got {eta}"
            )));
        }
        Ok(Self::RayleighExponential { eta })
    }

    pub fn eta(&self) -> f64 {
        match self {
            Self::RayleighExponential { eta } => *eta,
        }
    }

    /// CDF of the gain, 1 - e^{-eta r} for r >= 0.
    pub fn cdf(&self, r: f64) -> f64 {
        match self {
            Self::RayleighExponential { eta } => {
                if r <= 0.0 {
                    0.0
                } else {
                    -(-eta * r).exp_m1()
                }
            }
        }
    }

    /// Density of the gain, eta e^{-eta r} for r >= 0.
    pub fn pdf(&self, r: f64) -> f64 {
        match self {
            Self::RayleighExponential { eta } => {
                if r < 0.0 {
                    0.0
                } else {
                    eta * (-eta * r).exp()
                }
            }
        }
    }

    /// Natural log of the density, used by the log-space copula paths.
    pub fn ln_pdf(&self, r: f64) -> f64 {
        match self {
            Self::RayleighExponential { eta } => {
                if r < 0.0 {
                    f64::NEG_INFINITY
                } else {
                    eta.ln() - eta * r
                }
            }
        }
    }

    /// Quantile of the gain, -ln(1-u)/eta.
    pub fn quantile(&self, u: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&u) {
            return Err(Error::Domain(format!("quantile argument {u} not in [0,1]")));
        }
        match self {
            Self::RayleighExponential { eta } => Ok(-(-u).ln_1p() / eta),
        }
    }
}

/// Convenience for the paper's exponential form used by tests and the CLI.
pub fn rayleigh_gain_cdf(r: f64, eta: f64) -> f64 {
    MarginalModel::RayleighExponential { eta }.cdf(r)
}

pub fn rayleigh_gain_pdf(r: f64, eta: f64) -> f64 {
    MarginalModel::RayleighExponential { eta }.pdf(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn cdf_values() {
        assert_eq!(rayleigh_gain_cdf(0.0, 1.0), 0.0);
        assert_abs_diff_eq!(rayleigh_gain_cdf(2f64.ln(), 1.0), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(
            rayleigh_gain_cdf(1.0, 1.0),
            0.6321205588285577,
            epsilon = 1e-15
        );
    }

    #[test]
    fn pdf_values_and_derivative_consistency() {
        assert_eq!(rayleigh_gain_pdf(0.0, 1.0), 1.0);
        assert_abs_diff_eq!(
            rayleigh_gain_pdf(1.0, 2.0),
            0.2706705664732254,
            epsilon = 1e-15
        );
        // pdf = d/dr cdf by central differences.
        let m = MarginalModel::rayleigh(1.7).unwrap();
        let h = 1e-6;
        for r in [0.1, 0.5, 1.0, 2.5] {
            let fd = (m.cdf(r + h) - m.cdf(r - h)) / (2.0 * h);
            assert!((fd - m.pdf(r)).abs() < 1e-6, "r = {r}");
        }
    }

    #[test]
    fn quantile_round_trip() {
        let m = MarginalModel::rayleigh(0.8).unwrap();
        for i in 1..100 {
            let r = i as f64 * 0.07;
            let u = m.cdf(r);
            assert!((m.quantile(u).unwrap() - r).abs() < 1e-10, "r = {r}");
        }
        assert_eq!(m.quantile(0.0).unwrap(), 0.0);
    }

    #[test]
    fn pdf_integrates_to_one() {
        // Trapezoid over [0, 40/eta] with fine steps; tail below 1e-17.
        let m = MarginalModel::rayleigh(1.3).unwrap();
        let n = 400_000;
        let hi = 40.0 / m.eta();
        let h = hi / n as f64;
        let mut acc = 0.5 * (m.pdf(0.0) + m.pdf(hi));
        for i in 1..n {
            acc += m.pdf(i as f64 * h);
        }
        acc *= h;
        assert!((acc - 1.0).abs() < 1e-8, "integral {acc}");
    }

    #[test]
    fn invalid_eta_rejected() {
        assert!(MarginalModel::rayleigh(0.0).is_err());
        assert!(MarginalModel::rayleigh(-1.0).is_err());
        assert!(MarginalModel::rayleigh(f64::NAN).is_err());
    }
}
