//! Gaussian copula CDF/density and the equivalent best-port channel
//! distributions.
//!
//! The copula CDF routes through the randomized MVN estimator in
//! [`crate::mvn`]; the density is evaluated in log-space through the
//! regularized Cholesky factor and exponentiated only at the API boundary, so
//! near-singular high-dimensional correlation matrices do not underflow.

use crate::error::{Error, Result};
use crate::geometry::CorrelationMatrix;
use crate::marginal::MarginalModel;
use crate::mvn::{mvn_cdf, MvnEstimate};
use crate::normal::std_normal_quantile;

/// Marginal CDF values are clamped into this interval before the normal
/// quantile transform, keeping the transformed point finite at
/// machine-precision boundaries.
pub(crate) const U_CLAMP: f64 = 1e-15;

fn exact(value: f64) -> MvnEstimate {
    MvnEstimate {
        value,
        std_error: 0.0,
        samples_used: 1,
        converged: true,
    }
}

/// Gaussian copula CDF at `u`, honoring the copula boundary axioms: any
/// coordinate at 0 gives 0, coordinates at 1 drop out of the evaluation.
pub fn gaussian_copula_cdf(
    u: &[f64],
    corr: &CorrelationMatrix,
    rel_tol: f64,
    seed: u64,
) -> Result<MvnEstimate> {
    if u.len() != corr.dim() {
        return Err(Error::DimensionMismatch {
            expected: corr.dim(),
            got: u.len(),
        });
    }
    for &uq in u {
        if !(0.0..=1.0).contains(&uq) {
            return Err(Error::Domain(format!("copula argument {uq} not in [0,1]")));
        }
    }
    if u.iter().any(|&uq| uq == 0.0) {
        return Ok(exact(0.0));
    }
    let active: Vec<usize> = (0..u.len()).filter(|&q| u[q] < 1.0).collect();
    if active.is_empty() {
        return Ok(exact(1.0));
    }
    if active.len() == 1 {
        return Ok(exact(u[active[0]]));
    }

    let point: Vec<f64> = active
        .iter()
        .map(|&q| std_normal_quantile(u[q].clamp(U_CLAMP, 1.0 - U_CLAMP)))
        .collect::<Result<_>>()?;
    if active.len() == u.len() {
        mvn_cdf(corr, &point, rel_tol, seed)
    } else {
        let sub = corr.submatrix(&active)?;
        mvn_cdf(&sub, &point, rel_tol, seed)
    }
}

/// Natural log of the Gaussian copula density at an interior point:
/// -1/2 phi^T (R^{-1} - I) phi - 1/2 ln det R, both terms through the
/// regularized Cholesky factor.
pub fn gaussian_copula_ln_density(u: &[f64], corr: &CorrelationMatrix) -> Result<f64> {
    let dim = corr.dim();
    if u.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: u.len(),
        });
    }
    for &uq in u {
        if !(uq > 0.0 && uq < 1.0) {
            return Err(Error::Domain(format!(
                "copula density argument {uq} not in the open interval (0,1)"
            )));
        }
    }
    let phi: Vec<f64> = u
        .iter()
        .map(|&uq| std_normal_quantile(uq))
        .collect::<Result<_>>()?;

    let chol = corr.chol();
    // Forward solve L w = phi; then phi^T R^{-1} phi = |w|^2.
    let mut w = phi.clone();
    let mut log_det = 0.0;
    for i in 0..dim {
        let piv = chol[(i, i)];
        if !(piv > 0.0) {
            return Err(Error::NotPositiveDefinite);
        }
        log_det += piv.ln();
        let mut acc = w[i];
        for j in 0..i {
            acc -= chol[(i, j)] * w[j];
        }
        w[i] = acc / piv;
    }
    log_det *= 2.0;

    let quad_inv: f64 = w.iter().map(|x| x * x).sum();
    let quad_id: f64 = phi.iter().map(|x| x * x).sum();
    Ok(-0.5 * (quad_inv - quad_id) - 0.5 * log_det)
}

/// Gaussian copula density, exponentiated at the boundary.
pub fn gaussian_copula_density(u: &[f64], corr: &CorrelationMatrix) -> Result<f64> {
    gaussian_copula_ln_density(u, corr).map(f64::exp)
}

/// CDF of the best-port gain: the copula evaluated at the K-fold repeated
/// marginal value, Pr(max of the K correlated gains <= r).
pub fn fas_gain_cdf(
    r: f64,
    marginal: &MarginalModel,
    corr: &CorrelationMatrix,
    rel_tol: f64,
    seed: u64,
) -> Result<MvnEstimate> {
    if r <= 0.0 {
        return Ok(exact(0.0));
    }
    if corr.dim() == 1 {
        return Ok(exact(marginal.cdf(r)));
    }
    let u = marginal.cdf(r);
    if u <= 0.0 {
        return Ok(exact(0.0));
    }
    if u >= 1.0 {
        return Ok(exact(1.0));
    }
    let uu = vec![u.clamp(U_CLAMP, 1.0 - U_CLAMP); corr.dim()];
    gaussian_copula_cdf(&uu, corr, rel_tol, seed)
}

/// Log of the joint-density-on-the-diagonal form of the best-port PDF:
/// sum of K marginal log densities plus the copula log density at the
/// repeated marginal value. Not the exact density of the maximum for K >= 2;
/// see [`fas_gain_cdf_derivative`] for the reference density.
pub fn fas_gain_ln_pdf_paper(
    r: f64,
    marginal: &MarginalModel,
    corr: &CorrelationMatrix,
) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::Domain(format!("pdf argument {r} must be positive")));
    }
    let k = corr.dim();
    let ln_f = marginal.ln_pdf(r);
    if k == 1 {
        return Ok(ln_f);
    }
    let u = marginal.cdf(r).clamp(U_CLAMP, 1.0 - U_CLAMP);
    let ln_c = gaussian_copula_ln_density(&vec![u; k], corr)?;
    Ok(k as f64 * ln_f + ln_c)
}

/// Exponentiated form of [`fas_gain_ln_pdf_paper`].
pub fn fas_gain_pdf_paper(
    r: f64,
    marginal: &MarginalModel,
    corr: &CorrelationMatrix,
) -> Result<f64> {
    fas_gain_ln_pdf_paper(r, marginal, corr).map(f64::exp)
}

/// Central finite difference of [`fas_gain_cdf`]; the reference density of
/// the best-port gain. `flagged` is raised when the estimate is negative
/// beyond the propagated noise band.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CdfDerivative {
    pub value: f64,
    /// 3-sigma band from the two CDF estimator errors divided by the step.
    pub noise_band: f64,
    pub flagged: bool,
}

pub fn fas_gain_cdf_derivative(
    r: f64,
    marginal: &MarginalModel,
    corr: &CorrelationMatrix,
    rel_tol: f64,
    seed: u64,
    step: f64,
) -> Result<CdfDerivative> {
    if !(r > 0.0) || !(step > 0.0) {
        return Err(Error::Domain(format!(
            "derivative needs r > 0 and step > 0, got r = {r}, step = {step}"
        )));
    }
    // Common seed on both sides so the estimator noise largely cancels.
    let hi = fas_gain_cdf(r + step, marginal, corr, rel_tol, seed)?;
    let lo = fas_gain_cdf(r - step, marginal, corr, rel_tol, seed)?;
    let value = (hi.value - lo.value) / (2.0 * step);
    let noise_band = 3.0 * (hi.std_error + lo.std_error) / (2.0 * step);
    Ok(CdfDerivative {
        value,
        noise_band,
        flagged: value < -noise_band,
    })
}
