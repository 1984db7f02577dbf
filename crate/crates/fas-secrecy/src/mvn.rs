//! Randomized quasi-Monte Carlo estimator for the multivariate normal CDF.
//!
//! Separation-of-variables in the Cholesky factor (Genz-style): each sample
//! walks the triangular system, conditioning every coordinate on the previous
//! draws, so the integrand becomes a product of univariate normal CDF values
//! over the unit cube. Sampling uses a Richtmyer lattice (fractional parts of
//! k*sqrt(prime)) under a fixed number of random shifts; the spread of the
//! per-shift means gives the reported standard error. Everything is
//! deterministic for a fixed seed.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::geometry::CorrelationMatrix;
use crate::normal::{quantile_rational, std_normal_cdf};

/// Number of random lattice shifts.
const N_SHIFTS: usize = 8;
/// Lattice points per shift in the first batch.
const BATCH_START: usize = 512;
/// Cap on lattice points per shift.
const SAMPLE_CAP: usize = 1 << 20;

/// Estimate of an orthant probability with its uncertainty.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MvnEstimate {
    /// Estimated probability in [0, 1].
    pub value: f64,
    /// Standard error across the randomized lattice shifts.
    pub std_error: f64,
    /// Total lattice points consumed over all shifts.
    pub samples_used: usize,
    /// False when the sample cap was reached before the tolerance.
    pub converged: bool,
}

impl MvnEstimate {
    fn exact(value: f64) -> Self {
        Self {
            value,
            std_error: 0.0,
            samples_used: 1,
            converged: true,
        }
    }
}

/// Fractional parts of sqrt(prime) used as lattice generators.
fn lattice_generators(count: usize) -> Vec<f64> {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    let primes = PRIMES.get_or_init(|| sieve(8192));
    let mut primes = std::borrow::Cow::Borrowed(primes);
    let mut limit = 8192u32;
    while primes.len() < count {
        limit *= 2;
        primes = std::borrow::Cow::Owned(sieve(limit));
    }
    primes[..count]
        .iter()
        .map(|&p| (p as f64).sqrt().fract())
        .collect()
}

fn sieve(limit: u32) -> Vec<u32> {
    let mut is_comp = vec![false; limit as usize + 1];
    let mut out = Vec::new();
    for p in 2..=limit {
        if !is_comp[p as usize] {
            out.push(p);
            let mut q = (p as u64 * p as u64) as usize;
            while q <= limit as usize {
                is_comp[q] = true;
                q += p as usize;
            }
        }
    }
    out
}

/// P(X <= point) for X ~ N(0, R), R the regularized correlation matrix.
///
/// Coordinates are reordered by ascending limit before factorization (the
/// stored factor is reused when the order is already ascending, which covers
/// the repeated-diagonal evaluations the copula makes). The estimator stops
/// once `std_error <= rel_tol * max(value, 1e-3)` or the sample cap is hit;
/// the cap is reported through `converged`, never silently.
pub fn mvn_cdf(
    corr: &CorrelationMatrix,
    point: &[f64],
    rel_tol: f64,
    seed: u64,
) -> Result<MvnEstimate> {
    let dim = corr.dim();
    if point.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: point.len(),
        });
    }
    if !(1e-6..=1e-2).contains(&rel_tol) {
        return Err(Error::Domain(format!(
            "mvn rel_tol {rel_tol} outside [1e-6, 1e-2]"
        )));
    }
    if point.iter().any(|b| b.is_nan()) {
        return Err(Error::Domain("mvn point contains NaN".into()));
    }

    if dim == 1 {
        return Ok(MvnEstimate::exact(std_normal_cdf(point[0])));
    }

    // Reorder by outer integration limits (ascending); stable, so the
    // repeated-diagonal case keeps the stored factor.
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| point[a].total_cmp(&point[b]).then(a.cmp(&b)));
    let identity_order = order.iter().enumerate().all(|(i, &p)| i == p);

    let permuted;
    let chol = if identity_order {
        corr.chol()
    } else {
        permuted = corr.permuted(&order)?;
        permuted.chol()
    };
    let b: Vec<f64> = order.iter().map(|&i| point[i]).collect();

    // Flatten the lower triangle row-major for the inner loop.
    let mut lower = vec![0.0; dim * (dim + 1) / 2];
    {
        let mut idx = 0;
        for i in 0..dim {
            for j in 0..=i {
                lower[idx] = chol[(i, j)];
                idx += 1;
            }
        }
    }

    let gens = lattice_generators(dim - 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut shifts = vec![vec![0.0f64; dim - 1]; N_SHIFTS];
    for shift in shifts.iter_mut() {
        for s in shift.iter_mut() {
            *s = rng.random::<f64>();
        }
    }

    let e_first = std_normal_cdf(b[0] / lower[0]);
    let mut sums = [0.0f64; N_SHIFTS];
    let mut done = 0usize;
    let mut target = BATCH_START;
    let mut y = vec![0.0f64; dim - 1];

    loop {
        for (shift, sum) in shifts.iter().zip(sums.iter_mut()) {
            for k in (done + 1)..=target {
                let kf = k as f64;
                let mut f = e_first;
                let mut e_prev = e_first;
                let mut row = 1; // flat index of row i in `lower`
                for i in 1..dim {
                    if e_prev <= 0.0 {
                        f = 0.0;
                        break;
                    }
                    let u = {
                        let t = (kf * gens[i - 1] + shift[i - 1]).fract();
                        (2.0 * t - 1.0).abs()
                    };
                    let z = (u * e_prev).clamp(1e-300, 1.0 - 1e-16);
                    y[i - 1] = quantile_rational(z);
                    let mut num = b[i];
                    for j in 0..i {
                        num -= lower[row + j] * y[j];
                    }
                    let e = std_normal_cdf(num / lower[row + i]);
                    f *= e;
                    e_prev = e;
                    row += i + 1;
                }
                *sum += f;
            }
        }
        done = target;

        let means: Vec<f64> = sums.iter().map(|s| s / done as f64).collect();
        let value = means.iter().sum::<f64>() / N_SHIFTS as f64;
        let var = means.iter().map(|m| (m - value) * (m - value)).sum::<f64>()
            / (N_SHIFTS as f64 - 1.0);
        let std_error = (var / N_SHIFTS as f64).sqrt();

        if std_error <= rel_tol * value.max(1e-3) {
            return Ok(MvnEstimate {
                value,
                std_error,
                samples_used: N_SHIFTS * done,
                converged: true,
            });
        }
        if done >= SAMPLE_CAP {
            log::debug!(
                "mvn estimator cap: dim {dim}, value {value:.3e}, se {std_error:.3e}"
            );
            return Ok(MvnEstimate {
                value,
                std_error,
                samples_used: N_SHIFTS * done,
                converged: false,
            });
        }
        target = (done * 2).min(SAMPLE_CAP);
    }
}
