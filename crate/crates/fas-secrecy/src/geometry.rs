//! Planar port-grid geometry, Jakes spatial covariance and the regularized
//! correlation matrices consumed by both the copula engine and the Monte
//! Carlo sampler.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};

/// Tolerance band inside which normalized correlation entries are clamped to
/// [-1, 1]; anything farther out is an error.
const CLAMP_TOL: f64 = 1e-12;

/// Escalating diagonal jitter schedule for positive-definite repair.
const JITTER_START: f64 = 1e-12;
const JITTER_CAP: f64 = 1e-6;

/// Eigenvalue floor for the clipping fallback.
const EIG_CLIP: f64 = 1e-10;

/// Planar fluid-antenna geometry: `k1 x k2` ports spread evenly over a
/// normalized aperture of `w1 x w2` wavelengths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PortGrid {
    k1: usize,
    k2: usize,
    w1: f64,
    w2: f64,
}

impl PortGrid {
    pub fn new(k1: usize, k2: usize, w1: f64, w2: f64) -> Result<Self> {
        if k1 == 0 || k2 == 0 {
            return Err(Error::InvalidGrid(format!(
                "port counts must be positive, got {k1}x{k2}"
            )));
        }
        if !(w1.is_finite() && w2.is_finite()) || w1 < 0.0 || w2 < 0.0 {
            return Err(Error::InvalidGrid(format!(
                "normalized lengths must be finite and nonnegative, got {w1}x{w2}"
            )));
        }
        if k1 > 1 && w1 <= 0.0 {
            return Err(Error::InvalidGrid(
                "k1 > 1 requires w1 > 0 (multi-port axis needs extent)".into(),
            ));
        }
        if k2 > 1 && w2 <= 0.0 {
            return Err(Error::InvalidGrid(
                "k2 > 1 requires w2 > 0 (multi-port axis needs extent)".into(),
            ));
        }
        Ok(Self { k1, k2, w1, w2 })
    }

    /// Square grid with `side x side` ports on a `sqrt(area) x sqrt(area)`
    /// aperture.
    pub fn square(side: usize, area: f64) -> Result<Self> {
        let w = area.sqrt();
        Self::new(side, side, w, w)
    }

    pub fn k1(&self) -> usize {
        self.k1
    }

    pub fn k2(&self) -> usize {
        self.k2
    }

    pub fn w1(&self) -> f64 {
        self.w1
    }

    pub fn w2(&self) -> f64 {
        self.w2
    }

    /// Total port count K = k1 * k2.
    pub fn total_ports(&self) -> usize {
        self.k1 * self.k2
    }

    /// Normalized area in wavelengths squared.
    pub fn area(&self) -> f64 {
        self.w1 * self.w2
    }
}

/// Row-major bijection from the 1-based flat port index to 1-based
/// per-dimension indices.
pub fn port_index_map(grid: &PortGrid, k: usize) -> Result<(usize, usize)> {
    let total = grid.total_ports();
    if k < 1 || k > total {
        return Err(Error::PortIndexOutOfRange { index: k, total });
    }
    let zero = k - 1;
    Ok((zero / grid.k2 + 1, zero % grid.k2 + 1))
}

/// Inverse of [`port_index_map`].
pub fn port_flat_index(grid: &PortGrid, k1: usize, k2: usize) -> Result<usize> {
    if k1 < 1 || k1 > grid.k1 || k2 < 1 || k2 > grid.k2 {
        return Err(Error::PortIndexOutOfRange {
            index: k1.max(k2),
            total: grid.total_ports(),
        });
    }
    Ok((k1 - 1) * grid.k2 + k2)
}

/// Zero-order spherical Bessel function of the first kind, sin(t)/t with the
/// removable singularity j0(0) = 1. Small arguments use the Taylor series
/// 1 - t^2/6 + t^4/120 to avoid cancellation.
pub fn spherical_bessel_j0(t: f64) -> f64 {
    let a = t.abs();
    if a < 1e-4 {
        let t2 = t * t;
        1.0 - t2 / 6.0 + t2 * t2 / 120.0
    } else {
        t.sin() / t
    }
}

/// Normalized displacement between two flat port indices, in wavelengths.
/// A single-port axis contributes zero displacement.
fn port_distance(grid: &PortGrid, a: usize, b: usize) -> f64 {
    let (a1, a2) = port_index_map(grid, a).expect("index validated by caller");
    let (b1, b2) = port_index_map(grid, b).expect("index validated by caller");
    let d1 = if grid.k1 > 1 {
        (a1 as f64 - b1 as f64) / (grid.k1 as f64 - 1.0) * grid.w1
    } else {
        0.0
    };
    let d2 = if grid.k2 > 1 {
        (a2 as f64 - b2 as f64) / (grid.k2 as f64 - 1.0) * grid.w2
    } else {
        0.0
    };
    (d1 * d1 + d2 * d2).sqrt()
}

/// Jakes isotropic-scattering covariance of the port grid: entry (k, k~) is
/// `omega * j0(2 pi * distance(k, k~))` with the planar normalized distance.
/// The diagonal equals `omega` exactly.
pub fn jakes_covariance(grid: &PortGrid, omega: f64) -> Result<DMatrix<f64>> {
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(Error::InvalidCovariance(format!(
            "variance must be positive and finite, got {omega}"
        )));
    }
    let k = grid.total_ports();
    let mut m = DMatrix::zeros(k, k);
    for i in 0..k {
        m[(i, i)] = omega;
        for j in 0..i {
            let d = port_distance(grid, i + 1, j + 1);
            let v = omega * spherical_bessel_j0(2.0 * std::f64::consts::PI * d);
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
    Ok(m)
}

/// Symmetric correlation matrix with unit diagonal plus the lower Cholesky
/// factor of its positive-definite regularization. `jitter_applied` records
/// the diagonal shift that was needed (0 when the raw matrix already
/// factorizes); `clipped` is set when jitter alone could not repair it and
/// eigenvalue clipping ran.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationMatrix {
    dim: usize,
    entries: DMatrix<f64>,
    chol: DMatrix<f64>,
    jitter_applied: f64,
    clipped: bool,
}

impl CorrelationMatrix {
    /// Normalize a covariance matrix to correlation (entries divided by
    /// `sqrt(var_i var_j)`) and compute the regularized Cholesky factor.
    pub fn from_covariance(cov: &DMatrix<f64>) -> Result<Self> {
        let n = cov.nrows();
        if n == 0 || cov.ncols() != n {
            return Err(Error::InvalidCovariance(format!(
                "expected nonempty square matrix, got {}x{}",
                cov.nrows(),
                cov.ncols()
            )));
        }
        for i in 0..n {
            if !(cov[(i, i)] > 0.0) {
                return Err(Error::InvalidCovariance(format!(
                    "diagonal entry {i} = {} not positive",
                    cov[(i, i)]
                )));
            }
            for j in 0..i {
                if (cov[(i, j)] - cov[(j, i)]).abs() > 1e-14 * cov[(i, i)].max(cov[(j, j)]) {
                    return Err(Error::InvalidCovariance(format!(
                        "asymmetric at ({i},{j}): {} vs {}",
                        cov[(i, j)],
                        cov[(j, i)]
                    )));
                }
            }
        }
        let mut corr = DMatrix::zeros(n, n);
        for i in 0..n {
            corr[(i, i)] = 1.0;
            for j in 0..i {
                let denom = (cov[(i, i)] * cov[(j, j)]).sqrt();
                let v = 0.5 * (cov[(i, j)] + cov[(j, i)]) / denom;
                if v.abs() > 1.0 + CLAMP_TOL {
                    return Err(Error::CorrelationEntryOutOfRange {
                        row: i,
                        col: j,
                        value: v,
                    });
                }
                let v = v.clamp(-1.0, 1.0);
                corr[(i, j)] = v;
                corr[(j, i)] = v;
            }
        }
        Self::from_correlation(corr)
    }

    /// Regularize an already-normalized correlation matrix (unit diagonal).
    pub fn from_correlation(corr: DMatrix<f64>) -> Result<Self> {
        let n = corr.nrows();
        if n == 0 || corr.ncols() != n {
            return Err(Error::InvalidCovariance(format!(
                "expected nonempty square matrix, got {}x{}",
                corr.nrows(),
                corr.ncols()
            )));
        }
        if let Some(chol) = try_cholesky(&corr) {
            return Ok(Self {
                dim: n,
                entries: corr,
                chol,
                jitter_applied: 0.0,
                clipped: false,
            });
        }

        // Escalating diagonal jitter, then eigenvalue clipping as a last
        // resort. The jitter magnitude is surfaced for audit.
        let mut jitter = JITTER_START;
        while jitter <= JITTER_CAP {
            let mut shifted = corr.clone();
            for i in 0..n {
                shifted[(i, i)] += jitter;
            }
            if let Some(chol) = try_cholesky(&shifted) {
                log::debug!("correlation repaired with diagonal jitter {jitter:e}");
                return Ok(Self {
                    dim: n,
                    entries: corr,
                    chol,
                    jitter_applied: jitter,
                    clipped: false,
                });
            }
            jitter *= 10.0;
        }

        let eig = SymmetricEigen::new(corr.clone());
        let clipped_vals = eig.eigenvalues.map(|l| l.max(EIG_CLIP));
        let mut rebuilt =
            &eig.eigenvectors * DMatrix::from_diagonal(&clipped_vals) * eig.eigenvectors.transpose();
        // Re-normalize to unit diagonal after clipping.
        let scale: Vec<f64> = (0..n).map(|i| rebuilt[(i, i)].sqrt()).collect();
        for i in 0..n {
            for j in 0..n {
                rebuilt[(i, j)] /= scale[i] * scale[j];
            }
        }
        let mut shifted = rebuilt;
        for i in 0..n {
            shifted[(i, i)] += JITTER_CAP;
        }
        match try_cholesky(&shifted) {
            Some(chol) => {
                log::warn!("correlation repaired by eigenvalue clipping at {EIG_CLIP:e}");
                Ok(Self {
                    dim: n,
                    entries: corr,
                    chol,
                    jitter_applied: JITTER_CAP,
                    clipped: true,
                })
            }
            None => Err(Error::NotPositiveDefinite),
        }
    }

    /// Identity correlation (independent ports).
    pub fn identity(dim: usize) -> Self {
        Self::from_correlation(DMatrix::identity(dim, dim)).expect("identity is PD")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Raw normalized entries (unit diagonal, before regularization).
    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    /// Lower Cholesky factor of the regularized matrix.
    pub fn chol(&self) -> &DMatrix<f64> {
        &self.chol
    }

    pub fn jitter_applied(&self) -> f64 {
        self.jitter_applied
    }

    pub fn clipped(&self) -> bool {
        self.clipped
    }

    /// Correlation sub-matrix for a subset of coordinates, re-regularized.
    pub fn submatrix(&self, idx: &[usize]) -> Result<Self> {
        let m = idx.len();
        if m == 0 {
            return Err(Error::InvalidCovariance("empty index set".into()));
        }
        for &i in idx {
            if i >= self.dim {
                return Err(Error::DimensionMismatch {
                    expected: self.dim,
                    got: i,
                });
            }
        }
        let sub = DMatrix::from_fn(m, m, |r, c| self.entries[(idx[r], idx[c])]);
        Self::from_correlation(sub)
    }

    /// Reorder coordinates by the given permutation, re-regularized.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: perm.len(),
            });
        }
        self.submatrix(perm)
    }
}

/// Cholesky that rejects non-finite or non-positive pivots. nalgebra's
/// decomposition can emit NaN columns on exactly-singular input, so the
/// factor is checked before acceptance.
fn try_cholesky(m: &DMatrix<f64>) -> Option<DMatrix<f64>> {
    let chol = nalgebra::Cholesky::new(m.clone())?;
    let l = chol.unpack();
    let n = l.nrows();
    for i in 0..n {
        if !(l[(i, i)] > 0.0) || !l[(i, i)].is_finite() {
            return None;
        }
        for j in 0..=i {
            if !l[(i, j)].is_finite() {
                return None;
            }
        }
    }
    Some(l)
}

/// Build the copula correlation matrix for a port grid: Jakes covariance with
/// variance `omega`, normalized and regularized.
pub fn grid_correlation(grid: &PortGrid, omega: f64) -> Result<CorrelationMatrix> {
    let cov = jakes_covariance(grid, omega)?;
    CorrelationMatrix::from_covariance(&cov)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn index_map_corners_and_round_trip() {
        let g = PortGrid::new(2, 2, 1.0, 1.0).unwrap();
        assert_eq!(port_index_map(&g, 1).unwrap(), (1, 1));
        assert_eq!(port_index_map(&g, 4).unwrap(), (2, 2));

        let g = PortGrid::new(3, 5, 1.0, 1.0).unwrap();
        assert_eq!(port_index_map(&g, 7).unwrap(), (2, 2));
        for k in 1..=15 {
            let (a, b) = port_index_map(&g, k).unwrap();
            assert_eq!(port_flat_index(&g, a, b).unwrap(), k);
        }
        assert!(port_index_map(&g, 0).is_err());
        assert!(port_index_map(&g, 16).is_err());
    }

    #[test]
    fn grid_invariants() {
        assert!(PortGrid::new(0, 2, 1.0, 1.0).is_err());
        assert!(PortGrid::new(2, 2, 0.0, 1.0).is_err());
        // Single-port axis may have zero extent.
        let g = PortGrid::new(1, 4, 0.0, 2.0).unwrap();
        assert_eq!(g.total_ports(), 4);
        assert_abs_diff_eq!(g.area(), 0.0);
    }

    #[test]
    fn bessel_limit_and_zero() {
        assert_eq!(spherical_bessel_j0(0.0), 1.0);
        assert!(spherical_bessel_j0(std::f64::consts::PI).abs() < 1e-15);
        // Taylor-series oracle near zero.
        let t = 1e-6;
        let expected = 1.0 - t * t / 6.0 + t * t * t * t / 120.0;
        assert_eq!(spherical_bessel_j0(t), expected);
    }

    #[test]
    fn jakes_entries() {
        let g = PortGrid::new(1, 1, 0.0, 0.0).unwrap();
        let m = jakes_covariance(&g, 1.0).unwrap();
        assert_eq!(m[(0, 0)], 1.0);

        // Two ports half a wavelength apart sit on the first sinc zero.
        let g = PortGrid::new(2, 1, 0.5, 0.0).unwrap();
        let m = jakes_covariance(&g, 1.0).unwrap();
        assert!(m[(0, 1)].abs() < 1e-15);

        // Corner-to-opposite-corner of a 2x2 grid on 1x1 wavelengths,
        // j0(2 pi sqrt(2)) frozen from a scalar calculator.
        let g = PortGrid::new(2, 2, 1.0, 1.0).unwrap();
        let m = jakes_covariance(&g, 1.0).unwrap();
        assert_abs_diff_eq!(m[(0, 3)], 0.05776523985682892, epsilon = 1e-15);
        // Distance symmetry: equal displacement gives equal entries.
        assert_abs_diff_eq!(m[(0, 1)], m[(2, 3)], epsilon = 1e-16);
        assert_abs_diff_eq!(m[(0, 2)], m[(1, 3)], epsilon = 1e-16);
    }

    #[test]
    fn correlation_identity_needs_no_jitter() {
        let cov = DMatrix::identity(4, 4);
        let c = CorrelationMatrix::from_covariance(&cov).unwrap();
        assert_eq!(c.jitter_applied(), 0.0);
        assert!(!c.clipped());
        assert_eq!(c.entries(), &DMatrix::identity(4, 4));
    }

    #[test]
    fn rank_one_covariance_requires_jitter() {
        let cov = DMatrix::from_element(3, 3, 1.0);
        let c = CorrelationMatrix::from_covariance(&cov).unwrap();
        assert!(c.jitter_applied() > 0.0);
        let l = c.chol();
        let rebuilt = l * l.transpose();
        let mut shifted = c.entries().clone();
        for i in 0..3 {
            shifted[(i, i)] += c.jitter_applied();
        }
        assert!((rebuilt - shifted).norm() < 1e-10);
    }

    #[test]
    fn jakes_5x5_grid_nearly_positive_definite() {
        let g = PortGrid::new(5, 5, 1.0, 1.0).unwrap();
        let cov = jakes_covariance(&g, 1.0).unwrap();
        let c = CorrelationMatrix::from_covariance(&cov).unwrap();
        assert!(c.jitter_applied() <= 1e-8, "jitter {}", c.jitter_applied());
        // Eigenvalue oracle on the raw matrix.
        let min_eig = SymmetricEigen::new(cov)
            .eigenvalues
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min);
        assert!(min_eig > -1e-10, "min eigenvalue {min_eig}");
    }

    #[test]
    fn chol_reconstructs_regularized_matrix() {
        let g = PortGrid::new(4, 4, 1.5, 1.5).unwrap();
        let c = grid_correlation(&g, 1.0).unwrap();
        let l = c.chol();
        let mut target = c.entries().clone();
        for i in 0..c.dim() {
            target[(i, i)] += c.jitter_applied();
        }
        assert!(
            c.clipped() || (l * l.transpose() - target).norm() < 1e-10,
            "Frobenius misfit"
        );
    }

    #[test]
    fn wide_aperture_decorrelates() {
        // Remark-4-style limit: growing W at fixed K drives off-diagonals to 0.
        let g = PortGrid::new(4, 4, 100.0, 100.0).unwrap();
        let c = grid_correlation(&g, 1.0).unwrap();
        let mut max_off = 0.0_f64;
        for i in 0..c.dim() {
            for j in 0..i {
                max_off = max_off.max(c.entries()[(i, j)].abs());
            }
        }
        assert!(max_off <= 0.05, "max off-diagonal {max_off}");
    }

    #[test]
    fn dense_grid_correlates_neighbors() {
        // Remark-5-style limit: growing K at fixed W drives neighbor
        // correlation toward 1. Entry check only; no factorization needed.
        let g = PortGrid::new(50, 50, 1.0, 1.0).unwrap();
        let cov = jakes_covariance(&g, 1.0).unwrap();
        let a = port_flat_index(&g, 1, 1).unwrap() - 1;
        let b = port_flat_index(&g, 1, 2).unwrap() - 1;
        assert!(cov[(a, b)] >= 0.99, "adjacent correlation {}", cov[(a, b)]);
    }

    #[test]
    fn out_of_range_entry_rejected() {
        let mut cov = DMatrix::identity(2, 2);
        cov[(0, 1)] = 1.5;
        cov[(1, 0)] = 1.5;
        match CorrelationMatrix::from_covariance(&cov) {
            Err(Error::CorrelationEntryOutOfRange { value, .. }) => {
                assert_abs_diff_eq!(value, 1.5)
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn submatrix_selects_entries() {
        let g = PortGrid::new(2, 2, 1.0, 1.0).unwrap();
        let c = grid_correlation(&g, 1.0).unwrap();
        let s = c.submatrix(&[0, 3]).unwrap();
        assert_eq!(s.dim(), 2);
        assert_abs_diff_eq!(s.entries()[(0, 1)], c.entries()[(0, 3)]);
    }
}
