//! Analytical secrecy metrics for planar fluid-antenna wiretap channels under
//! correlated Rayleigh fading, with an independent Monte Carlo simulator for
//! cross-validation.
//!
//! The crate is organized around the pipeline:
//!
//! 1. [`geometry`] builds the Jakes spatial correlation of the port grid and
//!    its regularized Cholesky factor.
//! 2. [`copula`] evaluates the Gaussian-copula CDF/density and the resulting
//!    best-port channel distributions, backed by the randomized multivariate
//!    normal CDF estimator in [`mvn`].
//! 3. [`metrics`] computes the average secrecy capacity, secrecy outage
//!    probability and secrecy energy efficiency through Gauss-Laguerre
//!    quadrature ([`quadrature`]).
//! 4. [`montecarlo`] estimates the same metrics by channel simulation.
//! 5. [`config`] and [`sweep`] drive everything from flat config files for
//!    the `fas-secrecy` command-line tool.

pub mod config;
pub mod copula;
pub mod error;
pub mod geometry;
pub mod marginal;
pub mod metrics;
pub mod montecarlo;
pub mod mvn;
pub mod normal;
pub mod quadrature;
pub(crate) mod seeding;
pub mod sweep;

pub use config::{load_config, LoadedConfig, SweepAxis, SweepSpec};
pub use error::{Error, Result};
pub use geometry::{CorrelationMatrix, PortGrid};
pub use marginal::MarginalModel;
pub use metrics::{Channel, MetricResult, NodeParams, NodeRole, PowerModel, SecrecyScenario};
pub use montecarlo::McEstimate;
pub use mvn::MvnEstimate;
pub use quadrature::{gauss_laguerre_rule, GaussLaguerreRule};
