//! Gauss-Laguerre quadrature: rule generation and exponential-weight integrals.
//!
//! An order-n rule integrates polynomials of degree up to 2n-1 exactly against
//! the weight e^{-x} on [0, inf). Nodes are the roots of the Laguerre
//! polynomial L_n, found by Newton iteration from the classical initial
//! guesses; weights use the Abramowitz-Stegun form
//! w_i = x_i / ((n+1)^2 L_{n+1}(x_i)^2), which sums to 1.

use crate::error::{Error, Result};

/// Largest supported rule order.
pub const MAX_ORDER: usize = 128;

const NEWTON_MAX_ITER: usize = 200;
const NEWTON_TOL: f64 = 1e-14;

/// An immutable Gauss-Laguerre rule: strictly increasing positive nodes and
/// positive weights of the same length.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussLaguerreRule {
    order: usize,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

/// Evaluate the Laguerre polynomial L_n(x) by the three-term recurrence
/// L_0 = 1, L_1 = 1 - x, (k+1) L_{k+1} = (2k+1-x) L_k - k L_{k-1}.
pub fn laguerre_eval(n: usize, x: f64) -> f64 {
    match n {
        0 => 1.0,
        1 => 1.0 - x,
        _ => {
            let mut prev = 1.0;
            let mut cur = 1.0 - x;
            for k in 1..n {
                let kf = k as f64;
                let next = ((2.0 * kf + 1.0 - x) * cur - kf * prev) / (kf + 1.0);
                prev = cur;
                cur = next;
            }
            cur
        }
    }
}

/// L_n(x) together with L_{n-1}(x), from which the derivative follows as
/// L_n'(x) = n (L_n(x) - L_{n-1}(x)) / x.
fn laguerre_pair(n: usize, x: f64) -> (f64, f64) {
    debug_assert!(n >= 1);
    let mut prev = 1.0;
    let mut cur = 1.0 - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 - x) * cur - kf * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    (cur, prev)
}

/// Construct the order-n rule. Errors if `order` is outside 1..=128 or a root
/// fails to converge (the error names the failing root index).
pub fn gauss_laguerre_rule(order: usize) -> Result<GaussLaguerreRule> {
    if order < 1 || order > MAX_ORDER {
        return Err(Error::InvalidOrder(order));
    }
    let n = order;
    let nf = n as f64;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let mut z = 0.0_f64;

    for i in 0..n {
        // Standard asymptotic initial guesses per root index.
        if i == 0 {
            z = 3.0 / (1.0 + 2.4 * nf);
        } else if i == 1 {
            z += 15.0 / (1.0 + 2.5 * nf);
        } else {
            let ai = (i - 1) as f64;
            z += (1.0 + 2.55 * ai) / (1.9 * ai) * (z - nodes[i - 2]);
        }

        let mut converged = false;
        for _ in 0..NEWTON_MAX_ITER {
            let (p, p_prev) = laguerre_pair(n, z);
            let dp = nf * (p - p_prev) / z;
            let step = p / dp;
            z -= step;
            if step.abs() <= NEWTON_TOL * z.max(1.0) {
                converged = true;
                break;
            }
        }
        if !converged || !z.is_finite() {
            return Err(Error::RootNotConverged { order, index: i });
        }
        nodes[i] = z;
        let lnp1 = laguerre_eval(n + 1, z);
        weights[i] = z / (((nf + 1.0) * lnp1) * ((nf + 1.0) * lnp1));
    }

    for i in 0..n {
        if nodes[i] <= 0.0 || weights[i] <= 0.0 || (i > 0 && nodes[i] <= nodes[i - 1]) {
            return Err(Error::RootNotConverged { order, index: i });
        }
    }

    Ok(GaussLaguerreRule {
        order,
        nodes,
        weights,
    })
}

impl GaussLaguerreRule {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Approximate integral of f(x) e^{-x} over [0, inf) as sum w_i f(x_i).
    /// Errors if f is non-finite at a node, identifying the node.
    pub fn integrate_exp_weighted<F: FnMut(f64) -> f64>(&self, mut f: F) -> Result<f64> {
        let mut acc = 0.0;
        for (i, (&x, &w)) in self.nodes.iter().zip(self.weights.iter()).enumerate() {
            let v = f(x);
            if !v.is_finite() {
                return Err(Error::NonFiniteIntegrand { index: i, node: x });
            }
            acc += w * v;
        }
        Ok(acc)
    }
}

/// Free-function form of [`GaussLaguerreRule::integrate_exp_weighted`].
pub fn integrate_exp_weighted<F: FnMut(f64) -> f64>(rule: &GaussLaguerreRule, f: F) -> Result<f64> {
    rule.integrate_exp_weighted(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn laguerre_low_orders() {
        assert_eq!(laguerre_eval(0, 3.7), 1.0);
        assert_eq!(laguerre_eval(1, 1.0), 0.0);
        // L_2(x) = (x^2 - 4x + 2)/2 has a root at 2 + sqrt(2).
        assert!(laguerre_eval(2, 2.0 + std::f64::consts::SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn order_one_rule() {
        let rule = gauss_laguerre_rule(1).unwrap();
        assert_abs_diff_eq!(rule.nodes()[0], 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(rule.weights()[0], 1.0, epsilon = 1e-14);
    }

    #[test]
    fn order_two_rule_matches_closed_form() {
        let rule = gauss_laguerre_rule(2).unwrap();
        let s = std::f64::consts::SQRT_2;
        assert_abs_diff_eq!(rule.nodes()[0], 2.0 - s, epsilon = 1e-12);
        assert_abs_diff_eq!(rule.nodes()[1], 2.0 + s, epsilon = 1e-12);
        assert_abs_diff_eq!(rule.weights()[0], (2.0 + s) / 4.0, epsilon = 1e-12);
        assert_abs_diff_eq!(rule.weights()[1], (2.0 - s) / 4.0, epsilon = 1e-12);
        let wsum: f64 = rule.weights().iter().sum();
        assert_abs_diff_eq!(wsum, 1.0, epsilon = 1e-12);
        // Degree <= 3 exactness: moments of e^{-x} are k!.
        for (k, fact) in [(0u32, 1.0), (1, 1.0), (2, 2.0), (3, 6.0)] {
            let v = rule.integrate_exp_weighted(|x| x.powi(k as i32)).unwrap();
            assert_abs_diff_eq!(v, fact, epsilon = 1e-12 * fact);
        }
    }

    #[test]
    fn weight_sums_and_node_ordering() {
        for order in [1usize, 2, 5, 16, 32, 64, 128] {
            let rule = gauss_laguerre_rule(order).unwrap();
            let wsum: f64 = rule.weights().iter().sum();
            assert_abs_diff_eq!(wsum, 1.0, epsilon = 1e-12);
            assert!(rule.nodes().windows(2).all(|p| p[0] < p[1]));
            assert!(rule.nodes().iter().all(|&x| x > 0.0));
            assert!(rule.weights().iter().all(|&w| w > 0.0));
        }
    }

    #[test]
    fn polynomial_exactness_up_to_degree_2n_minus_1() {
        for order in 1..=20usize {
            let rule = gauss_laguerre_rule(order).unwrap();
            let mut fact = 1.0_f64;
            for k in 0..=(2 * order - 1) {
                if k > 0 {
                    fact *= k as f64;
                }
                let v = rule
                    .integrate_exp_weighted(|x| x.powi(k as i32))
                    .unwrap();
                assert!(
                    ((v - fact) / fact).abs() < 1e-9,
                    "order {order} degree {k}: {v} vs {fact}"
                );
            }
        }
    }

    #[test]
    fn regeneration_is_bit_identical() {
        let a = gauss_laguerre_rule(48).unwrap();
        let b = gauss_laguerre_rule(48).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn smooth_integrand_vs_adaptive_value() {
        // int_0^inf e^{-x}/(1+x) dx = e * E_1(1), frozen from an independent
        // adaptive-quadrature computation.
        let expected = 0.596347362323194_f64;
        let rule = gauss_laguerre_rule(32).unwrap();
        let v = rule.integrate_exp_weighted(|x| 1.0 / (1.0 + x)).unwrap();
        assert!((v - expected).abs() < 1e-6, "{v}");
    }

    #[test]
    fn monotone_refinement() {
        let reference = gauss_laguerre_rule(64).unwrap();
        let coarse = gauss_laguerre_rule(8).unwrap();
        let mid = gauss_laguerre_rule(32).unwrap();
        for f in [
            |x: f64| 1.0 / (1.0 + x),
            |x: f64| (-0.5 * x).exp(),
            |x: f64| (1.0 + x).sqrt(),
        ] {
            let r = reference.integrate_exp_weighted(f).unwrap();
            let c = coarse.integrate_exp_weighted(f).unwrap();
            let m = mid.integrate_exp_weighted(f).unwrap();
            assert!((m - r).abs() <= (c - r).abs());
        }
    }

    #[test]
    fn invalid_orders_rejected() {
        assert_eq!(gauss_laguerre_rule(0), Err(Error::InvalidOrder(0)));
        assert_eq!(gauss_laguerre_rule(129), Err(Error::InvalidOrder(129)));
    }

    #[test]
    fn non_finite_integrand_names_node() {
        let rule = gauss_laguerre_rule(4).unwrap();
        let pole = rule.nodes()[2];
        let err = rule
            .integrate_exp_weighted(|x| 1.0 / (x - pole))
            .unwrap_err();
        match err {
            Error::NonFiniteIntegrand { index, .. } => assert_eq!(index, 2),
            other => panic!("unexpected error {other:?}"),
        }
    }
}
