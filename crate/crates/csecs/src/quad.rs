//! Gauss-Hermite quadrature nodes and weights (weight function `e^{-x^2}` on
//! the real line), computed by the Golub-Welsch eigenvalue method.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::Mutex;
use std::sync::OnceLock;

/// A one-dimensional Gauss-Hermite rule of the given order.
#[derive(Debug, Clone)]
pub struct GaussHermite {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussHermite {
    /// Builds (or fetches from a process-wide cache) the rule of `order`
    /// points. An order-n rule integrates `e^{-x^2}` times polynomials of
    /// degree `2n - 1` exactly.
    pub fn new(order: usize) -> Self {
        assert!(order >= 1, "quadrature order must be at least 1");
        static CACHE: OnceLock<Mutex<HashMap<usize, GaussHermite>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(rule) = cache.lock().unwrap().get(&order) {
            return rule.clone();
        }
        let rule = Self::compute(order);
        cache.lock().unwrap().insert(order, rule.clone());
        rule
    }

    /// Golub-Welsch: the Jacobi matrix for Hermite polynomials is symmetric
    /// tridiagonal with zero diagonal and off-diagonal `sqrt(k/2)`; its
    /// eigenvalues are the nodes and the squared first eigenvector components
    /// (times `sqrt(pi)`) the weights.
    fn compute(order: usize) -> Self {
        let mut jacobi = nalgebra::DMatrix::<f64>::zeros(order, order);
        for k in 1..order {
            let off = ((k as f64) / 2.0).sqrt();
            jacobi[(k - 1, k)] = off;
            jacobi[(k, k - 1)] = off;
        }
        let eigen = jacobi.symmetric_eigen();
        let mut pairs: Vec<(f64, f64)> = eigen
            .eigenvalues
            .iter()
            .enumerate()
            .map(|(i, &x)| (x, eigen.eigenvectors[(0, i)].powi(2) * PI.sqrt()))
            .collect();
        pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        // Enforce the exact +/- symmetry of the rule so mirrored node pairs
        // can be matched without round-off slack.
        let n = pairs.len();
        for i in 0..n / 2 {
            let j = n - 1 - i;
            let x = 0.5 * (pairs[j].0 - pairs[i].0);
            let w = 0.5 * (pairs[i].1 + pairs[j].1);
            pairs[i] = (-x, w);
            pairs[j] = (x, w);
        }
        if n % 2 == 1 {
            pairs[n / 2].0 = 0.0;
        }
        let (nodes, weights) = pairs.into_iter().unzip();
        GaussHermite { nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Integrates `e^{-x^2} f(x)` over the real line.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}
