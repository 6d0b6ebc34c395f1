use serde::Serialize;

use crate::{Error, Real, Result};

/// Node counts and tolerance for the nested fixed-node quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureConfig {
    pub outer_nodes: usize,
    pub inner_nodes: usize,
    /// Largest change tolerated when every node count is doubled.
    pub abs_tol: f64,
    /// Re-evaluate with doubled node counts and fail if the result moves
    /// by `abs_tol` or more.
    pub self_check: bool,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            outer_nodes: 128,
            inner_nodes: 128,
            abs_tol: 1e-6,
            self_check: true,
        }
    }
}

impl QuadratureConfig {
    pub const MIN_NODES: usize = 8;

    pub fn validate(&self) -> Result<()> {
        if self.outer_nodes < Self::MIN_NODES || self.inner_nodes < Self::MIN_NODES {
            return Err(Error::InvalidArgument(format!(
                "quadrature needs at least {} nodes per level",
                Self::MIN_NODES
            )));
        }
        if !(self.abs_tol > 0.0) {
            return Err(Error::NonPositive("abs_tol"));
        }
        Ok(())
    }

    pub fn doubled(&self) -> Self {
        Self {
            outer_nodes: 2 * self.outer_nodes,
            inner_nodes: 2 * self.inner_nodes,
            ..*self
        }
    }

    pub fn without_self_check(self) -> Self {
        Self {
            self_check: false,
            ..self
        }
    }
}

/// Gauss-Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussLegendre<T> {
    nodes: Vec<T>,
    weights: Vec<T>,
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

impl<T: Real> GaussLegendre<T> {
    /// Builds an `n`-point rule; roots are polished by Newton iteration in
    /// `f64` and then converted.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre needs at least one node");
        if n == 1 {
            return Self {
                nodes: vec![T::zero()],
                weights: vec![T::lit(2.0)],
            };
        }
        let mut nodes = vec![T::zero(); n];
        let mut weights = vec![T::zero(); n];
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            dp = if d.is_finite() { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            // ascending order: index i holds -x, its mirror holds +x
            nodes[i] = T::lit(-x);
            nodes[n - 1 - i] = T::lit(x);
            weights[i] = T::lit(w);
            weights[n - 1 - i] = T::lit(w);
        }
        if n % 2 == 1 {
            nodes[n / 2] = T::zero();
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nodes and weights mapped onto `[a, b]`.
    pub fn mapped(&self, a: T, b: T) -> impl Iterator<Item = (T, T)> + '_ {
        let half = (b - a) / T::lit(2.0);
        let mid = (a + b) / T::lit(2.0);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (mid + half * x, half * w))
    }

    pub fn integrate<F: FnMut(T) -> T>(&self, a: T, b: T, mut f: F) -> T {
        self.mapped(a, b).map(|(x, w)| w * f(x)).sum()
    }
}
