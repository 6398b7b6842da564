//! Gauss-Legendre rules on the interval and a product rule on the unit disk.

use std::f64::consts::PI;

/// Convergence tolerance of the Newton iteration for Legendre zeros.
const NEWTON_TOLERANCE: f64 = 1e-15;

/// A Gauss-Legendre rule on `[-1, 1]` with `order` nodes, exact for
/// polynomials of degree `2*order - 1`.
#[derive(Clone, Debug)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

/// `P_n(x)` and `P_n'(x)` by the Legendre recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 1.0;
    let mut p = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let next = ((2.0 * kf - 1.0) * x * p - (kf - 1.0) * p_prev) / kf;
        p_prev = p;
        p = next;
    }
    let dp = n as f64 * (x * p - p_prev) / (x * x - 1.0);
    (p, dp)
}

impl GaussLegendre {
    /// Builds the rule by Newton iteration on the Legendre polynomial.
    pub fn new(order: usize) -> GaussLegendre {
        assert!(order >= 1, "quadrature order must be positive");
        let n = order;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            // Tricomi-style initial guess for the i-th zero.
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            if n == 1 {
                x = 0.0;
            }
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() <= NEWTON_TOLERANCE {
                    let (p2, d2) = legendre_with_derivative(n, x);
                    dp = d2;
                    x -= p2 / d2;
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x.abs();
            nodes[n - 1 - i] = x.abs();
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if !n.is_multiple_of(2) {
            nodes[n / 2] = 0.0;
            let (_, d) = legendre_with_derivative(n, 0.0);
            weights[n / 2] = 2.0 / (d * d);
        }
        GaussLegendre { nodes, weights }
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

    /// Integrates `f` over `[-1, 1]`.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    /// Integrates `f` over `[a, b]`.
    pub fn integrate_on<F: Fn(f64) -> f64>(&self, a: f64, b: f64, f: F) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        half * self.integrate(|x| f(mid + half * x))
    }
}

/// Integrates `f` over the unit disk with a product rule that is exact for
/// polynomial integrands of total degree `<= degree`.
///
/// The radial direction substitutes `u = r^2`, which turns the radial factor
/// of an even-harmonic term into a polynomial in `u`; a Gauss-Legendre rule
/// handles it exactly. The angular direction uses the equispaced rule, exact
/// for trigonometric polynomials of degree below the point count, and the
/// odd-harmonic terms (the only ones not polynomial in `u`) integrate to zero
/// over the full circle.
pub fn integrate_disk<F: Fn(f64, f64) -> f64>(degree: usize, f: F) -> f64 {
    let radial = GaussLegendre::new(degree / 2 + 2);
    let angular = 2 * degree + 3;
    let dtheta = 2.0 * PI / angular as f64;
    let mut total = 0.0;
    for (&xu, &wu) in radial.nodes().iter().zip(radial.weights()) {
        let u = 0.5 * (xu + 1.0);
        let r = u.sqrt();
        let mut ring = 0.0;
        for i in 0..angular {
            let a = dtheta * i as f64;
            ring += f(r * a.cos(), r * a.sin());
        }
        total += 0.5 * wu * ring * dtheta;
    }
    0.5 * total
}
