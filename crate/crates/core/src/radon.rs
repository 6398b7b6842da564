//! Forward Radon projections: the closed form for ridge polynomials (Marr's
//! formula) and independent Gauss-Legendre oracles for arbitrary integrands.

use crate::chebyshev::{eval_u, eval_ridge, ridge_angle, Angle, DiskPoint};
use crate::error::{Error, Result};
use crate::quadrature::{integrate_disk, GaussLegendre};
use crate::ridge::RidgeRepresentation;

/// A chord of the unit disk: the segment of the line through
/// `(t cos theta, t sin theta)` perpendicular to `(cos theta, sin theta)`.
#[derive(Clone, Copy, Debug)]
pub struct Chord {
    theta: Angle,
    t: f64,
}

impl Chord {
    /// Requires `|t| < 1`; the endpoint chords are degenerate.
    pub fn new(theta: Angle, t: f64) -> Result<Chord> {
        if !t.is_finite() || t.abs() >= 1.0 {
            return Err(Error::ChordParameterOutOfRange { t });
        }
        Ok(Chord { theta, t })
    }

    pub fn theta(&self) -> Angle {
        self.theta
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    /// Half-length of the chord, `sqrt(1 - t^2)`.
    pub fn half_length(&self) -> f64 {
        (1.0 - self.t * self.t).sqrt()
    }

    /// The point at arc parameter `s in [-half_length, half_length]`.
    pub fn point_at(&self, s: f64) -> DiskPoint {
        let (sin_th, cos_th) = self.theta.radians().sin_cos();
        DiskPoint::new(
            self.t * cos_th - s * sin_th,
            self.t * sin_th + s * cos_th,
        )
    }
}

/// The Radon projection of the ridge polynomial `U_k(theta; .)` along the
/// chord `(phi, t)`:
/// `2/(k+1) * sqrt(1-t^2) * U_k(t) * U_k(cos(phi - theta))`.
pub fn marr_projection(k: usize, theta: Angle, phi: Angle, t: f64) -> Result<f64> {
    if !t.is_finite() || t.abs() >= 1.0 {
        return Err(Error::ChordParameterOutOfRange { t });
    }
    let delta = phi.radians() - theta.radians();
    Ok(2.0 / (k + 1) as f64 * (1.0 - t * t).sqrt() * eval_u(k, t) * eval_u(k, delta.cos()))
}

/// The Radon projection of a full ridge representation along `(phi, t)`,
/// summing the closed form over all basis terms.
pub fn project_ridge_poly(rep: &RidgeRepresentation, phi: Angle, t: f64) -> Result<f64> {
    if !t.is_finite() || t.abs() >= 1.0 {
        return Err(Error::ChordParameterOutOfRange { t });
    }
    let mut total = 0.0;
    for k in 0..=rep.degree() {
        let mut angular = 0.0;
        for j in 0..=k {
            let c = rep.get(j, k);
            if c == 0.0 {
                continue;
            }
            let delta = phi.radians() - ridge_angle(j, k).radians();
            angular += c * eval_u(k, delta.cos());
        }
        if angular != 0.0 {
            total += 2.0 / (k + 1) as f64 * eval_u(k, t) * angular;
        }
    }
    Ok((1.0 - t * t).sqrt() * total)
}

/// Gauss-Legendre approximation of the integral of `f` along the chord,
/// exact for polynomial integrands of total degree `<= 2*order - 1`.
pub fn project_quadrature<F: Fn(f64, f64) -> f64>(f: F, chord: &Chord, order: usize) -> f64 {
    assert!(order >= 1);
    let rule = GaussLegendre::new(order);
    let h = chord.half_length();
    rule.integrate(|s| {
        let p = chord.point_at(s * h);
        f(p.x, p.y)
    }) * h
}

/// Quadrature order that is exact for a polynomial chord integrand of the
/// given total degree, with margin.
pub fn default_chord_order(degree: usize) -> usize {
    (degree + 2) / 2 + 2
}

/// Numerically evaluates `1/pi * integral over the disk of
/// U_k(theta; x) U_k(phi; x) dx` by the product rule. For `k <= 15` the
/// result matches `U_k(cos(phi - theta))/(k+1)` within `1e-9`.
pub fn disk_orthogonality_oracle(k: usize, theta: Angle, phi: Angle, order: usize) -> f64 {
    // the product rule must cover total degree 2k; `order` scales the request
    let degree = (2 * k).max(order);
    integrate_disk(degree, |x, y| {
        let p = DiskPoint::new(x, y);
        eval_ridge(k, theta, p) * eval_ridge(k, phi, p)
    }) / std::f64::consts::PI
}
