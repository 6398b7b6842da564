//! Chebyshev polynomials of the second kind, their zeros, and ridge polynomials.

use crate::dd::Dd;

use std::f64::consts::{PI, TAU};

/// Absolute tolerance for angle comparison. All angles handled by this crate
/// are exact rational multiples of pi generated internally, so a tight fixed
/// tolerance is appropriate.
pub const ANGLE_TOLERANCE: f64 = 1e-12;

/// A direction angle in radians, reduced to `[0, 2*pi)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Angle(f64);

impl Angle {
    /// Wraps `radians` into `[0, 2*pi)`.
    pub fn new(radians: f64) -> Angle {
        let mut r = radians.rem_euclid(TAU);
        if r >= TAU {
            r = 0.0;
        }
        Angle(r)
    }

    /// The reduced value in radians.
    #[inline]
    pub fn radians(self) -> f64 {
        self.0
    }

    /// Equality up to [`ANGLE_TOLERANCE`], aware of the wrap at `2*pi`.
    pub fn approx_eq(self, other: Angle) -> bool {
        let d = (self.0 - other.0).abs();
        d <= ANGLE_TOLERANCE || (TAU - d) <= ANGLE_TOLERANCE
    }
}

impl From<f64> for Angle {
    fn from(radians: f64) -> Angle {
        Angle::new(radians)
    }
}

/// A point of the plane, used as an evaluation point on the closed unit disk.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiskPoint {
    pub x: f64,
    pub y: f64,
}

impl DiskPoint {
    pub fn new(x: f64, y: f64) -> DiskPoint {
        DiskPoint { x, y }
    }

    /// Whether the point lies on the disk within the validation slack.
    pub fn on_disk(&self) -> bool {
        self.x * self.x + self.y * self.y <= 1.0 + 1e-12
    }
}

/// The angle `theta_{j,k} = j*pi/(k+1)` attached to the ridge basis element
/// of degree `k` and index `j`.
pub fn ridge_angle(j: usize, k: usize) -> Angle {
    Angle::new(j as f64 * PI / (k + 1) as f64)
}

/// Evaluates `U_k(t)` by the three-term recurrence
/// `U_{k+1}(t) = 2 t U_k(t) - U_{k-1}(t)` with `U_0 = 1`, `U_1 = 2t`.
///
/// Valid for every real `t`; outside `[-1, 1]` this is the polynomial
/// extension.
pub fn eval_u(k: usize, t: f64) -> f64 {
    if k == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 2.0 * t;
    for _ in 2..=k {
        let next = 2.0 * t * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Same recurrence carried in double-double precision.
pub(crate) fn eval_u_dd(k: usize, t: Dd) -> Dd {
    if k == 0 {
        return Dd::ONE;
    }
    let two_t = t.mul_f64(2.0);
    let mut prev = Dd::ONE;
    let mut cur = two_t;
    for _ in 2..=k {
        let next = two_t.mul(cur).sub(prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// The `k` zeros of `U_k`: `cos(j*pi/(k+1))` for `j = 1..=k`, strictly
/// decreasing.
pub fn u_zeros(k: usize) -> Vec<f64> {
    assert!(k >= 1, "u_zeros requires k >= 1");
    (1..=k).map(|j| (j as f64 * PI / (k + 1) as f64).cos()).collect()
}

/// Evaluates the ridge polynomial `U_k(theta; p) = U_k(x cos theta + y sin theta)`.
pub fn eval_ridge(k: usize, theta: Angle, p: DiskPoint) -> f64 {
    let th = theta.radians();
    eval_u(k, p.x * th.cos() + p.y * th.sin())
}
