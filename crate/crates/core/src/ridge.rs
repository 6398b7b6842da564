//! The ridge Chebyshev basis: polynomial representation, the angular Fourier
//! profile of its normalized Radon projection, and the conversions between
//! the two coefficient sets.
//!
//! A degree-`n` polynomial is stored as coefficients `c_{j,k}` of the ridge
//! basis elements `U_k(theta_{j,k}; .)` with `theta_{j,k} = j*pi/(k+1)`,
//! `0 <= j <= k <= n`. The normalized projection
//! `R_phi(P; t)/sqrt(1-t^2)`, viewed as a function of the direction `phi`,
//! is a trigonometric polynomial whose coefficients `a_{j,k}`, `b_{j,k}`
//! (grouped by the Chebyshev degree `k` of the radial factor) form the
//! Fourier profile. Both carry exactly `(n+1)(n+2)/2` real degrees of
//! freedom and the maps between them are mutually inverse.

use crate::chebyshev::{eval_u, ridge_angle, DiskPoint};
use crate::error::{Error, Result};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use std::f64::consts::PI;

/// Number of coefficients of a degree-`n` representation.
pub fn coefficient_count(degree: usize) -> usize {
    (degree + 1) * (degree + 2) / 2
}

#[inline]
fn tri_index(j: usize, k: usize) -> usize {
    k * (k + 1) / 2 + j
}

/// A bivariate polynomial in the ridge Chebyshev basis.
#[derive(Clone, Debug, PartialEq)]
pub struct RidgeRepresentation {
    degree: usize,
    coeffs: Vec<f64>,
}

impl RidgeRepresentation {
    /// The zero polynomial of the given degree bound.
    pub fn zero(degree: usize) -> RidgeRepresentation {
        RidgeRepresentation {
            degree,
            coeffs: vec![0.0; coefficient_count(degree)],
        }
    }

    /// Builds from explicit `(j, k, c)` entries; every index pair
    /// `0 <= j <= k <= degree` must appear exactly once.
    pub fn from_entries(degree: usize, entries: &[(usize, usize, f64)]) -> Result<RidgeRepresentation> {
        let mut rep = RidgeRepresentation::zero(degree);
        let mut seen = vec![false; coefficient_count(degree)];
        for &(j, k, c) in entries {
            if k > degree || j > k {
                return Err(Error::Parse {
                    line: 0,
                    message: format!("coefficient index (j={j}, k={k}) outside degree {degree}"),
                });
            }
            if !c.is_finite() {
                return Err(Error::NonFinite {
                    context: format!("coefficient (j={j}, k={k})"),
                });
            }
            let idx = tri_index(j, k);
            if seen[idx] {
                return Err(Error::Parse {
                    line: 0,
                    message: format!("coefficient (j={j}, k={k}) given twice"),
                });
            }
            seen[idx] = true;
            rep.coeffs[idx] = c;
        }
        if !seen.iter().all(|&s| s) {
            return Err(Error::Parse {
                line: 0,
                message: format!(
                    "expected {} coefficients, got {}",
                    coefficient_count(degree),
                    seen.iter().filter(|&&s| s).count()
                ),
            });
        }
        Ok(rep)
    }

    /// Random representation with coefficients uniform in `[-1, 1]`, drawn
    /// from a seeded ChaCha8 stream for reproducibility.
    pub fn random(degree: usize, seed: u64) -> RidgeRepresentation {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut rep = RidgeRepresentation::zero(degree);
        for c in rep.coeffs.iter_mut() {
            *c = rng.gen_range(-1.0..=1.0);
        }
        rep
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.degree
    }

    #[inline]
    pub fn get(&self, j: usize, k: usize) -> f64 {
        debug_assert!(j <= k && k <= self.degree);
        self.coeffs[tri_index(j, k)]
    }

    #[inline]
    pub fn set(&mut self, j: usize, k: usize, v: f64) {
        debug_assert!(j <= k && k <= self.degree);
        self.coeffs[tri_index(j, k)] = v;
    }

    /// Iterates `(j, k, c)` in increasing `(k, j)` order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..=self.degree)
            .flat_map(move |k| (0..=k).map(move |j| (j, k, self.get(j, k))))
    }

    /// Largest absolute coefficient difference to `other`.
    pub fn max_coeff_distance(&self, other: &RidgeRepresentation) -> f64 {
        assert_eq!(self.degree, other.degree);
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Evaluates the polynomial at a point in the plane.
    pub fn eval(&self, p: DiskPoint) -> f64 {
        let mut total = 0.0;
        for k in 0..=self.degree {
            for j in 0..=k {
                let c = self.get(j, k);
                if c == 0.0 {
                    continue;
                }
                let th = ridge_angle(j, k).radians();
                total += c * eval_u(k, p.x * th.cos() + p.y * th.sin());
            }
        }
        total
    }
}

/// The angular Fourier coefficients of the normalized projection.
///
/// Even blocks carry `a_{0,2l}` for `0 <= l <= floor(n/2)` and
/// `(a_{j,2l}, b_{j,2l})` for `1 <= j <= l`; odd blocks carry
/// `(a_{j,2l-1}, b_{j,2l-1})` for `1 <= j <= l <= floor((n+1)/2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FourierProfile {
    degree: usize,
    /// `a0[l]` = a_{0,2l}
    a0: Vec<f64>,
    /// `even_a[l-1][j-1]` = a_{j,2l}, row length l
    even_a: Vec<Vec<f64>>,
    even_b: Vec<Vec<f64>>,
    /// `odd_a[l-1][j-1]` = a_{j,2l-1}, row length l
    odd_a: Vec<Vec<f64>>,
    odd_b: Vec<Vec<f64>>,
}

impl FourierProfile {
    pub fn zero(degree: usize) -> FourierProfile {
        let half_even = degree / 2;
        let half_odd = degree.div_ceil(2);
        FourierProfile {
            degree,
            a0: vec![0.0; half_even + 1],
            even_a: (1..=half_even).map(|l| vec![0.0; l]).collect(),
            even_b: (1..=half_even).map(|l| vec![0.0; l]).collect(),
            odd_a: (1..=half_odd).map(|l| vec![0.0; l]).collect(),
            odd_b: (1..=half_odd).map(|l| vec![0.0; l]).collect(),
        }
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Upper block index of the even part, `floor(n/2)`.
    pub fn half_even(&self) -> usize {
        self.degree / 2
    }

    /// Upper block index of the odd part, `floor((n+1)/2)`.
    pub fn half_odd(&self) -> usize {
        self.degree.div_ceil(2)
    }

    pub fn a0(&self, l: usize) -> f64 {
        self.a0[l]
    }

    pub fn set_a0(&mut self, l: usize, v: f64) {
        self.a0[l] = v;
    }

    /// `a_{j,2l}`, `1 <= j <= l`.
    pub fn a_even(&self, j: usize, l: usize) -> f64 {
        self.even_a[l - 1][j - 1]
    }

    pub fn set_a_even(&mut self, j: usize, l: usize, v: f64) {
        self.even_a[l - 1][j - 1] = v;
    }

    pub fn b_even(&self, j: usize, l: usize) -> f64 {
        self.even_b[l - 1][j - 1]
    }

    pub fn set_b_even(&mut self, j: usize, l: usize, v: f64) {
        self.even_b[l - 1][j - 1] = v;
    }

    /// `a_{j,2l-1}`, `1 <= j <= l`.
    pub fn a_odd(&self, j: usize, l: usize) -> f64 {
        self.odd_a[l - 1][j - 1]
    }

    pub fn set_a_odd(&mut self, j: usize, l: usize, v: f64) {
        self.odd_a[l - 1][j - 1] = v;
    }

    pub fn b_odd(&self, j: usize, l: usize) -> f64 {
        self.odd_b[l - 1][j - 1]
    }

    pub fn set_b_odd(&mut self, j: usize, l: usize, v: f64) {
        self.odd_b[l - 1][j - 1] = v;
    }

    /// Total number of stored real coefficients.
    pub fn dof(&self) -> usize {
        self.a0.len()
            + self.even_a.iter().map(Vec::len).sum::<usize>()
            + self.even_b.iter().map(Vec::len).sum::<usize>()
            + self.odd_a.iter().map(Vec::len).sum::<usize>()
            + self.odd_b.iter().map(Vec::len).sum::<usize>()
    }

    /// Largest absolute difference to `other` over all stored coefficients.
    pub fn max_distance(&self, other: &FourierProfile) -> f64 {
        assert_eq!(self.degree, other.degree);
        let mut worst: f64 = 0.0;
        for l in 0..=self.half_even() {
            worst = worst.max((self.a0(l) - other.a0(l)).abs());
            for j in 1..=l {
                worst = worst.max((self.a_even(j, l) - other.a_even(j, l)).abs());
                worst = worst.max((self.b_even(j, l) - other.b_even(j, l)).abs());
            }
        }
        for l in 1..=self.half_odd() {
            for j in 1..=l {
                worst = worst.max((self.a_odd(j, l) - other.a_odd(j, l)).abs());
                worst = worst.max((self.b_odd(j, l) - other.b_odd(j, l)).abs());
            }
        }
        worst
    }

    /// `A_idx(t)` of the harmonic decomposition of the normalized projection;
    /// `A_0` carries the constant term.
    pub fn profile_a(&self, idx: usize, t: f64) -> f64 {
        if idx == 0 {
            return (0..=self.half_even())
                .map(|l| self.a0(l) * eval_u(2 * l, t))
                .sum();
        }
        if idx.is_multiple_of(2) {
            let j = idx / 2;
            2.0 * (j..=self.half_even())
                .map(|l| self.a_even(j, l) * eval_u(2 * l, t))
                .sum::<f64>()
        } else {
            let j = idx.div_ceil(2);
            2.0 * (j..=self.half_odd())
                .map(|l| self.a_odd(j, l) * eval_u(2 * l - 1, t))
                .sum::<f64>()
        }
    }

    /// `B_idx(t)`; `B_0` is identically zero.
    pub fn profile_b(&self, idx: usize, t: f64) -> f64 {
        if idx == 0 {
            return 0.0;
        }
        if idx.is_multiple_of(2) {
            let j = idx / 2;
            2.0 * (j..=self.half_even())
                .map(|l| self.b_even(j, l) * eval_u(2 * l, t))
                .sum::<f64>()
        } else {
            let j = idx.div_ceil(2);
            2.0 * (j..=self.half_odd())
                .map(|l| self.b_odd(j, l) * eval_u(2 * l - 1, t))
                .sum::<f64>()
        }
    }

    /// The normalized projection `R_phi(P; t)/sqrt(1-t^2)` evaluated from the
    /// profile coefficients.
    pub fn normalized_projection(&self, phi: f64, t: f64) -> f64 {
        let mut total = self.profile_a(0, t);
        for idx in 1..=self.degree {
            total += self.profile_a(idx, t) * (idx as f64 * phi).cos()
                + self.profile_b(idx, t) * (idx as f64 * phi).sin();
        }
        total
    }
}

/// Ridge coefficients from a Fourier profile: the inverse relations
/// `c_{j,2l} = a_{0,2l}/2 + sum_k (a_{k,2l} cos 2k theta_{j,2l} + b_{k,2l} sin 2k theta_{j,2l})`
/// and
/// `c_{j,2l-1} = sum_k (a_{k,2l-1} cos (2k-1) theta_{j,2l-1} + b_{k,2l-1} sin (2k-1) theta_{j,2l-1})`.
pub fn profile_to_coefficients(profile: &FourierProfile) -> RidgeRepresentation {
    let n = profile.degree();
    let mut rep = RidgeRepresentation::zero(n);
    for l in 0..=profile.half_even() {
        let k_deg = 2 * l;
        for j in 0..=k_deg {
            let theta = j as f64 * PI / (k_deg + 1) as f64;
            let mut v = 0.5 * profile.a0(l);
            for k in 1..=l {
                let ang = 2.0 * k as f64 * theta;
                v += profile.a_even(k, l) * ang.cos() + profile.b_even(k, l) * ang.sin();
            }
            rep.set(j, k_deg, v);
        }
    }
    for l in 1..=profile.half_odd() {
        let k_deg = 2 * l - 1;
        for j in 0..=k_deg {
            let theta = j as f64 * PI / (k_deg + 1) as f64;
            let mut v = 0.0;
            for k in 1..=l {
                let ang = (2.0 * k as f64 - 1.0) * theta;
                v += profile.a_odd(k, l) * ang.cos() + profile.b_odd(k, l) * ang.sin();
            }
            rep.set(j, k_deg, v);
        }
    }
    rep
}

/// Fourier profile from ridge coefficients: the forward sums
/// `a_{j,2l} = 2/(2l+1) sum_k c_{k,2l} cos 2j theta_{k,2l}` (with the `j = 0`
/// instance giving `a_{0,2l}` itself) and
/// `a_{j,2l-1} = 1/l sum_k c_{k,2l-1} cos (2j-1) theta_{k,2l-1}`, plus the
/// sine counterparts.
pub fn coefficients_to_profile(rep: &RidgeRepresentation) -> FourierProfile {
    let n = rep.degree();
    let mut profile = FourierProfile::zero(n);
    for l in 0..=profile.half_even() {
        let k_deg = 2 * l;
        let scale = 2.0 / (k_deg + 1) as f64;
        let mut a0 = 0.0;
        for i in 0..=k_deg {
            a0 += rep.get(i, k_deg);
        }
        profile.set_a0(l, scale * a0);
        for j in 1..=l {
            let mut a = 0.0;
            let mut b = 0.0;
            for i in 0..=k_deg {
                let ang = 2.0 * j as f64 * (i as f64 * PI / (k_deg + 1) as f64);
                a += rep.get(i, k_deg) * ang.cos();
                b += rep.get(i, k_deg) * ang.sin();
            }
            profile.set_a_even(j, l, scale * a);
            profile.set_b_even(j, l, scale * b);
        }
    }
    for l in 1..=profile.half_odd() {
        let k_deg = 2 * l - 1;
        let scale = 1.0 / l as f64;
        for j in 1..=l {
            let mut a = 0.0;
            let mut b = 0.0;
            for i in 0..=k_deg {
                let ang = (2.0 * j as f64 - 1.0) * (i as f64 * PI / (k_deg + 1) as f64);
                a += rep.get(i, k_deg) * ang.cos();
                b += rep.get(i, k_deg) * ang.sin();
            }
            profile.set_a_odd(j, l, scale * a);
            profile.set_b_odd(j, l, scale * b);
        }
    }
    profile
}
