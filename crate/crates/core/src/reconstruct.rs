//! The reconstruction pipeline: from a grid of Radon projections over
//! equidistant directions to the ridge coefficients of the unique
//! interpolating polynomial, for target degrees `n = 2m` and `n = 2m - 1`.
//!
//! Stages: normalize the data by the chord half-length, take discrete
//! trigonometric moments over the `2m + 1` directions, solve one small
//! linear system per folded harmonic pair (plus one for the constant
//! harmonic), and convert the resulting Fourier profile to ridge
//! coefficients.
//!
//! At the `2m + 1` equidistant angles the harmonics `j` and `2m - j + 1`
//! collapse onto each other (`cos` with equal sign, `sin` with opposite
//! sign), so each cosine moment equals half of `(A_j + A_{2m-j+1})(t_k)` and
//! each sine moment half of `(B_j - B_{2m-j+1})(t_k)`. Solving the system
//! once with cosine data yields the `a` coefficients of both harmonics
//! directly; solving it with sine data yields the `b` coefficients of the
//! low harmonic directly and those of the high harmonic with the sign
//! flipped. For `n = 2m - 1` the harmonic `2m` is absent, which truncates
//! the system of the lowest harmonic to the all-odd-degree block.
//!
//! All residual-level arithmetic runs in double-double precision: the block
//! systems for clustered node schemes reach condition numbers far beyond
//! what plain `f64` elimination can resolve, while the data itself is exact.

use crate::chebyshev::{eval_u_dd, Angle};
use crate::dd::{cos_pi_frac, sin_pi_frac, Dd};
use crate::error::{Error, Result};
use crate::nodes::{NodeSet, Parity};
use crate::radon::{project_quadrature, Chord};
use crate::regularity::constant_block_degrees;
use crate::ridge::{profile_to_coefficients, FourierProfile, RidgeRepresentation};
use crate::solver::{DdLu, DdMatrix, DenseMatrix};

use std::f64::consts::TAU;

/// Condition number above which reconstruction diagnostics carry a warning.
pub const ILL_CONDITIONING_WARN_THRESHOLD: f64 = 1e10;

/// Nodes closer to the rim than this margin are rejected by normalization.
pub const RIM_MARGIN: f64 = 1e-12;

/// The raw Radon data `R_{phi_j}(f; t_k)` on the grid of `2m + 1`
/// equidistant directions `phi_j = 2*pi*j/(2m+1)` and the radial nodes.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectionGrid {
    m: usize,
    parity: Parity,
    nodes: NodeSet,
    /// Row-major: `raw[j * nodes.len() + k]`.
    raw: Vec<f64>,
}

impl ProjectionGrid {
    /// Wraps raw data, validating the geometry: the node set's parity must
    /// match and the entry count must be `(2m + 1) * nodes.len()`.
    pub fn from_raw(nodes: NodeSet, raw: Vec<f64>) -> Result<ProjectionGrid> {
        let m = nodes.harmonic_m();
        let parity = nodes.parity();
        let expected = (2 * m + 1) * nodes.len();
        if raw.len() != expected {
            return Err(Error::GridShapeMismatch {
                expected,
                got: raw.len(),
                nodes: nodes.len(),
            });
        }
        if let Some(bad) = raw.iter().find(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                context: format!("grid value {bad}"),
            });
        }
        Ok(ProjectionGrid {
            m,
            parity,
            nodes,
            raw,
        })
    }

    /// The all-zero grid over a node set.
    pub fn zeros(nodes: NodeSet) -> ProjectionGrid {
        let m = nodes.harmonic_m();
        let len = (2 * m + 1) * nodes.len();
        ProjectionGrid {
            m,
            parity: nodes.parity(),
            raw: vec![0.0; len],
            nodes,
        }
    }

    pub fn harmonic_m(&self) -> usize {
        self.m
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    /// Target degree `n` implied by parity and `m`.
    pub fn degree(&self) -> usize {
        self.nodes.degree()
    }

    pub fn nodes(&self) -> &NodeSet {
        &self.nodes
    }

    pub fn angle_count(&self) -> usize {
        2 * self.m + 1
    }

    /// Direction `phi_j = 2*pi*j/(2m+1)`.
    pub fn angle(&self, j: usize) -> Angle {
        Angle::new(TAU * j as f64 / (2 * self.m + 1) as f64)
    }

    pub fn value(&self, j: usize, k: usize) -> f64 {
        self.raw[j * self.nodes.len() + k]
    }

    pub fn raw_values(&self) -> &[f64] {
        &self.raw
    }

    /// Largest absolute entry difference to `other` (same geometry).
    pub fn max_distance(&self, other: &ProjectionGrid) -> f64 {
        assert_eq!(self.raw.len(), other.raw.len());
        self.raw
            .iter()
            .zip(&other.raw)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// `sqrt(1 - t^2)` in double-double, `t` taken exactly.
fn half_length_dd(t: f64) -> Dd {
    Dd::ONE.sub(Dd::from_f64(t).mul_f64(t)).sqrt()
}

/// Synthesizes the exact projection grid of a ridge representation over a
/// node set, carrying every intermediate in double-double so that the stored
/// `f64` values are correctly rounded exact projections.
///
/// Both the grid directions and the basis angles are rational multiples of
/// pi, so the angular factors are formed from exact integer fractions.
pub fn synthesize_grid(rep: &RidgeRepresentation, nodes: &NodeSet) -> Result<ProjectionGrid> {
    let n = rep.degree();
    if nodes.degree() != n {
        return Err(Error::DegreeParityMismatch {
            degree: n,
            parity: nodes.parity().label(),
        });
    }
    let m = nodes.harmonic_m();
    let angles = 2 * m + 1;
    let num_nodes = nodes.len();

    // u_t[k][c] = U_k(t_c)
    let u_t: Vec<Vec<Dd>> = (0..=n)
        .map(|k| {
            nodes
                .values()
                .iter()
                .map(|&t| eval_u_dd(k, Dd::from_f64(t)))
                .collect()
        })
        .collect();
    let half: Vec<Dd> = nodes.values().iter().map(|&t| half_length_dd(t)).collect();

    // angular[a][k] = 2/(k+1) * sum_j c_{j,k} U_k(cos(phi_a - theta_{j,k}))
    let mut angular = vec![vec![Dd::ZERO; n + 1]; angles];
    for (a, row) in angular.iter_mut().enumerate() {
        for (k, slot) in row.iter_mut().enumerate() {
            let q = (angles * (k + 1)) as i64;
            let mut sum = Dd::ZERO;
            for j in 0..=k {
                let c = rep.get(j, k);
                if c == 0.0 {
                    continue;
                }
                // phi_a - theta_{j,k} = pi * (2a(k+1) - j(2m+1)) / ((2m+1)(k+1))
                let p = 2 * (a as i64) * (k as i64 + 1) - (j as i64) * (angles as i64);
                let cos_delta = cos_pi_frac(p, q);
                sum = sum.add(eval_u_dd(k, cos_delta).mul_f64(c));
            }
            *slot = sum.mul_f64(2.0).div_f64((k + 1) as f64);
        }
    }

    let mut raw = vec![0.0; angles * num_nodes];
    for a in 0..angles {
        for c in 0..num_nodes {
            let mut sum = Dd::ZERO;
            for k in 0..=n {
                sum = sum.add(u_t[k][c].mul(angular[a][k]));
            }
            raw[a * num_nodes + c] = half[c].mul(sum).to_f64();
        }
    }
    ProjectionGrid::from_raw(nodes.clone(), raw)
}

/// Synthesizes a projection grid for an arbitrary integrand by Gauss-Legendre
/// quadrature along each chord. The geometry (angle count, node count) is
/// that of the node set; `order` is the quadrature order per chord.
pub fn synthesize_grid_quadrature<F: Fn(f64, f64) -> f64>(
    f: F,
    nodes: &NodeSet,
    order: usize,
) -> Result<ProjectionGrid> {
    let m = nodes.harmonic_m();
    let angles = 2 * m + 1;
    let mut raw = Vec::with_capacity(angles * nodes.len());
    for a in 0..angles {
        let phi = Angle::new(TAU * a as f64 / angles as f64);
        for &t in nodes.values() {
            let chord = Chord::new(phi, t)?;
            raw.push(project_quadrature(&f, &chord, order));
        }
    }
    ProjectionGrid::from_raw(nodes.clone(), raw)
}

fn check_rim_margin(nodes: &NodeSet) -> Result<()> {
    for &t in nodes.values() {
        if t.abs() >= 1.0 - RIM_MARGIN {
            return Err(Error::NodeTooCloseToRim {
                t,
                margin: RIM_MARGIN,
            });
        }
    }
    Ok(())
}

/// Normalized data `gamma_{j,k} = R_{phi_j}(f; t_k) / sqrt(1 - t_k^2)`,
/// returned as rows indexed by the angle.
pub fn normalize(grid: &ProjectionGrid) -> Result<Vec<Vec<f64>>> {
    check_rim_margin(grid.nodes())?;
    let inv: Vec<f64> = grid
        .nodes()
        .values()
        .iter()
        .map(|&t| 1.0 / (1.0 - t * t).sqrt())
        .collect();
    Ok((0..grid.angle_count())
        .map(|j| {
            (0..grid.nodes().len())
                .map(|k| grid.value(j, k) * inv[k])
                .collect()
        })
        .collect())
}

fn normalize_dd(grid: &ProjectionGrid) -> Result<Vec<Vec<Dd>>> {
    check_rim_margin(grid.nodes())?;
    let inv: Vec<Dd> = grid
        .nodes()
        .values()
        .iter()
        .map(|&t| Dd::ONE.div(half_length_dd(t)))
        .collect();
    Ok((0..grid.angle_count())
        .map(|j| {
            (0..grid.nodes().len())
                .map(|k| inv[k].mul_f64(grid.value(j, k)))
                .collect()
        })
        .collect())
}

/// Discrete trigonometric moments of the normalized data over the
/// equidistant directions: the mean `m_0[k]` plus
/// `m^C_{l,k} = 1/(2m+1) sum_j gamma_{j,k} cos(l phi_j)` and the sine
/// counterpart for `1 <= l <= m`.
#[derive(Clone, Debug, PartialEq)]
pub struct TrigMoments {
    m: usize,
    mean: Vec<f64>,
    cosine: Vec<Vec<f64>>,
    sine: Vec<Vec<f64>>,
}

impl TrigMoments {
    pub fn from_parts(
        m: usize,
        mean: Vec<f64>,
        cosine: Vec<Vec<f64>>,
        sine: Vec<Vec<f64>>,
    ) -> TrigMoments {
        assert_eq!(cosine.len(), m);
        assert_eq!(sine.len(), m);
        TrigMoments {
            m,
            mean,
            cosine,
            sine,
        }
    }

    pub fn harmonic_m(&self) -> usize {
        self.m
    }

    /// `m_0[k]`.
    pub fn mean(&self, k: usize) -> f64 {
        self.mean[k]
    }

    /// `m^C_{l,k}`, `1 <= l <= m`.
    pub fn cosine(&self, l: usize, k: usize) -> f64 {
        self.cosine[l - 1][k]
    }

    /// `m^S_{l,k}`, `1 <= l <= m`.
    pub fn sine(&self, l: usize, k: usize) -> f64 {
        self.sine[l - 1][k]
    }

    pub fn node_count(&self) -> usize {
        self.mean.len()
    }
}

/// Computes the discrete moments of normalized rows `gamma` (as returned by
/// [`normalize`]) for `2m + 1` directions.
pub fn trig_moments(gamma: &[Vec<f64>], m: usize) -> TrigMoments {
    let angles = 2 * m + 1;
    assert_eq!(gamma.len(), angles, "gamma must have 2m+1 rows");
    let nodes = gamma[0].len();
    let scale = 1.0 / angles as f64;
    let mut mean = vec![0.0; nodes];
    for row in gamma {
        for (k, &v) in row.iter().enumerate() {
            mean[k] += v;
        }
    }
    for v in mean.iter_mut() {
        *v *= scale;
    }
    let mut cosine = vec![vec![0.0; nodes]; m];
    let mut sine = vec![vec![0.0; nodes]; m];
    for l in 1..=m {
        for (j, row) in gamma.iter().enumerate() {
            let c = cos_pi_frac((2 * l * j) as i64, angles as i64).to_f64();
            let s = sin_pi_frac((2 * l * j) as i64, angles as i64).to_f64();
            for (k, &v) in row.iter().enumerate() {
                cosine[l - 1][k] += v * c;
                sine[l - 1][k] += v * s;
            }
        }
        for k in 0..nodes {
            cosine[l - 1][k] *= scale;
            sine[l - 1][k] *= scale;
        }
    }
    TrigMoments::from_parts(m, mean, cosine, sine)
}

struct DdMoments {
    mean: Vec<Dd>,
    cosine: Vec<Vec<Dd>>,
    sine: Vec<Vec<Dd>>,
}

fn trig_moments_dd(gamma: &[Vec<Dd>], m: usize) -> DdMoments {
    let angles = 2 * m + 1;
    let nodes = gamma[0].len();
    let mut mean = vec![Dd::ZERO; nodes];
    for row in gamma {
        for (k, &v) in row.iter().enumerate() {
            mean[k] = mean[k].add(v);
        }
    }
    for v in mean.iter_mut() {
        *v = v.div_f64(angles as f64);
    }
    let mut cosine = vec![vec![Dd::ZERO; nodes]; m];
    let mut sine = vec![vec![Dd::ZERO; nodes]; m];
    for l in 1..=m {
        for (j, row) in gamma.iter().enumerate() {
            let c = cos_pi_frac((2 * l * j) as i64, angles as i64);
            let s = sin_pi_frac((2 * l * j) as i64, angles as i64);
            for (k, &v) in row.iter().enumerate() {
                cosine[l - 1][k] = cosine[l - 1][k].add(v.mul(c));
                sine[l - 1][k] = sine[l - 1][k].add(v.mul(s));
            }
        }
        for k in 0..nodes {
            cosine[l - 1][k] = cosine[l - 1][k].div_f64(angles as f64);
            sine[l - 1][k] = sine[l - 1][k].div_f64(angles as f64);
        }
    }
    DdMoments { mean, cosine, sine }
}

fn moments_to_dd(moments: &TrigMoments) -> DdMoments {
    let m = moments.harmonic_m();
    let nodes = moments.node_count();
    DdMoments {
        mean: (0..nodes).map(|k| Dd::from_f64(moments.mean(k))).collect(),
        cosine: (1..=m)
            .map(|l| (0..nodes).map(|k| Dd::from_f64(moments.cosine(l, k))).collect())
            .collect(),
        sine: (1..=m)
            .map(|l| (0..nodes).map(|k| Dd::from_f64(moments.sine(l, k))).collect())
            .collect(),
    }
}

/// Where a solved unknown lands in the Fourier profile.
#[derive(Clone, Copy, Debug)]
struct UnknownSlot {
    /// Fourier block index `j` of `a_{j,.}` / `b_{j,.}`.
    block: usize,
    /// Radial block `l`: degree `2l` (even) or `2l - 1` (odd).
    l: usize,
    degree: usize,
    even_degree: bool,
    /// True for the folded partner harmonic `2m - hj + 1`; its sine-path
    /// solution enters the profile with the sign flipped.
    from_partner: bool,
}

/// Unknown layout of the system for folded harmonic `hj`, and the `X` block
/// index it corresponds to.
fn harmonic_layout(hj: usize, m: usize, n: usize) -> (Vec<UnknownSlot>, usize) {
    let half_even = n / 2;
    let half_odd = n.div_ceil(2);
    let mut slots = Vec::new();
    let block_index;
    if hj.is_multiple_of(2) {
        let j = hj / 2;
        block_index = j;
        for l in j..=half_even {
            slots.push(UnknownSlot {
                block: j,
                l,
                degree: 2 * l,
                even_degree: true,
                from_partner: false,
            });
        }
    } else {
        let j = hj.div_ceil(2);
        block_index = m - j + 1;
        for l in j..=half_odd {
            slots.push(UnknownSlot {
                block: j,
                l,
                degree: 2 * l - 1,
                even_degree: false,
                from_partner: false,
            });
        }
    }
    let partner = 2 * m - hj + 1;
    if partner <= n {
        if partner.is_multiple_of(2) {
            let i = partner / 2;
            for l in i..=half_even {
                slots.push(UnknownSlot {
                    block: i,
                    l,
                    degree: 2 * l,
                    even_degree: true,
                    from_partner: true,
                });
            }
        } else {
            let i = partner.div_ceil(2);
            for l in i..=half_odd {
                slots.push(UnknownSlot {
                    block: i,
                    l,
                    degree: 2 * l - 1,
                    even_degree: false,
                    from_partner: true,
                });
            }
        }
    }
    (slots, block_index)
}

/// Condition diagnostics of one solved block.
#[derive(Clone, Debug)]
pub struct BlockCondition {
    /// `0` for the constant-harmonic block, otherwise the `X_j` index.
    pub block: usize,
    pub condition: f64,
}

/// Result of a reconstruction: the polynomial plus solver diagnostics.
#[derive(Clone, Debug)]
pub struct Reconstruction {
    pub polynomial: RidgeRepresentation,
    pub profile: FourierProfile,
    pub block_conditions: Vec<BlockCondition>,
    pub max_condition: f64,
    /// Set when `max_condition` exceeds [`ILL_CONDITIONING_WARN_THRESHOLD`].
    pub ill_conditioned: bool,
}

fn solve_blocks(
    moments: &DdMoments,
    nodes: &NodeSet,
) -> Result<(FourierProfile, Vec<BlockCondition>)> {
    let m = nodes.harmonic_m();
    let parity = nodes.parity();
    let n = nodes.degree();
    let ts = nodes.values();
    let scheme = nodes.scheme().label().to_string();
    let mut profile = FourierProfile::zero(n);
    let mut conditions = Vec::with_capacity(m + 1);

    let system_for = |degrees: &[usize]| -> (DdMatrix, DenseMatrix) {
        let dim = ts.len();
        debug_assert_eq!(degrees.len(), dim);
        let mut a = DdMatrix::zeros(dim);
        let mut f = DenseMatrix::zeros(dim);
        for (row, &t) in ts.iter().enumerate() {
            for (col, &deg) in degrees.iter().enumerate() {
                let v = eval_u_dd(deg, Dd::from_f64(t));
                a.set(row, col, v);
                f.set(row, col, v.to_f64());
            }
        }
        (a, f)
    };

    let condition_of = |lu: &DdLu, f: &DenseMatrix| -> f64 {
        match lu.inverse_one_norm() {
            Some(inv) => f.one_norm() * inv,
            None => f64::INFINITY,
        }
    };

    // constant harmonic: even degrees only
    {
        let degrees = constant_block_degrees(parity, m);
        let (a, f) = system_for(&degrees);
        let lu = DdLu::compute(&a);
        let sol = lu.solve(&moments.mean).ok_or_else(|| Error::SingularBlock {
            block: 0,
            scheme: scheme.clone(),
        })?;
        for (col, &deg) in degrees.iter().enumerate() {
            profile.set_a0(deg / 2, sol[col].to_f64());
        }
        conditions.push(BlockCondition {
            block: 0,
            condition: condition_of(&lu, &f),
        });
    }

    for hj in 1..=m {
        let (slots, block_index) = harmonic_layout(hj, m, n);
        let degrees: Vec<usize> = slots.iter().map(|s| s.degree).collect();
        let (a, f) = system_for(&degrees);
        let lu = DdLu::compute(&a);
        let singular = || Error::SingularBlock {
            block: block_index,
            scheme: scheme.clone(),
        };
        let sol_c = lu.solve(&moments.cosine[hj - 1]).ok_or_else(singular)?;
        let sol_s = lu.solve(&moments.sine[hj - 1]).ok_or_else(singular)?;
        for (col, slot) in slots.iter().enumerate() {
            let a_val = sol_c[col].to_f64();
            let b_val = if slot.from_partner {
                -sol_s[col].to_f64()
            } else {
                sol_s[col].to_f64()
            };
            if slot.even_degree {
                profile.set_a_even(slot.block, slot.l, a_val);
                profile.set_b_even(slot.block, slot.l, b_val);
            } else {
                profile.set_a_odd(slot.block, slot.l, a_val);
                profile.set_b_odd(slot.block, slot.l, b_val);
            }
        }
        conditions.push(BlockCondition {
            block: block_index,
            condition: condition_of(&lu, &f),
        });
    }

    Ok((profile, conditions))
}

/// Solves the even-case block systems from precomputed moments.
pub fn assemble_and_solve_even(moments: &TrigMoments, nodes: &NodeSet) -> Result<FourierProfile> {
    if nodes.parity() != Parity::Even {
        return Err(Error::ParityMismatch {
            expected: "even",
            got: nodes.parity().label(),
        });
    }
    let (profile, _) = solve_blocks(&moments_to_dd(moments), nodes)?;
    Ok(profile)
}

/// Solves the odd-case block systems (the harmonic `2m` is absent, which
/// truncates the lowest-harmonic system to the all-odd block).
pub fn assemble_and_solve_odd(moments: &TrigMoments, nodes: &NodeSet) -> Result<FourierProfile> {
    if nodes.parity() != Parity::Odd {
        return Err(Error::ParityMismatch {
            expected: "odd",
            got: nodes.parity().label(),
        });
    }
    let (profile, _) = solve_blocks(&moments_to_dd(moments), nodes)?;
    Ok(profile)
}

/// Full pipeline for either parity: normalize, moments, block solves,
/// profile-to-coefficients.
pub fn reconstruct(grid: &ProjectionGrid) -> Result<Reconstruction> {
    let gamma = normalize_dd(grid)?;
    let moments = trig_moments_dd(&gamma, grid.harmonic_m());
    let (profile, block_conditions) = solve_blocks(&moments, grid.nodes())?;
    let polynomial = profile_to_coefficients(&profile);
    let max_condition = block_conditions
        .iter()
        .fold(0.0f64, |acc, b| acc.max(b.condition));
    Ok(Reconstruction {
        polynomial,
        profile,
        block_conditions,
        max_condition,
        ill_conditioned: max_condition > ILL_CONDITIONING_WARN_THRESHOLD,
    })
}

/// Even-parity pipeline (`n = 2m`).
pub fn reconstruct_even(grid: &ProjectionGrid) -> Result<Reconstruction> {
    if grid.parity() != Parity::Even {
        return Err(Error::ParityMismatch {
            expected: "even",
            got: grid.parity().label(),
        });
    }
    reconstruct(grid)
}

/// Odd-parity pipeline (`n = 2m - 1`).
pub fn reconstruct_odd(grid: &ProjectionGrid) -> Result<Reconstruction> {
    if grid.parity() != Parity::Odd {
        return Err(Error::ParityMismatch {
            expected: "odd",
            got: grid.parity().label(),
        });
    }
    reconstruct(grid)
}

/// Largest absolute mismatch between the grid and the exact projections of
/// `rep` over the same geometry.
pub fn reprojection_residual(rep: &RidgeRepresentation, grid: &ProjectionGrid) -> Result<f64> {
    let again = synthesize_grid(rep, grid.nodes())?;
    Ok(again.max_distance(grid))
}
