//! The block matrices of Chebyshev values whose nonsingularity makes the
//! interpolation problem uniquely solvable, plus determinant and conditioning
//! certification for node sets.
//!
//! For target degree `n = 2m` the block `X_j` stacks the even degrees
//! `2m, 2m-2, ..., 2j` over the odd degrees `2m-1, 2m-3, ..., 2m-2j+1`; for
//! `n = 2m-1` the even degrees start at `2m-2` and `X_m` is all odd degrees
//! down to `U_1`. Each per-harmonic linear system of the reconstruction has
//! exactly one of these blocks (transposed) as its coefficient matrix, so
//! certification covers `j = 1..=m` together with the even-degree-only block
//! solved for the constant harmonic (reported as block 0).

use crate::chebyshev::{eval_u, eval_u_dd};
use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::nodes::{NodeSet, Parity};
use crate::solver::{DdLu, DdMatrix, DenseMatrix};

/// A block matrix with its row bookkeeping: entry `(r, c)` is
/// `U_{row_degrees[r]}(t_c)`.
#[derive(Clone, Debug)]
pub struct XiMatrix {
    block: usize,
    parity: Parity,
    row_degrees: Vec<usize>,
    matrix: DenseMatrix,
}

impl XiMatrix {
    fn from_degrees(block: usize, parity: Parity, row_degrees: Vec<usize>, nodes: &[f64]) -> XiMatrix {
        let dim = row_degrees.len();
        debug_assert_eq!(dim, nodes.len());
        let mut matrix = DenseMatrix::zeros(dim);
        for (r, &deg) in row_degrees.iter().enumerate() {
            for (c, &t) in nodes.iter().enumerate() {
                matrix.set(r, c, eval_u(deg, t));
            }
        }
        XiMatrix {
            block,
            parity,
            row_degrees,
            matrix,
        }
    }

    pub fn block(&self) -> usize {
        self.block
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    /// Chebyshev degrees in row order.
    pub fn row_degrees(&self) -> &[usize] {
        &self.row_degrees
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// The same matrix carried in double-double precision.
    pub(crate) fn dd_matrix(&self, nodes: &[f64]) -> DdMatrix {
        let dim = self.dim();
        let mut m = DdMatrix::zeros(dim);
        for (r, &deg) in self.row_degrees.iter().enumerate() {
            for (c, &t) in nodes.iter().enumerate() {
                m.set(r, c, eval_u_dd(deg, Dd::from_f64(t)));
            }
        }
        m
    }
}

/// Row degrees of the even-case block `X_j`, `1 <= j <= m`.
pub(crate) fn xi_even_degrees(j: usize, m: usize) -> Vec<usize> {
    let mut rows: Vec<usize> = (j..=m).rev().map(|l| 2 * l).collect();
    rows.extend((m - j + 1..=m).rev().map(|l| 2 * l - 1));
    rows
}

/// Row degrees of the odd-case block `X_j`, `1 <= j <= m`.
pub(crate) fn xi_odd_degrees(j: usize, m: usize) -> Vec<usize> {
    if j == m {
        return (1..=m).rev().map(|l| 2 * l - 1).collect();
    }
    let mut rows: Vec<usize> = (j..=m - 1).rev().map(|l| 2 * l).collect();
    rows.extend((m - j + 1..=m).rev().map(|l| 2 * l - 1));
    rows
}

/// Row degrees of the even-degree-only block solved for the constant
/// harmonic: `2m, 2m-2, ..., 0` (even parity) or `2m-2, ..., 0` (odd).
pub(crate) fn constant_block_degrees(parity: Parity, m: usize) -> Vec<usize> {
    match parity {
        Parity::Even => (0..=m).rev().map(|l| 2 * l).collect(),
        Parity::Odd => (0..m).rev().map(|l| 2 * l).collect(),
    }
}

/// Builds the even-case `X_j` block over an even-parity node set.
///
/// The classical uniqueness statement lists `j = 1..=m-1`, but the system
/// solved for the lowest folded harmonic carries the `j = m` row set
/// `{U_{2m}, U_{2m-1}, ..., U_1}`, so that block is accepted and certified
/// here as well.
pub fn build_xi_even(j: usize, nodes: &NodeSet) -> Result<XiMatrix> {
    if nodes.parity() != Parity::Even {
        return Err(Error::ParityMismatch {
            expected: "even",
            got: nodes.parity().label(),
        });
    }
    let m = nodes.harmonic_m();
    if j < 1 || j > m {
        return Err(Error::BlockIndexOutOfRange {
            index: j,
            min: 1,
            max: m,
        });
    }
    Ok(XiMatrix::from_degrees(
        j,
        Parity::Even,
        xi_even_degrees(j, m),
        nodes.values(),
    ))
}

/// Builds the odd-case `X_j` block over an odd-parity node set, `1 <= j <= m`.
pub fn build_xi_odd(j: usize, nodes: &NodeSet) -> Result<XiMatrix> {
    if nodes.parity() != Parity::Odd {
        return Err(Error::ParityMismatch {
            expected: "odd",
            got: nodes.parity().label(),
        });
    }
    let m = nodes.harmonic_m();
    if j < 1 || j > m {
        return Err(Error::BlockIndexOutOfRange {
            index: j,
            min: 1,
            max: m,
        });
    }
    Ok(XiMatrix::from_degrees(
        j,
        Parity::Odd,
        xi_odd_degrees(j, m),
        nodes.values(),
    ))
}

/// Builds the `Y_j` matrices from the uniqueness argument over an
/// even-parity node set: `Y_0` is all even degrees, `Y_{2j}` equals `X_j`,
/// and `Y_{2j-1}` is the odd degrees `2m-1..2j+1` over the even degrees
/// `2m..2m-2j`.
pub fn build_y(j: usize, nodes: &NodeSet) -> Result<XiMatrix> {
    if nodes.parity() != Parity::Even {
        return Err(Error::ParityMismatch {
            expected: "even",
            got: nodes.parity().label(),
        });
    }
    let m = nodes.harmonic_m();
    if j > 2 * m {
        return Err(Error::BlockIndexOutOfRange {
            index: j,
            min: 0,
            max: 2 * m,
        });
    }
    let rows = if j == 0 {
        constant_block_degrees(Parity::Even, m)
    } else if j.is_multiple_of(2) {
        xi_even_degrees(j / 2, m)
    } else {
        let i = j.div_ceil(2);
        let mut rows: Vec<usize> = (i + 1..=m).rev().map(|l| 2 * l - 1).collect();
        rows.extend((m - i..=m).rev().map(|l| 2 * l));
        rows
    };
    Ok(XiMatrix::from_degrees(j, Parity::Even, rows, nodes.values()))
}

/// Closed-form determinant of the degree-4 block at `m = 2` over three
/// positive nodes:
/// `32 * prod_{i<j} (t_i - t_j) * [8 t1^2 t2^2 t3^2 + 4 t1 t2 t3 (t1+t2+t3)
///  + (2 t1^2 - 1)(2 t2^2 - 1)(2 t3^2 - 1)]`.
///
/// This equals the determinant of the rows `(U_4, U_3, U_2)` at columns
/// `(t1, t2, t3)`; the canonical `X_1` row order `(U_4, U_2, U_3)` flips the
/// sign, so only magnitudes transfer between the two conventions.
pub fn det_xi2_closed_form(t1: f64, t2: f64, t3: f64) -> f64 {
    let vandermonde = (t1 - t2) * (t1 - t3) * (t2 - t3);
    let bracket = 8.0 * t1 * t1 * t2 * t2 * t3 * t3
        + 4.0 * t1 * t2 * t3 * (t1 + t2 + t3)
        + (2.0 * t1 * t1 - 1.0) * (2.0 * t2 * t2 - 1.0) * (2.0 * t3 * t3 - 1.0);
    32.0 * vandermonde * bracket
}

/// Certification result for a single block.
#[derive(Clone, Debug)]
pub struct BlockReport {
    /// Block index: `0` for the constant-harmonic (even-degree-only) block,
    /// `1..=m` for the `X_j` blocks.
    pub block: usize,
    pub determinant: f64,
    pub condition: f64,
    pub singular: bool,
}

/// Certification result for a node set.
#[derive(Clone, Debug)]
pub struct CertifyReport {
    pub parity: Parity,
    pub harmonic_m: usize,
    pub blocks: Vec<BlockReport>,
    pub singular: bool,
    pub max_condition: f64,
}

fn certify_block(xi: &XiMatrix, nodes: &[f64]) -> BlockReport {
    let dd = xi.dd_matrix(nodes);
    let lu = DdLu::compute(&dd);
    let singular = lu.is_singular();
    let determinant = lu.determinant();
    let condition = if singular {
        f64::INFINITY
    } else {
        let inv = lu.inverse_one_norm().unwrap_or(f64::INFINITY);
        xi.matrix().one_norm() * inv
    };
    BlockReport {
        block: xi.block(),
        determinant,
        condition,
        singular,
    }
}

/// Certifies every block matrix the reconstruction will invert over the
/// given node set: the constant-harmonic block (reported as block 0) and
/// `X_1..X_m` for either parity.
///
/// Determinants and the singularity decision come from a double-double
/// factorization; a block is singular when a pivot falls below the
/// double-double working-precision floor relative to the matrix scale.
/// A fixed determinant-versus-norm cutoff cannot work here: the clustered
/// schemes are provably nonsingular yet their determinants sit dozens of
/// orders of magnitude below any entry-norm product from `m` around 5.
pub fn certify(nodes: &NodeSet) -> CertifyReport {
    let m = nodes.harmonic_m();
    let parity = nodes.parity();
    let mut blocks = Vec::new();
    let constant = XiMatrix::from_degrees(
        0,
        parity,
        constant_block_degrees(parity, m),
        nodes.values(),
    );
    blocks.push(certify_block(&constant, nodes.values()));
    for j in 1..=m {
        let xi = match parity {
            Parity::Even => build_xi_even(j, nodes).expect("valid block index"),
            Parity::Odd => build_xi_odd(j, nodes).expect("valid block index"),
        };
        blocks.push(certify_block(&xi, nodes.values()));
    }
    let singular = blocks.iter().any(|b| b.singular);
    let max_condition = blocks.iter().fold(0.0f64, |acc, b| acc.max(b.condition));
    CertifyReport {
        parity,
        harmonic_m: m,
        blocks,
        singular,
        max_condition,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nodes::{
        nodes_chebyshev, nodes_equidistant, nodes_obrechkoff, nodes_u_zeros_even,
        nodes_u_zeros_odd, NodeSet, Scheme,
    };
    use crate::solver::LuFactorization;

    fn splitmix(state: &mut u64) -> f64 {
        *state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((*state >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
    }

    #[test]
    fn even_block_row_degrees_m2() {
        let nodes = nodes_equidistant(2);
        let xi = build_xi_even(1, &nodes).unwrap();
        assert_eq!(xi.row_degrees(), &[4, 2, 3]);
        let xi2 = build_xi_even(2, &nodes).unwrap();
        assert_eq!(xi2.row_degrees(), &[4, 3, 1]);
        assert!(build_xi_even(3, &nodes).is_err());
        assert!(build_xi_even(0, &nodes).is_err());
    }

    #[test]
    fn odd_block_row_degrees() {
        let nodes = nodes_u_zeros_odd(2);
        let xi = build_xi_odd(1, &nodes).unwrap();
        assert_eq!(xi.row_degrees(), &[2, 3]);
        let xm = build_xi_odd(2, &nodes).unwrap();
        assert_eq!(xm.row_degrees(), &[3, 1]);
        // m = 1: the single block is [U_1], so the entry is 2 t_0
        let n1 = nodes_u_zeros_odd(1);
        let x1 = build_xi_odd(1, &n1).unwrap();
        assert_eq!(x1.row_degrees(), &[1]);
        assert!((x1.matrix().get(0, 0) - 2.0 * n1.values()[0]).abs() < 1e-15);
    }

    #[test]
    fn duplicate_node_makes_singular_block() {
        // bypass NodeSet validation to exercise the numeric path directly
        let vals = [0.3, 0.3, 0.7];
        let rows = xi_even_degrees(1, 2);
        let xi = XiMatrix::from_degrees(1, Parity::Even, rows, &vals);
        let report = certify_block(&xi, &vals);
        assert!(report.singular);
        assert!(report.determinant.abs() < 1e-20);
    }

    #[test]
    fn symmetric_pair_breaks_even_only_block() {
        // even-degree rows at {t, -t} give two equal columns
        let vals = [0.4, -0.4];
        let rows = constant_block_degrees(Parity::Even, 1);
        let xi = XiMatrix::from_degrees(0, Parity::Even, rows, &vals);
        let report = certify_block(&xi, &vals);
        assert!(report.singular);
        // and the validated constructor refuses such a set upstream
        assert!(NodeSet::custom(vec![0.4, -0.4], Parity::Even).is_err());
    }

    #[test]
    fn zero_node_zeroes_the_all_odd_column() {
        // odd polynomials vanish at the origin, so X_m picks up a zero column
        let vals = [0.5, 0.0];
        let xi = XiMatrix::from_degrees(2, Parity::Odd, xi_odd_degrees(2, 2), &vals);
        for r in 0..xi.dim() {
            assert_eq!(xi.matrix().get(r, 1), 0.0);
        }
        assert!(certify_block(&xi, &vals).singular);
    }

    #[test]
    fn y_matrices_and_permutation_relation() {
        let mut state = 321u64;
        for m in 2..=6usize {
            let vals: Vec<f64> = (0..=m)
                .map(|k| 0.05 + 0.9 * (k as f64 + 0.3 * splitmix(&mut state).abs()) / (m + 1) as f64)
                .collect();
            let nodes = NodeSet::custom(vals, Parity::Even).unwrap();
            // Y_0 nonsingular at asymmetric nodes
            let y0 = build_y(0, &nodes).unwrap();
            assert!(!certify_block(&y0, nodes.values()).singular);
            // Y_{2j} has the X_j row set
            for j in 1..=m / 2 {
                let y = build_y(2 * j, &nodes).unwrap();
                let x = build_xi_even(j, &nodes).unwrap();
                assert_eq!(y.row_degrees(), x.row_degrees());
            }
            // |det Y_{2(m-j)-1}| = |det Y_{2j}| (row sets agree up to order)
            for j in 1..m {
                let a = build_y(2 * (m - j) - 1, &nodes).unwrap();
                let b = build_y(2 * j, &nodes).unwrap();
                let mut ra = a.row_degrees().to_vec();
                let mut rb = b.row_degrees().to_vec();
                ra.sort_unstable();
                rb.sort_unstable();
                assert_eq!(ra, rb, "m={m} j={j}");
                let da = LuFactorization::compute(a.matrix()).determinant();
                let db = LuFactorization::compute(b.matrix()).determinant();
                assert!(
                    (da.abs() - db.abs()).abs() <= 1e-10 * da.abs().max(db.abs()).max(1e-300),
                    "m={m} j={j}: {da} vs {db}"
                );
            }
        }
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(det_xi2_closed_form(0.4, 0.4, 0.9), 0.0);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!(det_xi2_closed_form(0.2, 0.5, s).abs() > 1e-6);
    }

    #[test]
    fn closed_form_matches_lu_determinant() {
        let mut state = 8899u64;
        let mut checked = 0;
        while checked < 100 {
            let t1 = 0.5 * (splitmix(&mut state) + 1.0);
            let t2 = 0.5 * (splitmix(&mut state) + 1.0);
            let t3 = 0.5 * (splitmix(&mut state) + 1.0);
            if (t1 - t2).abs() < 1e-3 || (t1 - t3).abs() < 1e-3 || (t2 - t3).abs() < 1e-3 {
                continue;
            }
            let closed = det_xi2_closed_form(t1, t2, t3);
            // bracket ordering (U_4, U_3, U_2) carries the closed form's sign
            let a = DenseMatrix::from_rows(&[
                vec![eval_u(4, t1), eval_u(4, t2), eval_u(4, t3)],
                vec![eval_u(3, t1), eval_u(3, t2), eval_u(3, t3)],
                vec![eval_u(2, t1), eval_u(2, t2), eval_u(2, t3)],
            ]);
            let lu = LuFactorization::compute(&a).determinant();
            if closed.abs() >= 1e-8 {
                assert!(((closed - lu) / closed).abs() <= 1e-10, "{closed} vs {lu}");
            } else {
                assert!((closed - lu).abs() <= 1e-12);
            }
            // canonical X_1 ordering flips the sign only
            let nodes = NodeSet::custom(vec![t1, t2, t3], Parity::Even).unwrap();
            let xi = build_xi_even(1, &nodes).unwrap();
            let canonical = LuFactorization::compute(xi.matrix()).determinant();
            assert!(
                (canonical + closed).abs() <= 1e-10 * closed.abs().max(1e-8),
                "{canonical} vs {closed}"
            );
            checked += 1;
        }
    }

    #[test]
    fn certify_known_good_schemes() {
        for m in 1..=10 {
            for set in [
                nodes_obrechkoff(m),
                nodes_u_zeros_even(m, 0.97).unwrap(),
                nodes_u_zeros_odd(m),
            ] {
                let report = certify(&set);
                assert!(
                    !report.singular,
                    "m={m} scheme={:?} parity={:?}",
                    set.scheme(),
                    set.parity()
                );
                assert_eq!(report.blocks.len(), m + 1);
            }
        }
    }

    #[test]
    fn certify_test_point_families() {
        for m in 1..=10 {
            for set in [nodes_equidistant(m), nodes_chebyshev(m)] {
                let report = certify(&set);
                assert!(!report.singular, "m={m} scheme={:?}", set.scheme());
                assert!(report.max_condition.is_finite());
            }
        }
    }

    #[test]
    fn certify_flags_breaking_pair() {
        // asymmetric distinct pair with 4 t0 t1 = -1 kills the m = 1 block
        let t0 = 0.9;
        let t1 = -0.25 / t0;
        let nodes = NodeSet::custom(vec![t0, t1], Parity::Even).unwrap();
        let report = certify(&nodes);
        // the block X_1 = {U_2, U_1} has determinant 2(t0-t1)(4 t0 t1 + 1)
        let det = report.blocks[1].determinant;
        assert!(det.abs() < 1e-14);
        assert!(report.blocks[1].condition > 1e14 || report.blocks[1].singular);
    }

    #[test]
    fn scheme_labels_round_trip() {
        for s in [
            Scheme::Obrechkoff,
            Scheme::UZeros,
            Scheme::Equidistant,
            Scheme::Chebyshev,
            Scheme::Custom,
        ] {
            assert_eq!(Scheme::from_label(s.label()), Some(s));
        }
    }
}
