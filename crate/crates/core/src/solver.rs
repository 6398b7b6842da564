//! Dense linear-algebra kernel for the small square systems of this crate:
//! LU factorization with partial pivoting, solve, determinant, and 1-norm
//! condition number. A double-double variant backs the ill-conditioned
//! reconstruction systems.

use crate::dd::Dd;
use crate::error::{Error, Result};

/// Pivot threshold, relative to the largest entry magnitude of the matrix.
pub const SINGULAR_PIVOT_RELATIVE: f64 = 1e-14;

/// A square matrix stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(dim: usize) -> DenseMatrix {
        assert!(dim >= 1);
        DenseMatrix {
            dim,
            data: vec![0.0; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(dim);
        for i in 0..dim {
            m.set(i, i, 1.0);
        }
        m
    }

    /// Builds from row slices; panics on ragged input.
    pub fn from_rows(rows: &[Vec<f64>]) -> DenseMatrix {
        let dim = rows.len();
        let mut m = DenseMatrix::zeros(dim);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), dim, "row {i} has wrong length");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.dim + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: f64) {
        self.data[r * self.dim + c] = v;
    }

    /// Maximum column sum of absolute values.
    pub fn one_norm(&self) -> f64 {
        (0..self.dim)
            .map(|c| (0..self.dim).map(|r| self.get(r, c).abs()).sum())
            .fold(0.0, f64::max)
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// `A * x`.
    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.dim);
        (0..self.dim)
            .map(|r| (0..self.dim).map(|c| self.get(r, c) * x[c]).sum())
            .collect()
    }

    pub fn transpose(&self) -> DenseMatrix {
        let mut t = DenseMatrix::zeros(self.dim);
        for r in 0..self.dim {
            for c in 0..self.dim {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }
}

/// `PA = LU` with partial pivoting. The factorization always completes;
/// numerically singular inputs are flagged and reject `solve`.
#[derive(Clone, Debug)]
pub struct LuFactorization {
    lu: DenseMatrix,
    /// Row permutation: factored row `i` came from input row `perm[i]`.
    perm: Vec<usize>,
    swap_sign: f64,
    smallest_pivot: f64,
    threshold: f64,
}

impl LuFactorization {
    /// Factors `a`, recording pivots and the permutation.
    pub fn compute(a: &DenseMatrix) -> LuFactorization {
        let n = a.dim();
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut swap_sign = 1.0;
        let mut smallest_pivot = f64::INFINITY;
        for col in 0..n {
            let mut pivot_row = col;
            let mut best = lu.get(col, col).abs();
            for r in (col + 1)..n {
                let v = lu.get(r, col).abs();
                if v > best {
                    best = v;
                    pivot_row = r;
                }
            }
            if pivot_row != col {
                for c in 0..n {
                    let tmp = lu.get(col, c);
                    lu.set(col, c, lu.get(pivot_row, c));
                    lu.set(pivot_row, c, tmp);
                }
                perm.swap(col, pivot_row);
                swap_sign = -swap_sign;
            }
            let pivot = lu.get(col, col);
            smallest_pivot = smallest_pivot.min(pivot.abs());
            if pivot == 0.0 {
                continue;
            }
            for r in (col + 1)..n {
                let factor = lu.get(r, col) / pivot;
                lu.set(r, col, factor);
                for c in (col + 1)..n {
                    lu.set(r, c, lu.get(r, c) - factor * lu.get(col, c));
                }
            }
        }
        LuFactorization {
            lu,
            perm,
            swap_sign,
            smallest_pivot,
            threshold: SINGULAR_PIVOT_RELATIVE * a.max_abs(),
        }
    }

    /// Smallest pivot magnitude seen during elimination.
    pub fn smallest_pivot(&self) -> f64 {
        self.smallest_pivot
    }

    /// Numerically singular: a pivot fell below the relative threshold.
    pub fn is_singular(&self) -> bool {
        self.smallest_pivot < self.threshold
    }

    /// Input row from which factored row `i` came.
    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    /// Solves `A x = b`. Rejects singular factorizations.
    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        if self.is_singular() {
            return Err(Error::SingularMatrix {
                pivot: self.smallest_pivot,
                threshold: self.threshold,
            });
        }
        let n = self.lu.dim();
        assert_eq!(b.len(), n);
        let mut x: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        for r in 1..n {
            for c in 0..r {
                x[r] -= self.lu.get(r, c) * x[c];
            }
        }
        for r in (0..n).rev() {
            for c in (r + 1)..n {
                x[r] -= self.lu.get(r, c) * x[c];
            }
            x[r] /= self.lu.get(r, r);
        }
        Ok(x)
    }

    /// `det A` as the signed product of pivots; `0` when elimination broke down.
    pub fn determinant(&self) -> f64 {
        let n = self.lu.dim();
        let mut det = self.swap_sign;
        for i in 0..n {
            det *= self.lu.get(i, i);
        }
        det
    }
}

/// Factors `a`, failing with a `SingularMatrix` error when a pivot magnitude
/// falls below `1e-14` times the largest entry of `a`.
pub fn lu_factor(a: &DenseMatrix) -> Result<LuFactorization> {
    let f = LuFactorization::compute(a);
    if f.is_singular() {
        return Err(Error::SingularMatrix {
            pivot: f.smallest_pivot,
            threshold: f.threshold,
        });
    }
    Ok(f)
}

/// 1-norm condition number via the explicit inverse. Intended for the small
/// dimensions of this crate (`dim <= 64`).
pub fn condition_1norm(a: &DenseMatrix) -> Result<f64> {
    let n = a.dim();
    assert!(n <= 64, "condition_1norm is for small matrices");
    let f = lu_factor(a)?;
    let mut inv_norm: f64 = 0.0;
    for c in 0..n {
        let mut e = vec![0.0; n];
        e[c] = 1.0;
        let x = f.solve(&e)?;
        let sum: f64 = x.iter().map(|v| v.abs()).sum();
        inv_norm = inv_norm.max(sum);
    }
    Ok(a.one_norm() * inv_norm)
}

// ---------------------------------------------------------------------------
// Double-double variant, used where the block systems are too ill-conditioned
// for f64 factorization to resolve.
// ---------------------------------------------------------------------------

pub(crate) struct DdMatrix {
    dim: usize,
    data: Vec<Dd>,
}

impl DdMatrix {
    pub fn zeros(dim: usize) -> DdMatrix {
        DdMatrix {
            dim,
            data: vec![Dd::ZERO; dim * dim],
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Dd {
        self.data[r * self.dim + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Dd) {
        self.data[r * self.dim + c] = v;
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.hi.abs()))
    }
}

/// Relative pivot threshold below which a double-double factorization is
/// treated as exactly singular. Double-double carries ~32 digits; anything
/// this far down is indistinguishable from cancellation noise.
pub(crate) const DD_SINGULAR_PIVOT_RELATIVE: f64 = 1e-26;

pub(crate) struct DdLu {
    lu: DdMatrix,
    perm: Vec<usize>,
    swap_sign: f64,
    smallest_pivot: f64,
    threshold: f64,
}

impl DdLu {
    pub fn compute(a: &DdMatrix) -> DdLu {
        let n = a.dim();
        let mut lu = DdMatrix::zeros(n);
        for r in 0..n {
            for c in 0..n {
                lu.set(r, c, a.get(r, c));
            }
        }
        let mut perm: Vec<usize> = (0..n).collect();
        let mut swap_sign = 1.0;
        let mut smallest_pivot = f64::INFINITY;
        for col in 0..n {
            let mut pivot_row = col;
            let mut best = lu.get(col, col).hi.abs();
            for r in (col + 1)..n {
                let v = lu.get(r, col).hi.abs();
                if v > best {
                    best = v;
                    pivot_row = r;
                }
            }
            if pivot_row != col {
                for c in 0..n {
                    let tmp = lu.get(col, c);
                    lu.set(col, c, lu.get(pivot_row, c));
                    lu.set(pivot_row, c, tmp);
                }
                perm.swap(col, pivot_row);
                swap_sign = -swap_sign;
            }
            let pivot = lu.get(col, col);
            smallest_pivot = smallest_pivot.min(pivot.hi.abs());
            if pivot.hi == 0.0 {
                continue;
            }
            for r in (col + 1)..n {
                let factor = lu.get(r, col).div(pivot);
                lu.set(r, col, factor);
                for c in (col + 1)..n {
                    lu.set(r, c, lu.get(r, c).sub(factor.mul(lu.get(col, c))));
                }
            }
        }
        DdLu {
            lu,
            perm,
            swap_sign,
            smallest_pivot,
            threshold: DD_SINGULAR_PIVOT_RELATIVE * a.max_abs(),
        }
    }

    pub fn is_singular(&self) -> bool {
        self.smallest_pivot < self.threshold || self.smallest_pivot == 0.0
    }

    pub fn solve(&self, b: &[Dd]) -> Option<Vec<Dd>> {
        if self.is_singular() {
            return None;
        }
        let n = self.lu.dim();
        let mut x: Vec<Dd> = self.perm.iter().map(|&p| b[p]).collect();
        for r in 1..n {
            for c in 0..r {
                x[r] = x[r].sub(self.lu.get(r, c).mul(x[c]));
            }
        }
        for r in (0..n).rev() {
            for c in (r + 1)..n {
                x[r] = x[r].sub(self.lu.get(r, c).mul(x[c]));
            }
            x[r] = x[r].div(self.lu.get(r, r));
        }
        Some(x)
    }

    pub fn determinant(&self) -> f64 {
        let n = self.lu.dim();
        // multiply pivots in descending magnitude to limit over/underflow drift
        let mut pivots: Vec<Dd> = (0..n).map(|i| self.lu.get(i, i)).collect();
        pivots.sort_by(|a, b| b.hi.abs().partial_cmp(&a.hi.abs()).unwrap());
        let mut det = Dd::from_f64(self.swap_sign);
        for p in pivots {
            det = det.mul(p);
        }
        det.to_f64()
    }

    /// 1-norm of the inverse, via explicit columns.
    pub fn inverse_one_norm(&self) -> Option<f64> {
        let n = self.lu.dim();
        let mut worst: f64 = 0.0;
        for c in 0..n {
            let mut e = vec![Dd::ZERO; n];
            e[c] = Dd::ONE;
            let x = self.solve(&e)?;
            let sum: f64 = x.iter().map(|v| v.hi.abs()).sum();
            worst = worst.max(sum);
        }
        Some(worst)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn splitmix(state: &mut u64) -> f64 {
        *state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((*state >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
    }

    /// Cofactor-expansion determinant, usable up to dim 6.
    fn cofactor_det(a: &DenseMatrix) -> f64 {
        fn det_rec(data: &[Vec<f64>]) -> f64 {
            let n = data.len();
            if n == 1 {
                return data[0][0];
            }
            let mut acc = 0.0;
            let mut sign = 1.0;
            for c in 0..n {
                let minor: Vec<Vec<f64>> = data[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(i, _)| *i != c)
                            .map(|(_, v)| *v)
                            .collect()
                    })
                    .collect();
                acc += sign * data[0][c] * det_rec(&minor);
                sign = -sign;
            }
            acc
        }
        let rows: Vec<Vec<f64>> = (0..a.dim())
            .map(|r| (0..a.dim()).map(|c| a.get(r, c)).collect())
            .collect();
        det_rec(&rows)
    }

    #[test]
    fn identity_factorization() {
        let a = DenseMatrix::identity(3);
        let f = lu_factor(&a).unwrap();
        assert_eq!(f.determinant(), 1.0);
        assert_eq!(f.smallest_pivot(), 1.0);
        let b = vec![3.0, -1.0, 0.5];
        assert_eq!(f.solve(&b).unwrap(), b);
    }

    #[test]
    fn swap_matrix_has_negative_determinant() {
        let a = DenseMatrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]);
        let f = lu_factor(&a).unwrap();
        assert_eq!(f.determinant(), -1.0);
        assert_eq!(f.permutation(), &[1, 0]);
    }

    #[test]
    fn determinant_matches_cofactor_oracle() {
        let mut state = 0x1234_5678u64;
        for dim in 1..=6usize {
            for _ in 0..200 {
                let mut a = DenseMatrix::zeros(dim);
                for r in 0..dim {
                    for c in 0..dim {
                        a.set(r, c, splitmix(&mut state));
                    }
                }
                let lu_det = LuFactorization::compute(&a).determinant();
                let oracle = cofactor_det(&a);
                if oracle.abs() < 1e-10 {
                    assert!((lu_det - oracle).abs() <= 1e-12 + 1e-10 * oracle.abs());
                } else {
                    assert!(
                        ((lu_det - oracle) / oracle).abs() <= 1e-10,
                        "dim={dim}: {lu_det} vs {oracle}"
                    );
                }
            }
        }
    }

    #[test]
    fn solve_residual_on_well_conditioned_systems() {
        let mut state = 99u64;
        let mut tested = 0;
        while tested < 200 {
            let dim = 2 + (splitmix(&mut state).abs() * 5.0) as usize;
            let mut a = DenseMatrix::zeros(dim);
            for r in 0..dim {
                for c in 0..dim {
                    a.set(r, c, splitmix(&mut state));
                }
                // diagonal dominance keeps the sample well-conditioned
                a.set(r, r, a.get(r, r) + dim as f64);
            }
            if condition_1norm(&a).unwrap() >= 1e6 {
                continue;
            }
            let b: Vec<f64> = (0..dim).map(|_| splitmix(&mut state)).collect();
            let x = lu_factor(&a).unwrap().solve(&b).unwrap();
            let ax = a.mul_vec(&x);
            let resid = ax
                .iter()
                .zip(&b)
                .map(|(p, q)| (p - q).abs())
                .fold(0.0, f64::max);
            let xnorm = x.iter().map(|v| v.abs()).fold(0.0, f64::max);
            let bound = 1e-10 * a.one_norm() * xnorm.max(1e-300);
            assert!(resid <= bound, "residual {resid} exceeds {bound}");
            tested += 1;
        }
    }

    #[test]
    fn diagonal_condition_number() {
        let a = DenseMatrix::from_rows(&[vec![2.0, 0.0], vec![0.0, 4.0]]);
        assert!((condition_1norm(&a).unwrap() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn singular_matrix_is_rejected() {
        let a = DenseMatrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]);
        assert!(matches!(
            lu_factor(&a),
            Err(Error::SingularMatrix { .. })
        ));
        let f = LuFactorization::compute(&a);
        assert!(f.is_singular());
        assert!(f.solve(&[1.0, 0.0]).is_err());
    }

    #[test]
    fn dd_lu_agrees_with_f64_on_mild_systems() {
        let mut state = 4242u64;
        for _ in 0..50 {
            let dim = 4;
            let mut a = DenseMatrix::zeros(dim);
            let mut add = DdMatrix::zeros(dim);
            for r in 0..dim {
                for c in 0..dim {
                    let v = splitmix(&mut state) + if r == c { 4.0 } else { 0.0 };
                    a.set(r, c, v);
                    add.set(r, c, Dd::from_f64(v));
                }
            }
            let b: Vec<f64> = (0..dim).map(|_| splitmix(&mut state)).collect();
            let bd: Vec<Dd> = b.iter().map(|&v| Dd::from_f64(v)).collect();
            let x = lu_factor(&a).unwrap().solve(&b).unwrap();
            let xd = DdLu::compute(&add).solve(&bd).unwrap();
            for i in 0..dim {
                assert!((x[i] - xd[i].to_f64()).abs() < 1e-12);
            }
            let d1 = LuFactorization::compute(&a).determinant();
            let d2 = DdLu::compute(&add).determinant();
            assert!(((d1 - d2) / d2).abs() < 1e-12);
        }
    }
}
