//! Sparse matrices over arbitrary-precision integers, with the dense
//! fraction-free helpers used for cross-checks.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A rows x cols matrix over the integers. Zero entries are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), BigInt>,
}

impl IntegerMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntegerMatrix::zero(n, n);
        for i in 0..n {
            m.entries.insert((i, i), BigInt::one());
        }
        m
    }

    pub fn from_triples<I, T>(rows: usize, cols: usize, triples: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, T)>,
        T: Into<BigInt>,
    {
        let mut m = IntegerMatrix::zero(rows, cols);
        for (i, j, v) in triples {
            if i >= rows || j >= cols {
                return Err(Error::InvalidParameter(format!(
                    "entry ({i},{j}) outside {rows}x{cols} matrix"
                )));
            }
            m.set(i, j, v.into());
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        assert!(i < self.rows && j < self.cols, "index out of range");
        if v.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.entries.iter().map(|(&(i, j), v)| (i, j, v))
    }

    pub fn transpose(&self) -> IntegerMatrix {
        let mut t = IntegerMatrix::zero(self.cols, self.rows);
        for (i, j, v) in self.iter() {
            t.entries.insert((j, i), v.clone());
        }
        t
    }

    pub fn mul(&self, other: &IntegerMatrix) -> Result<IntegerMatrix> {
        if self.cols != other.rows {
            return Err(Error::InvalidParameter(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        // Row-major sweep over the right factor grouped by row.
        let mut right_rows: Vec<Vec<(usize, &BigInt)>> = vec![Vec::new(); other.rows];
        for (i, j, v) in other.iter() {
            right_rows[i].push((j, v));
        }
        let mut out = IntegerMatrix::zero(self.rows, other.cols);
        for (i, k, a) in self.iter() {
            for &(j, b) in &right_rows[k] {
                let cell = out.entries.entry((i, j)).or_insert_with(BigInt::zero);
                *cell += a * b;
            }
        }
        out.entries.retain(|_, v| !v.is_zero());
        Ok(out)
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut d = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (i, j, v) in self.iter() {
            d[i][j] = v.clone();
        }
        d
    }

    /// Apply to a column vector.
    pub fn apply(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        if x.len() != self.cols {
            return Err(Error::InvalidParameter("vector length mismatch".into()));
        }
        let mut y = vec![BigInt::zero(); self.rows];
        for (i, j, v) in self.iter() {
            if !x[j].is_zero() {
                y[i] += v * &x[j];
            }
        }
        Ok(y)
    }

    /// Rank over the rationals by fraction-free Gaussian elimination.
    /// Dense; intended for cross-checks on moderate sizes.
    pub fn rank_over_rationals(&self) -> usize {
        let mut a = self.to_dense();
        let rows = self.rows;
        let cols = self.cols;
        let mut rank = 0;
        let mut prev_pivot = BigInt::one();
        for col in 0..cols {
            // Find a pivot row at or below `rank`.
            let Some(pr) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(rank, pr);
            let pivot = a[rank][col].clone();
            for r in (rank + 1)..rows {
                if a[r][col].is_zero() {
                    // Still rescale for Bareiss consistency.
                    for c in col..cols {
                        if !a[r][c].is_zero() {
                            let num = &a[r][c] * &pivot;
                            a[r][c] = num / &prev_pivot;
                        }
                    }
                    continue;
                }
                for c in (col + 1)..cols {
                    let num = &a[r][c] * &pivot - &a[r][col] * &a[rank][c];
                    a[r][c] = num / &prev_pivot;
                }
                a[r][col] = BigInt::zero();
            }
            prev_pivot = pivot;
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    }

    /// Rank over GF(2), bit-packed elimination.
    pub fn rank_mod2(&self) -> usize {
        let words = self.cols.div_ceil(64);
        let mut rows: Vec<Vec<u64>> = vec![vec![0u64; words]; self.rows];
        for (i, j, v) in self.iter() {
            if v.is_odd() {
                rows[i][j / 64] ^= 1 << (j % 64);
            }
        }
        let mut rank = 0;
        for col in 0..self.cols {
            let (w, b) = (col / 64, col % 64);
            let Some(pr) = (rank..self.rows).find(|&r| rows[r][w] & (1 << b) != 0) else {
                continue;
            };
            rows.swap(rank, pr);
            let pivot_row = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row[w] & (1 << b) != 0 {
                    for (x, p) in row.iter_mut().zip(&pivot_row) {
                        *x ^= p;
                    }
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }

    /// Determinant by Bareiss elimination (square matrices).
    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::InvalidParameter("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.to_dense();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                let Some(pr) = ((k + 1)..n).find(|&r| !a[r][k].is_zero()) else {
                    return Ok(BigInt::zero());
                };
                a.swap(k, pr);
                sign = -sign;
            }
            for i in (k + 1)..n {
                for j in (k + 1)..n {
                    let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = num / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        Ok(sign * a[n - 1][n - 1].clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: usize, cols: usize, t: &[(usize, usize, i64)]) -> IntegerMatrix {
        IntegerMatrix::from_triples(rows, cols, t.iter().copied()).unwrap()
    }

    #[test]
    fn mul_and_identity() {
        let a = m(2, 3, &[(0, 0, 1), (0, 2, 2), (1, 1, -3)]);
        let i3 = IntegerMatrix::identity(3);
        assert_eq!(a.mul(&i3).unwrap(), a);
        let i2 = IntegerMatrix::identity(2);
        assert_eq!(i2.mul(&a).unwrap(), a);
        assert!(a.mul(&i2).is_err());
    }

    #[test]
    fn no_zero_entries_stored() {
        let mut a = IntegerMatrix::zero(2, 2);
        a.set(0, 0, BigInt::from(5));
        a.set(0, 0, BigInt::zero());
        assert_eq!(a.nnz(), 0);
    }

    #[test]
    fn rank_and_det() {
        let a = m(2, 2, &[(0, 0, 2), (0, 1, 4), (1, 0, 6), (1, 1, 8)]);
        assert_eq!(a.rank_over_rationals(), 2);
        assert_eq!(a.determinant().unwrap(), BigInt::from(-8));
        let singular = m(2, 2, &[(0, 0, 1), (0, 1, 2), (1, 0, 2), (1, 1, 4)]);
        assert_eq!(singular.rank_over_rationals(), 1);
        assert_eq!(singular.determinant().unwrap(), BigInt::zero());
        assert_eq!(IntegerMatrix::zero(3, 4).rank_over_rationals(), 0);
    }

    #[test]
    fn rank_mod2_differs_from_rational_rank_on_even_matrices() {
        let a = m(2, 2, &[(0, 0, 2), (1, 1, 2)]);
        assert_eq!(a.rank_over_rationals(), 2);
        assert_eq!(a.rank_mod2(), 0);
    }
}
