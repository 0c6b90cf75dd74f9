//! Dense matrices over exact rationals.
//!
//! This is the linear-algebra substrate for the matrix-valued instance
//! categories (direct sums of rational vector spaces, rational inner-product
//! spaces, and the direct-sum-plus-tensor example). It provides exactly the
//! operations those categories need — products, transposes, Kronecker and
//! block constructions, rank and inverse by Gaussian elimination — all over
//! `Rat`, so rank decisions and equality checks are exact.

use crate::rat::Rat;
use num_traits::{One, Zero};

/// A row-major dense matrix of exact rationals.
///
/// Shape mismatches in the arithmetic below are programming errors (the
/// category layer checks object compatibility before ever multiplying), so
/// they panic rather than surface as recoverable errors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl Mat {
    pub fn zero(rows: usize, cols: usize) -> Mat {
        Mat { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    /// Builds a matrix from explicit rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// The permutation matrix sending basis vector `j` of the source to
    /// basis vector `perm[j]` of the target.
    pub fn permutation(perm: &[usize]) -> Mat {
        let n = perm.len();
        let mut m = Mat::zero(n, n);
        for (j, &i) in perm.iter().enumerate() {
            m.set(i, j, Rat::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Mat::identity(self.rows)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Matrix product `self · rhs`. Zero entries are skipped, which matters
    /// because most structural morphisms here are permutation-like.
    pub fn mul(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.rows, "inner dimensions differ");
        let mut out = Mat::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j).clone();
                    out.set(i, j, cur + a * b);
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shapes differ");
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a += b;
        }
        out
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Horizontal concatenation `[self | rhs]` (equal row counts).
    pub fn hcat(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.rows, rhs.rows, "row counts differ");
        let mut out = Mat::zero(self.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..rhs.cols {
                out.set(i, self.cols + j, rhs.get(i, j).clone());
            }
        }
        out
    }

    /// Block-diagonal sum of the given matrices (the ⊕ of linear maps).
    pub fn block_diag(blocks: &[&Mat]) -> Mat {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Mat::zero(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    if !b.get(i, j).is_zero() {
                        out.set(r0 + i, c0 + j, b.get(i, j).clone());
                    }
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Kronecker product with row-major index convention: basis vector
    /// `(i, j)` of the source maps through entry `(i·rows(b)+k, j·cols(b)+l)`.
    pub fn kron(a: &Mat, b: &Mat) -> Mat {
        let mut out = Mat::zero(a.rows * b.rows, a.cols * b.cols);
        for i in 0..a.rows {
            for j in 0..a.cols {
                let x = a.get(i, j);
                if x.is_zero() {
                    continue;
                }
                for k in 0..b.rows {
                    for l in 0..b.cols {
                        let y = b.get(k, l);
                        if !y.is_zero() {
                            out.set(i * b.rows + k, j * b.cols + l, x * y);
                        }
                    }
                }
            }
        }
        out
    }

    /// Row-reduces a working copy and returns the number of pivots.
    ///
    /// Plain Gaussian elimination over ℚ: pick any nonzero pivot (no scaling
    /// concerns in exact arithmetic), eliminate below, count pivots. Exact, so
    /// the computed rank is exact, never an estimate.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        let mut row = 0;
        for col in 0..m.cols {
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let pivot = m.get(row, col).clone();
            for r in row + 1..m.rows {
                let factor = m.get(r, col) / &pivot;
                if factor.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let v = m.get(r, c) - &factor * m.get(row, c);
                    m.set(r, c, v);
                }
            }
            rank += 1;
            row += 1;
            if row == m.rows {
                break;
            }
        }
        rank
    }

    /// Exact inverse by Gauss–Jordan elimination; `None` for singular or
    /// non-square input.
    pub fn inverse(&self) -> Option<Mat> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut inv = Mat::identity(n);
        for col in 0..n {
            let p = (col..n).find(|&r| !m.get(r, col).is_zero())?;
            m.swap_rows(col, p);
            inv.swap_rows(col, p);
            let pivot = m.get(col, col).clone();
            for c in 0..n {
                m.set(col, c, m.get(col, c) / &pivot);
                inv.set(col, c, inv.get(col, c) / &pivot);
            }
            for r in 0..n {
                if r == col || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for c in 0..n {
                    let v = m.get(r, c) - &factor * m.get(col, c);
                    m.set(r, c, v);
                    let w = inv.get(r, c) - &factor * inv.get(col, c);
                    inv.set(r, c, w);
                }
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}
