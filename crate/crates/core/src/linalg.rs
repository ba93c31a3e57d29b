//! Exact rational linear algebra: rank by fraction-free elimination and
//! nullspace bases over the rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Dense rational matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl QMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn from_columns(cols: &[Vec<BigRational>]) -> Self {
        let ncols = cols.len();
        let nrows = cols.first().map_or(0, |c| c.len());
        let mut m = QMatrix::zero(nrows, ncols);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), nrows, "ragged column lengths");
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    /// Append the columns of `other` on the right.
    pub fn hstack(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.rows, other.rows, "row count mismatch");
        let mut m = QMatrix::zero(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    pub fn matmul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let mut m = QMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let cur = m.get(i, j) + a * b;
                        m.set(i, j, cur);
                    }
                }
            }
        }
        m
    }

    /// Rank via Bareiss fraction-free elimination over the integers after
    /// clearing denominators row by row.
    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        let mut a: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| {
                let mut lcm = BigInt::one();
                for j in 0..self.cols {
                    let d = self.get(i, j).denom();
                    lcm = num_integer::lcm(lcm, d.clone());
                }
                (0..self.cols)
                    .map(|j| {
                        let v = self.get(i, j);
                        v.numer() * (&lcm / v.denom())
                    })
                    .collect()
            })
            .collect();

        let mut rank = 0usize;
        let mut prev = BigInt::one();
        let mut row = 0usize;
        for col in 0..self.cols {
            // pivot: smallest nonzero entry keeps intermediate growth down
            let mut pivot = None;
            for r in row..self.rows {
                if !a[r][col].is_zero() {
                    match pivot {
                        None => pivot = Some(r),
                        Some(p) => {
                            if a[r][col].abs() < a[p][col].abs() {
                                pivot = Some(r);
                            }
                        }
                    }
                }
            }
            let Some(p) = pivot else { continue };
            a.swap(row, p);
            for r in row + 1..self.rows {
                for c in col + 1..self.cols {
                    let num = &a[row][col] * &a[r][c] - &a[r][col] * &a[row][c];
                    a[r][c] = num / &prev;
                }
                a[r][col] = BigInt::zero();
            }
            prev = a[row][col].clone();
            rank += 1;
            row += 1;
            if row == self.rows {
                break;
            }
        }
        rank
    }

    /// Reduced row echelon form; returns the pivot column indices.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0usize;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            for j in 0..self.cols {
                let tmp = self.get(row, j).clone();
                self.set(row, j, self.get(p, j).clone());
                self.set(p, j, tmp);
            }
            let inv = BigRational::one() / self.get(row, col).clone();
            for j in col..self.cols {
                let v = self.get(row, j) * &inv;
                self.set(row, j, v);
            }
            for r in 0..self.rows {
                if r == row || self.get(r, col).is_zero() {
                    continue;
                }
                let f = self.get(r, col).clone();
                for j in col..self.cols {
                    let v = self.get(r, j) - &f * self.get(row, j);
                    self.set(r, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    /// Basis of the right nullspace, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<BigRational>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![BigRational::zero(); self.cols];
            v[free] = BigRational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m.get(r, free).clone();
            }
            basis.push(v);
        }
        basis
    }
}
