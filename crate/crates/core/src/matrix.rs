//! Small dense matrices over `Q[tau]` with exact elimination.

use std::fmt;
use std::ops::{Index, IndexMut};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::golden::GoldenRat;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<GoldenRat>>", into = "Vec<Vec<GoldenRat>>")]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<GoldenRat>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![GoldenRat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = GoldenRat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<GoldenRat>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let v = rows.iter().map(|r| r.iter().map(|&x| GoldenRat::from_int(x)).collect()).collect();
        Self::from_rows(v).expect("rectangular literal")
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> GoldenRat) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[GoldenRat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<GoldenRat> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<GoldenRat>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map(&self, f: impl Fn(&GoldenRat) -> GoldenRat) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn conj(&self) -> Self {
        self.map(GoldenRat::conj)
    }

    pub fn entries(&self) -> impl Iterator<Item = &GoldenRat> {
        self.data.iter()
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// Panics on incompatible shapes.
    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix shapes do not compose");
        Self::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols)
                .filter(|&k| !self[(i, k)].is_zero() && !rhs[(k, j)].is_zero())
                .map(|k| &self[(i, k)] * &rhs[(k, j)])
                .sum()
        })
    }

    /// Panics on incompatible shapes.
    pub fn mul_vec(&self, v: &[GoldenRat]) -> Vec<GoldenRat> {
        assert_eq!(self.cols, v.len(), "vector length does not match");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).filter(|(a, b)| !a.is_zero() && !b.is_zero()).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `x^T M y`.
    pub fn bilinear(&self, x: &[GoldenRat], y: &[GoldenRat]) -> GoldenRat {
        let my = self.mul_vec(y);
        x.iter().zip(&my).map(|(a, b)| a * b).sum()
    }

    /// Principal submatrix on the given indices, in the given order.
    pub fn submatrix(&self, idx: &[usize]) -> Matrix {
        Self::from_fn(idx.len(), idx.len(), |i, j| self[(idx[i], idx[j])].clone())
    }

    pub fn without(&self, drop: &[usize]) -> Matrix {
        let keep: Vec<usize> = (0..self.rows).filter(|i| !drop.contains(i)).collect();
        self.submatrix(&keep)
    }

    /// Exact determinant by Gaussian elimination over `Q[tau]`.
    pub fn det(&self) -> GoldenRat {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.to_rows();
        let mut det = GoldenRat::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return GoldenRat::zero();
            };
            if p != col {
                a.swap(p, col);
                det = -det;
            }
            let pivot = a[col][col].clone();
            det = &det * &pivot;
            let inv = pivot.inv().expect("nonzero pivot");
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let f = &a[r][col] * &inv;
                for c in col..n {
                    let t = &f * &a[col][c];
                    a[r][c] -= &t;
                }
            }
        }
        det
    }

    /// Solves `M x = b` for square nonsingular `M`.
    pub fn solve(&self, b: &[GoldenRat]) -> Result<Vec<GoldenRat>> {
        let inv = self.inverse()?;
        Ok(inv.mul_vec(b))
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::Dimension("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.to_rows();
        let mut inv = Matrix::identity(n).to_rows();
        for col in 0..n {
            let p = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::Singular)?;
            a.swap(p, col);
            inv.swap(p, col);
            let pinv = a[col][col].inv()?;
            for c in 0..n {
                a[col][c] = &a[col][c] * &pinv;
                inv[col][c] = &inv[col][c] * &pinv;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for c in 0..n {
                    let t = &f * &a[col][c];
                    a[r][c] -= &t;
                    let t = &f * &inv[col][c];
                    inv[r][c] -= &t;
                }
            }
        }
        Matrix::from_rows(inv)
    }

    /// Classical adjugate; works for singular matrices too.
    pub fn adjugate(&self) -> Matrix {
        assert!(self.is_square(), "adjugate of a non-square matrix");
        let n = self.rows;
        if n == 1 {
            return Matrix::identity(1);
        }
        if let Ok(inv) = self.inverse() {
            let d = self.det();
            return inv.map(|x| x * &d);
        }
        Self::from_fn(n, n, |i, j| {
            // adj_ij = (-1)^(i+j) * minor_ji
            let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
            let minor = Self::from_fn(n - 1, n - 1, |r, c| self[(rows[r], cols[c])].clone()).det();
            if (i + j) % 2 == 0 {
                minor
            } else {
                -minor
            }
        })
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = GoldenRat;
    fn index(&self, (i, j): (usize, usize)) -> &GoldenRat {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut GoldenRat {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl TryFrom<Vec<Vec<GoldenRat>>> for Matrix {
    type Error = Error;
    fn try_from(rows: Vec<Vec<GoldenRat>>) -> Result<Self> {
        Matrix::from_rows(rows)
    }
}

impl From<Matrix> for Vec<Vec<GoldenRat>> {
    fn from(m: Matrix) -> Self {
        m.to_rows()
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> =
            (0..self.rows).map(|i| self.row(i).iter().map(ToString::to_string).collect()).collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for row in cells {
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "[ {} ]", line.join("  "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_and_inverse() {
        let m = Matrix::from_i64(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]);
        assert_eq!(m.det(), GoldenRat::from_int(4));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(3));
        assert_eq!(m.adjugate(), inv.map(|x| x * GoldenRat::from_int(4)));
    }

    #[test]
    fn singular_adjugate() {
        // affine A2: adjugate of a corank-1 matrix is rank one
        let m = Matrix::from_i64(&[&[2, -1, -1], &[-1, 2, -1], &[-1, -1, 2]]);
        assert!(m.det().is_zero());
        assert!(m.inverse().is_err());
        let adj = m.adjugate();
        assert!(adj.entries().all(|x| *x == GoldenRat::from_int(3)));
        assert_eq!(m.mul(&adj), Matrix::zeros(3, 3));
    }

    #[test]
    fn golden_entries() {
        let t = GoldenRat::tau();
        let m = Matrix::from_rows(vec![vec![GoldenRat::from_int(2), -&t], vec![-&t, GoldenRat::from_int(2)]]).unwrap();
        // 4 - tau^2 = 3 - tau
        assert_eq!(m.det(), GoldenRat::new(3, -1, 1));
    }
}
