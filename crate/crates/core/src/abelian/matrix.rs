use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn diagonal(entries: &[BigInt]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    /// Builds a matrix from rows. All rows must share a length; `cols` is
    /// only consulted when `rows` is empty.
    pub fn from_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> Self {
        let n = rows.len();
        let cols = rows.first().map_or(cols, Vec::len);
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r);
        }
        IntMatrix { rows: n, cols, data }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
            cols,
        )
    }

    /// Builds a matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(columns: &[Vec<BigInt>], rows: usize) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
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

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> impl Iterator<Item = Vec<BigInt>> + '_ {
        (0..self.cols).map(move |j| self.column(j))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = BigInt::zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect()
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hcat(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, rhs.rows, "hcat row mismatch");
        let mut out = Self::zeros(self.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..rhs.cols {
                out[(i, self.cols + j)] = rhs[(i, j)].clone();
            }
        }
        out
    }

    /// Sub-matrix picking the listed rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> IntMatrix {
        let mut out = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out[(a, b)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn select_columns(&self, cols: &[usize]) -> IntMatrix {
        let rows: Vec<usize> = (0..self.rows).collect();
        self.select(&rows, cols)
    }

    /// Determinant by fraction-free Bareiss elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * &a[(n - 1, n - 1)]
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] += factor * row[src]`
    pub(crate) fn add_row_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = &self.data[src * self.cols + j];
            if !s.is_zero() {
                let v = s * factor;
                self.data[dst * self.cols + j] += v;
            }
        }
    }

    /// `col[dst] += factor * col[src]`
    pub(crate) fn add_col_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = &self.data[i * self.cols + src];
            if !s.is_zero() {
                let v = s * factor;
                self.data[i * self.cols + dst] += v;
            }
        }
    }

    pub(crate) fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -std::mem::take(&mut self.data[i * self.cols + j]);
            self.data[i * self.cols + j] = v;
        }
    }

    pub(crate) fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -std::mem::take(&mut self.data[i * self.cols + j]);
            self.data[i * self.cols + j] = v;
        }
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix {}x{} ", self.rows, self.cols)?;
        f.debug_list()
            .entries((0..self.rows).map(|i| {
                self.row(i)
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(" ")
            }))
            .finish()
    }
}
