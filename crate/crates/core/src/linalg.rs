//! Exact linear algebra over [`Scalar`] and [`Poly`] entries.
//!
//! Scalar matrices get field-arithmetic elimination (rank, inverse, solve,
//! Sylvester inertia). Polynomial matrices get fraction-free Bareiss
//! elimination for determinants and rank over the fraction field, so no
//! rational-function type is ever needed.

use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::sync::Arc;

use crate::{ExactError, Poly, Scalar};

/// Dense rectangular matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type ConstMatrix = Matrix<Scalar>;
pub type PolyMatrix = Matrix<Poly>;

impl<T: Clone> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix<T> {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<U: Clone>(&self, mut f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(&mut f).collect(),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero + for<'a> Add<&'a T, Output = T>,
    for<'a> &'a T: Mul<&'a T, Output = T> + Sub<&'a T, Output = T>,
{
    pub fn identity(n: usize) -> Self
    where
        T: One,
    {
        Matrix::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn zeroes(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn add(&self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j).clone() + rhs.get(i, j)
        })
    }

    pub fn sub(&self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) - rhs.get(i, j))
    }

    pub fn mul(&self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        Matrix::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                acc = acc + &(self.get(i, k) * rhs.get(k, j));
            }
            acc
        })
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn trace(&self) -> T {
        assert_eq!(self.rows, self.cols);
        let mut acc = T::zero();
        for i in 0..self.rows {
            acc = acc + self.get(i, i);
        }
        acc
    }
}

/// Classification of an exact linear system `A x = b`.
#[derive(Clone, Debug, PartialEq)]
pub enum LinearSolution {
    Unique(Vec<Scalar>),
    Inconsistent,
    Underdetermined,
}

// ---- Scalar matrices ----

impl ConstMatrix {
    pub fn is_symmetric(&self) -> bool {
        self.symmetry_defect().is_none()
    }

    /// First entry violating symmetry, if any.
    pub fn symmetry_defect(&self) -> Option<(usize, usize)> {
        if self.rows != self.cols {
            return Some((self.rows.min(self.cols), 0));
        }
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                if self.get(i, j) != self.get(j, i) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Rank over the scalar field, by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let pivot = (rank..m.rows).find(|&i| !m.get(i, col).is_zero());
            let Some(p) = pivot else { continue };
            m.swap_rows(rank, p);
            let inv = m.get(rank, col).inverse().unwrap();
            for i in (rank + 1)..m.rows {
                if m.get(i, col).is_zero() {
                    continue;
                }
                let factor = m.get(i, col) * &inv;
                for j in col..m.cols {
                    let v = m.get(i, j) - &(&factor * m.get(rank, j));
                    m.set(i, j, v);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Exact inverse, or `None` when singular.
    pub fn inverse(&self) -> Option<ConstMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut inv = ConstMatrix::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&i| !m.get(i, col).is_zero())?;
            m.swap_rows(col, pivot);
            inv.swap_rows(col, pivot);
            let scale = m.get(col, col).inverse().unwrap();
            for j in 0..n {
                m.set(col, j, m.get(col, j) * &scale);
                inv.set(col, j, inv.get(col, j) * &scale);
            }
            for i in 0..n {
                if i == col || m.get(i, col).is_zero() {
                    continue;
                }
                let factor = m.get(i, col).clone();
                for j in 0..n {
                    let v = m.get(i, j) - &(&factor * m.get(col, j));
                    m.set(i, j, v);
                    let w = inv.get(i, j) - &(&factor * inv.get(col, j));
                    inv.set(i, j, w);
                }
            }
        }
        Some(inv)
    }

    /// Sylvester inertia `(positive, negative, null)` of a symmetric matrix,
    /// by exact symmetric congruence elimination.
    pub fn signature(&self) -> Result<(usize, usize, usize), ExactError> {
        if let Some((i, j)) = self.symmetry_defect() {
            return Err(ExactError::NotSymmetric(i, j));
        }
        let n = self.rows;
        let mut b = self.clone();
        let mut pos = 0;
        let mut neg = 0;
        let mut r = 0;
        while r < n {
            if b.get(r, r).is_zero() {
                if let Some(t) = ((r + 1)..n).find(|&t| !b.get(t, t).is_zero()) {
                    b.swap_rows(r, t);
                    b.swap_cols(r, t);
                } else {
                    // All remaining diagonal entries vanish; a nonzero
                    // off-diagonal pair (s, t) yields a nonzero diagonal
                    // after the congruence row_s += row_t, col_s += col_t.
                    let mut found = None;
                    'search: for s in r..n {
                        for t in (s + 1)..n {
                            if !b.get(s, t).is_zero() {
                                found = Some((s, t));
                                break 'search;
                            }
                        }
                    }
                    let Some((s, t)) = found else { break };
                    for j in 0..n {
                        let v = b.get(s, j) + b.get(t, j);
                        b.set(s, j, v);
                    }
                    for i in 0..n {
                        let v = b.get(i, s) + b.get(i, t);
                        b.set(i, s, v);
                    }
                    b.swap_rows(r, s);
                    b.swap_cols(r, s);
                }
            }
            let pivot = b.get(r, r).clone();
            debug_assert!(!pivot.is_zero());
            if pivot.is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            let inv = pivot.inverse().unwrap();
            for i in (r + 1)..n {
                if b.get(i, r).is_zero() {
                    continue;
                }
                let factor = b.get(i, r) * &inv;
                for j in r..n {
                    let v = b.get(i, j) - &(&factor * b.get(r, j));
                    b.set(i, j, v);
                }
                for jj in r..n {
                    let v = b.get(jj, i) - &(&factor * b.get(jj, r));
                    b.set(jj, i, v);
                }
            }
            r += 1;
        }
        Ok((pos, neg, n - pos - neg))
    }

    /// Exact solution-set classification of `A x = b`.
    pub fn solve(&self, b: &[Scalar]) -> LinearSolution {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let mut m = Matrix::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                b[i].clone()
            }
        });
        let mut pivots: Vec<usize> = Vec::new();
        let mut rank = 0;
        for col in 0..self.cols {
            let pivot = (rank..self.rows).find(|&i| !m.get(i, col).is_zero());
            let Some(p) = pivot else { continue };
            m.swap_rows(rank, p);
            let inv = m.get(rank, col).inverse().unwrap();
            for j in col..=self.cols {
                m.set(rank, j, m.get(rank, j) * &inv);
            }
            for i in 0..self.rows {
                if i == rank || m.get(i, col).is_zero() {
                    continue;
                }
                let factor = m.get(i, col).clone();
                for j in col..=self.cols {
                    let v = m.get(i, j) - &(&factor * m.get(rank, j));
                    m.set(i, j, v);
                }
            }
            pivots.push(col);
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        for i in rank..self.rows {
            if !m.get(i, self.cols).is_zero() {
                return LinearSolution::Inconsistent;
            }
        }
        if rank < self.cols {
            return LinearSolution::Underdetermined;
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (row, &col) in pivots.iter().enumerate() {
            x[col] = m.get(row, self.cols).clone();
        }
        LinearSolution::Unique(x)
    }

    pub fn to_poly(&self) -> PolyMatrix {
        self.map(|s| Poly::constant(s.clone()))
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(Scalar::to_f64).collect())
            .collect()
    }
}

// ---- Polynomial matrices ----

impl PolyMatrix {
    /// Determinant by fraction-free Bareiss elimination. Each division by the
    /// previous pivot is exact by Sylvester's identity.
    pub fn det(&self) -> Poly {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Poly::one();
        }
        let mut m = self.clone();
        let mut prev = Poly::one();
        let mut sign = false;
        for r in 0..n {
            let pivot = (r..n).find(|&i| !m.get(i, r).is_zero());
            let Some(p) = pivot else {
                return Poly::zero();
            };
            if p != r {
                m.swap_rows(r, p);
                sign = !sign;
            }
            for i in (r + 1)..n {
                for j in (r + 1)..n {
                    let num =
                        &(m.get(r, r) * m.get(i, j)) - &(m.get(i, r) * m.get(r, j));
                    let v = num
                        .div_exact(&prev)
                        .expect("fraction-free elimination divides exactly");
                    m.set(i, j, v);
                }
                m.set(i, r, Poly::zero());
            }
            prev = m.get(r, r).clone();
        }
        let det = m.get(n - 1, n - 1).clone();
        if sign {
            -det
        } else {
            det
        }
    }

    /// Rank over the fraction field, by Bareiss elimination with full pivoting.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut prev = Poly::one();
        let mut r = 0;
        let steps = m.rows.min(m.cols);
        while r < steps {
            let mut pivot = None;
            'search: for i in r..m.rows {
                for j in r..m.cols {
                    if !m.get(i, j).is_zero() {
                        pivot = Some((i, j));
                        break 'search;
                    }
                }
            }
            let Some((pi, pj)) = pivot else { break };
            m.swap_rows(r, pi);
            m.swap_cols(r, pj);
            for i in (r + 1)..m.rows {
                for j in (r + 1)..m.cols {
                    let num =
                        &(m.get(r, r) * m.get(i, j)) - &(m.get(i, r) * m.get(r, j));
                    let v = num
                        .div_exact(&prev)
                        .expect("fraction-free elimination divides exactly");
                    m.set(i, j, v);
                }
                m.set(i, r, Poly::zero());
            }
            prev = m.get(r, r).clone();
            r += 1;
        }
        r
    }

    /// All `size x size` minors, by row/column combination.
    pub fn minors(&self, size: usize) -> Vec<Poly> {
        let mut out = Vec::new();
        if size == 0 || size > self.rows || size > self.cols {
            return out;
        }
        for rows in combinations(self.rows, size) {
            for cols in combinations(self.cols, size) {
                let sub = Matrix::from_fn(size, size, |i, j| {
                    self.get(rows[i], cols[j]).clone()
                });
                out.push(sub.det());
            }
        }
        out
    }

    /// Exact evaluation at a rational point of the chart.
    pub fn eval(&self, point: &[BigRational]) -> Result<ConstMatrix, ExactError> {
        let mut data = Vec::with_capacity(self.data.len());
        for p in &self.data {
            data.push(p.eval(point)?);
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn to_f64(&self, point: &[f64]) -> Vec<Vec<f64>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|p| p.to_f64(point)).collect())
            .collect()
    }

    /// Scale every entry by an exact scalar.
    pub fn scale(&self, c: &Scalar) -> PolyMatrix {
        self.map(|p| p.scale(c))
    }

    pub fn identity_in(n: usize, vars: &Arc<Vec<String>>) -> PolyMatrix {
        let _ = vars;
        Matrix::from_fn(n, n, |i, j| if i == j { Poly::one() } else { Poly::zero() })
    }

    /// Inverse of a polynomial matrix whose determinant is a nonzero constant;
    /// the inverse is then itself polynomial (adjugate over the constant).
    /// Returns the inverse together with the determinant.
    pub fn inverse_const_det(&self) -> Result<(PolyMatrix, Scalar), ExactError> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let det = self.det();
        let det = match det.constant_value() {
            Some(c) if !c.is_zero() => c,
            _ => return Err(ExactError::Singular),
        };
        let det_inv = det.inverse().unwrap();
        let adj = Matrix::from_fn(n, n, |i, j| {
            // adj[i][j] = (-1)^{i+j} * minor with row j, column i deleted
            let sub = Matrix::from_fn(n - 1, n - 1, |r, c| {
                let rr = if r < j { r } else { r + 1 };
                let cc = if c < i { c } else { c + 1 };
                self.get(rr, cc).clone()
            });
            let m = sub.det();
            if (i + j) % 2 == 0 {
                m
            } else {
                -m
            }
        });
        Ok((adj.scale(&det_inv), det))
    }

    /// First nonzero entry, if any, with its position.
    pub fn first_nonzero(&self) -> Option<(usize, usize, &Poly)> {
        for i in 0..self.rows {
            for j in 0..self.cols {
                let p = self.get(i, j);
                if !p.is_zero() {
                    return Some((i, j, p));
                }
            }
        }
        None
    }
}

/// All `k`-element index subsets of `0..n`, in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
        }
        idx[i] += 1;
        for j in (i + 1)..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}
