//! Dense matrices over a [`Field`], exact elimination and SVD-based numerics.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::scalar::{primitive_integer, Field};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Field> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> T) -> Self {
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
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| T::from_i64(v)).collect()).collect())
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }
    pub fn ncols(&self) -> usize {
        self.cols
    }
    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }
    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }
    pub fn data(&self) -> &[T] {
        &self.data
    }
    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Matrix<T>) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(T::zero(), |acc, k| acc + self.get(i, k).clone() * other.get(k, j).clone())
        })
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone()))
            .collect()
    }

    pub fn add(&self, other: &Matrix<T>) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j).clone() + other.get(i, j).clone())
    }

    pub fn scale(&self, s: &T) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x.clone() * s.clone()).collect() }
    }

    pub fn map<U: Field>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Self::from_rows(idx.iter().map(|&i| self.row(i).to_vec()).collect())
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        Self::from_fn(self.rows, idx.len(), |i, j| self.get(i, idx[j]).clone())
    }

    pub fn vstack(&self, other: &Matrix<T>) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn max_magnitude(&self) -> f64 {
        self.data.iter().map(|x| x.magnitude()).fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix<T>, Vec<usize>) {
        let mut m = self.clone();
        let tol = T::elimination_tol() * self.max_magnitude() * (self.rows.max(self.cols) as f64);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let p = if T::EXACT {
                (r..self.rows).find(|&i| !m.get(i, c).is_zero())
            } else {
                (r..self.rows)
                    .max_by(|&a, &b| m.get(a, c).magnitude().total_cmp(&m.get(b, c).magnitude()))
                    .filter(|&i| m.get(i, c).magnitude() > tol)
            };
            let Some(p) = p else { continue };
            m.swap_rows(r, p);
            let inv = T::one() / m.get(r, c).clone();
            for j in c..self.cols {
                let v = m.get(r, j).clone() * inv.clone();
                m.set(r, j, v);
            }
            m.set(r, c, T::one());
            for i in 0..self.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..self.cols {
                    let v = m.get(i, j).clone() - f.clone() * m.get(r, j).clone();
                    m.set(i, j, v);
                }
                m.set(i, c, T::zero());
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right nullspace, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<T>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![T::zero(); self.cols];
                v[f] = T::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(row, f).clone();
                }
                v
            })
            .collect()
    }

    pub fn left_nullspace(&self) -> Vec<Vec<T>> {
        self.transpose().nullspace()
    }

    /// Row basis of the row space (nonzero rows of the RREF).
    pub fn row_space(&self) -> Vec<Vec<T>> {
        let (r, pivots) = self.rref();
        (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
    }

    pub fn det(&self) -> T {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = T::one();
        for c in 0..n {
            let p = if T::EXACT {
                (c..n).find(|&i| !m.get(i, c).is_zero())
            } else {
                (c..n).max_by(|&a, &b| m.get(a, c).magnitude().total_cmp(&m.get(b, c).magnitude()))
            };
            let Some(p) = p else { return T::zero() };
            if m.get(p, c).is_zero() {
                return T::zero();
            }
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det = det * piv.clone();
            for i in c + 1..n {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone() / piv.clone();
                for j in c..n {
                    let v = m.get(i, j).clone() - f.clone() * m.get(c, j).clone();
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Matrix<T>> {
        let n = self.rows;
        assert_eq!(n, self.cols);
        let aug = Self::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                T::one()
            } else {
                T::zero()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Self::from_fn(n, n, |i, j| r.get(i, j + n).clone()))
    }

    pub fn to_complex(&self) -> Matrix<Complex64> {
        self.map(|x| x.to_complex())
    }
}

/// Rank of an exact matrix by fraction-free (Bareiss) elimination on the
/// integer matrix obtained by clearing each row's denominators.
pub fn rank_exact(m: &Matrix<BigRational>) -> usize {
    let mut a: Vec<Vec<BigInt>> = (0..m.nrows()).map(|i| primitive_integer(m.row(i))).collect();
    let rows = a.len();
    let cols = m.ncols();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = (&a[r][c] * &a[i][j] - &a[i][c] * &a[r][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

fn to_dmatrix<T: Field>(m: &Matrix<T>, min_rows: usize) -> DMatrix<Complex64> {
    let rows = m.nrows().max(min_rows);
    let vals = crate::scalar::normalized_complex(m.data());
    DMatrix::from_fn(rows, m.ncols(), |i, j| if i < m.nrows() { vals[i * m.ncols() + j] } else { Complex64::new(0.0, 0.0) })
}

/// Singular values in descending order.
pub fn singular_values<T: Field>(m: &Matrix<T>) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    let mut s: Vec<f64> = to_dmatrix(m, 0).singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Number of singular values above `gap` times the largest one.
pub fn numerical_rank<T: Field>(m: &Matrix<T>, gap: f64) -> usize {
    let s = singular_values(m);
    match s.first() {
        Some(&top) if top > 0.0 => s.iter().filter(|&&x| x > gap * top).count(),
        _ => 0,
    }
}

pub const DEFAULT_RANK_GAP: f64 = 1e-8;

/// Right singular vectors whose singular values fall below `gap` times the
/// largest one (including the structurally zero ones of wide matrices).
pub fn numerical_nullspace<T: Field>(m: &Matrix<T>, gap: f64) -> Vec<Vec<Complex64>> {
    let n = m.ncols();
    let a = to_dmatrix(m, n);
    let svd = a.svd(false, true);
    let vt = svd.v_t.expect("requested V^T");
    let top = svd.singular_values.iter().copied().fold(0.0, f64::max);
    (0..svd.singular_values.len())
        .filter(|&i| top == 0.0 || svd.singular_values[i] <= gap * top)
        .map(|i| (0..n).map(|j| vt[(i, j)].conj()).collect())
        .collect()
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// Generalized cross product: the signed maximal minors of an `(n-1)×n`
/// matrix, spanning its kernel when it has full rank.
pub fn kernel_by_minors<T: Field>(m: &Matrix<T>) -> Vec<T> {
    let n = m.ncols();
    assert_eq!(m.nrows() + 1, n, "kernel_by_minors needs (n-1) x n");
    (0..n)
        .map(|j| {
            let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
            let d = m.select_cols(&cols).det();
            if j % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use crate::Rational;

    fn q(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_i64_rows(rows)
    }

    #[test]
    fn ranks() {
        assert_eq!(rank_exact(&Matrix::<Rational>::identity(3)), 3);
        let skew = q(&[&[0, 0, 0], &[0, 0, 1], &[0, -1, 0]]);
        assert_eq!(rank_exact(&skew), 2);
        assert_eq!(skew.rank(), 2);
        assert_eq!(numerical_rank(&skew, DEFAULT_RANK_GAP), 2);
        assert_eq!(rank_exact(&Matrix::<Rational>::zeros(2, 4)), 0);
    }

    #[test]
    fn nullspace_and_det() {
        let m = q(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(m.mul_vec(&ns[0]).iter().all(|x| x.is_zero()));
        assert_eq!(m.det(), rat(0));
        let a = q(&[&[2, 1], &[1, 3]]);
        assert_eq!(a.det(), rat(5));
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(2));
    }

    #[test]
    fn svd_nullspace_wide() {
        let m: Matrix<f64> = Matrix::from_i64_rows(&[&[1, 0, 0, 0], &[0, 1, 0, 0]]);
        let ns = numerical_nullspace(&m, 1e-8);
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(v[0].norm() < 1e-12 && v[1].norm() < 1e-12);
        }
    }

    #[test]
    fn minors_kernel() {
        let m = q(&[&[1, 0, 0, -1], &[0, 1, 0, 0], &[0, 0, 1, 0]]);
        let k = kernel_by_minors(&m);
        assert!(m.mul_vec(&k).iter().all(|x| x.is_zero()));
        assert!(k.iter().any(|x| !x.is_zero()));
    }

    #[test]
    fn combos() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(9, 9).len(), 1);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
    }
}
