//! Projective points in P² and P³ and 3×3 matrices up to scale.

use std::fmt;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{numerical_rank, rank_exact, Matrix, DEFAULT_RANK_GAP};
use crate::scalar::{primitive_integer, Field};

/// Relative tolerance for projective equality of float points.
pub const PROJ_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct ProjPoint<T, const N: usize> {
    coords: [T; N],
}

pub type ProjPoint2<T> = ProjPoint<T, 3>;
pub type ProjPoint3<T> = ProjPoint<T, 4>;

impl<T: Field, const N: usize> ProjPoint<T, N> {
    pub fn new(coords: [T; N]) -> Result<Self> {
        if coords.iter().all(|c| c.is_zero()) {
            return Err(Error::ZeroVector);
        }
        Ok(ProjPoint { coords })
    }

    pub fn from_slice(v: &[T]) -> Result<Self> {
        if v.len() != N {
            return Err(Error::DimensionMismatch(v.len(), N));
        }
        Self::new(std::array::from_fn(|i| v[i].clone()))
    }

    pub fn from_i64(v: [i64; N]) -> Self {
        Self::new(v.map(T::from_i64)).expect("nonzero integer point")
    }

    pub fn coords(&self) -> &[T; N] {
        &self.coords
    }

    pub fn norm(&self) -> f64 {
        self.coords.iter().map(|c| c.magnitude().powi(2)).sum::<f64>().sqrt()
    }

    /// Projective equality. Exact fields require `tol == 0`.
    pub fn proj_eq(&self, other: &Self, tol: f64) -> bool {
        proj_equal(&self.coords, &other.coords, tol).expect("same dimension")
    }

    /// Canonical representative: primitive integer vector with positive
    /// leading entry (exact) or first non-negligible coordinate equal to 1.
    pub fn canonical(&self) -> Self {
        ProjPoint { coords: canonical_coords(&self.coords) }
    }

    pub fn to_complex(&self) -> ProjPoint<Complex64, N> {
        ProjPoint { coords: std::array::from_fn(|i| self.coords[i].to_complex()) }
    }

    pub fn map<U: Field>(&self, f: impl Fn(&T) -> U) -> Result<ProjPoint<U, N>> {
        ProjPoint::new(std::array::from_fn(|i| f(&self.coords[i])))
    }

    pub fn dot(&self, v: &[T; N]) -> T {
        self.coords.iter().zip(v).fold(T::zero(), |a, (x, y)| a + x.clone() * y.clone())
    }
}

impl<T: Field, const N: usize> fmt::Display for ProjPoint<T, N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coords.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", c.join(":"))
    }
}

/// Scales so the result is a canonical representative of the same point.
pub fn canonical_coords<T: Field, const N: usize>(v: &[T; N]) -> [T; N] {
    if T::EXACT {
        let rs: Vec<BigRational> = v.iter().map(|x| x.as_rational().expect("exact")).collect();
        let mut ints = primitive_integer(&rs);
        if ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
            ints.iter_mut().for_each(|x| *x = -x.clone());
        }
        std::array::from_fn(|i| T::from_rational(&BigRational::from_integer(ints[i].clone())))
    } else {
        let max = v.iter().map(|x| x.magnitude()).fold(0.0, f64::max);
        let lead = v.iter().find(|x| x.magnitude() > 1e-12 * max).cloned().unwrap_or_else(T::one);
        std::array::from_fn(|i| v[i].clone() / lead.clone())
    }
}

/// True iff `p ~ q`: every 2×2 minor `p_i q_j - p_j q_i` vanishes (exact) or
/// has magnitude at most `tol · ‖p‖‖q‖`.
pub fn proj_equal<T: Field>(p: &[T], q: &[T], tol: f64) -> Result<bool> {
    if p.len() != q.len() {
        return Err(Error::DimensionMismatch(p.len(), q.len()));
    }
    if T::EXACT && tol != 0.0 {
        return Err(Error::ToleranceForExact);
    }
    let np = p.iter().map(|x| x.magnitude().powi(2)).sum::<f64>().sqrt();
    let nq = q.iter().map(|x| x.magnitude().powi(2)).sum::<f64>().sqrt();
    if np == 0.0 || nq == 0.0 {
        return Ok(false);
    }
    let scale = np * nq;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            let m = p[i].clone() * q[j].clone() - p[j].clone() * q[i].clone();
            if !m.is_negligible(scale, tol) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Projective distance between complex vectors: the sine of the angle
/// between the lines they span.
pub fn proj_distance(p: &[Complex64], q: &[Complex64]) -> f64 {
    let np: f64 = p.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let nq: f64 = q.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if np == 0.0 || nq == 0.0 {
        return f64::INFINITY;
    }
    // |p ∧ q|, free of the cancellation in 1 − cos²
    let mut wedge = 0.0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            wedge += (p[i] * q[j] - p[j] * q[i]).norm_sqr();
        }
    }
    (wedge.sqrt() / (np * nq)).min(1.0)
}

pub fn cross<T: Field>(a: &[T; 3], b: &[T; 3]) -> [T; 3] {
    [
        a[1].clone() * b[2].clone() - a[2].clone() * b[1].clone(),
        a[2].clone() * b[0].clone() - a[0].clone() * b[2].clone(),
        a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone(),
    ]
}

pub fn dot<T: Field>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

pub fn is_zero_vec<T: Field>(v: &[T]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// Zero test with a relative tolerance for inexact fields.
pub fn is_negligible_vec<T: Field>(v: &[T], scale: f64, tol: f64) -> bool {
    v.iter().all(|x| x.is_negligible(scale, tol))
}

pub fn vec_norm<T: Field>(v: &[T]) -> f64 {
    v.iter().map(|x| x.magnitude().powi(2)).sum::<f64>().sqrt()
}

/// Element of P(C³ˣ³), stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat3<T> {
    pub m: [[T; 3]; 3],
}

impl<T: Field> Mat3<T> {
    pub fn new(m: [[T; 3]; 3]) -> Self {
        Mat3 { m }
    }

    pub fn from_i64(m: [[i64; 3]; 3]) -> Self {
        Mat3 { m: m.map(|r| r.map(T::from_i64)) }
    }

    pub fn from_fn(f: impl Fn(usize, usize) -> T) -> Self {
        Mat3 { m: std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))) }
    }

    pub fn zero() -> Self {
        Self::from_fn(|_, _| T::zero())
    }

    pub fn identity() -> Self {
        Self::from_fn(|i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn diag(d: [T; 3]) -> Self {
        Self::from_fn(|i, j| if i == j { d[i].clone() } else { T::zero() })
    }

    /// Column-stacking vectorization: `vec[3j+i] = M[i][j]`.
    pub fn vec(&self) -> [T; 9] {
        std::array::from_fn(|k| self.m[k % 3][k / 3].clone())
    }

    pub fn from_vec(v: &[T]) -> Self {
        assert_eq!(v.len(), 9);
        Self::from_fn(|i, j| v[3 * j + i].clone())
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.m[i][j]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self.m[j][i].clone())
    }

    pub fn mul_vec(&self, v: &[T; 3]) -> [T; 3] {
        std::array::from_fn(|i| dot(&self.m[i], v))
    }

    /// Row vector times matrix: `vᵀ M`.
    pub fn vec_mul(&self, v: &[T; 3]) -> [T; 3] {
        std::array::from_fn(|j| (0..3).fold(T::zero(), |a, i| a + v[i].clone() * self.m[i][j].clone()))
    }

    pub fn mul(&self, o: &Mat3<T>) -> Self {
        Self::from_fn(|i, j| (0..3).fold(T::zero(), |a, k| a + self.m[i][k].clone() * o.m[k][j].clone()))
    }

    pub fn add(&self, o: &Mat3<T>) -> Self {
        Self::from_fn(|i, j| self.m[i][j].clone() + o.m[i][j].clone())
    }

    pub fn sub(&self, o: &Mat3<T>) -> Self {
        Self::from_fn(|i, j| self.m[i][j].clone() - o.m[i][j].clone())
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::from_fn(|i, j| self.m[i][j].clone() * s.clone())
    }

    /// `s·self + t·o`.
    pub fn combine(&self, s: &T, o: &Mat3<T>, t: &T) -> Self {
        Self::from_fn(|i, j| s.clone() * self.m[i][j].clone() + t.clone() * o.m[i][j].clone())
    }

    pub fn row(&self, i: usize) -> [T; 3] {
        self.m[i].clone()
    }

    pub fn col(&self, j: usize) -> [T; 3] {
        std::array::from_fn(|i| self.m[i][j].clone())
    }

    pub fn det(&self) -> T {
        let m = &self.m;
        m[0][0].clone() * (m[1][1].clone() * m[2][2].clone() - m[1][2].clone() * m[2][1].clone())
            - m[0][1].clone() * (m[1][0].clone() * m[2][2].clone() - m[1][2].clone() * m[2][0].clone())
            + m[0][2].clone() * (m[1][0].clone() * m[2][1].clone() - m[1][1].clone() * m[2][0].clone())
    }

    pub fn adjugate(&self) -> Self {
        let c = |i: usize, j: usize| {
            let r: Vec<usize> = (0..3).filter(|&x| x != i).collect();
            let k: Vec<usize> = (0..3).filter(|&x| x != j).collect();
            let d = self.m[r[0]][k[0]].clone() * self.m[r[1]][k[1]].clone()
                - self.m[r[0]][k[1]].clone() * self.m[r[1]][k[0]].clone();
            if (i + j).is_multiple_of(2) {
                d
            } else {
                -d
            }
        };
        Self::from_fn(|i, j| c(j, i))
    }

    pub fn inverse(&self) -> Option<Self> {
        let d = self.det();
        if d.is_negligible(self.max_magnitude().powi(3), 1e-12) {
            return None;
        }
        Some(self.adjugate().scale(&(T::one() / d)))
    }

    pub fn max_magnitude(&self) -> f64 {
        self.m.iter().flatten().map(|x| x.magnitude()).fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.m.iter().flatten().all(|x| x.is_zero())
    }

    pub fn to_matrix(&self) -> Matrix<T> {
        Matrix::from_fn(3, 3, |i, j| self.m[i][j].clone())
    }

    pub fn to_complex(&self) -> Mat3<Complex64> {
        Mat3::from_fn(|i, j| self.m[i][j].to_complex())
    }

    /// Exact rank for exact fields, SVD rank otherwise.
    pub fn rank(&self) -> usize {
        if T::EXACT {
            let q = self.to_matrix().map(|x| x.as_rational().expect("exact"));
            rank_exact(&q)
        } else {
            numerical_rank(&self.to_matrix(), DEFAULT_RANK_GAP)
        }
    }

    pub fn proj_eq(&self, other: &Self, tol: f64) -> bool {
        proj_equal(&self.vec(), &other.vec(), tol).expect("same length")
    }

    /// Scales to the canonical representative of its 9-vector.
    pub fn canonical(&self) -> Self {
        Self::from_vec(&canonical_coords(&self.vec()))
    }

    /// Cofactor matrix transpose rows: for a rank-two matrix every nonzero
    /// row of the adjugate spans the left kernel, every nonzero column the
    /// right kernel. Picks the best-conditioned one.
    pub fn kernels_rank2(&self) -> ([T; 3], [T; 3]) {
        let adj = self.adjugate();
        let best_col = (0..3).max_by(|&a, &b| vec_norm(&adj.col(a)).total_cmp(&vec_norm(&adj.col(b)))).unwrap();
        let best_row = (0..3).max_by(|&a, &b| vec_norm(&adj.row(a)).total_cmp(&vec_norm(&adj.row(b)))).unwrap();
        (adj.col(best_col), adj.row(best_row))
    }
}

impl<T: Field> fmt::Display for Mat3<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.m.iter().map(|r| format!("[{}, {}, {}]", r[0], r[1], r[2])).collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// `[a]_×` with `[a]_× b = a × b`.
pub fn skew_matrix<T: Field>(a: &[T; 3]) -> Result<Mat3<T>> {
    if is_zero_vec(a) {
        return Err(Error::ZeroVector);
    }
    Ok(skew_unchecked(a))
}

pub(crate) fn skew_unchecked<T: Field>(a: &[T; 3]) -> Mat3<T> {
    let z = T::zero;
    Mat3::new([
        [z(), -a[2].clone(), a[1].clone()],
        [a[2].clone(), z(), -a[0].clone()],
        [-a[1].clone(), a[0].clone(), z()],
    ])
}

/// Right and left kernels `(e^x, e^y)` of a rank-two matrix.
pub fn kernel_right_left<T: Field>(m: &Mat3<T>) -> Result<(ProjPoint2<T>, ProjPoint2<T>)> {
    let r = m.rank();
    if r != 2 {
        return Err(Error::Rank { expected: 2, actual: r });
    }
    let (ex, ey) = m.kernels_rank2();
    Ok((ProjPoint::new(ex)?.canonical(), ProjPoint::new(ey)?.canonical()))
}
