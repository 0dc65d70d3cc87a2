//! Point-pair configurations and the face-splitting matrix Z_k.
//!
//! Row i of Z_k is `x_iᵀ ⊗ y_iᵀ = (x₁y₁, x₁y₂, x₁y₃, x₂y₁, …)` and matrices are
//! vectorized by stacking columns, so `yᵀMx = row · vec(M)`.

use num_complex::Complex64;
use num_traits::Zero;

use crate::cubic::{kappa_cubic, Side};
use crate::error::{Error, Result};
use crate::linalg::{combinations, numerical_nullspace, numerical_rank, rank_exact, Matrix, DEFAULT_RANK_GAP};
use crate::poly::BinaryForm;
use crate::projective::{Mat3, ProjPoint2};
use crate::roots::poly_gcd;
use crate::scalar::Field;
use crate::Rational;

pub const MIN_PAIRS: usize = 2;
pub const MAX_PAIRS: usize = 9;

#[derive(Clone, Debug, PartialEq)]
pub struct PointPairConfig<T> {
    pairs: Vec<(ProjPoint2<T>, ProjPoint2<T>)>,
}

impl<T: Field> PointPairConfig<T> {
    pub fn new(pairs: Vec<(ProjPoint2<T>, ProjPoint2<T>)>) -> Result<Self> {
        if !(MIN_PAIRS..=MAX_PAIRS).contains(&pairs.len()) {
            return Err(Error::PairCount { min: MIN_PAIRS, max: MAX_PAIRS, got: pairs.len() });
        }
        Ok(PointPairConfig { pairs })
    }

    pub fn from_i64(xs: &[[i64; 3]], ys: &[[i64; 3]]) -> Result<Self> {
        if xs.len() != ys.len() {
            return Err(Error::DimensionMismatch(xs.len(), ys.len()));
        }
        Self::new(xs.iter().zip(ys).map(|(x, y)| (ProjPoint2::from_i64(*x), ProjPoint2::from_i64(*y))).collect())
    }

    /// Reads points as the columns of two 3×k integer matrices.
    pub fn from_columns(x: [&[i64]; 3], y: [&[i64]; 3]) -> Result<Self> {
        let k = x[0].len();
        let xs: Vec<[i64; 3]> = (0..k).map(|i| [x[0][i], x[1][i], x[2][i]]).collect();
        let ys: Vec<[i64; 3]> = (0..k).map(|i| [y[0][i], y[1][i], y[2][i]]).collect();
        Self::from_i64(&xs, &ys)
    }

    pub fn k(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> &[(ProjPoint2<T>, ProjPoint2<T>)] {
        &self.pairs
    }

    pub fn x(&self, i: usize) -> &ProjPoint2<T> {
        &self.pairs[i].0
    }

    pub fn y(&self, i: usize) -> &ProjPoint2<T> {
        &self.pairs[i].1
    }

    pub fn xs(&self) -> Vec<ProjPoint2<T>> {
        self.pairs.iter().map(|p| p.0.clone()).collect()
    }

    pub fn ys(&self) -> Vec<ProjPoint2<T>> {
        self.pairs.iter().map(|p| p.1.clone()).collect()
    }

    /// The pairs at `idx`, in that order. Allows fewer than two pairs.
    pub fn subset(&self, idx: &[usize]) -> PointPairConfig<T> {
        PointPairConfig { pairs: idx.iter().map(|&i| self.pairs[i].clone()).collect() }
    }

    /// All pairs except `i`.
    pub fn without(&self, i: usize) -> PointPairConfig<T> {
        let idx: Vec<usize> = (0..self.k()).filter(|&j| j != i).collect();
        self.subset(&idx)
    }

    pub fn with_pair(&self, x: ProjPoint2<T>, y: ProjPoint2<T>) -> Result<PointPairConfig<T>> {
        let mut pairs = self.pairs.clone();
        pairs.push((x, y));
        PointPairConfig::new(pairs)
    }

    /// `(H₁x_i, H₂y_i)`.
    pub fn transform(&self, h1: &Mat3<T>, h2: &Mat3<T>) -> Result<PointPairConfig<T>> {
        let pairs = self
            .pairs
            .iter()
            .map(|(x, y)| Ok((ProjPoint2::new(h1.mul_vec(x.coords()))?, ProjPoint2::new(h2.mul_vec(y.coords()))?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(PointPairConfig { pairs })
    }

    pub fn map<U: Field>(&self, f: impl Fn(&T) -> U + Copy) -> Result<PointPairConfig<U>> {
        let pairs = self.pairs.iter().map(|(x, y)| Ok((x.map(f)?, y.map(f)?))).collect::<Result<Vec<_>>>()?;
        Ok(PointPairConfig { pairs })
    }

    pub fn to_f64(&self) -> PointPairConfig<f64> {
        self.map(|v| v.to_complex().re).expect("conversion keeps points nonzero")
    }

    pub fn swap_sides(&self) -> PointPairConfig<T> {
        PointPairConfig { pairs: self.pairs.iter().map(|(x, y)| (y.clone(), x.clone())).collect() }
    }
}

/// The k×9 face-splitting matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ZMatrix<T> {
    m: Matrix<T>,
}

impl<T: Field> ZMatrix<T> {
    pub fn matrix(&self) -> &Matrix<T> {
        &self.m
    }

    pub fn k(&self) -> usize {
        self.m.nrows()
    }

    /// The bilinear residual `yᵀMx` of row `i`.
    pub fn residual(&self, i: usize, m: &Mat3<T>) -> T {
        crate::projective::dot(self.m.row(i), &m.vec())
    }
}

/// `xᵀ ⊗ yᵀ`.
pub fn z_row<T: Field>(x: &[T; 3], y: &[T; 3]) -> [T; 9] {
    std::array::from_fn(|k| x[k / 3].clone() * y[k % 3].clone())
}

pub fn build_z<T: Field>(cfg: &PointPairConfig<T>) -> ZMatrix<T> {
    let rows: Vec<Vec<T>> = cfg.pairs.iter().map(|(x, y)| z_row(x.coords(), y.coords()).to_vec()).collect();
    ZMatrix { m: if rows.is_empty() { Matrix::zeros(0, 9) } else { Matrix::from_rows(rows) } }
}

/// Rank and a basis of the right nullspace, reshaped to 3×3 matrices.
///
/// Exact fields use exact elimination. Inexact fields use the SVD with the
/// default singular-value gap.
pub fn rank_and_nullspace<T: Field>(z: &ZMatrix<T>) -> (usize, Vec<Mat3<T>>) {
    if z.k() == 0 {
        let basis = (0..9)
            .map(|i| Mat3::from_vec(&(0..9).map(|j| if i == j { T::one() } else { T::zero() }).collect::<Vec<_>>()))
            .collect();
        return (0, basis);
    }
    matrix_nullspace(&z.m)
}

/// Rank and reshaped nullspace of any matrix with nine columns.
pub(crate) fn matrix_nullspace<T: Field>(m: &Matrix<T>) -> (usize, Vec<Mat3<T>>) {
    if T::EXACT {
        let ns = m.nullspace();
        (9 - ns.len(), ns.iter().map(|v| Mat3::from_vec(v)).collect())
    } else {
        let rank = numerical_rank(m, DEFAULT_RANK_GAP);
        let mut ns = numerical_nullspace(m, DEFAULT_RANK_GAP);
        ns.truncate(9 - rank);
        (rank, ns.into_iter().map(|v| Mat3::from_vec(&realign(v))).collect())
    }
}

fn realign<T: Field>(v: Vec<Complex64>) -> Vec<T> {
    let big = v.iter().copied().max_by(|a, b| a.norm().total_cmp(&b.norm())).unwrap_or(Complex64::new(1.0, 0.0));
    let phase = if big.norm() > 0.0 { big.conj() / big.norm() } else { Complex64::new(1.0, 0.0) };
    v.into_iter().map(|z| T::from_complex(z * phase)).collect()
}

pub fn rank<T: Field>(z: &ZMatrix<T>) -> usize {
    if T::EXACT {
        rank_exact(&z.m.map(|x| x.as_rational().expect("exact")))
    } else {
        numerical_rank(&z.m, DEFAULT_RANK_GAP)
    }
}

/// True iff every k×k minor of Z_k vanishes exactly.
pub fn maximal_minors_vanish<T: Field>(z: &ZMatrix<T>) -> bool {
    let k = z.k();
    if k > 9 {
        return true;
    }
    let tol = T::elimination_tol() * z.m.max_magnitude().powi(k as i32);
    combinations(9, k).iter().all(|cols| z.m.select_cols(cols).det().is_negligible(1.0, tol))
}

/// Heuristic test that every (k−1)-subset is fully generic.
///
/// Each subset must give a full-rank Z_{k−1}. Its nullspace basis, and the
/// pairwise sums of basis elements, must avoid the rank-one locus. Pencils are
/// additionally required to meet the determinantal cubic in three distinct
/// rank-two points with no rank-one member at all, and planes must give
/// epipolar cubics containing no line through two of the subset's points.
pub fn is_semi_generic(cfg: &PointPairConfig<Rational>) -> bool {
    let k = cfg.k();
    if k < 3 {
        return false;
    }
    (0..k).all(|i| subset_generic(&cfg.without(i)))
}

fn subset_generic(sub: &PointPairConfig<Rational>) -> bool {
    let n = sub.k();
    let z = build_z(sub);
    let (r, basis) = rank_and_nullspace(&z);
    if r != n {
        return false;
    }
    if n > 8 {
        return true;
    }
    for (i, a) in basis.iter().enumerate() {
        if a.rank() <= 1 {
            return false;
        }
        for b in &basis[i + 1..] {
            if a.add(b).rank() <= 1 {
                return false;
            }
        }
    }
    match basis.len() {
        2 => pencil_generic(&basis[0], &basis[1]),
        3 => {
            let b: [Mat3<Rational>; 3] = [basis[0].clone(), basis[1].clone(), basis[2].clone()];
            plane_generic(&b, &sub.xs(), Side::X) && plane_generic(&b, &sub.ys(), Side::Y)
        }
        _ => true,
    }
}

fn pencil_generic(a: &Mat3<Rational>, b: &Mat3<Rational>) -> bool {
    let det = crate::trinity::pencil_determinant(a, b);
    if det.is_zero() || crate::poly::cubic_discriminant(&det) == Rational::from_i64(0) {
        return false;
    }
    !pencil_has_rank_one(a, b)
}

/// Whether some member `sA + tB` has rank at most one, decided exactly by a
/// common root of all 2×2 minors.
pub fn pencil_has_rank_one(a: &Mat3<Rational>, b: &Mat3<Rational>) -> bool {
    if a.rank() <= 1 || b.rank() <= 1 {
        return true;
    }
    let mut g: Option<Vec<Rational>> = None;
    for rows in combinations(3, 2) {
        for cols in combinations(3, 2) {
            let e = |i: usize, j: usize| BinaryForm::new(vec![a.m[rows[i]][cols[j]].clone(), b.m[rows[i]][cols[j]].clone()]);
            let minor = e(0, 0).mul(&e(1, 1)).add(&e(0, 1).mul(&e(1, 0)).scale(&Rational::from_i64(-1)));
            // minor(s, 1), ascending in s
            let asc: Vec<Rational> = minor.coeffs().iter().rev().cloned().collect();
            if asc.iter().all(|c| c.is_zero()) {
                continue;
            }
            let next = match g {
                None => asc,
                Some(prev) => poly_gcd(&prev, &asc),
            };
            if trimmed_degree(&next) == 0 {
                return false;
            }
            g = Some(next);
        }
    }
    true
}

fn trimmed_degree(p: &[Rational]) -> usize {
    p.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
}

fn plane_generic(basis: &[Mat3<Rational>; 3], pts: &[ProjPoint2<Rational>], side: Side) -> bool {
    let Ok(curve) = kappa_cubic(basis, side) else { return false };
    for ij in combinations(pts.len(), 2) {
        let (p, q) = (pts[ij[0]].coords(), pts[ij[1]].coords());
        if crate::projective::is_zero_vec(&crate::projective::cross(p, q)) {
            return false;
        }
        if curve.form().restrict(p, q).is_zero() {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::scalar::rat;

    #[test]
    fn kronecker_row() {
        let r = z_row(&[rat(1), rat(0), rat(0)], &[rat(1), rat(0), rat(0)]);
        assert_eq!(r.to_vec(), [1, 0, 0, 0, 0, 0, 0, 0, 0].map(rat).to_vec());
        let r = z_row(&[rat(1), rat(1), rat(1)], &[rat(2), rat(3), rat(5)]);
        assert_eq!(r.to_vec(), [2, 3, 5, 2, 3, 5, 2, 3, 5].map(rat).to_vec());
        let r = z_row(&[rat(2), rat(3), rat(5)], &[rat(7), rat(11), rat(13)]);
        assert_eq!(r[1], rat(22));
        assert_eq!(r[3], rat(21));
    }

    #[test]
    fn bilinear_orientation() {
        let x = [rat(1), rat(-2), rat(3)];
        let y = [rat(4), rat(0), rat(-1)];
        let m = Mat3::from_i64([[1, 2, 3], [4, 5, 6], [7, 8, 10]]);
        let direct = crate::projective::dot(&y, &m.mul_vec(&x));
        assert_eq!(crate::projective::dot(&z_row(&x, &y), &m.vec()), direct);
    }

    #[test]
    fn eight_pair_quadric_fixture() {
        let cfg = fixtures::quadric_eight();
        let z = build_z(&cfg);
        assert_eq!(z.matrix().row(0).to_vec(), [25, 60, 65, 60, 144, 156, 65, 156, 169].map(rat).to_vec());
        let (r, ns) = rank_and_nullspace(&z);
        assert_eq!(r, 7);
        assert_eq!(rank(&z), 7);
        assert_eq!(ns.len(), 2);
        assert!(maximal_minors_vanish(&z));
        // dropping pair 2 or pair 8 leaves a rank-six Z₇
        assert_eq!(rank(&build_z(&cfg.without(1))), 6);
        assert_eq!(rank(&build_z(&cfg.without(7))), 6);
        assert!(!is_semi_generic(&cfg));
    }

    #[test]
    fn homography_nullspace_contains_skews() {
        let xs = [[1, 2, 3], [-1, 0, 4], [2, 2, 1], [0, 1, -3], [5, -2, 1], [3, 3, -1], [1, -4, 2]];
        let cfg = PointPairConfig::<Rational>::from_i64(&xs, &xs).unwrap();
        let (r, ns) = rank_and_nullspace(&build_z(&cfg));
        assert!(ns.len() >= 3);
        assert!(r <= 6);
        let skew = crate::projective::skew_matrix(&[rat(1), rat(2), rat(-3)]).unwrap();
        let stacked = Matrix::from_rows(ns.iter().map(|m| m.vec().to_vec()).chain([skew.vec().to_vec()]).collect());
        assert_eq!(stacked.rank(), ns.len());
    }

    #[test]
    fn two_pairs_full_rank() {
        let cfg = PointPairConfig::<Rational>::from_i64(&[[1, 0, 0], [0, 1, 0]], &[[1, 0, 0], [0, 0, 1]]).unwrap();
        assert!(!maximal_minors_vanish(&build_z(&cfg)));
    }

    #[test]
    fn counterexample_full_rank() {
        let z = build_z(&fixtures::degenerate_seven_a());
        assert!(!maximal_minors_vanish(&z));
        assert_eq!(rank(&z), 7);
        assert!(!is_semi_generic(&fixtures::degenerate_seven_b()));
    }

    #[test]
    fn collinear_side_not_semi_generic() {
        let xs = [[1, 0, 0], [0, 1, 0], [1, 1, 0], [1, -1, 0], [2, 3, 0], [1, 4, 7], [-3, 2, 5]];
        let ys = [[2, 1, 3], [1, -1, 4], [0, 3, 1], [5, 1, -2], [1, 1, 1], [3, -2, 1], [4, 1, 6]];
        let cfg = PointPairConfig::<Rational>::from_i64(&xs, &ys).unwrap();
        assert!(!is_semi_generic(&cfg));
    }

    #[test]
    fn pair_count_enforced() {
        let p = ProjPoint2::<Rational>::from_i64([1, 0, 0]);
        assert!(PointPairConfig::new(vec![(p.clone(), p.clone())]).is_err());
        assert!(PointPairConfig::new(vec![(p.clone(), p.clone()); 10]).is_err());
    }

    #[test]
    fn float_backend_rank() {
        let cfg = fixtures::quadric_eight().to_f64();
        let (r, ns) = rank_and_nullspace(&build_z(&cfg));
        assert_eq!(r, 7);
        assert_eq!(ns.len(), 2);
        for m in &ns {
            for (x, y) in cfg.pairs() {
                let v = crate::projective::dot(y.coords(), &m.mul_vec(x.coords()));
                assert!(v.abs() < 1e-9);
            }
        }
    }
}
