//! Lines of 3×3 matrices, quadrics through two camera centers, and quadratic
//! Cremona transformations, with the conversions between them.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::facesplit::{matrix_nullspace, z_row, PointPairConfig};
use crate::linalg::{numerical_nullspace, singular_values, Matrix, DEFAULT_RANK_GAP};
use crate::poly::{cubic_discriminant, BinaryForm, TernaryForm};
use crate::projective::{
    cross, dot, is_negligible_vec, proj_distance, proj_equal, skew_unchecked, vec_norm, Mat3, ProjPoint2, ProjPoint3,
};
use crate::roots::{binary_rational_roots, binary_roots_complex};
use crate::scalar::Field;
use crate::Rational;

/// Distance below which two float projective points are the same.
pub const POINT_TOL: f64 = 1e-7;

/// `det(sA + tB)` as a binary cubic in `(s, t)`.
pub fn pencil_determinant<T: Field>(a: &Mat3<T>, b: &Mat3<T>) -> BinaryForm<T> {
    // multilinear in the columns: choose each column from A or B
    let mut c = vec![T::zero(), T::zero(), T::zero(), T::zero()];
    for mask in 0..8u32 {
        let m = Mat3::from_fn(|i, j| if mask >> j & 1 == 1 { b.m[i][j].clone() } else { a.m[i][j].clone() });
        let k = mask.count_ones() as usize;
        c[k] = c[k].clone() + m.det();
    }
    BinaryForm::new(c)
}

/// A point of P² that is either exact or only known numerically.
#[derive(Clone, Debug, PartialEq)]
pub enum PlanePoint<T> {
    Exact(ProjPoint2<T>),
    Approx(ProjPoint2<Complex64>),
}

impl<T: Field> PlanePoint<T> {
    pub fn to_complex(&self) -> ProjPoint2<Complex64> {
        match self {
            PlanePoint::Exact(p) => p.to_complex(),
            PlanePoint::Approx(p) => p.clone(),
        }
    }

    pub fn exact(&self) -> Option<&ProjPoint2<T>> {
        match self {
            PlanePoint::Exact(p) => Some(p),
            PlanePoint::Approx(_) => None,
        }
    }

    /// The line through two points, as a normal vector.
    pub fn join(&self, o: &Self) -> Result<PlanePoint<T>> {
        match (self, o) {
            (PlanePoint::Exact(p), PlanePoint::Exact(q)) => Ok(PlanePoint::Exact(ProjPoint2::new(cross(p.coords(), q.coords()))?.canonical())),
            _ => {
                let l = cross(self.to_complex().coords(), o.to_complex().coords());
                if vec_norm(&l) < 1e-12 {
                    return Err(Error::ZeroVector);
                }
                Ok(PlanePoint::Approx(ProjPoint2::new(l)?.canonical()))
            }
        }
    }

    pub fn distance(&self, o: &Self) -> f64 {
        match (self, o) {
            (PlanePoint::Exact(p), PlanePoint::Exact(q)) if T::EXACT => {
                if p.proj_eq(q, 0.0) {
                    0.0
                } else {
                    proj_distance(p.to_complex().coords(), q.to_complex().coords()).max(f64::MIN_POSITIVE)
                }
            }
            _ => proj_distance(self.to_complex().coords(), o.to_complex().coords()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum LineParam<T> {
    Exact(T, T),
    Approx(Complex64, Complex64),
}

#[derive(Clone, Debug, PartialEq)]
pub enum MemberMatrix<T> {
    Exact(Mat3<T>),
    Approx(Mat3<Complex64>),
}

/// A rank-two matrix `sF + tM` on a line.
#[derive(Clone, Debug, PartialEq)]
pub struct RankTwoMember<T> {
    pub param: LineParam<T>,
    pub matrix: MemberMatrix<T>,
}

impl<T: Field> RankTwoMember<T> {
    pub fn is_exact(&self) -> bool {
        matches!(self.matrix, MemberMatrix::Exact(_))
    }

    pub fn exact(&self) -> Option<&Mat3<T>> {
        match &self.matrix {
            MemberMatrix::Exact(m) => Some(m),
            MemberMatrix::Approx(_) => None,
        }
    }

    pub fn to_complex(&self) -> Mat3<Complex64> {
        match &self.matrix {
            MemberMatrix::Exact(m) => m.to_complex(),
            MemberMatrix::Approx(m) => m.clone(),
        }
    }

    fn kernels(&self) -> (PlanePoint<T>, PlanePoint<T>) {
        match &self.matrix {
            MemberMatrix::Exact(m) => {
                let (r, l) = m.kernels_rank2();
                (
                    PlanePoint::Exact(ProjPoint2::new(r).expect("rank two").canonical()),
                    PlanePoint::Exact(ProjPoint2::new(l).expect("rank two").canonical()),
                )
            }
            MemberMatrix::Approx(m) => {
                let (r, l) = m.kernels_rank2();
                (
                    PlanePoint::Approx(ProjPoint2::new(r).expect("rank two").canonical()),
                    PlanePoint::Approx(ProjPoint2::new(l).expect("rank two").canonical()),
                )
            }
        }
    }

    /// `e^x` with `F e^x = 0`.
    pub fn right_kernel(&self) -> PlanePoint<T> {
        self.kernels().0
    }

    /// `e^y` with `(e^y)ᵀ F = 0`.
    pub fn left_kernel(&self) -> PlanePoint<T> {
        self.kernels().1
    }
}

/// A line `{sF + tM}` in P(C³ˣ³), with its rank-two members found eagerly.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixLine<T> {
    basis: [Mat3<T>; 2],
    det: BinaryForm<T>,
    members: Vec<RankTwoMember<T>>,
    defect: Option<String>,
}

fn stack_vecs<T: Field>(ms: &[&Mat3<T>]) -> Matrix<T> {
    Matrix::from_rows(ms.iter().map(|m| m.vec().to_vec()).collect())
}

fn span_rank<T: Field>(ms: &[&Mat3<T>]) -> usize {
    let s = stack_vecs(ms);
    if T::EXACT {
        s.rank()
    } else {
        crate::linalg::numerical_rank(&s, DEFAULT_RANK_GAP)
    }
}

fn complex_rank(m: &Mat3<Complex64>, gap: f64) -> usize {
    let s = singular_values(&m.to_matrix());
    s.iter().filter(|&&x| x > gap * s[0]).count()
}

impl<T: Field> MatrixLine<T> {
    pub fn new(f: Mat3<T>, m: Mat3<T>) -> Result<Self> {
        if span_rank(&[&f, &m]) < 2 {
            return Err(Error::DependentBasis);
        }
        let det = pencil_determinant(&f, &m);
        let scale = f.max_magnitude().max(m.max_magnitude()).powi(3);
        if is_negligible_vec(det.coeffs(), scale, T::elimination_tol()) {
            return Err(Error::LineInDeterminantal);
        }
        let mut members = Vec::new();
        let mut exact_roots: Vec<[Complex64; 2]> = Vec::new();
        if T::EXACT {
            let q = BinaryForm::new(det.coeffs().iter().map(|c| c.as_rational().expect("exact")).collect());
            for (s, t) in binary_rational_roots(&q) {
                let (s, t) = (T::from_rational(&s), T::from_rational(&t));
                exact_roots.push([s.to_complex(), t.to_complex()]);
                let mat = f.combine(&s, &m, &t).canonical();
                members.push(RankTwoMember { param: LineParam::Exact(s, t), matrix: MemberMatrix::Exact(mat) });
            }
        }
        let (fc, mc) = (f.to_complex(), m.to_complex());
        let mut approx: Vec<[Complex64; 2]> = Vec::new();
        let mut pending = exact_roots.clone();
        for r in binary_roots_complex(&det) {
            if let Some(i) = pending.iter().position(|e| proj_distance(e, &r) < 1e-6) {
                pending.remove(i);
                continue;
            }
            if exact_roots.iter().chain(&approx).any(|e| proj_distance(e, &r) < 1e-6) {
                continue;
            }
            approx.push(r);
        }
        for [s, t] in approx {
            let mat = normalize_c(&fc.combine(&s, &mc, &t));
            members.push(RankTwoMember { param: LineParam::Approx(s, t), matrix: MemberMatrix::Approx(mat) });
        }
        let mut defect = None;
        for mem in &members {
            let r = match &mem.matrix {
                MemberMatrix::Exact(x) => x.rank(),
                MemberMatrix::Approx(x) => complex_rank(x, 1e-7),
            };
            if r <= 1 {
                defect = Some("the line contains a matrix of rank at most one".to_string());
            } else if r == 3 {
                return Err(Error::Internal("determinant root is not a rank-two member".into()));
            }
        }
        if defect.is_none() {
            let repeated = if T::EXACT { cubic_discriminant(&det).is_zero() } else { members.len() < 3 };
            if repeated || members.len() < 3 {
                defect = Some("det(sF + tM) has a repeated root".to_string());
            }
        }
        Ok(MatrixLine { basis: [f, m], det, members, defect })
    }

    pub fn basis(&self) -> &[Mat3<T>; 2] {
        &self.basis
    }

    /// `det(sF + tM)`.
    pub fn det_form(&self) -> &BinaryForm<T> {
        &self.det
    }

    pub fn members(&self) -> &[RankTwoMember<T>] {
        &self.members
    }

    pub fn is_generic(&self) -> bool {
        self.defect.is_none()
    }

    /// The violated genericity condition, if any.
    pub fn defect(&self) -> Option<&str> {
        self.defect.as_deref()
    }

    pub fn transpose(&self) -> Result<Self> {
        MatrixLine::new(self.basis[0].transpose(), self.basis[1].transpose())
    }

    pub fn contains(&self, m: &Mat3<T>) -> bool {
        span_rank(&[&self.basis[0], &self.basis[1], m]) == 2
    }

    /// Equality of the two planes in C⁹.
    pub fn same_line(&self, o: &Self) -> bool {
        o.contains(&self.basis[0]) && o.contains(&self.basis[1])
    }

    /// Each member with its epipoles `(e^x, e^y)`.
    pub fn epipoles(&self) -> Vec<(PlanePoint<T>, PlanePoint<T>)> {
        self.members.iter().map(|m| m.kernels()).collect()
    }

    pub fn to_complex(&self) -> Result<MatrixLine<Complex64>> {
        MatrixLine::new(self.basis[0].to_complex(), self.basis[1].to_complex())
    }
}

fn normalize_c(m: &Mat3<Complex64>) -> Mat3<Complex64> {
    let n = vec_norm(&m.vec());
    if n == 0.0 {
        m.clone()
    } else {
        m.scale(&Complex64::new(1.0 / n, 0.0))
    }
}

/// The rank-two members of a line, with verified rank.
pub fn rank_two_on_line<T: Field>(line: &MatrixLine<T>) -> Result<Vec<RankTwoMember<T>>> {
    if let Some(d) = line.defect() {
        if d.contains("rank at most one") {
            return Err(Error::NonGenericLine(d.to_string()));
        }
    }
    Ok(line.members.clone())
}

/// A quadratic Cremona transformation with its base points on both sides.
#[derive(Clone, Debug, PartialEq)]
pub struct CremonaMap<T> {
    forms: [TernaryForm<T>; 3],
    base_domain: Vec<PlanePoint<T>>,
    base_codomain: Vec<PlanePoint<T>>,
}

fn distinct_three<T: Field>(pts: &[PlanePoint<T>]) -> bool {
    pts.len() == 3 && (0..3).all(|i| (i + 1..3).all(|j| pts[i].distance(&pts[j]) > POINT_TOL))
}

impl<T: Field> CremonaMap<T> {
    pub fn new(forms: [TernaryForm<T>; 3], base_domain: Vec<PlanePoint<T>>, base_codomain: Vec<PlanePoint<T>>) -> Result<Self> {
        if forms.iter().any(|f| f.degree() != 2) {
            return Err(Error::DegenerateMap("components must be quadratic".into()));
        }
        if !distinct_three(&base_domain) || !distinct_three(&base_codomain) {
            return Err(Error::DegenerateMap("base points are not three distinct points".into()));
        }
        Ok(CremonaMap { forms, base_domain, base_codomain })
    }

    pub fn forms(&self) -> &[TernaryForm<T>; 3] {
        &self.forms
    }

    pub fn base_points_domain(&self) -> &[PlanePoint<T>] {
        &self.base_domain
    }

    pub fn base_points_codomain(&self) -> &[PlanePoint<T>] {
        &self.base_codomain
    }

    fn joins(pts: &[PlanePoint<T>]) -> Vec<PlanePoint<T>> {
        [(1, 2), (0, 2), (0, 1)].iter().filter_map(|&(i, j)| pts[i].join(&pts[j]).ok()).collect()
    }

    /// Lines through pairs of domain base points; each is contracted.
    pub fn exceptional_lines_domain(&self) -> Vec<PlanePoint<T>> {
        Self::joins(&self.base_domain)
    }

    pub fn exceptional_lines_codomain(&self) -> Vec<PlanePoint<T>> {
        Self::joins(&self.base_codomain)
    }

    pub fn eval_raw(&self, x: &[T; 3]) -> [T; 3] {
        std::array::from_fn(|i| self.forms[i].eval(x))
    }

    /// `None` on base points.
    pub fn eval(&self, x: &ProjPoint2<T>) -> Option<ProjPoint2<T>> {
        ProjPoint2::new(self.eval_raw(x.coords())).ok()
    }

    pub fn eval_complex(&self, x: &[Complex64; 3]) -> [Complex64; 3] {
        std::array::from_fn(|i| self.forms[i].eval_complex(x))
    }

    /// Equality of maps up to one common scale.
    pub fn proportional(&self, o: &Self) -> bool {
        let a: Vec<T> = self.forms.iter().flat_map(|f| f.coeffs().to_vec()).collect();
        let b: Vec<T> = o.forms.iter().flat_map(|f| f.coeffs().to_vec()).collect();
        proj_equal(&a, &b, if T::EXACT { 0.0 } else { 1e-8 }).unwrap_or(false)
    }

    pub fn inverse(&self) -> Result<CremonaMap<T>> {
        line_to_cremona(&cremona_to_line(self)?.transpose()?)
    }

    pub fn to_complex(&self) -> CremonaMap<Complex64> {
        let conv = |v: &[PlanePoint<T>]| v.iter().map(|p| PlanePoint::Exact(p.to_complex())).collect();
        CremonaMap {
            forms: std::array::from_fn(|i| self.forms[i].to_complex()),
            base_domain: conv(&self.base_domain),
            base_codomain: conv(&self.base_codomain),
        }
    }
}

/// `x ↦ Fx × Mx`, the unique `y` with `yᵀFx = yᵀMx = 0`.
pub fn line_to_cremona<T: Field>(line: &MatrixLine<T>) -> Result<CremonaMap<T>> {
    if let Some(d) = line.defect() {
        return Err(Error::NonGenericLine(d.to_string()));
    }
    let [f, m] = &line.basis;
    let fx: [TernaryForm<T>; 3] = std::array::from_fn(|i| TernaryForm::linear(&f.row(i)));
    let mx: [TernaryForm<T>; 3] = std::array::from_fn(|i| TernaryForm::linear(&m.row(i)));
    let forms = [
        fx[1].mul(&mx[2]).sub(&fx[2].mul(&mx[1])),
        fx[2].mul(&mx[0]).sub(&fx[0].mul(&mx[2])),
        fx[0].mul(&mx[1]).sub(&fx[1].mul(&mx[0])),
    ];
    let (dom, cod): (Vec<_>, Vec<_>) = line.epipoles().into_iter().unzip();
    CremonaMap::new(forms, dom, cod)
}

fn sample_points<T: Field>() -> impl Iterator<Item = [T; 3]> {
    (0..40i64).map(|i| [T::from_i64(1 + 2 * i), T::from_i64(i * i - 3 * i + 5), T::from_i64(7 - i * i * i % 11 + 3 * i)])
}

/// The line of matrices `M` with `f(x)ᵀ M x = 0` for all `x`.
pub fn cremona_to_line<T: Field>(f: &CremonaMap<T>) -> Result<MatrixLine<T>> {
    let mut rows = Vec::new();
    for x in sample_points::<T>() {
        let y = f.eval_raw(&x);
        if is_negligible_vec(&y, 1.0, 0.0) {
            continue;
        }
        let mut r = z_row(&x, &y).to_vec();
        if !T::EXACT {
            let n = vec_norm(&r);
            r = r.into_iter().map(|v| v * T::from_complex(Complex64::new(1.0 / n, 0.0))).collect();
        }
        rows.push(r);
        if rows.len() >= 16 {
            break;
        }
    }
    let (rank, ns) = matrix_nullspace(&Matrix::from_rows(rows));
    if rank != 7 {
        return Err(Error::DegenerateMap(format!("sampled graph spans dimension {rank}, not 7")));
    }
    MatrixLine::new(ns[0].clone(), ns[1].clone())
}

/// Two cameras `A₁, A₂` (3×4, rank three) with distinct centers.
#[derive(Clone, Debug, PartialEq)]
pub struct CameraPair<T> {
    a1: Matrix<T>,
    a2: Matrix<T>,
    c1: ProjPoint3<T>,
    c2: ProjPoint3<T>,
}

fn camera_center<T: Field>(a: &Matrix<T>) -> Result<ProjPoint3<T>> {
    if a.nrows() != 3 || a.ncols() != 4 {
        return Err(Error::DimensionMismatch(a.nrows() * a.ncols(), 12));
    }
    let ns: Vec<Vec<T>> = if T::EXACT {
        a.nullspace()
    } else {
        numerical_nullspace(a, DEFAULT_RANK_GAP)
            .into_iter()
            .map(|v| v.into_iter().map(T::from_complex).collect())
            .collect()
    };
    if ns.len() != 1 {
        return Err(Error::Rank { expected: 3, actual: 4 - ns.len() });
    }
    Ok(ProjPoint3::from_slice(&ns[0])?.canonical())
}

impl<T: Field> CameraPair<T> {
    pub fn new(a1: Matrix<T>, a2: Matrix<T>) -> Result<Self> {
        let c1 = camera_center(&a1)?;
        let c2 = camera_center(&a2)?;
        if c1.proj_eq(&c2, if T::EXACT { 0.0 } else { 1e-9 }) {
            return Err(Error::Precondition("camera centers coincide".into()));
        }
        Ok(CameraPair { a1, a2, c1, c2 })
    }

    pub fn a1(&self) -> &Matrix<T> {
        &self.a1
    }

    pub fn a2(&self) -> &Matrix<T> {
        &self.a2
    }

    pub fn centers(&self) -> (&ProjPoint3<T>, &ProjPoint3<T>) {
        (&self.c1, &self.c2)
    }

    pub fn swapped(&self) -> Self {
        CameraPair { a1: self.a2.clone(), a2: self.a1.clone(), c1: self.c2.clone(), c2: self.c1.clone() }
    }

    /// `F` with `(A₂p)ᵀ F (A₁p) = 0`, entries from 6×6 determinants.
    pub fn fundamental(&self) -> Mat3<T> {
        let drop = |a: &Matrix<T>, i: usize| a.select_rows(&(0..3).filter(|&r| r != i).collect::<Vec<_>>());
        Mat3::from_fn(|j, i| {
            let d = drop(&self.a1, i).vstack(&drop(&self.a2, j)).det();
            if (i + j) % 2 == 0 {
                d
            } else {
                -d
            }
        })
    }

    pub fn project(&self, view: usize, p: &ProjPoint3<T>) -> Result<ProjPoint2<T>> {
        let a = if view == 1 { &self.a1 } else { &self.a2 };
        ProjPoint2::from_slice(&a.mul_vec(p.coords()))
    }

    pub fn to_complex(&self) -> CameraPair<Complex64> {
        CameraPair { a1: self.a1.to_complex(), a2: self.a2.to_complex(), c1: self.c1.to_complex(), c2: self.c2.to_complex() }
    }
}

/// `A₁ = [I | 0]`, `A₂ = [[e^y]_× F | λ e^y]` with `λ` a power of two
/// bringing both blocks to a similar magnitude.
pub fn cameras_from_f<T: Field>(f: &Mat3<T>) -> Result<CameraPair<T>> {
    let (_, ey) = crate::projective::kernel_right_left(f)?;
    let sf = skew_unchecked(ey.coords()).mul(f);
    let ratio = sf.max_magnitude() / ey.coords().iter().map(|v| v.magnitude()).fold(0.0, f64::max);
    let k = if ratio.is_finite() && ratio > 0.0 { ratio.log2().round() as i64 } else { 0 };
    let lambda = T::from_rational(&pow2(k));
    let e = ey.coords().clone().map(|v| v * lambda.clone());
    let a1 = Matrix::from_fn(3, 4, |i, j| if i == j { T::one() } else { T::zero() });
    let a2 = Matrix::from_fn(3, 4, |i, j| if j < 3 { sf.m[i][j].clone() } else { e[i].clone() });
    CameraPair::new(a1, a2)
}

fn pow2(k: i64) -> Rational {
    let p = num_bigint::BigInt::from(1) << k.unsigned_abs() as usize;
    if k >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(1.into(), p)
    }
}

/// A symmetric 4×4 form on P³ up to scale.
#[derive(Clone, Debug, PartialEq)]
pub struct Quadric3<T> {
    m: Matrix<T>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Permissibility {
    pub smooth: bool,
    pub contains_centers: bool,
    pub contains_baseline: bool,
}

impl Permissibility {
    pub fn ok(&self) -> bool {
        self.smooth && self.contains_centers && !self.contains_baseline
    }
}

impl<T: Field> Quadric3<T> {
    pub fn new(m: Matrix<T>) -> Result<Self> {
        if m.nrows() != 4 || m.ncols() != 4 {
            return Err(Error::DimensionMismatch(m.nrows() * m.ncols(), 16));
        }
        if m.is_zero() {
            return Err(Error::ZeroVector);
        }
        let asym = m.add(&m.transpose().scale(&-T::one()));
        if !is_negligible_vec(asym.data(), m.max_magnitude(), T::elimination_tol()) {
            return Err(Error::Precondition("quadric matrix must be symmetric".into()));
        }
        Ok(Quadric3 { m })
    }

    /// Symmetric part of any 4×4 matrix.
    pub fn from_bilinear(b: &Matrix<T>) -> Result<Self> {
        let half = T::one() / T::from_i64(2);
        Self::new(b.add(&b.transpose()).scale(&half))
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.m
    }

    pub fn bilinear(&self, p: &[T], q: &[T]) -> T {
        dot(p, &self.m.mul_vec(q))
    }

    pub fn eval(&self, p: &[T]) -> T {
        self.bilinear(p, p)
    }

    fn negligible(&self, v: &T, p: &[T], q: &[T]) -> bool {
        v.is_negligible(self.m.max_magnitude() * vec_norm(p) * vec_norm(q), 1e-9)
    }

    pub fn contains(&self, p: &ProjPoint3<T>) -> bool {
        self.negligible(&self.eval(p.coords()), p.coords(), p.coords())
    }

    /// Whether the whole line through `p` and `q` lies on the quadric.
    pub fn contains_line(&self, p: &ProjPoint3<T>, q: &ProjPoint3<T>) -> bool {
        self.contains(p) && self.contains(q) && self.negligible(&self.bilinear(p.coords(), q.coords()), p.coords(), q.coords())
    }

    pub fn is_smooth(&self) -> bool {
        !self.m.det().is_negligible(self.m.max_magnitude().powi(4), 1e-10)
    }

    pub fn permissibility(&self, cams: &CameraPair<T>) -> Permissibility {
        let (c1, c2) = cams.centers();
        Permissibility {
            smooth: self.is_smooth(),
            contains_centers: self.contains(c1) && self.contains(c2),
            contains_baseline: self.contains_line(c1, c2),
        }
    }

    pub fn proportional(&self, o: &Self) -> bool {
        proj_equal(self.m.data(), o.m.data(), if T::EXACT { 0.0 } else { 1e-8 }).unwrap_or(false)
    }
}

/// `sym(A₂ᵀ M A₁)` for `M ≁ F`.
pub fn quadric_from_pair<T: Field>(f: &Mat3<T>, m: &Mat3<T>, cams: &CameraPair<T>) -> Result<Quadric3<T>> {
    if span_rank(&[f, m]) < 2 {
        return Err(Error::ProportionalToF);
    }
    let b = cams.a2.transpose().mul(&m.to_matrix()).mul(&cams.a1);
    let q = Quadric3::from_bilinear(&b).map_err(|_| Error::ProportionalToF)?;
    let (c1, c2) = cams.centers();
    for (i, c) in [c1, c2].into_iter().enumerate() {
        if !q.contains(c) {
            return Err(Error::CenterNotOnQuadric(i + 1));
        }
    }
    Ok(q)
}

/// The quadric of a line for one of its rank-two members `F` realized by `cams`.
pub fn quadric_from_line<T: Field>(line: &MatrixLine<T>, f: &Mat3<T>, cams: &CameraPair<T>) -> Result<Quadric3<T>> {
    if !line.contains(f) {
        return Err(Error::Precondition("F does not lie on the line".into()));
    }
    let [b0, b1] = line.basis();
    let m = if span_rank(&[f, b0]) == 2 { b0 } else { b1 };
    quadric_from_pair(f, m, cams)
}

fn completion<T: Field>(c1: &[T; 4], c2: &[T; 4]) -> Matrix<T> {
    let unit = |k: usize| -> Vec<T> { (0..4).map(|i| if i == k { T::one() } else { T::zero() }).collect() };
    let mut best: Option<(f64, Matrix<T>)> = None;
    for i in 0..4 {
        for j in i + 1..4 {
            let (u, v) = (unit(i), unit(j));
            let h = Matrix::from_fn(4, 4, |r, c| match c {
                0 => c1[r].clone(),
                1 => c2[r].clone(),
                2 => u[r].clone(),
                _ => v[r].clone(),
            });
            let d = h.det().magnitude();
            if best.as_ref().is_none_or(|(b, _)| d > *b) {
                best = Some((d, h));
            }
        }
    }
    best.expect("six choices").1
}

/// The intersection of the line `l·x = 0` with a conic.
fn line_conic<T: Field>(l: &[T; 3], conic: &TernaryForm<T>) -> Vec<PlanePoint<T>> {
    // two points spanning the line
    let cand = [cross(l, &[T::one(), T::zero(), T::zero()]), cross(l, &[T::zero(), T::one(), T::zero()]), cross(l, &[T::zero(), T::zero(), T::one()])];
    let mut idx: Vec<usize> = (0..3).collect();
    idx.sort_by(|&a, &b| vec_norm(&cand[b]).total_cmp(&vec_norm(&cand[a])));
    let p = cand[idx[0]].clone();
    let q = cand[idx[1]].clone();
    let b = conic.restrict(&p, &q);
    let mut out = Vec::new();
    let mut exact: Vec<[Complex64; 2]> = Vec::new();
    if T::EXACT {
        let bq = BinaryForm::new(b.coeffs().iter().map(|c| c.as_rational().expect("exact")).collect());
        for (s, t) in binary_rational_roots(&bq) {
            let (s, t) = (T::from_rational(&s), T::from_rational(&t));
            exact.push([s.to_complex(), t.to_complex()]);
            let pt: [T; 3] = std::array::from_fn(|i| s.clone() * p[i].clone() + t.clone() * q[i].clone());
            out.push(PlanePoint::Exact(ProjPoint2::new(pt).expect("independent").canonical()));
        }
    }
    let (pc, qc) = (p.map(|v| v.to_complex()), q.map(|v| v.to_complex()));
    let mut pending = exact.clone();
    for r in binary_roots_complex(&b) {
        if let Some(i) = pending.iter().position(|e| proj_distance(e, &r) < 1e-6) {
            pending.remove(i);
            continue;
        }
        let pt: [Complex64; 3] = std::array::from_fn(|i| r[0] * pc[i] + r[1] * qc[i]);
        out.push(PlanePoint::Approx(ProjPoint2::new(pt).expect("independent").canonical()));
    }
    out
}

/// Forward forms and domain base points of the map induced by `Q` and the
/// cameras `(A₁, A₂)`.
fn quadric_leg<T: Field>(q: &Quadric3<T>, cams: &CameraPair<T>) -> Result<([TernaryForm<T>; 3], Vec<PlanePoint<T>>)> {
    let (c1, c2) = cams.centers();
    let h = completion(c1.coords(), c2.coords());
    let qh = h.transpose().mul(&q.m).mul(&h);
    let a1h = cams.a1.mul(&h);
    let a2h = cams.a2.mul(&h);
    let g1 = Mat3::from_fn(|i, j| a1h.get(i, j + 1).clone());
    let g2 = Mat3::from_fn(|i, j| if j == 0 { a2h.get(i, 0).clone() } else { a2h.get(i, j + 1).clone() });
    let g1inv = g1.inverse().ok_or_else(|| Error::Internal("first camera degenerate in frame".into()))?;
    let two = T::from_i64(2);
    // q(u) = u₁·a(u₂,u₃,u₄) + b(u₂,u₃,u₄)
    let a_lin: [T; 3] = std::array::from_fn(|j| two.clone() * qh.get(0, j + 1).clone());
    let a = TernaryForm::linear(&a_lin);
    let sub = |i: usize, j: usize| qh.get(i + 1, j + 1).clone();
    let b = TernaryForm::new(
        2,
        vec![
            sub(0, 0),
            two.clone() * sub(0, 1),
            two.clone() * sub(0, 2),
            sub(1, 1),
            two.clone() * sub(1, 2),
            sub(2, 2),
        ],
    );
    let f0 = [b.neg(), TernaryForm::variable(1).mul(&a), TernaryForm::variable(2).mul(&a)];
    let pulled: [TernaryForm<T>; 3] = std::array::from_fn(|i| f0[i].substitute(&g1inv));
    let forms = std::array::from_fn(|i| {
        (0..3).fold(TernaryForm::zero(2), |acc, j| acc.add(&pulled[j].scale(&g2.m[i][j])))
    });
    let mut base = vec![PlanePoint::Exact(ProjPoint2::new(g1.col(0))?.canonical())];
    for p in line_conic(&a_lin, &b) {
        base.push(match p {
            PlanePoint::Exact(x) => PlanePoint::Exact(ProjPoint2::new(g1.mul_vec(x.coords()))?.canonical()),
            PlanePoint::Approx(x) => PlanePoint::Approx(ProjPoint2::new(g1.to_complex().mul_vec(x.coords()))?.canonical()),
        });
    }
    Ok((forms, base))
}

/// The map `π₁(p) ↦ π₂(p)` for points `p` of a permissible quadric.
pub fn cremona_from_quadric<T: Field>(q: &Quadric3<T>, cams: &CameraPair<T>) -> Result<CremonaMap<T>> {
    let (c1, c2) = cams.centers();
    for (i, c) in [c1, c2].into_iter().enumerate() {
        if !q.contains(c) {
            return Err(Error::CenterNotOnQuadric(i + 1));
        }
    }
    let perm = q.permissibility(cams);
    if !perm.smooth {
        return Err(Error::NotPermissible("quadric is singular".into()));
    }
    if perm.contains_baseline {
        return Err(Error::NotPermissible("quadric contains the line through the centers".into()));
    }
    let (forms, dom) = quadric_leg(q, cams)?;
    let (_, cod) = quadric_leg(q, &cams.swapped())?;
    CremonaMap::new(forms, dom, cod)
}

fn annihilates<T: Field>(m: &MemberMatrix<T>, x: &ProjPoint2<T>, y: &ProjPoint2<T>) -> (bool, bool) {
    match m {
        MemberMatrix::Exact(f) => {
            let tol = if T::EXACT { 0.0 } else { 1e-9 };
            let s = f.max_magnitude();
            (
                is_negligible_vec(&f.mul_vec(x.coords()), s * x.norm(), tol),
                is_negligible_vec(&f.vec_mul(y.coords()), s * y.norm(), tol),
            )
        }
        MemberMatrix::Approx(f) => {
            let s = f.max_magnitude();
            let (xc, yc) = (x.to_complex(), y.to_complex());
            (
                vec_norm(&f.mul_vec(xc.coords())) <= 1e-9 * s * xc.norm(),
                vec_norm(&f.vec_mul(yc.coords())) <= 1e-9 * s * yc.norm(),
            )
        }
    }
}

/// Whether no rank-two member annihilates any `x_i` or `y_i`.
pub fn is_p_generic<T: Field>(line: &MatrixLine<T>, cfg: &PointPairConfig<T>) -> Result<bool> {
    if let Some(d) = line.defect() {
        return Err(Error::NonGenericLine(d.to_string()));
    }
    let z = crate::facesplit::build_z(cfg);
    for b in line.basis() {
        let s = b.max_magnitude();
        for i in 0..cfg.k() {
            let r = z.residual(i, b);
            if !r.is_negligible(s * cfg.x(i).norm() * cfg.y(i).norm(), 1e-9) {
                return Err(Error::NotInNullspace(format!("pair {}", i + 1)));
            }
        }
    }
    for mem in line.members() {
        for (x, y) in cfg.pairs() {
            let (rx, ly) = annihilates(&mem.matrix, x, y);
            if rx || ly {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The complex value of a member at a point, used to compare maps numerically.
pub fn map_distance<T: Field, U: Field>(f: &CremonaMap<T>, g: &CremonaMap<U>, x: &[Complex64; 3]) -> f64 {
    let a = f.to_complex().eval_complex(x);
    let b = g.to_complex().eval_complex(x);
    if vec_norm(&a) == 0.0 || vec_norm(&b) == 0.0 {
        return f64::INFINITY;
    }
    proj_distance(&a, &b)
}
