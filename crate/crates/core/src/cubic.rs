//! Epipolar cubic curves of six and seven point pairs.
//!
//! Two constructions of the curves C_x, C_y of six pairs are provided: the
//! determinant of the nullspace plane and the hexahedral form assembled from
//! Coble's invariants. Seven pairs are certified by the fourteen values
//! g_x^{î}(x_i), g_y^{î}(y_i).

use num_complex::Complex64;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::facesplit::{build_z, is_semi_generic, rank, rank_and_nullspace, PointPairConfig};
use crate::linalg::{combinations, Matrix};
use crate::poly::{det3_forms, TernaryForm};
use crate::projective::{cross, dot, proj_distance, vec_norm, Mat3, ProjPoint2};
use crate::roots::poly_roots;
use crate::scalar::{normalized_complex, Field};
use crate::trinity::{MatrixLine, PlanePoint};
use crate::Rational;

/// Relative membership tolerance for float curve evaluation.
pub const CURVE_TOL: f64 = 1e-7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    X,
    Y,
}

/// A plane cubic, nonzero, up to scale.
#[derive(Clone, Debug, PartialEq)]
pub struct CubicCurve<T> {
    form: TernaryForm<T>,
}

impl<T: Field> CubicCurve<T> {
    pub fn new(form: TernaryForm<T>) -> Result<Self> {
        if form.degree() != 3 {
            return Err(Error::Precondition(format!("cubic needs degree 3, got {}", form.degree())));
        }
        if form.is_zero() {
            return Err(Error::ZeroVector);
        }
        Ok(CubicCurve { form })
    }

    pub fn form(&self) -> &TernaryForm<T> {
        &self.form
    }

    pub fn coeffs(&self) -> &[T] {
        self.form.coeffs()
    }

    pub fn eval(&self, p: &[T; 3]) -> T {
        self.form.eval(p)
    }

    pub fn proportional(&self, o: &Self) -> bool {
        self.form.proportional(&o.form, if T::EXACT { 0.0 } else { 1e-9 })
    }

    /// `|C(p)| / (‖C‖ ‖p‖³)`.
    pub fn relative_residual(&self, p: &[Complex64; 3]) -> f64 {
        let f = self.form.to_complex();
        let n = vec_norm(f.coeffs()) * vec_norm(p).powi(3);
        if n == 0.0 {
            return f64::INFINITY;
        }
        f.eval_complex(p).norm() / n
    }

    pub fn contains_approx(&self, p: &[Complex64; 3]) -> bool {
        self.relative_residual(p) <= CURVE_TOL
    }
}

/// Pair indices (1-based) of the five bracket products in each of Coble's six
/// invariants ā…f̄ and covariant cubics a(u)…f(u).
const TERMS: [[[[usize; 2]; 3]; 5]; 6] = [
    [[[2, 5], [1, 3], [4, 6]], [[5, 1], [4, 2], [3, 6]], [[1, 4], [3, 5], [2, 6]], [[4, 3], [2, 1], [5, 6]], [[3, 2], [5, 4], [1, 6]]],
    [[[5, 3], [1, 2], [4, 6]], [[1, 4], [2, 3], [5, 6]], [[2, 5], [3, 4], [1, 6]], [[3, 1], [4, 5], [2, 6]], [[4, 2], [5, 1], [3, 6]]],
    [[[5, 3], [4, 1], [2, 6]], [[3, 4], [2, 5], [1, 6]], [[4, 2], [1, 3], [5, 6]], [[2, 1], [5, 4], [3, 6]], [[1, 5], [3, 2], [4, 6]]],
    [[[4, 5], [3, 1], [2, 6]], [[5, 3], [2, 4], [1, 6]], [[4, 1], [2, 5], [3, 6]], [[3, 2], [1, 5], [4, 6]], [[2, 1], [4, 3], [5, 6]]],
    [[[3, 1], [2, 4], [5, 6]], [[1, 2], [5, 3], [4, 6]], [[2, 5], [4, 1], [3, 6]], [[5, 4], [3, 2], [1, 6]], [[4, 3], [1, 5], [2, 6]]],
    [[[4, 2], [3, 5], [1, 6]], [[2, 3], [1, 4], [5, 6]], [[3, 1], [5, 2], [4, 6]], [[1, 5], [4, 3], [2, 6]], [[5, 4], [2, 1], [3, 6]]],
];

/// `[ijk] = det[u_i u_j u_k]`.
pub fn bracket<T: Field>(a: &[T; 3], b: &[T; 3], c: &[T; 3]) -> T {
    dot(&cross(a, b), c)
}

/// `[(ij)(kl)(rs)] = [ijr][kls] − [ijs][klr]`.
fn bracket_triple<T: Field>(u: &[[T; 3]], t: &[[usize; 2]; 3]) -> T {
    let p = |n: usize| &u[n - 1];
    let [[i, j], [k, l], [r, s]] = *t;
    bracket(p(i), p(j), p(r)) * bracket(p(k), p(l), p(s)) - bracket(p(i), p(j), p(s)) * bracket(p(k), p(l), p(r))
}

#[derive(Clone, Debug, PartialEq)]
pub struct CobleData<T> {
    /// ā, b̄, c̄, d̄, ē, f̄.
    pub scalars: [T; 6],
    /// a(u), …, f(u).
    pub cubics: [TernaryForm<T>; 6],
    pub repeated_points: bool,
}

pub fn coble_data<T: Field>(points: &[ProjPoint2<T>]) -> Result<CobleData<T>> {
    if points.len() != 6 {
        return Err(Error::DimensionMismatch(points.len(), 6));
    }
    let u: Vec<[T; 3]> = points.iter().map(|p| p.coords().clone()).collect();
    let repeated = combinations(6, 2).iter().any(|ij| points[ij[0]].proj_eq(&points[ij[1]], if T::EXACT { 0.0 } else { 1e-12 }));
    if repeated {
        log::warn!("repeated points among the six: invariants are degenerate");
    }
    let scalars = std::array::from_fn(|k| TERMS[k].iter().fold(T::zero(), |acc, t| acc + bracket_triple(&u, t)));
    let lin = |[i, j]: [usize; 2]| TernaryForm::linear(&cross(&u[i - 1], &u[j - 1]));
    let cubics = std::array::from_fn(|k| {
        TERMS[k].iter().fold(TernaryForm::zero(3), |acc, t| acc.add(&lin(t[0]).mul(&lin(t[1])).mul(&lin(t[2]))))
    });
    Ok(CobleData { scalars, cubics, repeated_points: repeated })
}

/// g_x = ā_y a_x(u) + … + f̄_y f_x(u), and symmetrically g_y.
pub fn hexahedral_cubic<T: Field>(six: &PointPairConfig<T>, side: Side) -> Result<CubicCurve<T>> {
    if six.k() != 6 {
        return Err(Error::DimensionMismatch(six.k(), 6));
    }
    let (own, other) = match side {
        Side::X => (six.xs(), six.ys()),
        Side::Y => (six.ys(), six.xs()),
    };
    let a = coble_data(&own)?;
    let b = coble_data(&other)?;
    let g = (0..6).fold(TernaryForm::zero(3), |acc, k| acc.add(&a.cubics[k].scale(&b.scalars[k])));
    CubicCurve::new(g).map_err(|_| Error::HexahedralDegenerate)
}

/// Linear forms `(M x)_i` (x side) or `(yᵀ M)_i` (y side).
fn image_forms<T: Field>(m: &Mat3<T>, side: Side) -> [TernaryForm<T>; 3] {
    std::array::from_fn(|i| match side {
        Side::X => TernaryForm::linear(&m.row(i)),
        Side::Y => TernaryForm::linear(&m.col(i)),
    })
}

/// `det[M₁x M₂x M₃x]`, or `det[yᵀM₁; yᵀM₂; yᵀM₃]` on the y side.
pub fn kappa_cubic<T: Field>(basis: &[Mat3<T>; 3], side: Side) -> Result<CubicCurve<T>> {
    let cols = std::array::from_fn(|j| image_forms(&basis[j], side));
    CubicCurve::new(det3_forms(&cols)).map_err(|_| Error::KappaDegenerate)
}

/// The curve isomorphism C_x → C_y induced by the plane: the unique `y` with
/// `yᵀM_j x = 0` for all j. With `Side::Y` the roles swap and `p` is a y point.
pub fn restricted_map<T: Field>(basis: &[Mat3<T>; 3], p: &ProjPoint2<T>, side: Side) -> Result<ProjPoint2<T>> {
    let cols: Vec<[T; 3]> = basis
        .iter()
        .map(|m| match side {
            Side::X => m.mul_vec(p.coords()),
            Side::Y => m.vec_mul(p.coords()),
        })
        .collect();
    let k = Mat3::from_fn(|i, j| cols[j][i].clone());
    match k.rank() {
        2 => {}
        3 => return Err(Error::NotOnCurve),
        _ => return Err(Error::Indeterminate),
    }
    let best = combinations(3, 2)
        .into_iter()
        .map(|ij| cross(&cols[ij[0]], &cols[ij[1]]))
        .max_by(|a, b| vec_norm(a).total_cmp(&vec_norm(b)))
        .expect("three pairs");
    Ok(ProjPoint2::new(best)?.canonical())
}

pub fn restricted_map_image<T: Field>(basis: &[Mat3<T>; 3], x: &ProjPoint2<T>) -> Result<ProjPoint2<T>> {
    restricted_map(basis, x, Side::X)
}

/// Three nullspace matrices of a six-pair configuration.
pub fn plane_basis<T: Field>(six: &PointPairConfig<T>) -> Result<[Mat3<T>; 3]> {
    let (_, ns) = rank_and_nullspace(&build_z(six));
    if ns.len() != 3 {
        return Err(Error::Rank { expected: 6, actual: 9 - ns.len() });
    }
    Ok([ns[0].clone(), ns[1].clone(), ns[2].clone()])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict7 {
    Deficient,
    NotDeficient,
    /// All fourteen values vanish although Z₇ has full rank.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Certificate7<T> {
    /// g_x^{î}(x_i) for i = 1..7.
    pub values_x: Vec<T>,
    /// g_y^{î}(y_i).
    pub values_y: Vec<T>,
    /// |g(p)| / (‖g‖ ‖p‖³), zero when the curve is zero.
    pub residuals_x: Vec<f64>,
    pub residuals_y: Vec<f64>,
    /// Curve î proportional to curve 1̂; zero curves never coincide.
    pub coincide_x: Vec<bool>,
    pub coincide_y: Vec<bool>,
    pub curves_x: Vec<Option<CubicCurve<T>>>,
    pub curves_y: Vec<Option<CubicCurve<T>>>,
    pub rank: usize,
    pub semi_generic: bool,
    pub deficient: bool,
    pub all_values_vanish: bool,
    pub verdict: Verdict7,
}

impl<T: Field> Certificate7<T> {
    /// Whether the fourteen-value test agrees with the rank.
    pub fn test_agrees(&self) -> bool {
        self.all_values_vanish == self.deficient
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals_x.iter().chain(&self.residuals_y).copied().fold(0.0, f64::max)
    }
}

fn leave_one_out_curves<T: Field>(cfg: &PointPairConfig<T>, side: Side) -> Vec<Option<CubicCurve<T>>> {
    (0..cfg.k()).map(|i| hexahedral_cubic(&cfg.without(i), side).ok()).collect()
}

/// The seven-pair certificate. The float variant reports residuals and uses
/// `tol` for the vanishing test; exact fields ignore `tol`.
pub fn rank7_certify_tol<T: Field>(cfg: &PointPairConfig<T>, tol: f64) -> Result<Certificate7<T>> {
    if cfg.k() != 7 {
        return Err(Error::DimensionMismatch(cfg.k(), 7));
    }
    let curves_x = leave_one_out_curves(cfg, Side::X);
    let curves_y = leave_one_out_curves(cfg, Side::Y);
    let eval = |curves: &[Option<CubicCurve<T>>], pts: Vec<ProjPoint2<T>>| -> (Vec<T>, Vec<f64>) {
        curves
            .iter()
            .zip(pts)
            .map(|(c, p)| match c {
                Some(c) => (c.eval(p.coords()), c.relative_residual(p.to_complex().coords())),
                None => (T::zero(), 0.0),
            })
            .unzip()
    };
    let (values_x, residuals_x) = eval(&curves_x, cfg.xs());
    let (values_y, residuals_y) = eval(&curves_y, cfg.ys());
    let coincide = |curves: &[Option<CubicCurve<T>>]| -> Vec<bool> {
        curves
            .iter()
            .map(|c| match (c, &curves[0]) {
                (Some(c), Some(c0)) => c.proportional(c0),
                _ => false,
            })
            .collect()
    };
    let r = rank(&build_z(cfg));
    let vanish = |vals: &[T], res: &[f64]| {
        if T::EXACT {
            vals.iter().all(|v| v.is_zero())
        } else {
            res.iter().all(|&r| r <= tol)
        }
    };
    let all_values_vanish = vanish(&values_x, &residuals_x) && vanish(&values_y, &residuals_y);
    let semi_generic = match cfg.map(|v| v.as_rational().expect("finite coordinates")) {
        Ok(exact) if T::EXACT => is_semi_generic(&exact),
        _ => false,
    };
    let deficient = r < 7;
    let verdict = if deficient {
        Verdict7::Deficient
    } else if all_values_vanish {
        Verdict7::Inconclusive
    } else {
        Verdict7::NotDeficient
    };
    Ok(Certificate7 {
        coincide_x: coincide(&curves_x),
        coincide_y: coincide(&curves_y),
        values_x,
        values_y,
        residuals_x,
        residuals_y,
        curves_x,
        curves_y,
        rank: r,
        semi_generic,
        deficient,
        all_values_vanish,
        verdict,
    })
}

pub fn rank7_certify<T: Field>(cfg: &PointPairConfig<T>) -> Result<Certificate7<T>> {
    rank7_certify_tol(cfg, 1e-6)
}

/// One ternary form restricted to the affine chart `u₁ = 1` after a change
/// of coordinates, used by the resultant.
fn u3_coefficients(f: &TernaryForm<Rational>, t: &Rational) -> Vec<Rational> {
    // f(1, t, z) as a polynomial in z, ascending
    let d = f.degree();
    let mut out = vec![Rational::from_i64(0); d + 1];
    for (e, c) in crate::poly::monomials(d).iter().zip(f.coeffs()) {
        let mut v = c.clone();
        for _ in 0..e[1] {
            v *= t;
        }
        out[e[2]] += v;
    }
    out
}

fn sylvester_det(a: &[Rational], b: &[Rational]) -> Rational {
    let m = a.len() - 1;
    let n = b.len() - 1;
    let size = m + n;
    let mut s = Matrix::<Rational>::zeros(size, size);
    for i in 0..n {
        for (j, c) in a.iter().rev().enumerate() {
            s.set(i, i + j, c.clone());
        }
    }
    for i in 0..m {
        for (j, c) in b.iter().rev().enumerate() {
            s.set(n + i, i + j, c.clone());
        }
    }
    s.det()
}

/// Solves for the coefficients of the polynomial through `(t_i, v_i)` by
/// Newton divided differences.
fn interpolate(ts: &[Rational], vs: &[Rational]) -> Vec<Rational> {
    let n = ts.len();
    let mut dd = vs.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&ts[i] - &ts[i - j]);
        }
    }
    let mut coeffs = vec![Rational::from_i64(0); n];
    for i in (0..n).rev() {
        // coeffs = coeffs * (t - ts[i]) + dd[i]
        let mut next = vec![Rational::from_i64(0); n];
        for k in 0..n {
            if k + 1 < n {
                next[k + 1] += &coeffs[k];
            }
            next[k] -= &coeffs[k] * &ts[i];
        }
        next[0] += &dd[i];
        coeffs = next;
    }
    coeffs
}

fn random_unimodular_ish(rng: &mut ChaCha8Rng) -> Mat3<Rational> {
    loop {
        let v: Vec<i64> = (0..9).map(|_| rng.gen_range(-4..=4)).collect();
        let h = Mat3::from_fn(|i, j| Rational::from_i64(v[3 * i + j]));
        if !h.det().is_zero() {
            return h;
        }
    }
}

fn newton_polish(f: &TernaryForm<Complex64>, g: &TernaryForm<Complex64>, p: [Complex64; 3]) -> [Complex64; 3] {
    let one = Complex64::new(1.0, 0.0);
    let (mut t, mut z) = (p[1] / p[0], p[2] / p[0]);
    let res = |t: Complex64, z: Complex64| {
        let q = [one, t, z];
        (f.eval_complex(&q), g.eval_complex(&q))
    };
    let mut cur = res(t, z);
    for _ in 0..8 {
        let q = [one, t, z];
        let gf = f.gradient_complex(&q);
        let gg = g.gradient_complex(&q);
        let det = gf[1] * gg[2] - gf[2] * gg[1];
        if det.norm() == 0.0 {
            break;
        }
        let dt = (cur.0 * gg[2] - cur.1 * gf[2]) / det;
        let dz = (gf[1] * cur.1 - gg[1] * cur.0) / det;
        let (nt, nz) = (t - dt, z - dz);
        let next = res(nt, nz);
        if next.0.norm() + next.1.norm() >= cur.0.norm() + cur.1.norm() {
            break;
        }
        t = nt;
        z = nz;
        cur = next;
    }
    [one, t, z]
}

/// Intersection points of two exact plane curves without common components,
/// with multiplicity merged. Uses a seeded random coordinate change so that
/// the eliminated variable has nonzero leading coefficients and no
/// intersection lies on the chart boundary.
pub fn intersect_curves(f: &TernaryForm<Rational>, g: &TernaryForm<Rational>, seed: u64) -> Result<Vec<[Complex64; 3]>> {
    let (m, n) = (f.degree(), g.degree());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..20 {
        let h = random_unimodular_ish(&mut rng);
        let (fh, gh) = (f.substitute(&h), g.substitute(&h));
        if fh.coeff([0, 0, m]).is_zero() || gh.coeff([0, 0, n]).is_zero() {
            continue;
        }
        let deg = m * n;
        let ts: Vec<Rational> = (0..=deg as i64).map(Rational::from_i64).collect();
        let vs: Vec<Rational> = ts.iter().map(|t| sylvester_det(&u3_coefficients(&fh, t), &u3_coefficients(&gh, t))).collect();
        let r = interpolate(&ts, &vs);
        if r.iter().all(|c| c.is_zero()) {
            return Err(Error::Precondition("curves share a component".into()));
        }
        if r[deg].is_zero() {
            continue;
        }
        let fc = fh.to_complex();
        let gc = gh.to_complex();
        let fcn = TernaryForm::new(m, normalized_complex(fc.coeffs()));
        let gcn = TernaryForm::new(n, normalized_complex(gc.coeffs()));
        let hc = h.to_complex();
        let mut pts: Vec<[Complex64; 3]> = Vec::new();
        for t in poly_roots(&normalized_complex(&r)) {
            let zs = poly_roots(&normalized_complex(&u3_coefficients_complex(&fcn, t)));
            let best = zs.into_iter().min_by(|a, b| {
                let ra = gcn.eval_complex(&[Complex64::new(1.0, 0.0), t, *a]).norm();
                let rb = gcn.eval_complex(&[Complex64::new(1.0, 0.0), t, *b]).norm();
                ra.total_cmp(&rb)
            });
            let Some(z) = best else { continue };
            let p = newton_polish(&fcn, &gcn, [Complex64::new(1.0, 0.0), t, z]);
            let world = hc.mul_vec(&p);
            if !pts.iter().any(|q| proj_distance(q, &world) < 1e-7) {
                pts.push(world);
            }
        }
        return Ok(pts);
    }
    Err(Error::Precondition("no admissible coordinate change found".into()))
}

fn u3_coefficients_complex(f: &TernaryForm<Complex64>, t: Complex64) -> Vec<Complex64> {
    let d = f.degree();
    let mut out = vec![Complex64::new(0.0, 0.0); d + 1];
    for (e, c) in crate::poly::monomials(d).iter().zip(f.coeffs()) {
        out[e[2]] += c * t.powu(e[1] as u32);
    }
    out
}

/// Epipoles found as the common points of the seven leave-one-out curves,
/// with the kernels of the pencil's rank-two members as an independent check.
#[derive(Clone, Debug)]
pub struct EpipoleReport {
    pub x: Vec<ProjPoint2<Complex64>>,
    pub y: Vec<ProjPoint2<Complex64>>,
    pub oracle_x: Vec<PlanePoint<Rational>>,
    pub oracle_y: Vec<PlanePoint<Rational>>,
    pub oracle_agrees: bool,
}

pub const EPIPOLE_TOL: f64 = 1e-6;

pub fn epipoles_by_intersection(cfg: &PointPairConfig<Rational>, seed: u64) -> Result<EpipoleReport> {
    if cfg.k() != 7 {
        return Err(Error::DimensionMismatch(cfg.k(), 7));
    }
    let (r, ns) = rank_and_nullspace(&build_z(cfg));
    if r != 7 {
        return Err(Error::EpipoleCount(format!("rank of Z is {r}, not 7")));
    }
    let line = MatrixLine::new(ns[0].clone(), ns[1].clone())
        .map_err(|e| Error::EpipoleCount(format!("nullspace line: {e}")))?;
    let side_points = |side: Side| -> Result<Vec<ProjPoint2<Complex64>>> {
        let curves: Vec<CubicCurve<Rational>> =
            (0..7).map(|i| hexahedral_cubic(&cfg.without(i), side)).collect::<Result<_>>()?;
        let cands = intersect_curves(curves[0].form(), curves[1].form(), seed)?;
        let keep: Vec<ProjPoint2<Complex64>> = cands
            .into_iter()
            .filter(|p| curves[2..].iter().all(|c| c.contains_approx(p)))
            .map(|p| ProjPoint2::new(p).expect("nonzero").canonical())
            .collect();
        if keep.len() != 3 {
            return Err(Error::EpipoleCount(format!("{} common points on the {side:?} side", keep.len())));
        }
        Ok(keep)
    };
    let x = side_points(Side::X)?;
    let y = side_points(Side::Y)?;
    let oracle_x: Vec<PlanePoint<Rational>> = line.members().iter().map(|m| m.right_kernel()).collect();
    let oracle_y: Vec<PlanePoint<Rational>> = line.members().iter().map(|m| m.left_kernel()).collect();
    let matches = |found: &[ProjPoint2<Complex64>], oracle: &[PlanePoint<Rational>]| {
        oracle.iter().all(|o| found.iter().any(|p| proj_distance(p.coords(), o.to_complex().coords()) < EPIPOLE_TOL))
    };
    let oracle_agrees = matches(&x, &oracle_x) && matches(&y, &oracle_y);
    Ok(EpipoleReport { x, y, oracle_x, oracle_y, oracle_agrees })
}

/// The four P⁵ equations of the curve of six pairs in hexahedral form:
/// Σz_i³ = 0, Σz_i = 0, Σā_x z_i = 0, Σā_y z_i = 0.
#[derive(Clone, Debug, PartialEq)]
pub struct HexahedralSurface<T> {
    pub coble_x: CobleData<T>,
    pub coble_y: CobleData<T>,
}

impl<T: Field> HexahedralSurface<T> {
    /// Coefficient lists: cubic sum, linear sum, x-weighted, y-weighted.
    pub fn equations(&self) -> [[T; 6]; 4] {
        [
            std::array::from_fn(|_| T::one()),
            std::array::from_fn(|_| T::one()),
            self.coble_x.scalars.clone(),
            self.coble_y.scalars.clone(),
        ]
    }

    /// `(a(u) : … : f(u))` for the chosen side.
    pub fn parameterize(&self, u: &[T; 3], side: Side) -> [T; 6] {
        let data = match side {
            Side::X => &self.coble_x,
            Side::Y => &self.coble_y,
        };
        std::array::from_fn(|k| data.cubics[k].eval(u))
    }

    /// Values of the four equations at `z`.
    pub fn residuals(&self, z: &[T; 6]) -> [T; 4] {
        let eq = self.equations();
        let cubes = z.iter().fold(T::zero(), |a, v| a + v.clone() * v.clone() * v.clone());
        [cubes, dot(&eq[1], z), dot(&eq[2], z), dot(&eq[3], z)]
    }
}

pub fn hexahedral_surface_report<T: Field>(six: &PointPairConfig<T>) -> Result<HexahedralSurface<T>> {
    if six.k() != 6 {
        return Err(Error::DimensionMismatch(six.k(), 6));
    }
    Ok(HexahedralSurface { coble_x: coble_data(&six.xs())?, coble_y: coble_data(&six.ys())? })
}

/// A point of C_x on the line `s·p + t·q` with rational parameter, if the
/// restricted cubic has a rational root.
pub fn rational_point_on_line(curve: &CubicCurve<Rational>, p: &[Rational; 3], q: &[Rational; 3]) -> Vec<ProjPoint2<Rational>> {
    let b = curve.form().restrict(p, q);
    crate::roots::binary_rational_roots(&b)
        .into_iter()
        .filter_map(|(s, t)| ProjPoint2::new(std::array::from_fn(|i| &s * &p[i] + &t * &q[i])).ok())
        .map(|pt| pt.canonical())
        .collect()
}

/// Samples a random integer vector with entries in `[-r, r]`.
#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::scalar::rat;

    #[test]
    fn coble_scalars_and_cubics() {
        let six = fixtures::hexahedral_six();
        let cx = coble_data(&six.xs()).unwrap();
        // the six invariants sum to zero, as do the six cubics
        assert!(cx.scalars.iter().fold(rat(0), |a, v| a + v).is_zero());
        assert!(cx.cubics.iter().fold(TernaryForm::zero(3), |a, c| a.add(c)).is_zero());
        for c in cx.cubics.iter() {
            for x in six.xs() {
                assert!(c.eval(x.coords()).is_zero());
            }
        }
        assert!(!cx.repeated_points);
    }

    #[test]
    fn hexahedral_matches_hand_computation() {
        let six = fixtures::hexahedral_six();
        let gx = hexahedral_cubic(&six, Side::X).unwrap();
        let gy = hexahedral_cubic(&six, Side::Y).unwrap();
        assert_eq!(gx.form(), &fixtures::hexahedral_g_x().scale(&rat(48)));
        assert_eq!(gy.form(), &fixtures::hexahedral_g_y().scale(&rat(-48)));
        let basis = plane_basis(&six).unwrap();
        assert!(kappa_cubic(&basis, Side::X).unwrap().proportional(&gx));
        assert!(kappa_cubic(&basis, Side::Y).unwrap().proportional(&gy));
    }

    #[test]
    fn seventh_point_image() {
        let six = fixtures::hexahedral_six();
        let basis = plane_basis(&six).unwrap();
        let (x7, y7) = fixtures::hexahedral_seventh();
        assert_eq!(restricted_map_image(&basis, &x7).unwrap(), y7);
        assert_eq!(restricted_map(&basis, &y7, Side::Y).unwrap(), x7.canonical());
        for (x, y) in six.pairs() {
            assert!(restricted_map_image(&basis, x).unwrap().proj_eq(y, 0.0));
        }
        assert_eq!(restricted_map_image(&basis, &ProjPoint2::from_i64([1, 2, 3])), Err(Error::NotOnCurve));
    }

    #[test]
    fn certificate_on_deficient_seven() {
        let (x7, y7) = fixtures::hexahedral_seventh();
        let cfg = fixtures::hexahedral_six().with_pair(x7, y7).unwrap();
        let c = rank7_certify(&cfg).unwrap();
        assert_eq!(c.rank, 6);
        assert!(c.all_values_vanish);
        assert!(c.coincide_x.iter().all(|&b| b) && c.coincide_y.iter().all(|&b| b));
        assert_eq!(c.verdict, Verdict7::Deficient);
        assert!(c.test_agrees());
    }

    #[test]
    fn certificate_counterexamples() {
        for cfg in [fixtures::degenerate_seven_a(), fixtures::degenerate_seven_b()] {
            let c = rank7_certify(&cfg).unwrap();
            assert!(c.all_values_vanish);
            assert_eq!(c.rank, 7);
            assert_eq!(c.verdict, Verdict7::Inconclusive);
        }
    }

    #[test]
    fn resultant_interpolation() {
        let ts: Vec<Rational> = (0..4).map(rat).collect();
        let vs: Vec<Rational> = ts.iter().map(|t| t * t * t - rat(2) * t + rat(5)).collect();
        assert_eq!(interpolate(&ts, &vs), vec![rat(5), rat(-2), rat(0), rat(1)]);
    }

    #[test]
    fn conic_line_intersection() {
        // x² + y² − z² and x − z meet at (1:0:1) doubly
        let circle = TernaryForm::new(2, [1, 0, 0, 1, 0, -1].map(rat).to_vec());
        let other = TernaryForm::new(2, [0, 0, 0, 1, 0, -1].map(rat).to_vec());
        let pts = intersect_curves(&circle, &other, 3).unwrap();
        assert_eq!(pts.len(), 2);
        for p in pts {
            let q = ProjPoint2::new(p).unwrap().canonical();
            assert!((q.coords()[1].norm() - 1.0).abs() < 1e-9 || (q.coords()[1] / q.coords()[0]).norm() > 0.5);
        }
    }

    #[test]
    fn seven_epipoles() {
        let rep = epipoles_by_intersection(&fixtures::epipole_seven(), 1).unwrap();
        let (ex, ey) = fixtures::epipole_seven_expected();
        for e in ex {
            assert!(rep.x.iter().any(|p| proj_distance(p.coords(), e.to_complex().coords()) < 1e-6));
        }
        for e in ey {
            assert!(rep.y.iter().any(|p| proj_distance(p.coords(), e.to_complex().coords()) < 1e-6));
        }
        assert!(rep.oracle_agrees);
    }

    #[test]
    fn surface_equations() {
        let six = fixtures::hexahedral_six();
        let s = hexahedral_surface_report(&six).unwrap();
        let u = [rat(2), rat(-7), rat(3)];
        let r = s.residuals(&s.parameterize(&u, Side::X));
        assert!(r[0].is_zero() && r[1].is_zero() && r[2].is_zero());
        assert!(!r[3].is_zero());
        let (x7, _) = fixtures::hexahedral_seventh();
        let r = s.residuals(&s.parameterize(x7.coords(), Side::X));
        assert!(r.iter().all(|v| v.is_zero()));
    }
}
