//! Projective reconstructions and the quadrics through them.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cubic::intersect_curves;
use crate::error::{Error, Result};
use crate::facesplit::{build_z, rank_and_nullspace, PointPairConfig};
use crate::linalg::Matrix;
use crate::poly::TernaryForm;
use crate::projective::{dot, proj_distance, skew_unchecked, vec_norm, Mat3, ProjPoint2, ProjPoint3};
use crate::scalar::Field;
use crate::trinity::{cameras_from_f, CameraPair, Quadric3};
use crate::Rational;

#[derive(Clone, Debug, PartialEq)]
pub struct Reconstruction<T> {
    pub cams: CameraPair<T>,
    pub world_points: Vec<ProjPoint3<T>>,
}

fn two_largest_rows<T: Field>(m: &Matrix<T>) -> [usize; 2] {
    let mut idx: Vec<usize> = (0..m.nrows()).collect();
    idx.sort_by(|&a, &b| vec_norm(m.row(b)).total_cmp(&vec_norm(m.row(a))));
    [idx[0], idx[1]]
}

/// The point of P³ projecting to `x` and `y`.
pub fn triangulate<T: Field>(cams: &CameraPair<T>, x: &ProjPoint2<T>, y: &ProjPoint2<T>) -> Result<ProjPoint3<T>> {
    let f = cams.fundamental();
    let s = f.max_magnitude() * x.norm() * y.norm();
    if !dot(y.coords(), &f.mul_vec(x.coords())).is_negligible(s, 1e-9) {
        return Err(Error::TriangulationDegenerate("pair violates the epipolar constraint".into()));
    }
    let r1 = skew_unchecked(x.coords()).to_matrix().mul(cams.a1());
    let r2 = skew_unchecked(y.coords()).to_matrix().mul(cams.a2());
    let [a, b] = two_largest_rows(&r1);
    let [c, d] = two_largest_rows(&r2);
    let stack = r1.select_rows(&[a, b]).vstack(&r2.select_rows(&[c, d]));
    let ns: Vec<Vec<T>> = if T::EXACT {
        stack.nullspace()
    } else {
        crate::linalg::numerical_nullspace(&stack, 1e-9)
            .into_iter()
            .map(|v| v.into_iter().map(T::from_complex).collect())
            .collect()
    };
    if ns.len() != 1 {
        return Err(Error::TriangulationDegenerate(format!("kernel has dimension {}", ns.len())));
    }
    let p = ProjPoint3::from_slice(&ns[0])?.canonical();
    let tol = if T::EXACT { 0.0 } else { 1e-8 };
    let px = cams.project(1, &p);
    let py = cams.project(2, &p);
    match (px, py) {
        (Ok(px), Ok(py)) if px.proj_eq(x, tol) && py.proj_eq(y, tol) => Ok(p),
        _ => Err(Error::TriangulationDegenerate("reprojection failed".into())),
    }
}

pub fn reconstruct<T: Field>(cfg: &PointPairConfig<T>, cams: &CameraPair<T>) -> Result<Reconstruction<T>> {
    let world_points = cfg.pairs().iter().map(|(x, y)| triangulate(cams, x, y)).collect::<Result<_>>()?;
    Ok(Reconstruction { cams: cams.clone(), world_points })
}

/// Quadrics containing both centers and every reconstructed point.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadricSpace<T> {
    /// Number of independent quadrics; `dim nullspace(Z) − 1`.
    pub dimension: usize,
    pub basis: Vec<Quadric3<T>>,
    pub reconstruction: Reconstruction<T>,
}

impl<T: Field> QuadricSpace<T> {
    /// Every basis quadric vanishes on every reconstruction point and both centers.
    pub fn membership_verified(&self) -> bool {
        let (c1, c2) = self.reconstruction.cams.centers();
        self.basis
            .iter()
            .all(|q| q.contains(c1) && q.contains(c2) && self.reconstruction.world_points.iter().all(|p| q.contains(p)))
    }
}

/// Nullspace matrices that complete `F` to a basis of the nullspace.
fn complement<T: Field>(f: &Mat3<T>, basis: &[Mat3<T>]) -> Vec<Mat3<T>> {
    let mut chosen: Vec<Mat3<T>> = vec![f.clone()];
    let mut out = Vec::new();
    for b in basis {
        let mut trial = chosen.clone();
        trial.push(b.clone());
        let rows = Matrix::from_rows(trial.iter().map(|m| m.vec().to_vec()).collect());
        let r = if T::EXACT { rows.rank() } else { crate::linalg::numerical_rank(&rows, 1e-8) };
        if r == trial.len() {
            chosen = trial;
            out.push(b.clone());
        }
    }
    out
}

pub fn reconstruction_quadrics_with<T: Field>(cfg: &PointPairConfig<T>, f: &Mat3<T>, cams: &CameraPair<T>) -> Result<QuadricSpace<T>> {
    let z = build_z(cfg);
    let s = f.max_magnitude();
    for i in 0..cfg.k() {
        if !z.residual(i, f).is_negligible(s * cfg.x(i).norm() * cfg.y(i).norm(), 1e-9) {
            return Err(Error::NotInNullspace(format!("F fails pair {}", i + 1)));
        }
    }
    let reconstruction = reconstruct(cfg, cams)?;
    let (_, ns) = rank_and_nullspace(&z);
    let others = complement(f, &ns);
    if others.is_empty() {
        return Err(Error::EmptyQuadricSpace);
    }
    let basis = others
        .iter()
        .map(|m| Quadric3::from_bilinear(&cams.a2().transpose().mul(&m.to_matrix()).mul(cams.a1())))
        .collect::<Result<Vec<_>>>()?;
    let space = QuadricSpace { dimension: ns.len() - 1, basis, reconstruction };
    if !space.membership_verified() {
        return Err(Error::Internal("a nullspace quadric misses a reconstruction point".into()));
    }
    Ok(space)
}

/// The quadric space of a deficient configuration, with the canonical
/// cameras of `F`.
pub fn reconstruction_quadrics<T: Field>(cfg: &PointPairConfig<T>, f: &Mat3<T>) -> Result<QuadricSpace<T>> {
    let cams = cameras_from_f(f)?;
    reconstruction_quadrics_with(cfg, f, &cams)
}

/// `(p₁², p₁p₂, p₁p₃, p₁p₄, p₂², …, p₄²)`.
pub fn veronese<T: Field>(p: &[T; 4]) -> Vec<T> {
    let mut out = Vec::with_capacity(10);
    for i in 0..4 {
        for j in i..4 {
            out.push(p[i].clone() * p[j].clone());
        }
    }
    out
}

fn from_veronese<T: Field>(c: &[T]) -> Result<Quadric3<T>> {
    let half = T::one() / T::from_i64(2);
    let mut m = Matrix::zeros(4, 4);
    let mut k = 0;
    for i in 0..4 {
        for j in i..4 {
            if i == j {
                m.set(i, i, c[k].clone());
            } else {
                m.set(i, j, c[k].clone() * half.clone());
                m.set(j, i, c[k].clone() * half.clone());
            }
            k += 1;
        }
    }
    Quadric3::new(m)
}

/// All quadrics through the given points, by linear algebra on the
/// Veronese embedding.
pub fn quadrics_through(points: &[ProjPoint3<Rational>]) -> Result<Vec<Quadric3<Rational>>> {
    if points.is_empty() {
        return Err(Error::Precondition("need at least one point".into()));
    }
    let v = Matrix::from_rows(points.iter().map(|p| veronese(p.coords())).collect());
    v.nullspace().iter().map(|c| from_veronese(c)).collect()
}

/// Rank of a family of quadrics as vectors in the 10-dimensional space.
pub fn quadric_family_rank(qs: &[Quadric3<Rational>]) -> usize {
    if qs.is_empty() {
        return 0;
    }
    Matrix::from_rows(qs.iter().map(|q| q.matrix().data().to_vec()).collect()).rank()
}

#[derive(Clone, Debug, PartialEq)]
pub struct OctadReport {
    pub net_dimension: usize,
    /// The eight points (six reconstructed, two centers) lie on every quadric of the net.
    pub membership: bool,
    pub distinct_points: bool,
    pub planes_tested: usize,
    /// Planes on which a common zero of the three quadrics was found.
    pub planes_with_extra_point: usize,
}

impl OctadReport {
    pub fn consistent(&self) -> bool {
        self.membership && self.distinct_points && self.planes_with_extra_point == 0
    }
}

pub const OCTAD_PLANES: usize = 200;

fn restrict_quadric(q: &Quadric3<Rational>, frame: &[[Rational; 4]; 3]) -> TernaryForm<Rational> {
    // conic with matrix PᵀQP in the plane coordinates
    let qm = q.matrix();
    let g = |a: usize, b: usize| dot(&frame[a][..], &qm.mul_vec(&frame[b])[..]);
    let two = Rational::from_i64(2);
    TernaryForm::new(2, vec![g(0, 0), two.clone() * g(0, 1), two.clone() * g(0, 2), g(1, 1), two * g(1, 2), g(2, 2)])
}

/// Number of seeded random planes on which three quadrics appear to share a
/// zero other than one of the `known` points.
pub fn planes_meeting_net(qs: &[Quadric3<Rational>], known: &[ProjPoint3<Rational>], seed: u64, planes: usize) -> usize {
    let known: Vec<Vec<Complex64>> = known.iter().map(|p| crate::scalar::normalized_complex(p.coords())).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut with_extra = 0;
    for _ in 0..planes {
        let frame: [[Rational; 4]; 3] =
            std::array::from_fn(|_| std::array::from_fn(|_| Rational::from_i64(rng.gen_range(-9..=9))));
        let conics: Vec<TernaryForm<Rational>> = qs.iter().map(|q| restrict_quadric(q, &frame)).collect();
        let (a, b) = (&conics[0], &conics[1]);
        if a.is_zero() || b.is_zero() || a.proportional(b, 0.0) {
            with_extra += 1;
            continue;
        }
        let Ok(cands) = intersect_curves(a, b, rng.gen()) else {
            with_extra += 1;
            continue;
        };
        let c3 = TernaryForm::new(2, crate::scalar::normalized_complex(conics[2].coeffs()));
        let fc: Vec<Vec<Complex64>> = frame.iter().map(|r| r.iter().map(|v| v.to_complex()).collect()).collect();
        let hit = cands.iter().any(|p| {
            if c3.eval_complex(p).norm() > 1e-8 * vec_norm(p).powi(2) {
                return false;
            }
            let lifted: Vec<Complex64> = (0..4).map(|j| (0..3).map(|i| p[i] * fc[i][j]).sum()).collect();
            known.iter().all(|k| proj_distance(&lifted, k) > 1e-6)
        });
        if hit {
            with_extra += 1;
        }
    }
    with_extra
}

/// Checks a net of quadrics through c₁, c₂ and six reconstructed points: exact
/// membership of the eight points and, on `OCTAD_PLANES` seeded random
/// planes, that the three quadrics share no common zero (which would signal a
/// base curve rather than eight isolated points).
pub fn cayley_octad_membership(cfg: &PointPairConfig<Rational>, f: &Mat3<Rational>, seed: u64) -> Result<OctadReport> {
    if cfg.k() != 6 {
        return Err(Error::DimensionMismatch(cfg.k(), 6));
    }
    let space = reconstruction_quadrics(cfg, f)?;
    if space.dimension != 3 {
        return Err(Error::NetDimension(space.dimension));
    }
    let (c1, c2) = space.reconstruction.cams.centers();
    let mut pts: Vec<ProjPoint3<Rational>> = space.reconstruction.world_points.clone();
    pts.push(c1.clone());
    pts.push(c2.clone());
    let distinct_points = (0..8).all(|i| (i + 1..8).all(|j| !pts[i].proj_eq(&pts[j], 0.0)));
    let membership = space.membership_verified() && quadric_family_rank(&space.basis) == 3;
    let with_extra = planes_meeting_net(&space.basis, &pts, seed, OCTAD_PLANES);
    Ok(OctadReport { net_dimension: 3, membership, distinct_points, planes_tested: OCTAD_PLANES, planes_with_extra_point: with_extra })
}
