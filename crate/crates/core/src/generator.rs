//! Seeded synthesis of configurations with known degeneracy.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cubic::{hexahedral_cubic, plane_basis, rational_point_on_line, restricted_map_image, Side};
use crate::error::{Error, Result};
use crate::facesplit::{build_z, rank, rank_and_nullspace, PointPairConfig};
use crate::linalg::Matrix;
use crate::poly::{monomials, TernaryForm};
use crate::projective::{cross, dot, is_zero_vec, Mat3, ProjPoint2, ProjPoint3};
use crate::roots::binary_roots_complex;
use crate::scalar::Field;
use crate::trinity::{CameraPair, CremonaMap, PlanePoint, Quadric3};
use crate::Rational;

const MAX_TRIES: usize = 500;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mechanism {
    Cremona8,
    Quadric8,
    Cubic7,
    Cubic7Exact,
    Octad6,
    RankT9(u8),
    Homography,
    CollinearSide,
    Random,
}

impl Mechanism {
    /// Number of pairs the mechanism always produces, if fixed.
    pub fn fixed_k(&self) -> Option<usize> {
        match self {
            Mechanism::Cremona8 | Mechanism::Quadric8 => Some(8),
            Mechanism::Cubic7 | Mechanism::Cubic7Exact => Some(7),
            Mechanism::Octad6 => Some(6),
            Mechanism::RankT9(_) => Some(9),
            _ => None,
        }
    }
}

impl fmt::Display for Mechanism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mechanism::Cremona8 => write!(f, "cremona8"),
            Mechanism::Quadric8 => write!(f, "quadric8"),
            Mechanism::Cubic7 => write!(f, "cubic7"),
            Mechanism::Cubic7Exact => write!(f, "cubic7-exact"),
            Mechanism::Octad6 => write!(f, "octad6"),
            Mechanism::RankT9(r) => write!(f, "rankT9:{r}"),
            Mechanism::Homography => write!(f, "homography"),
            Mechanism::CollinearSide => write!(f, "collinear-side"),
            Mechanism::Random => write!(f, "random"),
        }
    }
}

impl FromStr for Mechanism {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        if let Some(r) = lower.strip_prefix("rankt9").map(|r| r.trim_start_matches([':', '-', '(']).trim_end_matches(')')) {
            return match r.parse::<u8>() {
                Ok(r @ 1..=3) => Ok(Mechanism::RankT9(r)),
                _ => Err(Error::Parse(format!("rank of T must be 1, 2 or 3 in {s:?}"))),
            };
        }
        Ok(match lower.as_str() {
            "cremona8" => Mechanism::Cremona8,
            "quadric8" => Mechanism::Quadric8,
            "cubic7" => Mechanism::Cubic7,
            "cubic7-exact" => Mechanism::Cubic7Exact,
            "octad6" => Mechanism::Octad6,
            "homography" => Mechanism::Homography,
            "collinear-side" | "collinear" => Mechanism::CollinearSide,
            "random" => Mechanism::Random,
            _ => return Err(Error::Parse(format!("unknown mechanism {s:?}"))),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenSpec {
    pub k: usize,
    pub mechanism: Mechanism,
    pub seed: u64,
}

impl GenSpec {
    pub fn new(mechanism: Mechanism, seed: u64) -> Self {
        GenSpec { k: mechanism.fixed_k().unwrap_or(7), mechanism, seed }
    }

    pub fn with_k(mut self, k: usize) -> Self {
        self.k = k;
        self
    }
}

/// Hidden data that explains why a configuration is (or is not) deficient.
#[derive(Clone, Debug, PartialEq)]
pub enum GroundTruth {
    Cremona { map: CremonaMap<Rational>, h1: Mat3<Rational>, h2: Mat3<Rational> },
    Quadric { quadric: Quadric3<Rational>, cams: CameraPair<Rational>, world_points: Vec<ProjPoint3<Rational>> },
    Cubic7 { x7: [f64; 3], y7: [f64; 3] },
    /// A rational rank-two nullspace member whose kernel avoids the points.
    Witness { f: Mat3<Rational> },
    RankT { t: Mat3<Rational>, rank: usize },
    Homography { h: Mat3<Rational> },
    CollinearSide { side: Side, line: [Rational; 3] },
    Random,
}

#[derive(Clone, Debug, PartialEq)]
pub enum GeneratedConfig {
    Exact(PointPairConfig<Rational>),
    Float(PointPairConfig<f64>),
}

impl GeneratedConfig {
    pub fn exact(&self) -> Option<&PointPairConfig<Rational>> {
        match self {
            GeneratedConfig::Exact(c) => Some(c),
            GeneratedConfig::Float(_) => None,
        }
    }

    pub fn to_f64(&self) -> PointPairConfig<f64> {
        match self {
            GeneratedConfig::Exact(c) => c.to_f64(),
            GeneratedConfig::Float(c) => c.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Sample {
    pub spec: GenSpec,
    pub config: GeneratedConfig,
    pub truth: GroundTruth,
}

fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn q(v: i64) -> Rational {
    Rational::from_i64(v)
}

pub(crate) fn random_vec3(rng: &mut impl Rng, r: i64) -> [Rational; 3] {
    loop {
        let v: [Rational; 3] = std::array::from_fn(|_| q(rng.gen_range(-r..=r)));
        if !is_zero_vec(&v) {
            return v;
        }
    }
}

fn random_point3(rng: &mut impl Rng, r: i64) -> [Rational; 4] {
    loop {
        let v: [Rational; 4] = std::array::from_fn(|_| q(rng.gen_range(-r..=r)));
        if !is_zero_vec(&v) {
            return v;
        }
    }
}

fn random_invertible(rng: &mut impl Rng, r: i64) -> Mat3<Rational> {
    loop {
        let v: Vec<i64> = (0..9).map(|_| rng.gen_range(-r..=r)).collect();
        let h = Mat3::from_fn(|i, j| q(v[3 * i + j]));
        if !h.det().is_zero() {
            return h;
        }
    }
}

fn pairs_to_config(pairs: Vec<([Rational; 3], [Rational; 3])>) -> Result<PointPairConfig<Rational>> {
    PointPairConfig::new(
        pairs
            .into_iter()
            .map(|(x, y)| Ok((ProjPoint2::new(x)?.canonical(), ProjPoint2::new(y)?.canonical())))
            .collect::<Result<_>>()?,
    )
}

pub fn random_config(rng: &mut impl Rng, k: usize, r: i64) -> Result<PointPairConfig<Rational>> {
    pairs_to_config((0..k).map(|_| (random_vec3(rng, r), random_vec3(rng, r))).collect())
}

fn involution() -> [TernaryForm<Rational>; 3] {
    let m = |c: [i64; 6]| TernaryForm::new(2, c.map(q).to_vec());
    [m([0, 0, 0, 0, 1, 0]), m([0, 0, 1, 0, 0, 0]), m([0, 1, 0, 0, 0, 0])]
}

/// `f = H₁ ∘ σ ∘ H₂` for the standard involution σ.
pub fn conjugated_involution(h1: &Mat3<Rational>, h2: &Mat3<Rational>) -> Result<CremonaMap<Rational>> {
    let s = involution().map(|f| f.substitute(h2));
    let forms = std::array::from_fn(|i| (0..3).fold(TernaryForm::zero(2), |acc, j| acc.add(&s[j].scale(&h1.m[i][j]))));
    let h2inv = h2.inverse().ok_or(Error::Precondition("H₂ singular".into()))?;
    let unit = |k: usize| -> [Rational; 3] { std::array::from_fn(|i| if i == k { q(1) } else { q(0) }) };
    let dom = (0..3).map(|k| Ok(PlanePoint::Exact(ProjPoint2::new(h2inv.mul_vec(&unit(k)))?.canonical()))).collect::<Result<_>>()?;
    let cod = (0..3).map(|k| Ok(PlanePoint::Exact(ProjPoint2::new(h1.mul_vec(&unit(k)))?.canonical()))).collect::<Result<_>>()?;
    CremonaMap::new(forms, dom, cod)
}

/// Pairs `(x, f(x))` for the conjugated involution, skipping points on the
/// exceptional lines.
pub fn cremona_pairs(h1: &Mat3<Rational>, h2: &Mat3<Rational>, xs: &[[Rational; 3]]) -> Result<PointPairConfig<Rational>> {
    let f = conjugated_involution(h1, h2)?;
    let mut pairs = Vec::new();
    for x in xs {
        if h2.mul_vec(x).iter().any(|c| c.is_zero()) {
            return Err(Error::Precondition("point on an exceptional line".into()));
        }
        pairs.push((x.clone(), f.eval_raw(x)));
    }
    pairs_to_config(pairs)
}

pub fn gen_k8_cremona(seed: u64) -> Result<Sample> {
    let mut rng = rng_for(seed);
    let h1 = random_invertible(&mut rng, 3);
    let h2 = random_invertible(&mut rng, 3);
    let mut xs = Vec::new();
    while xs.len() < 8 {
        let x = random_vec3(&mut rng, 9);
        if h2.mul_vec(&x).iter().all(|c| !c.is_zero()) {
            xs.push(x);
        }
    }
    let cfg = cremona_pairs(&h1, &h2, &xs)?;
    let map = conjugated_involution(&h1, &h2)?;
    Ok(Sample {
        spec: GenSpec::new(Mechanism::Cremona8, seed),
        config: GeneratedConfig::Exact(cfg),
        truth: GroundTruth::Cremona { map, h1, h2 },
    })
}

/// A 3×4 camera with center `c`: `A = B − (Bc) rᵀ / (rᵀc)`.
fn random_camera(rng: &mut impl Rng, c: &[Rational; 4]) -> Matrix<Rational> {
    loop {
        let v: Vec<i64> = (0..12).map(|_| rng.gen_range(-5..=5)).collect();
        let b = Matrix::from_fn(3, 4, |i, j| q(v[4 * i + j]));
        let r = random_point3(rng, 5);
        let rc = dot(&r, c);
        if rc.is_zero() {
            continue;
        }
        let bc = b.mul_vec(c);
        let a = Matrix::from_fn(3, 4, |i, j| b.get(i, j).clone() - &bc[i] * &r[j] / &rc);
        if a.rank() == 3 {
            return a;
        }
    }
}

/// A smooth quadric through `c₁, c₂` not containing their join.
fn random_quadric_through(rng: &mut impl Rng, c1: &[Rational; 4], c2: &[Rational; 4]) -> Quadric3<Rational> {
    let v = Matrix::from_rows(vec![crate::reconstruct::veronese(c1), crate::reconstruct::veronese(c2)]);
    let ns = v.nullspace();
    loop {
        let mut c = vec![q(0); 10];
        for b in &ns {
            let s = q(rng.gen_range(-3..=3));
            for (ci, bi) in c.iter_mut().zip(b) {
                *ci += &s * bi;
            }
        }
        let half = Rational::new(1.into(), 2.into());
        let mut m = Matrix::zeros(4, 4);
        let mut k = 0;
        for i in 0..4 {
            for j in i..4 {
                if i == j {
                    m.set(i, i, c[k].clone());
                } else {
                    m.set(i, j, &c[k] * &half);
                    m.set(j, i, &c[k] * &half);
                }
                k += 1;
            }
        }
        let Ok(qd) = Quadric3::new(m) else { continue };
        if qd.is_smooth() && !qd.bilinear(c1, c2).is_zero() {
            return qd;
        }
    }
}

/// A rational point on `Q` on the chord through `c` in direction `d`.
fn chord_point(qd: &Quadric3<Rational>, c: &[Rational; 4], d: &[Rational; 4]) -> Option<[Rational; 4]> {
    let a = qd.eval(d);
    let b = qd.bilinear(c, d);
    if a.is_zero() || b.is_zero() {
        return None;
    }
    let two = q(2);
    let p: [Rational; 4] = std::array::from_fn(|i| &a * &c[i] - &two * &b * &d[i]);
    (!is_zero_vec(&p)).then_some(p)
}

pub fn gen_k8_quadric(seed: u64) -> Result<Sample> {
    let mut rng = rng_for(seed);
    for _ in 0..MAX_TRIES {
        let c1 = random_point3(&mut rng, 4);
        let c2 = random_point3(&mut rng, 4);
        if ProjPoint3::new(c1.clone())?.proj_eq(&ProjPoint3::new(c2.clone())?, 0.0) {
            continue;
        }
        let qd = random_quadric_through(&mut rng, &c1, &c2);
        let a1 = random_camera(&mut rng, &c1);
        let a2 = random_camera(&mut rng, &c2);
        let cams = CameraPair::new(a1, a2)?;
        let mut world = Vec::new();
        let mut pairs = Vec::new();
        while world.len() < 8 {
            let d = random_point3(&mut rng, 6);
            let Some(p) = chord_point(&qd, &c1, &d) else { continue };
            let pp = ProjPoint3::new(p.clone())?;
            let (cc1, cc2) = cams.centers();
            if pp.proj_eq(cc1, 0.0) || pp.proj_eq(cc2, 0.0) || world.iter().any(|w: &ProjPoint3<Rational>| w.proj_eq(&pp, 0.0)) {
                continue;
            }
            let x = cams.project(1, &pp)?;
            let y = cams.project(2, &pp)?;
            pairs.push((x.coords().clone(), y.coords().clone()));
            world.push(pp.canonical());
        }
        let cfg = pairs_to_config(pairs)?;
        return Ok(Sample {
            spec: GenSpec::new(Mechanism::Quadric8, seed),
            config: GeneratedConfig::Exact(cfg),
            truth: GroundTruth::Quadric { quadric: qd, cams, world_points: world },
        });
    }
    Err(Error::Internal("quadric sampling exhausted".into()))
}

/// Six random pairs whose planes and curves pass the usual nondegeneracy checks.
fn six_generic(rng: &mut impl Rng) -> PointPairConfig<Rational> {
    loop {
        let Ok(six) = random_config(rng, 6, 9) else { continue };
        if rank(&build_z(&six)) != 6 {
            continue;
        }
        if hexahedral_cubic(&six, Side::X).is_ok() && hexahedral_cubic(&six, Side::Y).is_ok() {
            return six;
        }
    }
}

/// Completes six pairs with the seventh point cut on `C_x` by the line
/// through `p` and `q`, exactly.
pub fn gen_k7_with_line(six: &PointPairConfig<Rational>, p: &[Rational; 3], q: &[Rational; 3]) -> Result<PointPairConfig<Rational>> {
    let cx = hexahedral_cubic(six, Side::X)?;
    let basis = plane_basis(six)?;
    let xs = six.xs();
    for x7 in rational_point_on_line(&cx, p, q) {
        if xs.iter().any(|x| x.proj_eq(&x7, 0.0)) {
            continue;
        }
        let Ok(y7) = restricted_map_image(&basis, &x7) else { continue };
        return six.with_pair(x7, y7);
    }
    Err(Error::Precondition("no new rational point of the curve on this line".into()))
}

/// A rank-two member of a nullspace with prescribed right kernel, if any.
pub fn member_with_kernel(basis: &[Mat3<Rational>], z: &[Rational; 3]) -> Option<Mat3<Rational>> {
    // Σ α_j M_j z = 0
    let cols: Vec<[Rational; 3]> = basis.iter().map(|m| m.mul_vec(z)).collect();
    let a = Matrix::from_fn(3, cols.len(), |i, j| cols[j][i].clone());
    let ns = a.nullspace();
    if ns.len() != 1 {
        return None;
    }
    let f = basis.iter().zip(&ns[0]).fold(Mat3::zero(), |acc, (m, s)| acc.add(&m.scale(s)));
    (f.rank() == 2).then(|| f.canonical())
}

fn triangulable(f: &Mat3<Rational>, cfg: &PointPairConfig<Rational>) -> bool {
    cfg.pairs().iter().all(|(x, y)| !is_zero_vec(&f.mul_vec(x.coords())) && !is_zero_vec(&f.vec_mul(y.coords())))
}

pub fn gen_k7_exact(seed: u64) -> Result<Sample> {
    let mut rng = rng_for(seed);
    for _ in 0..MAX_TRIES {
        let six = six_generic(&mut rng);
        let (a, b) = (rng.gen_range(0..6), rng.gen_range(0..6));
        if a == b {
            continue;
        }
        let Ok(cfg) = gen_k7_with_line(&six, six.x(a).coords(), six.x(b).coords()) else { continue };
        let (r, ns) = rank_and_nullspace(&build_z(&cfg));
        if r != 6 || cfg.ys().iter().enumerate().any(|(i, y)| cfg.ys()[..i].iter().any(|o| o.proj_eq(y, 0.0))) {
            continue;
        }
        // a witness with kernel on the curve: the third point of another chord
        let cx = hexahedral_cubic(&six, Side::X)?;
        let mut witness = None;
        'outer: for c in 0..6 {
            for d in c + 1..6 {
                for z in rational_point_on_line(&cx, six.x(c).coords(), six.x(d).coords()) {
                    if cfg.xs().iter().any(|x| x.proj_eq(&z, 0.0)) {
                        continue;
                    }
                    if let Some(f) = member_with_kernel(&ns, z.coords()) {
                        if triangulable(&f, &cfg) {
                            witness = Some(f);
                            break 'outer;
                        }
                    }
                }
            }
        }
        let Some(f) = witness else { continue };
        return Ok(Sample {
            spec: GenSpec::new(Mechanism::Cubic7Exact, seed),
            config: GeneratedConfig::Exact(cfg),
            truth: GroundTruth::Witness { f },
        });
    }
    Err(Error::Internal("exact seventh-point sampling exhausted".into()))
}

/// Float seventh pair from a random rational line meeting `C_x` in a real point.
const SEPARATION: f64 = 1e-3;

pub fn gen_k7(seed: u64) -> Result<Sample> {
    let mut rng = rng_for(seed);
    for _ in 0..MAX_TRIES {
        let six = six_generic(&mut rng);
        let cx = hexahedral_cubic(&six, Side::X)?;
        let basis = plane_basis(&six)?;
        let mut found = None;
        for _ in 0..20 {
            let (p, qv) = (random_vec3(&mut rng, 9), random_vec3(&mut rng, 9));
            if is_zero_vec(&cross(&p, &qv)) {
                continue;
            }
            let b = cx.form().restrict(&p, &qv);
            let roots = binary_roots_complex(&b);
            let Some(r) = roots.iter().min_by(|a, b| (a[0].im.abs() + a[1].im.abs()).total_cmp(&(b[0].im.abs() + b[1].im.abs()))) else {
                continue;
            };
            // real representative of (s:t)
            let (s, t) = if r[1].norm() > r[0].norm() { ((r[0] / r[1]).re, 1.0) } else { (1.0, (r[1] / r[0]).re) };
            let pf = p.clone().map(|v| crate::scalar::rational_to_f64(&v));
            let qf = qv.clone().map(|v| crate::scalar::rational_to_f64(&v));
            let x7: [f64; 3] = std::array::from_fn(|i| s * pf[i] + t * qf[i]);
            found = Some(x7);
            break;
        }
        let Some(x7) = found else { continue };
        let bf: [Mat3<f64>; 3] = std::array::from_fn(|j| Mat3::from_fn(|a, b| crate::scalar::rational_to_f64(basis[j].get(a, b))));
        let cols: Vec<[f64; 3]> = bf.iter().map(|m| m.mul_vec(&x7)).collect();
        let y7 = [cross(&cols[0], &cols[1]), cross(&cols[0], &cols[2]), cross(&cols[1], &cols[2])]
            .into_iter()
            .max_by(|a, b| crate::projective::vec_norm(a).total_cmp(&crate::projective::vec_norm(b)))
            .expect("three");
        let n7 = crate::projective::vec_norm(&y7);
        let y7 = y7.map(|v| v / n7);
        let six_f = six.to_f64();
        if !apart(&six_f.xs(), &x7) || !apart(&six_f.ys(), &y7) {
            continue;
        }
        let mut pairs = six_f.pairs().to_vec();
        pairs.push((ProjPoint2::new(x7)?, ProjPoint2::new(y7)?));
        let cfg = PointPairConfig::new(pairs)?;
        return Ok(Sample {
            spec: GenSpec::new(Mechanism::Cubic7, seed),
            config: GeneratedConfig::Float(cfg),
            truth: GroundTruth::Cubic7 { x7, y7 },
        });
    }
    Err(Error::Internal("seventh-point sampling exhausted".into()))
}

/// `p` is away from every point of `pts` and from every line through two of them.
fn apart(pts: &[ProjPoint2<f64>], p: &[f64; 3]) -> bool {
    let unit = |v: &[f64; 3]| {
        let n = crate::projective::vec_norm(v);
        v.map(|c| c / n)
    };
    let p = unit(p);
    let us: Vec<[f64; 3]> = pts.iter().map(|x| unit(x.coords())).collect();
    us.iter().all(|u| crate::projective::vec_norm(&cross(u, &p)) > SEPARATION)
        && us.iter().enumerate().all(|(i, a)| us[i + 1..].iter().all(|b| dot(&cross(a, b), &p).abs() > SEPARATION))
}

/// Six pairs with `rank Z₆ = 5`. The x's are random; the four cubics through
/// them have a 4×3 linear syzygy matrix whose columns give the nullspace
/// matrices, and each `y_i` is the left kernel there.
pub fn gen_k6_octad(seed: u64) -> Result<Sample> {
    let mut rng = rng_for(seed);
    let mons = monomials(3);
    'retry: for _ in 0..MAX_TRIES {
        let xs: Vec<[Rational; 3]> = (0..6).map(|_| random_vec3(&mut rng, 7)).collect();
        let ev = Matrix::from_rows(
            xs.iter()
                .map(|x| {
                    mons.iter()
                        .map(|e| (0..3).fold(q(1), |acc, i| acc * num_traits::pow(x[i].clone(), e[i])))
                        .collect()
                })
                .collect(),
        );
        let cubics: Vec<TernaryForm<Rational>> = ev.nullspace().into_iter().map(|c| TernaryForm::new(3, c)).collect();
        if cubics.len() != 4 {
            continue;
        }
        // Σ_j ℓ_j g_j = 0 with ℓ_j = Σ_b c_{jb} x_b
        let cols: Vec<Vec<Rational>> = (0..12)
            .map(|col| TernaryForm::variable(col % 3).mul(&cubics[col / 3]).coeffs().to_vec())
            .collect();
        let syz = Matrix::from_fn(15, 12, |i, j| cols[j][i].clone()).nullspace();
        if syz.len() != 3 {
            continue;
        }
        // (M_j)_{k b} = c^k_{j b}
        let ms: Vec<Mat3<Rational>> = (0..4).map(|j| Mat3::from_fn(|k, b| syz[k][3 * j + b].clone())).collect();
        let mut pairs = Vec::new();
        for x in &xs {
            let n = Matrix::from_fn(4, 3, |j, k| dot(&ms[j].row(k), x));
            let ker = n.nullspace();
            if ker.len() != 1 {
                continue 'retry;
            }
            pairs.push((x.clone(), std::array::from_fn(|i| ker[0][i].clone())));
        }
        let Ok(cfg) = pairs_to_config(pairs) else { continue };
        let (r, ns) = rank_and_nullspace(&build_z(&cfg));
        if r != 5 {
            continue;
        }
        for _ in 0..20 {
            let z = random_vec3(&mut rng, 9);
            if let Some(f) = member_with_kernel(&ns, &z) {
                if triangulable(&f, &cfg) {
                    return Ok(Sample {
                        spec: GenSpec::new(Mechanism::Octad6, seed),
                        config: GeneratedConfig::Exact(cfg),
                        truth: GroundTruth::Witness { f },
                    });
                }
            }
        }
    }
    Err(Error::Internal("deficient six-pair sampling exhausted".into()))
}

fn random_on_line(rng: &mut impl Rng, l: &[Rational; 3]) -> Option<[Rational; 3]> {
    let a = cross(l, &random_vec3(rng, 5));
    let b = cross(l, &random_vec3(rng, 5));
    if is_zero_vec(&cross(&a, &b)) {
        return None;
    }
    let (s, t) = (q(rng.gen_range(-5..=5)), q(rng.gen_range(-5..=5)));
    let p: [Rational; 3] = std::array::from_fn(|i| &s * &a[i] + &t * &b[i]);
    (!is_zero_vec(&p)).then_some(p)
}

fn random_rank(rng: &mut impl Rng, r: usize) -> Mat3<Rational> {
    loop {
        let t = match r {
            3 => random_invertible(rng, 4),
            _ => (0..r).fold(Mat3::zero(), |acc, _| {
                let u = random_vec3(rng, 4);
                let v = random_vec3(rng, 4);
                acc.add(&Mat3::from_fn(|i, j| &u[i] * &v[j]))
            }),
        };
        if t.rank() == r {
            return t;
        }
    }
}

/// Pairs with `y_iᵀ T x_i = 0`: each `y_i` is a random point of the line `T x_i`.
pub fn pairs_for_witness(rng: &mut impl Rng, t: &Mat3<Rational>, xs: &[[Rational; 3]]) -> Result<PointPairConfig<Rational>> {
    let mut pairs = Vec::new();
    for x in xs {
        let l = t.mul_vec(x);
        if is_zero_vec(&l) {
            return Err(Error::Precondition("T x = 0".into()));
        }
        let y = loop {
            if let Some(y) = random_on_line(rng, &l) {
                break y;
            }
        };
        pairs.push((x.clone(), y));
    }
    pairs_to_config(pairs)
}

pub fn gen_k9(seed: u64, r: usize) -> Result<Sample> {
    if !(1..=3).contains(&r) {
        return Err(Error::Precondition(format!("rank of T must be 1, 2 or 3, got {r}")));
    }
    let mut rng = rng_for(seed);
    for _ in 0..MAX_TRIES {
        let t = random_rank(&mut rng, r);
        let cfg = if r == 1 {
            // T = u vᵀ: s of the x's on ℓ = {vᵀx = 0}, the other y's on ℓ′ = {uᵀy = 0}
            let (u, v) = crate::rank9::factor_rank_one(&t);
            let s = rng.gen_range(4..=5);
            let mut pairs = Vec::new();
            for i in 0..9 {
                let (x, y) = if i < s {
                    (random_on_line(&mut rng, &v), Some(random_vec3(&mut rng, 9)))
                } else {
                    (Some(random_vec3(&mut rng, 9)), random_on_line(&mut rng, &u))
                };
                let (Some(x), Some(y)) = (x, y) else { break };
                pairs.push((x, y));
            }
            if pairs.len() != 9 {
                continue;
            }
            let Ok(c) = pairs_to_config(pairs) else { continue };
            c
        } else {
            let xs: Vec<[Rational; 3]> = (0..9).map(|_| random_vec3(&mut rng, 9)).collect();
            let Ok(c) = pairs_for_witness(&mut rng, &t, &xs) else { continue };
            c
        };
        let (_, ns) = rank_and_nullspace(&build_z(&cfg));
        if ns.len() != 1 {
            continue;
        }
        return Ok(Sample {
            spec: GenSpec::new(Mechanism::RankT9(r as u8), seed),
            config: GeneratedConfig::Exact(cfg),
            truth: GroundTruth::RankT { t: t.canonical(), rank: r },
        });
    }
    Err(Error::Internal("witness sampling exhausted".into()))
}

/// `y_i = H x_i` for a random invertible `H`.
pub fn gen_homography(seed: u64, k: usize) -> Result<Sample> {
    let mut rng = rng_for(seed);
    let h = random_invertible(&mut rng, 4);
    let pairs = (0..k)
        .map(|_| {
            let x = random_vec3(&mut rng, 9);
            let y = h.mul_vec(&x);
            (x, y)
        })
        .collect();
    Ok(Sample {
        spec: GenSpec::new(Mechanism::Homography, seed).with_k(k),
        config: GeneratedConfig::Exact(pairs_to_config(pairs)?),
        truth: GroundTruth::Homography { h },
    })
}

/// All points of one side on a random line.
pub fn gen_collinear(seed: u64, k: usize) -> Result<Sample> {
    let mut rng = rng_for(seed);
    let line = random_vec3(&mut rng, 5);
    let side = if rng.gen_bool(0.5) { Side::X } else { Side::Y };
    let mut pairs = Vec::new();
    while pairs.len() < k {
        let Some(p) = random_on_line(&mut rng, &line) else { continue };
        let o = random_vec3(&mut rng, 9);
        pairs.push(match side {
            Side::X => (p, o),
            Side::Y => (o, p),
        });
    }
    Ok(Sample {
        spec: GenSpec::new(Mechanism::CollinearSide, seed).with_k(k),
        config: GeneratedConfig::Exact(pairs_to_config(pairs)?),
        truth: GroundTruth::CollinearSide { side, line },
    })
}

pub fn gen_random(seed: u64, k: usize) -> Result<Sample> {
    let mut rng = rng_for(seed);
    Ok(Sample {
        spec: GenSpec::new(Mechanism::Random, seed).with_k(k),
        config: GeneratedConfig::Exact(random_config(&mut rng, k, 9)?),
        truth: GroundTruth::Random,
    })
}

pub fn generate(spec: &GenSpec) -> Result<Sample> {
    if let Some(k) = spec.mechanism.fixed_k() {
        if k != spec.k {
            return Err(Error::Precondition(format!("mechanism {} produces {k} pairs, not {}", spec.mechanism, spec.k)));
        }
    }
    match spec.mechanism {
        Mechanism::Cremona8 => gen_k8_cremona(spec.seed),
        Mechanism::Quadric8 => gen_k8_quadric(spec.seed),
        Mechanism::Cubic7 => gen_k7(spec.seed),
        Mechanism::Cubic7Exact => gen_k7_exact(spec.seed),
        Mechanism::Octad6 => gen_k6_octad(spec.seed),
        Mechanism::RankT9(r) => gen_k9(spec.seed, r as usize),
        Mechanism::Homography => gen_homography(spec.seed, spec.k),
        Mechanism::CollinearSide => gen_collinear(spec.seed, spec.k),
        Mechanism::Random => gen_random(spec.seed, spec.k),
    }
}
