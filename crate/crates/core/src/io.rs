//! JSON formats: configurations, line inputs, curve inputs and reports.
//!
//! Exact values are written as strings (`"-3/7"`), floats as numbers and
//! complex values as `[re, im]`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cubic::{Certificate7, CubicCurve, Side, Verdict7};
use crate::error::{Error, Result};
use crate::facesplit::PointPairConfig;
use crate::generator::{GenSpec, GroundTruth, Sample};
use crate::linalg::Matrix;
use crate::poly::TernaryForm;
use crate::projective::{Mat3, ProjPoint, ProjPoint2};
use crate::rank9::{Case2Status, CaseEvidence, Certificate9, LineMembership};
use crate::reconstruct::{OctadReport, QuadricSpace, Reconstruction};
use crate::scalar::{format_rational, parse_rational, Field};
use crate::trinity::{CameraPair, CremonaMap, LineParam, MatrixLine, PlanePoint, Quadric3, RankTwoMember};
use crate::Rational;

/// A scalar on the wire.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Int(i64),
    Exact(String),
    Real(f64),
    Complex([f64; 2]),
}

impl Num {
    pub fn of<T: Field>(v: &T) -> Num {
        if T::EXACT {
            Num::Exact(format_rational(&v.as_rational().expect("exact field")))
        } else {
            let z = v.to_complex();
            if z.im == 0.0 {
                Num::Real(z.re)
            } else {
                Num::Complex([z.re, z.im])
            }
        }
    }

    pub fn to_rational(&self) -> Result<Rational> {
        match self {
            Num::Int(i) => Ok(Rational::from_i64(*i)),
            Num::Exact(s) => parse_rational(s),
            Num::Real(x) => Rational::from_float(*x).ok_or_else(|| Error::Parse(format!("non-finite number {x}"))),
            Num::Complex(_) => Err(Error::Parse("complex value where a rational is expected".into())),
        }
    }

    pub fn to_complex(&self) -> Result<Complex64> {
        match self {
            Num::Complex([re, im]) => Ok(Complex64::new(*re, *im)),
            Num::Real(x) => Ok(Complex64::new(*x, 0.0)),
            _ => Ok(self.to_rational()?.to_complex()),
        }
    }
}

fn nums<T: Field>(v: &[T]) -> Vec<Num> {
    v.iter().map(Num::of).collect()
}

fn rationals(v: &[Num]) -> Result<Vec<Rational>> {
    v.iter().map(Num::to_rational).collect()
}

fn mat3_json<T: Field>(m: &Mat3<T>) -> Vec<Vec<Num>> {
    (0..3).map(|i| nums(&m.row(i))).collect()
}

fn matrix_json<T: Field>(m: &Matrix<T>) -> Vec<Vec<Num>> {
    (0..m.nrows()).map(|i| nums(m.row(i))).collect()
}

fn parse_mat3(rows: &[Vec<Num>]) -> Result<Mat3<Rational>> {
    let m = parse_matrix(rows, 3, 3)?;
    Ok(Mat3::from_fn(|i, j| m.get(i, j).clone()))
}

fn parse_matrix(rows: &[Vec<Num>], r: usize, c: usize) -> Result<Matrix<Rational>> {
    if rows.len() != r || rows.iter().any(|row| row.len() != c) {
        return Err(Error::Parse(format!("expected a {r}×{c} matrix")));
    }
    let data = rows.iter().map(|row| rationals(row)).collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_rows(data))
}

fn point_json<T: Field, const N: usize>(p: &ProjPoint<T, N>) -> Vec<Num> {
    nums(p.coords())
}

fn plane_point_json<T: Field>(p: &PlanePoint<T>) -> Vec<Num> {
    match p {
        PlanePoint::Exact(q) => point_json(q),
        PlanePoint::Approx(q) => point_json(q),
    }
}

fn parse_triple(v: &[Num]) -> Result<[Rational; 3]> {
    let r = rationals(v)?;
    r.try_into().map_err(|_| Error::Parse("a point needs three coordinates".into()))
}

// ---------------------------------------------------------------- config

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairJson {
    pub x: Vec<Num>,
    pub y: Vec<Num>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConfigJson {
    pub pairs: Vec<PairJson>,
}

impl ConfigJson {
    pub fn from_config<T: Field>(cfg: &PointPairConfig<T>) -> Self {
        let s = |v: &T| -> Num {
            match Num::of(v) {
                Num::Real(x) => Num::Exact(format!("{x:?}")),
                n => n,
            }
        };
        ConfigJson {
            pairs: cfg
                .pairs()
                .iter()
                .map(|(x, y)| PairJson { x: x.coords().iter().map(s).collect(), y: y.coords().iter().map(s).collect() })
                .collect(),
        }
    }

    pub fn to_config(&self) -> Result<PointPairConfig<Rational>> {
        let pairs = self
            .pairs
            .iter()
            .map(|p| Ok((ProjPoint2::new(parse_triple(&p.x)?)?, ProjPoint2::new(parse_triple(&p.y)?)?)))
            .collect::<Result<_>>()?;
        PointPairConfig::new(pairs)
    }
}

pub fn parse_config(text: &str) -> Result<PointPairConfig<Rational>> {
    let c: ConfigJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    c.to_config()
}

pub fn config_to_string<T: Field>(cfg: &PointPairConfig<T>) -> String {
    serde_json::to_string_pretty(&ConfigJson::from_config(cfg)).expect("serializable")
}

// ---------------------------------------------------------------- line input

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LineInput {
    pub basis: Vec<Vec<Vec<Num>>>,
    /// Two 3×4 camera matrices; canonical cameras are used when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cameras: Option<Vec<Vec<Vec<Num>>>>,
}

impl LineInput {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn basis(&self) -> Result<(Mat3<Rational>, Mat3<Rational>)> {
        if self.basis.len() != 2 {
            return Err(Error::Parse("a line needs exactly two basis matrices".into()));
        }
        Ok((parse_mat3(&self.basis[0])?, parse_mat3(&self.basis[1])?))
    }

    pub fn cameras(&self) -> Result<Option<CameraPair<Rational>>> {
        match &self.cameras {
            None => Ok(None),
            Some(c) if c.len() == 2 => Ok(Some(CameraPair::new(parse_matrix(&c[0], 3, 4)?, parse_matrix(&c[1], 3, 4)?)?)),
            Some(_) => Err(Error::Parse("cameras must be a pair of 3×4 matrices".into())),
        }
    }
}

// ---------------------------------------------------------------- curve input

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveInput {
    /// Cubic coefficients in lex monomial order.
    pub curves: Vec<Vec<Num>>,
    #[serde(default)]
    pub points: Vec<Vec<Num>>,
}

impl CurveInput {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn forms(&self) -> Result<Vec<TernaryForm<Rational>>> {
        self.curves
            .iter()
            .map(|c| {
                if c.len() != 10 {
                    return Err(Error::Parse("a cubic has ten coefficients".into()));
                }
                Ok(TernaryForm::new(3, rationals(c)?))
            })
            .collect()
    }

    pub fn marked_points(&self) -> Result<Vec<[Rational; 3]>> {
        self.points.iter().map(|p| parse_triple(p)).collect()
    }
}

// ---------------------------------------------------------------- trinity

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MemberJson {
    pub param: [Num; 2],
    pub matrix: Vec<Vec<Num>>,
    pub right_kernel: Vec<Num>,
    pub left_kernel: Vec<Num>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CremonaJson {
    pub forms: Vec<Vec<Num>>,
    pub base_points_domain: Vec<Vec<Num>>,
    pub base_points_codomain: Vec<Vec<Num>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadricJson {
    pub fundamental: Vec<Vec<Num>>,
    pub matrix: Vec<Vec<Num>>,
    pub smooth: bool,
    pub contains_centers: bool,
    pub contains_baseline: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrinityJson {
    pub basis: Vec<Vec<Vec<Num>>>,
    pub determinant: Vec<Num>,
    pub generic: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub defect: Option<String>,
    pub members: Vec<MemberJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cremona: Option<CremonaJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cameras: Option<Vec<Vec<Vec<Num>>>>,
    #[serde(default)]
    pub quadrics: Vec<QuadricJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

fn member_json<T: Field>(m: &RankTwoMember<T>) -> MemberJson {
    let param = match &m.param {
        LineParam::Exact(s, t) => [Num::of(s), Num::of(t)],
        LineParam::Approx(s, t) => [Num::of(s), Num::of(t)],
    };
    let matrix = match &m.matrix {
        crate::trinity::MemberMatrix::Exact(a) => mat3_json(a),
        crate::trinity::MemberMatrix::Approx(a) => mat3_json(a),
    };
    MemberJson { param, matrix, right_kernel: plane_point_json(&m.right_kernel()), left_kernel: plane_point_json(&m.left_kernel()) }
}

pub fn cremona_json<T: Field>(f: &CremonaMap<T>) -> CremonaJson {
    CremonaJson {
        forms: f.forms().iter().map(|g| nums(g.coeffs())).collect(),
        base_points_domain: f.base_points_domain().iter().map(plane_point_json).collect(),
        base_points_codomain: f.base_points_codomain().iter().map(plane_point_json).collect(),
    }
}

pub fn cameras_json<T: Field>(c: &CameraPair<T>) -> Vec<Vec<Vec<Num>>> {
    vec![matrix_json(c.a1()), matrix_json(c.a2())]
}

pub fn quadric_json<T: Field>(f: &Mat3<T>, q: &Quadric3<T>, cams: &CameraPair<T>) -> QuadricJson {
    let p = q.permissibility(cams);
    QuadricJson {
        fundamental: mat3_json(f),
        matrix: matrix_json(q.matrix()),
        smooth: p.smooth,
        contains_centers: p.contains_centers,
        contains_baseline: p.contains_baseline,
    }
}

/// Members, epipoles and the Cremona map of a line. When `cams` is given,
/// also the quadric of each exact rank-two member (as `F`, with the cameras
/// of that member).
pub fn trinity_report(line: &MatrixLine<Rational>, cams: Option<&CameraPair<Rational>>) -> TrinityJson {
    let mut notes = Vec::new();
    let cremona = match crate::trinity::line_to_cremona(line) {
        Ok(f) => Some(cremona_json(&f)),
        Err(e) => {
            notes.push(format!("cremona: {e}"));
            None
        }
    };
    let mut quadrics = Vec::new();
    let mut cam_out = None;
    for m in line.members() {
        let Some(f) = m.exact() else { continue };
        let own = match cams {
            Some(c) if c.fundamental().proj_eq(f, 0.0) => c.clone(),
            _ => match crate::trinity::cameras_from_f(f) {
                Ok(c) => c,
                Err(e) => {
                    notes.push(format!("cameras: {e}"));
                    continue;
                }
            },
        };
        match crate::trinity::quadric_from_line(line, f, &own) {
            Ok(q) => {
                if cam_out.is_none() {
                    cam_out = Some(cameras_json(&own));
                }
                quadrics.push(quadric_json(f, &q, &own));
            }
            Err(e) => notes.push(format!("quadric: {e}")),
        }
    }
    TrinityJson {
        basis: line.basis().iter().map(mat3_json).collect(),
        determinant: nums(line.det_form().coeffs()),
        generic: line.is_generic(),
        defect: line.defect().map(str::to_owned),
        members: line.members().iter().map(member_json).collect(),
        cremona,
        cameras: cam_out,
        quadrics,
        notes,
    }
}

// ---------------------------------------------------------------- certificates

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate7Json {
    pub values_x: Vec<Num>,
    pub values_y: Vec<Num>,
    pub residuals_x: Vec<f64>,
    pub residuals_y: Vec<f64>,
    pub coincide_x: Vec<bool>,
    pub coincide_y: Vec<bool>,
    /// Leave-one-out cubics, `null` where the curve degenerates.
    pub curves_x: Vec<Option<Vec<Num>>>,
    pub curves_y: Vec<Option<Vec<Num>>>,
    pub rank: usize,
    pub semi_generic: bool,
    pub deficient: bool,
    pub all_values_vanish: bool,
    pub verdict: Verdict7,
}

fn curves_json<T: Field>(c: &[Option<CubicCurve<T>>]) -> Vec<Option<Vec<Num>>> {
    c.iter().map(|c| c.as_ref().map(|c| nums(c.coeffs()))).collect()
}

impl<T: Field> From<&Certificate7<T>> for Certificate7Json {
    fn from(c: &Certificate7<T>) -> Self {
        Certificate7Json {
            values_x: nums(&c.values_x),
            values_y: nums(&c.values_y),
            residuals_x: c.residuals_x.clone(),
            residuals_y: c.residuals_y.clone(),
            coincide_x: c.coincide_x.clone(),
            coincide_y: c.coincide_y.clone(),
            curves_x: curves_json(&c.curves_x),
            curves_y: curves_json(&c.curves_y),
            rank: c.rank,
            semi_generic: c.semi_generic,
            deficient: c.deficient,
            all_values_vanish: c.all_values_vanish,
            verdict: c.verdict,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "kebab-case")]
pub enum EvidenceJson {
    RankOne { u: Vec<Num>, v: Vec<Num>, membership: Vec<LineMembership> },
    RankTwo { e: Vec<Num>, e_prime: Vec<Num>, n: Vec<Num>, homography: Vec<Vec<Num>>, checks: Vec<Case2Status> },
    RankThree { residuals: Vec<Num> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate9Json {
    pub rank_z: usize,
    pub deficient: bool,
    pub nullspace: Vec<Vec<Vec<Num>>>,
    pub t: Option<Vec<Vec<Num>>>,
    pub rank_t: Option<usize>,
    pub evidence: Option<EvidenceJson>,
}

impl<T: Field> From<&Certificate9<T>> for Certificate9Json {
    fn from(c: &Certificate9<T>) -> Self {
        let evidence = c.evidence.as_ref().map(|e| match e {
            CaseEvidence::RankOne { u, v, membership } => EvidenceJson::RankOne { u: nums(u), v: nums(v), membership: membership.clone() },
            CaseEvidence::RankTwo { e, e_prime, n, homography, checks } => EvidenceJson::RankTwo {
                e: point_json(e),
                e_prime: point_json(e_prime),
                n: nums(n),
                homography: mat3_json(homography),
                checks: checks.clone(),
            },
            CaseEvidence::RankThree { residuals } => EvidenceJson::RankThree { residuals: nums(residuals) },
        });
        Certificate9Json {
            rank_z: c.rank_z,
            deficient: c.deficient,
            nullspace: c.nullspace.iter().map(mat3_json).collect(),
            t: c.t.as_ref().map(mat3_json),
            rank_t: c.rank_t,
            evidence,
        }
    }
}

// ---------------------------------------------------------------- reconstruction

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReconstructionJson {
    pub cameras: Vec<Vec<Vec<Num>>>,
    pub world_points: Vec<Vec<Num>>,
    pub quadric_dimension: usize,
    pub quadric_basis: Vec<Vec<Vec<Num>>>,
    pub membership_verified: bool,
}

pub fn reconstruction_json<T: Field>(r: &Reconstruction<T>, space: Option<&QuadricSpace<T>>) -> ReconstructionJson {
    ReconstructionJson {
        cameras: cameras_json(&r.cams),
        world_points: r.world_points.iter().map(point_json).collect(),
        quadric_dimension: space.map_or(0, |s| s.dimension),
        quadric_basis: space.map_or_else(Vec::new, |s| s.basis.iter().map(|q| matrix_json(q.matrix())).collect()),
        membership_verified: space.is_some_and(|s| s.membership_verified()),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OctadJson {
    pub net_dimension: usize,
    pub membership: bool,
    pub distinct_points: bool,
    pub planes_tested: usize,
    pub planes_with_extra_point: usize,
    pub consistent: bool,
}

impl From<&OctadReport> for OctadJson {
    fn from(o: &OctadReport) -> Self {
        OctadJson {
            net_dimension: o.net_dimension,
            membership: o.membership,
            distinct_points: o.distinct_points,
            planes_tested: o.planes_tested,
            planes_with_extra_point: o.planes_with_extra_point,
            consistent: o.consistent(),
        }
    }
}

// ---------------------------------------------------------------- analyze

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CertificateJson {
    /// Six pairs: quadric net through the reconstruction.
    Net {
        witness: Option<Vec<Vec<Num>>>,
        reconstruction: Option<ReconstructionJson>,
        octad: Option<OctadJson>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        note: Option<String>,
    },
    Seven(Certificate7Json),
    Eight(TrinityJson),
    Nine(Certificate9Json),
    None { note: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalyzeReport {
    pub k: usize,
    pub backend: String,
    pub rank: usize,
    pub deficient: bool,
    pub nullspace: Vec<Vec<Vec<Num>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub semi_generic: Option<bool>,
    pub certificate: CertificateJson,
}

impl AnalyzeReport {
    pub fn nullspace_matrices<T: Field>(ns: &[Mat3<T>]) -> Vec<Vec<Vec<Num>>> {
        ns.iter().map(mat3_json).collect()
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

// ---------------------------------------------------------------- generator

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TruthJson {
    Cremona { forms: CremonaJson, h1: Vec<Vec<Num>>, h2: Vec<Vec<Num>> },
    Quadric { quadric: Vec<Vec<Num>>, cameras: Vec<Vec<Vec<Num>>>, world_points: Vec<Vec<Num>> },
    SeventhPoint { x7: Vec<f64>, y7: Vec<f64> },
    Witness { f: Vec<Vec<Num>> },
    RankT { t: Vec<Vec<Num>>, rank: usize },
    Homography { h: Vec<Vec<Num>> },
    CollinearSide { side: Side, line: Vec<Num> },
    Random,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SidecarJson {
    pub spec: GenSpec,
    pub mechanism: String,
    pub exact: bool,
    pub truth: TruthJson,
}

impl From<&Sample> for SidecarJson {
    fn from(s: &Sample) -> Self {
        let truth = match &s.truth {
            GroundTruth::Cremona { map, h1, h2 } => TruthJson::Cremona { forms: cremona_json(map), h1: mat3_json(h1), h2: mat3_json(h2) },
            GroundTruth::Quadric { quadric, cams, world_points } => TruthJson::Quadric {
                quadric: matrix_json(quadric.matrix()),
                cameras: cameras_json(cams),
                world_points: world_points.iter().map(point_json).collect(),
            },
            GroundTruth::Cubic7 { x7, y7 } => TruthJson::SeventhPoint { x7: x7.to_vec(), y7: y7.to_vec() },
            GroundTruth::Witness { f } => TruthJson::Witness { f: mat3_json(f) },
            GroundTruth::RankT { t, rank } => TruthJson::RankT { t: mat3_json(t), rank: *rank },
            GroundTruth::Homography { h } => TruthJson::Homography { h: mat3_json(h) },
            GroundTruth::CollinearSide { side, line } => TruthJson::CollinearSide { side: *side, line: nums(line) },
            GroundTruth::Random => TruthJson::Random,
        };
        SidecarJson {
            spec: s.spec,
            mechanism: s.spec.mechanism.to_string(),
            exact: s.config.exact().is_some(),
            truth,
        }
    }
}

pub fn sample_config_string(s: &Sample) -> String {
    match &s.config {
        crate::generator::GeneratedConfig::Exact(c) => config_to_string(c),
        crate::generator::GeneratedConfig::Float(c) => config_to_string(c),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::scalar::ratio;

    #[test]
    fn config_round_trip() {
        let cfg = fixtures::quadric_eight();
        let text = config_to_string(&cfg);
        assert_eq!(parse_config(&text).unwrap(), cfg);
        let f = cfg.to_f64().map(|v| v / 3.0).unwrap();
        let back = parse_config(&config_to_string(&f)).unwrap().to_f64();
        assert_eq!(back, f);
    }

    #[test]
    fn mixed_number_forms() {
        let text = r#"{"pairs":[{"x":[1,"-3/7","0.5"],"y":["2",0,1]},{"x":[1,1,1],"y":[1,2,3]}]}"#;
        let cfg = parse_config(text).unwrap();
        assert_eq!(cfg.x(0).coords()[1], ratio(-3, 7));
        assert_eq!(cfg.x(0).coords()[2], ratio(1, 2));
        assert!(parse_config(r#"{"pairs":[{"x":[1,2],"y":[1,2,3]}]}"#).is_err());
        assert!(parse_config(r#"{"pairs":[{"x":[0,0,0],"y":[1,2,3]}]}"#).is_err());
        assert!(parse_config("{").is_err());
    }

    #[test]
    fn certificate_json_round_trip() {
        let c = crate::rank9::rank9_certify(&fixtures::rank_two_nine()).unwrap();
        let j = Certificate9Json::from(&c);
        let text = serde_json::to_string(&j).unwrap();
        let back: Certificate9Json = serde_json::from_str(&text).unwrap();
        assert_eq!(back, j);
        assert_eq!(back.t.unwrap()[0][0], Num::of(&c.t.unwrap().m[0][0]));
        let c7 = crate::cubic::rank7_certify(&fixtures::degenerate_seven_a()).unwrap();
        let j7 = Certificate7Json::from(&c7);
        let back7: Certificate7Json = serde_json::from_str(&serde_json::to_string(&j7).unwrap()).unwrap();
        assert_eq!(back7, j7);
        assert_eq!(back7.verdict, Verdict7::Inconclusive);
    }

    #[test]
    fn trinity_report_fixture() {
        let ns = fixtures::quadric_eight_nullspace();
        let m = |v: &[i64; 9]| Mat3::from_fn(|i, j| Rational::from_i64(v[3 * i + j]));
        let line = MatrixLine::new(m(&ns[0]), m(&ns[1])).unwrap();
        let (a1, a2) = fixtures::quadric_eight_cameras();
        let cams = CameraPair::new(a1, a2).unwrap();
        let r = trinity_report(&line, Some(&cams));
        assert_eq!(r.members.len(), 3);
        assert!(r.cremona.is_some());
        assert_eq!(r.quadrics.len(), 3);
        assert!(r.quadrics.iter().all(|q| q.smooth && q.contains_centers && !q.contains_baseline));
        let back: TrinityJson = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn line_input() {
        let text = r#"{"basis":[[[1,0,0],[0,-1,0],[0,0,0]],[[0,0,0],[0,1,0],[0,0,-1]]]}"#;
        let l = LineInput::parse(text).unwrap();
        let (a, b) = l.basis().unwrap();
        assert_eq!(a.det(), Rational::from_i64(0));
        assert!(!b.is_zero());
        assert!(l.cameras().unwrap().is_none());
    }
}
