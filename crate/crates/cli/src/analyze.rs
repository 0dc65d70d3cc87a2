use anyhow::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rankdrop::cubic::{rank7_certify, rank7_certify_tol};
use rankdrop::facesplit::{build_z, is_semi_generic, rank_and_nullspace, PointPairConfig};
use rankdrop::generator::member_with_kernel;
use rankdrop::io::{self, AnalyzeReport, CertificateJson, Certificate7Json, Certificate9Json, OctadJson};
use rankdrop::projective::{is_zero_vec, Mat3};
use rankdrop::rank9::rank9_certify;
use rankdrop::reconstruct::{cayley_octad_membership, reconstruction_quadrics};
use rankdrop::trinity::MatrixLine;
use rankdrop::{Field, Rational};

use crate::Backend;

const WITNESS_TRIES: usize = 50;

/// A rank-two nullspace matrix whose kernels avoid every point, so the pairs
/// triangulate.
fn witness(cfg: &PointPairConfig<Rational>, ns: &[Mat3<Rational>], seed: u64) -> Option<Mat3<Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ok = |f: &Mat3<Rational>| {
        cfg.pairs().iter().all(|(x, y)| !is_zero_vec(&f.mul_vec(x.coords())) && !is_zero_vec(&f.vec_mul(y.coords())))
    };
    for _ in 0..WITNESS_TRIES {
        let z: [Rational; 3] = std::array::from_fn(|_| Rational::from_i64(rng.gen_range(-9..=9)));
        if is_zero_vec(&z) {
            continue;
        }
        if let Some(f) = member_with_kernel(ns, &z) {
            if ok(&f) {
                return Some(f);
            }
        }
    }
    // exact members of random pencils inside the nullspace
    for _ in 0..WITNESS_TRIES {
        let mut comb = || {
            ns.iter().fold(Mat3::zero(), |acc: Mat3<Rational>, m| acc.add(&m.scale(&Rational::from_i64(rng.gen_range(-5..=5)))))
        };
        let (a, b) = (comb(), comb());
        let Ok(line) = MatrixLine::new(a, b) else { continue };
        if let Some(f) = line.members().iter().filter_map(|m| m.exact()).find(|f| ok(f)) {
            return Some(f.canonical());
        }
    }
    None
}

fn net_certificate(cfg: &PointPairConfig<Rational>, ns: &[Mat3<Rational>], seed: u64) -> CertificateJson {
    let Some(f) = witness(cfg, ns, seed) else {
        return CertificateJson::Net {
            witness: None,
            reconstruction: None,
            octad: None,
            note: Some("no rational rank-two member with kernels off the points".into()),
        };
    };
    let wjson = AnalyzeReport::nullspace_matrices(std::slice::from_ref(&f)).pop();
    let space = reconstruction_quadrics(cfg, &f);
    let reconstruction = space.as_ref().ok().map(|s| io::reconstruction_json(&s.reconstruction, Some(s)));
    let (octad, note) = match cayley_octad_membership(cfg, &f, seed) {
        Ok(o) => (Some(OctadJson::from(&o)), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let note = match (&space, note) {
        (Err(e), _) => Some(e.to_string()),
        (_, n) => n,
    };
    CertificateJson::Net { witness: wjson, reconstruction, octad, note }
}

pub fn analyze(cfg: &PointPairConfig<Rational>, backend: Backend, tol: f64, seed: u64) -> Result<AnalyzeReport> {
    let k = cfg.k();
    match backend {
        Backend::Exact => {
            let (rank, ns) = rank_and_nullspace(&build_z(cfg));
            let certificate = match k {
                6 => net_certificate(cfg, &ns, seed),
                7 => CertificateJson::Seven(Certificate7Json::from(&rank7_certify(cfg)?)),
                8 if ns.len() == 2 => {
                    let line = MatrixLine::new(ns[0].clone(), ns[1].clone())?;
                    CertificateJson::Eight(io::trinity_report(&line, None))
                }
                8 => CertificateJson::None { note: format!("nullspace has dimension {}", ns.len()) },
                9 => CertificateJson::Nine(Certificate9Json::from(&rank9_certify(cfg)?)),
                _ => CertificateJson::None { note: format!("no certificate for {k} pairs") },
            };
            Ok(AnalyzeReport {
                k,
                backend: "exact".into(),
                rank,
                deficient: rank < k,
                nullspace: AnalyzeReport::nullspace_matrices(&ns),
                semi_generic: (6..=8).contains(&k).then(|| is_semi_generic(cfg)),
                certificate,
            })
        }
        Backend::Float => {
            let f = cfg.to_f64();
            let (rank, ns) = rank_and_nullspace(&build_z(&f));
            let certificate = match k {
                7 => CertificateJson::Seven(Certificate7Json::from(&rank7_certify_tol(&f, tol)?)),
                9 => CertificateJson::Nine(Certificate9Json::from(&rank9_certify(&f)?)),
                _ => CertificateJson::None { note: format!("the float backend has no certificate for {k} pairs") },
            };
            Ok(AnalyzeReport {
                k,
                backend: "float".into(),
                rank,
                deficient: rank < k,
                nullspace: AnalyzeReport::nullspace_matrices(&ns),
                semi_generic: None,
                certificate,
            })
        }
    }
}
