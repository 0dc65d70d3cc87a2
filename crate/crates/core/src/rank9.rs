//! Rank deficiency of Z₉ and the three shapes of its witness T.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::facesplit::{build_z, rank_and_nullspace, PointPairConfig};
use crate::projective::{cross, dot, is_negligible_vec, skew_unchecked, vec_norm, Mat3, ProjPoint2};
use crate::scalar::Field;

/// Which of the two lines a pair meets in the rank-one case.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LineMembership {
    /// `x_i ∈ ℓ`.
    X,
    /// `y_i ∈ ℓ′`.
    Y,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Case2Status {
    Verified,
    SkippedXAtE,
    SkippedYAtEPrime,
    Failed,
}

#[derive(Clone, Debug, PartialEq)]
pub enum CaseEvidence<T> {
    /// `T = u vᵀ`; ℓ has normal `v`, ℓ′ has normal `u`.
    RankOne { u: [T; 3], v: [T; 3], membership: Vec<LineMembership> },
    /// Kernels `T e = 0`, `e′ᵀ T = 0` and the P¹-homography `T [n]_×`.
    RankTwo { e: ProjPoint2<T>, e_prime: ProjPoint2<T>, n: [T; 3], homography: Mat3<T>, checks: Vec<Case2Status> },
    RankThree { residuals: Vec<T> },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Certificate9<T> {
    pub rank_z: usize,
    pub deficient: bool,
    pub nullspace: Vec<Mat3<T>>,
    /// The witness, when the nullspace is one-dimensional.
    pub t: Option<Mat3<T>>,
    pub rank_t: Option<usize>,
    pub evidence: Option<CaseEvidence<T>>,
}

impl<T> Certificate9<T> {
    pub fn multiply_deficient(&self) -> bool {
        self.nullspace.len() > 1
    }
}

fn tol<T: Field>() -> f64 {
    if T::EXACT {
        0.0
    } else {
        1e-9
    }
}

/// `T = u vᵀ` for a rank-one matrix.
pub fn factor_rank_one<T: Field>(t: &Mat3<T>) -> ([T; 3], [T; 3]) {
    let j = (0..3).max_by(|&a, &b| vec_norm(&t.col(a)).total_cmp(&vec_norm(&t.col(b)))).expect("three columns");
    let u = t.col(j);
    let i = (0..3).max_by(|&a, &b| u[a].magnitude().total_cmp(&u[b].magnitude())).expect("three rows");
    let v = t.row(i).map(|x| x / u[i].clone());
    (u, v)
}

fn near_zero<T: Field>(v: &T, scale: f64) -> bool {
    v.is_negligible(scale, tol::<T>())
}

pub fn rank9_certify<T: Field>(cfg: &PointPairConfig<T>) -> Result<Certificate9<T>> {
    if cfg.k() != 9 {
        return Err(Error::DimensionMismatch(cfg.k(), 9));
    }
    let (rank_z, nullspace) = rank_and_nullspace(&build_z(cfg));
    let mut cert = Certificate9 { rank_z, deficient: rank_z < 9, nullspace, t: None, rank_t: None, evidence: None };
    if cert.nullspace.len() != 1 {
        if cert.multiply_deficient() {
            log::warn!("nullspace of Z₉ has dimension {}; no single witness", cert.nullspace.len());
        }
        return Ok(cert);
    }
    let t = cert.nullspace[0].canonical();
    let r = t.rank();
    let evidence = match r {
        1 => {
            let (u, v) = factor_rank_one(&t);
            let membership = cfg
                .pairs()
                .iter()
                .map(|(x, y)| {
                    let on_l = near_zero(&dot(&v, x.coords()), vec_norm(&v) * x.norm());
                    let on_lp = near_zero(&dot(&u, y.coords()), vec_norm(&u) * y.norm());
                    match (on_l, on_lp) {
                        (true, true) => LineMembership::Both,
                        (true, false) => LineMembership::X,
                        _ => LineMembership::Y,
                    }
                })
                .collect();
            CaseEvidence::RankOne { u, v, membership }
        }
        2 => {
            let (e, ep) = crate::projective::kernel_right_left(&t)?;
            let n = e.coords().clone();
            let checks = verify_case2_homography(&t, cfg, &n)?;
            let homography = t.mul(&skew_unchecked(&n));
            CaseEvidence::RankTwo { e, e_prime: ep, n, homography, checks }
        }
        _ => CaseEvidence::RankThree {
            residuals: cfg.pairs().iter().map(|(x, y)| dot(y.coords(), &t.mul_vec(x.coords()))).collect(),
        },
    };
    cert.t = Some(t);
    cert.rank_t = Some(r);
    cert.evidence = Some(evidence);
    Ok(cert)
}

/// For each pair, checks that `T[n]_×` sends the line through `e` and `x_i`
/// to the line through `e′` and `y_i`.
pub fn verify_case2_homography<T: Field>(t: &Mat3<T>, cfg: &PointPairConfig<T>, n: &[T; 3]) -> Result<Vec<Case2Status>> {
    let (e, ep) = crate::projective::kernel_right_left(t).map_err(|_| Error::Precondition("T must have rank two".into()))?;
    if near_zero(&dot(e.coords(), n), e.norm() * vec_norm(n)) {
        return Err(Error::Precondition("the line n passes through e".into()));
    }
    let h = t.mul(&skew_unchecked(n));
    let ptol = tol::<T>();
    Ok(cfg
        .pairs()
        .iter()
        .map(|(x, y)| {
            if x.proj_eq(&e, ptol) {
                return Case2Status::SkippedXAtE;
            }
            if y.proj_eq(&ep, ptol) {
                return Case2Status::SkippedYAtEPrime;
            }
            let image = h.mul_vec(&cross(e.coords(), x.coords()));
            let target = skew_unchecked(ep.coords()).mul_vec(y.coords());
            let c = cross(&image, &target);
            if is_negligible_vec(&c, vec_norm(&image) * vec_norm(&target), ptol) && !is_negligible_vec(&image, 1.0, 0.0) {
                Case2Status::Verified
            } else {
                Case2Status::Failed
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::scalar::rat;
    use crate::Rational;

    #[test]
    fn rank_one_example() {
        let c = rank9_certify(&fixtures::rank_one_nine()).unwrap();
        assert!(c.deficient);
        assert!(c.t.as_ref().unwrap().proj_eq(&fixtures::rank_one_nine_t(), 0.0));
        assert_eq!(c.rank_t, Some(1));
        let Some(CaseEvidence::RankOne { u, v, membership }) = c.evidence else { panic!("case 1") };
        assert!(ProjPoint2::new(u).unwrap().proj_eq(&ProjPoint2::from_i64([0, 1, 0]), 0.0));
        assert!(ProjPoint2::new(v).unwrap().proj_eq(&ProjPoint2::from_i64([1, 0, 0]), 0.0));
        for (i, m) in membership.iter().enumerate() {
            if i < 4 {
                assert_ne!(*m, LineMembership::Y);
            } else {
                assert_ne!(*m, LineMembership::X);
            }
        }
    }

    #[test]
    fn rank_two_example() {
        let c = rank9_certify(&fixtures::rank_two_nine()).unwrap();
        assert!(c.t.as_ref().unwrap().proj_eq(&fixtures::rank_two_nine_t(), 0.0));
        let Some(CaseEvidence::RankTwo { e, e_prime, .. }) = &c.evidence else { panic!("case 2") };
        assert_eq!(e, &ProjPoint2::from_i64([1, 1, 0]));
        assert_eq!(e_prime, &ProjPoint2::from_i64([1, 1, 0]));
        let n = [rat(1), rat(2), rat(3)];
        let checks = verify_case2_homography(&fixtures::rank_two_nine_t(), &fixtures::rank_two_nine(), &n).unwrap();
        for (i, s) in checks.iter().enumerate() {
            let want = match i {
                4 => Case2Status::SkippedXAtE,
                6 => Case2Status::SkippedYAtEPrime,
                _ => Case2Status::Verified,
            };
            assert_eq!(*s, want, "index {}", i + 1);
        }
    }

    #[test]
    fn rank_two_alt_example() {
        let cfg = fixtures::rank_two_nine_alt();
        let c = rank9_certify(&cfg).unwrap();
        let t = fixtures::rank_two_nine_alt_t();
        assert!(c.t.as_ref().unwrap().proj_eq(&t, 0.0));
        let n = [rat(-1), rat(1), rat(-2)];
        let checks = verify_case2_homography(&t, &cfg, &n).unwrap();
        assert!(checks.iter().all(|s| *s == Case2Status::Verified));
        assert!(verify_case2_homography(&fixtures::rank_three_nine_t(), &cfg, &n).is_err());
    }

    #[test]
    fn rank_three_example() {
        let c = rank9_certify(&fixtures::rank_three_nine()).unwrap();
        assert!(c.t.as_ref().unwrap().proj_eq(&fixtures::rank_three_nine_t(), 0.0));
        assert_eq!(c.rank_t, Some(3));
        let Some(CaseEvidence::RankThree { residuals }) = c.evidence else { panic!("case 3") };
        assert!(residuals.iter().all(|r: &Rational| *r == rat(0)));
    }
}
