//! Hand-checked configurations with known answers.

use crate::facesplit::PointPairConfig;
use crate::linalg::Matrix;
use crate::poly::TernaryForm;
use crate::projective::{Mat3, ProjPoint2, ProjPoint3};
use crate::scalar::rat;
use crate::Rational;

type Q = Rational;

fn cfg(xs: &[[i64; 3]], ys: &[[i64; 3]]) -> PointPairConfig<Q> {
    PointPairConfig::from_i64(xs, ys).expect("fixture is valid")
}

fn cols(x: [&[i64]; 3], y: [&[i64]; 3]) -> PointPairConfig<Q> {
    PointPairConfig::from_columns(x, y).expect("fixture is valid")
}

fn cubic(c: [i64; 10]) -> TernaryForm<Q> {
    TernaryForm::new(3, c.iter().map(|&v| rat(v)).collect())
}

/// Eight pairs imaged from points on the quadric x²+y²−z²−w².
pub fn quadric_eight() -> PointPairConfig<Q> {
    cfg(
        &[[5, 12, 13], [1, 0, 5], [12, 5, 13], [3, 4, 5], [4, 3, 5], [-2, 4, 0], [-1, 3, 0], [2, 0, 4]],
        &[[5, 12, 13], [13, -12, 5], [12, 5, 13], [3, 4, 5], [4, 3, 5], [3, -1, 0], [4, -2, 0], [5, -3, 4]],
    )
}

pub fn quadric_eight_nullspace() -> [[i64; 9]; 2] {
    [[-1, 1, 0, -1, -1, 0, 0, 0, 1], [0, 0, -1, 0, 0, -1, 1, 1, 0]]
}

/// The three rank-two members `F, F₂, F₃` of the nullspace pencil.
pub fn quadric_eight_fundamentals() -> [Mat3<Q>; 3] {
    [
        Mat3::from_i64([[0, 0, 1], [0, 0, 1], [-1, -1, 0]]),
        Mat3::from_i64([[-1, -1, 1], [1, -1, 1], [-1, -1, 1]]),
        Mat3::from_i64([[-1, -1, -1], [1, -1, -1], [1, 1, 1]]),
    ]
}

/// `(e^x, e^y)` for each of [`quadric_eight_fundamentals`].
pub fn quadric_eight_epipoles() -> [(ProjPoint2<Q>, ProjPoint2<Q>); 3] {
    [
        (ProjPoint2::from_i64([-1, 1, 0]), ProjPoint2::from_i64([1, -1, 0])),
        (ProjPoint2::from_i64([0, 1, 1]), ProjPoint2::from_i64([-1, 0, 1])),
        (ProjPoint2::from_i64([0, -1, 1]), ProjPoint2::from_i64([1, 0, 1])),
    ]
}

pub fn quadric_eight_other_member() -> Mat3<Q> {
    Mat3::from_i64([[-1, -1, 0], [1, -1, 0], [0, 0, 1]])
}

pub fn quadric_eight_cameras() -> (Matrix<Q>, Matrix<Q>) {
    (
        Matrix::from_i64_rows(&[&[1, 0, 0, -1], &[0, 1, 0, 0], &[0, 0, 1, 0]]),
        Matrix::from_i64_rows(&[&[1, 0, 0, 0], &[0, 1, 0, -1], &[0, 0, 1, 0]]),
    )
}

pub fn quadric_eight_centers() -> (ProjPoint3<Q>, ProjPoint3<Q>) {
    (ProjPoint3::from_i64([1, 0, 0, 1]), ProjPoint3::from_i64([0, 1, 0, 1]))
}

pub fn quadric_eight_world_points() -> Vec<ProjPoint3<Q>> {
    [[5, 12, 13, 0], [13, 0, 5, 12], [12, 5, 13, 0], [3, 4, 5, 0], [4, 3, 5, 0], [3, 4, 0, 5], [4, 3, 0, 5], [5, 0, 4, 3]]
        .map(ProjPoint3::from_i64)
        .to_vec()
}

/// diag(1, 1, −1, −1).
pub fn quadric_eight_quadric() -> Matrix<Q> {
    Matrix::from_i64_rows(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, -1, 0], &[0, 0, 0, -1]])
}

/// (x₁²−x₂²+x₃², x₁²+2x₁x₂+x₂²−x₃², 2x₁x₃) in the quadratic monomial order
/// x₁², x₁x₂, x₁x₃, x₂², x₂x₃, x₃².
pub fn quadric_eight_cremona() -> [TernaryForm<Q>; 3] {
    let q = |c: [i64; 6]| TernaryForm::new(2, c.iter().map(|&v| rat(v)).collect());
    [q([1, 0, 0, -1, 0, 1]), q([1, 2, 0, 1, 0, -1]), q([0, 0, 2, 0, 0, 0])]
}

/// Six pairs with a hand-computed hexahedral form.
pub fn hexahedral_six() -> PointPairConfig<Q> {
    cfg(
        &[[0, 0, 1], [1, 0, 1], [0, 1, 1], [1, 1, 1], [3, 5, 1], [-7, 11, 1]],
        &[[0, 0, 1], [1, 0, 1], [0, 1, 1], [1, 1, 1], [7, -2, 1], [3, 13, 1]],
    )
}

/// A seventh pair on the epipolar curves of [`hexahedral_six`] making Z₇ deficient.
pub fn hexahedral_seventh() -> (ProjPoint2<Q>, ProjPoint2<Q>) {
    (ProjPoint2::from_i64([0, 1403, 118]), ProjPoint2::from_i64([1802855, 1562942, 171287]))
}

pub fn hexahedral_g_x() -> TernaryForm<Q> {
    cubic([447, 775, -4083, 113, -888, 3636, 118, -1521, 1403, 0])
}

pub fn hexahedral_g_y() -> TernaryForm<Q> {
    cubic([447, -136, -3608, -12, 148, 3161, 118, -1478, 1360, 0])
}

/// Seven pairs with every certificate value zero but Z₇ of full rank: five
/// collinear x's, a repeated x and a repeated y.
pub fn degenerate_seven_a() -> PointPairConfig<Q> {
    cols(
        [&[0, 1, 3, 4, 0, 0, 7], &[0, 0, 0, 0, 1, 1, 0], &[1, 0, 1, 1, 0, 0, 1]],
        [&[0, 1, 4, 0, 9, 1, 0], &[0, 0, 0, 1, 0, 0, 1], &[1, 0, 1, 0, 1, 1, 0]],
    )
}

/// Seven pairs split 4+3 over two lines on each side, nullspace spanned by
/// rank-one matrices.
pub fn degenerate_seven_b() -> PointPairConfig<Q> {
    cols(
        [&[1, 2, 5, 1, 2, 3, 7], &[0, 0, 0, 0, 1, 2, 6], &[1, 1, 1, 0, 1, 1, 1]],
        [&[0, 0, 0, 0, 1, 3, 4], &[1, 5, 1, 0, 2, 6, 8], &[1, 1, 0, 1, 1, 1, 1]],
    )
}

/// Seven generic pairs whose three fundamental matrices are all real.
pub fn epipole_seven() -> PointPairConfig<Q> {
    cols(
        [&[3, 2, 5, 0, 4, -20, -4], &[0, 7, 3, 3, 2, 25, 7], &[1, 1, 2, 1, 5, 12, 2]],
        [&[0, -49, -15, -3, -5, 5, 7], &[-1, 14, 25, 0, 10, 4, 4], &[1, 9, 4, 1, 6, 2, 1]],
    )
}

pub fn epipole_seven_expected() -> ([ProjPoint2<Q>; 3], [ProjPoint2<Q>; 3]) {
    (
        [[0, 0, 1], [-2, 3, 1], [4, 3, 4]].map(ProjPoint2::from_i64),
        [[0, 0, 1], [-3, 4, 1], [3, 2, 2]].map(ProjPoint2::from_i64),
    )
}

/// Nine pairs with a rank-one witness: x₁..x₄ on u₁=0, y₅..y₉ on u₂=0.
pub fn rank_one_nine() -> PointPairConfig<Q> {
    cols(
        [&[0, 0, 0, 0, 1, -1, 1, 1, 1], &[1, 1, 1, -1, 1, 1, 0, 1, -1], &[0, 1, 2, 1, 0, 1, 1, 1, -1]],
        [&[-1, 1, 0, 0, 1, 1, 1, -1, 1], &[0, 1, -1, 1, 0, 0, 0, 0, 0], &[2, 1, 1, 1, 0, 1, 2, 1, 3]],
    )
}

pub fn rank_one_nine_t() -> Mat3<Q> {
    Mat3::from_i64([[0, 0, 0], [1, 0, 0], [0, 0, 0]])
}

/// Nine pairs with a rank-two witness whose kernels appear among the points
/// (x₅ = e, y₇ = e′).
pub fn rank_two_nine() -> PointPairConfig<Q> {
    cols(
        [&[1, 0, 0, 1, 1, 1, 0, 1, 2], &[0, 1, 0, 1, 1, 0, 1, 2, 1], &[0, 0, 1, 1, 0, 1, 1, 1, 1]],
        [&[1, 0, 0, 1, 1, 0, 1, 2, 1], &[0, 1, 0, 1, 0, 1, 1, 1, 4], &[0, 0, 1, 1, 1, 1, 0, 1, 3]],
    )
}

pub fn rank_two_nine_t() -> Mat3<Q> {
    Mat3::from_i64([[0, 0, -1], [0, 0, 1], [-1, 1, 0]])
}

/// Nine pairs with a rank-two witness whose kernels avoid all points.
pub fn rank_two_nine_alt() -> PointPairConfig<Q> {
    cols(
        [&[1, 1, 1, 1, 1, 1, 1, 1, 1], &[0, 1, 0, 1, 2, 0, 2, -1, -1], &[0, 0, 1, 1, 0, 2, 1, 1, -1]],
        [&[1, 1, 1, 1, 1, 1, 1, 1, 1], &[0, 1, 0, 1, 0, 2, 1, 1, -2], &[0, 0, 1, 1, 2, 1, 2, -1, -1]],
    )
}

pub fn rank_two_nine_alt_t() -> Mat3<Q> {
    Mat3::from_i64([[0, 2, 1], [-1, -1, 0], [-2, 0, 1]])
}

pub fn rank_three_nine() -> PointPairConfig<Q> {
    cols(
        [&[1, 0, 0, 1, 1, 1, 0, 1, 2], &[0, 1, 0, 1, 1, 0, 1, 2, -3], &[0, 0, 1, 1, 0, 1, 1, 1, 1]],
        [&[1, 0, 0, 1, 1, 0, 1, 2, 15], &[0, 1, 0, 1, 0, 1, 1, 1, 4], &[0, 0, 1, 1, 1, 1, 0, 0, -5]],
    )
}

pub fn rank_three_nine_t() -> Mat3<Q> {
    Mat3::from_i64([[0, 1, -4], [1, 0, 3], [-4, 3, 0]])
}
