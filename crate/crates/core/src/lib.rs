//! Rank deficiency of face-splitting matrices built from point pairs in P²×P².

pub mod cubic;
pub mod error;
pub mod facesplit;
pub mod fixtures;
pub mod generator;
pub mod io;
pub mod linalg;
pub mod poly;
pub mod projective;
pub mod rank9;
pub mod reconstruct;
pub mod roots;
pub mod scalar;
pub mod trinity;

pub use error::{Error, Result};
pub use linalg::Matrix;
pub use poly::{BinaryForm, TernaryForm};
pub use projective::{Mat3, ProjPoint, ProjPoint2, ProjPoint3};
pub use scalar::Field;

pub type Rational = num_rational::BigRational;
pub type Complex = num_complex::Complex64;

pub type ExactPoint2 = ProjPoint2<Rational>;
pub type ExactPoint3 = ProjPoint3<Rational>;
pub type FloatPoint2 = ProjPoint2<f64>;
pub type ComplexPoint2 = ProjPoint2<Complex>;
pub type ExactMat3 = Mat3<Rational>;
pub type FloatMat3 = Mat3<f64>;
pub type ComplexMat3 = Mat3<Complex>;
