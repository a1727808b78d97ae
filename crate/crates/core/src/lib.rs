pub mod augmentation;
pub mod cayley;
pub mod error;
pub mod group_algebra;
pub mod linalg;
pub mod rotation;
pub mod symmetrization;
pub mod verify;

pub use error::{Error, Result};
pub use linalg::{CMatrix, HermitianOperator};
pub use num_rational::BigRational;
pub use rotation::RationalAngle;
