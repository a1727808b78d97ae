//! Finite-dimensional representations of the Heisenberg group at rational
//! rotation angles.

mod angle;
mod rep;
mod tensor;

pub use angle::{farey_grid, farey_grid_half, farey_grid_upto, RationalAngle};
pub use rep::{almost_mathieu, RotationRep};
pub use tensor::{tensor_operator, tensor_operator_with_cap, Site, TensorTerm};
