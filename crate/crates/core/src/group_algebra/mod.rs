//! Exact arithmetic in real group algebras with rational coefficients.

mod element;
mod heisenberg;
mod matrix_group;

pub use element::{laplacian, laplacian_from_squares, one_minus, rational, AlgebraElement, GroupElement};
pub use heisenberg::{
    sos_identity_sides, square_of_one_minus, x_elem, y_elem, z_elem, HAlg, Heisenberg3Elt, HeisenbergElt,
};
pub use matrix_group::{e_term, steinberg_check, FiniteMatrixElt, RelationCheck, SteinbergReport, MAX_MATRIX_SIZE};
