//! Exact GF(2) arithmetic: bit vectors, bit matrices and boolean polynomials
//! in algebraic normal form.

mod bitmat;
mod bitvec;
mod boolpoly;

pub use bitmat::{mat_inverse_mod2, BitMat};
pub use bitvec::BitVec;
pub use boolpoly::{bp_eval, BoolPoly, Monomial, DEFAULT_MONOMIAL_BUDGET};
