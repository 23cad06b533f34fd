//! Pauli strings with exact phases, sparse qubit operators, and extraction
//! of boolean functions into diagonal Z-string sums.

mod diag;
mod operator;
mod string;

pub use diag::{cphase_expand, extract, extract_by_products, DiagOp};
pub(crate) use diag::diag_from_values;
pub(crate) use operator::FixedMap;
pub use operator::{
    check_hermitian, count_stats, op_add, op_mul, op_scale, HermiticityReport, OpStats,
    QubitOperator, DEFAULT_EPSILON,
};
pub use string::{pauli_mul, Letter, PauliString, Phase};
