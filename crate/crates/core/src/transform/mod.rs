//! Fermionic Hamiltonians and their mapping to qubit operators through
//! arbitrary codes, plus the linear-code shortcuts and the reordering and
//! segment adjustments that prepare a Hamiltonian for a code.

mod engine;
mod fermion;
mod linear;
mod reorder;

pub use engine::{
    parity_function, transform_hamiltonian, transform_pair, transform_single_two_codes,
    transform_term, update_epsilon, update_operator, TransformOptions, Transformed, Transformer,
    TwoCodeTransformer, Update,
};
pub use fermion::{FermionHamiltonian, FermionOp, FermionTerm};
pub use linear::{linear_sets, transform_op_linear, LinearSets};
pub use reorder::{adjust_for_segments, normal_order_blocks};
