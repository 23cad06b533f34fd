//! Reference fermionic semantics on occupation vectors, sparse state
//! application of qubit operators, and the checks that compare the two.

mod dense;
mod state;
mod verify;

pub use dense::{fermion_matrix, DENSE_MODE_LIMIT};
pub use state::{
    apply_fermion_op, apply_fermion_term, apply_hamiltonian_fock, apply_qubit_operator, encode_state, FockState,
    QubitState, SparseState,
};
pub use verify::{
    check_compatibility, check_update_demand, verify_anticommutation, verify_equivalence, AnticommutationReport,
    CompatibilityReport, EquivalenceReport, Failure, Status, EQUIVALENCE_TOL,
};
