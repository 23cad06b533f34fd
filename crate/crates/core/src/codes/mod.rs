//! Encoding/decoding pairs: the classical transforms, the qubit-saving code
//! families, concatenation, basis sets and validation.

mod basis;
mod code;
mod families;
mod spec;
mod validate;

pub use basis::{enumerate_basis, BasisSpec};
pub use code::{concat_codes, Code, CodePart, LinearMatrices, Segment};
pub use families::{
    binary_label, binary_switch, bravyi_kitaev_matrix, make_binary_addressing_k1,
    make_binary_addressing_k2, make_bravyi_kitaev, make_checksum, make_h2_code,
    make_jordan_wigner, make_parity_code, make_segment_code, make_segment_subcode, Flavor,
};
pub use spec::{load_code, CodeSpec};
pub use validate::{validate_code, ValidationOptions, ValidationReport};
