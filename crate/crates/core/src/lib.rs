pub mod bitmath;
pub mod cli;
pub mod codes;
pub mod error;
pub mod fock_oracle;
pub mod pauli;
pub mod transform;

pub use error::{Error, Result};
