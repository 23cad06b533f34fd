//! Batch front end: model generators, builtin code names and the
//! transform / verify / validate-code / gen-model runs behind the binary.

mod builtin;
mod models;
mod pipeline;

pub use builtin::{builtin_code, resolve_code, BUILTIN_NAMES};
pub use models::{gen_h2, gen_hubbard, hubbard_edges, H2Params, HubbardParams, Lattice};
pub use pipeline::{
    build_pipeline, exit_code, run_gen_model, run_transform, run_validate, run_verify, stats_line, verify_pipeline,
    HamiltonianSource, Pipeline, RunConfig, ValidateConfig, VerifyReport, EXIT_BUDGET, EXIT_INPUT, EXIT_OK,
    EXIT_VERIFY_FAILED,
};
