//! Segment codes need the Hamiltonian dressed before transforming: without
//! it, hops between segments leave the encoded set.
//!
//! cargo run --release --example segment_codes

use fermion_codes::cli::{build_pipeline, verify_pipeline, HamiltonianSource, HubbardParams, RunConfig};
use fermion_codes::codes::{enumerate_basis, BasisSpec};

fn main() -> fermion_codes::Result<()> {
    let basis = enumerate_basis(&BasisSpec::parse("1-10:2;11-20:2", 20)?);
    for no_adjust in [true, false] {
        let mut cfg = RunConfig::new(HamiltonianSource::Hubbard(HubbardParams::default()), "segment+segment");
        cfg.no_adjust = no_adjust;
        let p = build_pipeline(&cfg)?;
        println!(
            "{}: {} fermionic terms in, {}",
            if no_adjust { "unadjusted" } else { "adjusted" },
            p.transformed_input.len(),
            p.operator.count_stats()
        );
        println!("{}", verify_pipeline(&p, &basis, 1 << 20)?);
    }
    Ok(())
}
