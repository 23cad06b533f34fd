//! Qubit, term and gate counts of the 2x5 Fermi-Hubbard model under five
//! codes, on the full ladder and on the reduced edge set.
//!
//! cargo run --release --example hubbard_table

use fermion_codes::cli::{build_pipeline, HamiltonianSource, HubbardParams, Lattice, RunConfig};

const CODES: [&str; 5] = [
    "jordan_wigner",
    "bravyi_kitaev",
    "checksum+checksum",
    "checksum+segment",
    "segment+segment",
];

fn main() -> fermion_codes::Result<()> {
    for lattice in [Lattice::Ladder, Lattice::Reduced] {
        println!("{lattice:?}");
        println!("  {:<20} {:>6} {:>8} {:>14} {:>7}", "code", "qubits", "terms", "terms (no I)", "gates");
        for code in CODES {
            let source = HamiltonianSource::Hubbard(HubbardParams {
                lattice,
                ..HubbardParams::default()
            });
            let p = build_pipeline(&RunConfig::new(source, code))?;
            let stats = p.hermitian_operator()?.count_stats();
            println!(
                "  {code:<20} {:>6} {:>8} {:>14} {:>7}",
                p.code.qubits(),
                stats.terms,
                stats.terms_without_identity,
                stats.gates
            );
        }
    }
    Ok(())
}
