//! Hydrogen molecule on two qubits: four spin orbitals, one electron per
//! spin pair, so each pair needs a single qubit.

use fermion_codes::cli::{gen_h2, H2Params};
use fermion_codes::codes::{enumerate_basis, make_h2_code, BasisSpec};
use fermion_codes::fock_oracle::verify_equivalence;
use fermion_codes::transform::{transform_hamiltonian, TransformOptions};

fn main() -> fermion_codes::Result<()> {
    let h = gen_h2(H2Params::default());
    println!("fermionic Hamiltonian ({} terms):\n{}", h.len(), h.to_text());

    let code = make_h2_code();
    let hq = transform_hamiltonian(&code, &h, TransformOptions::default())?.require_hermitian()?;
    println!("qubit Hamiltonian on {} qubits:", hq.num_qubits());
    for (string, coeff) in hq.sorted_terms() {
        println!("  {:+.6}  {string}", coeff.re);
    }

    let basis = enumerate_basis(&BasisSpec::parse("1-2:1;3-4:1", 4)?);
    let report = verify_equivalence(&code, &h, &hq, &basis)?;
    println!("\noracle check:\n{report}");
    Ok(())
}
