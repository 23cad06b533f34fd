//! One particle on eight modes stored in three qubits, and two particles
//! in five.

use fermion_codes::codes::{
    enumerate_basis, make_binary_addressing_k1, make_binary_addressing_k2, validate_code, BasisSpec, ValidationOptions,
};
use fermion_codes::fock_oracle::verify_equivalence;
use fermion_codes::transform::{transform_hamiltonian, FermionHamiltonian, FermionTerm, TransformOptions};

fn ring(modes: usize) -> fermion_codes::Result<FermionHamiltonian> {
    let mut h = FermionHamiltonian::new(modes);
    for i in 1..=modes {
        let j = i % modes + 1;
        h.push(FermionTerm::hop(-1.0, i, j))?;
        h.push(FermionTerm::hop(-1.0, j, i))?;
    }
    Ok(h)
}

fn main() -> fermion_codes::Result<()> {
    let h = ring(8)?;
    for (code, particles) in [(make_binary_addressing_k1(3), 1), (make_binary_addressing_k2(3), 2)] {
        let spec = BasisSpec::weights(8, vec![particles])?;
        println!("{}", validate_code(&code, &spec, ValidationOptions::default())?);
        for nu in enumerate_basis(&spec).iter().take(4) {
            println!("  {nu} -> {}", code.encode(nu)?);
        }
        let hq = transform_hamiltonian(&code, &h, TransformOptions::default())?.require_hermitian()?;
        let stats = hq.count_stats();
        let report = verify_equivalence(&code, &h, &hq, &enumerate_basis(&spec))?;
        println!(
            "ring hopping: {} qubits, {stats}, oracle {} (max deviation {:.1e})\n",
            hq.num_qubits(),
            report.status,
            report.max_deviation
        );
    }
    Ok(())
}
