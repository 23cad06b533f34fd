//! A code given as JSON: three modes with odd total parity on two qubits.

use fermion_codes::codes::{enumerate_basis, validate_code, BasisSpec, CodeSpec, ValidationOptions};
use fermion_codes::fock_oracle::verify_equivalence;
use fermion_codes::transform::{transform_hamiltonian, FermionHamiltonian, TransformOptions};

const SPEC: &str = r#"{"kind": "custom", "modes": 3, "qubits": 2,
  "encode": ["x1", "x2"],
  "decode": ["x1", "x2", "x1 + x2"], "decode_affine": [0, 0, 1]}"#;

const HAMILTONIAN: &str = "\
-1.0 0 : +1 -2
-1.0 0 : +2 -1
-0.5 0 : +2 -3
-0.5 0 : +3 -2
0.7 0 : +1 -1 +3 -3
";

fn main() -> fermion_codes::Result<()> {
    let code = CodeSpec::from_json(SPEC)?.build()?;
    let spec = BasisSpec::weights(3, vec![1, 3])?;
    println!("{}", validate_code(&code, &spec, ValidationOptions::default())?);

    let h = FermionHamiltonian::parse_text(HAMILTONIAN, Some(3))?;
    let hq = transform_hamiltonian(&code, &h, TransformOptions::default())?.require_hermitian()?;
    print!("\n{}", hq.to_text());
    let report = verify_equivalence(&code, &h, &hq, &enumerate_basis(&spec))?;
    println!("oracle: {} (max deviation {:.1e})", report.status, report.max_deviation);
    Ok(())
}
