//! Jordan-Wigner, parity and Bravyi-Kitaev images of single operators, plus
//! a check of the canonical anticommutation relations.

use fermion_codes::codes::{make_bravyi_kitaev, make_jordan_wigner, make_parity_code};
use fermion_codes::fock_oracle::verify_anticommutation;
use fermion_codes::transform::{linear_sets, transform_op_linear};

fn main() -> fermion_codes::Result<()> {
    let modes = 4;
    for code in [make_jordan_wigner(modes), make_parity_code(modes), make_bravyi_kitaev(modes)] {
        println!("== {}", code.label());
        for j in 1..=modes {
            let sets = linear_sets(&code, j)?;
            let op = transform_op_linear(&code, j, false)?;
            println!("c_{j}: {sets:?}");
            for (s, c) in op.sorted_terms() {
                println!("    ({:+.2}{:+.2}i) {s}", c.re, c.im);
            }
        }
        let report = verify_anticommutation(&code)?;
        println!("anticommutation: {} checks, max deviation {:.1e}", report.checks, report.max_deviation);
    }
    Ok(())
}
