//! Boolean functions as diagonal Pauli operators.

use fermion_codes::bitmath::{BitVec, BoolPoly, DEFAULT_MONOMIAL_BUDGET};
use fermion_codes::pauli::extract;

fn main() -> fermion_codes::Result<()> {
    let budget = DEFAULT_MONOMIAL_BUDGET;
    for text in ["x1", "1 + x1", "x1*x2", "1 + x1 + x1*x2", "x1*x2*x3"] {
        let vars = 3;
        let f = BoolPoly::parse(text, vars)?;
        let op = extract(&f, budget)?.to_qubit_operator();
        println!("X[{text}] =");
        for (string, coeff) in op.sorted_terms() {
            println!("    {:+.3} {string}", coeff.re);
        }
        // Each basis state picks up the sign (-1)^f.
        let signs: Vec<String> = (0..1u64 << vars)
            .map(|k| {
                let w = BitVec::from_u64(vars, k);
                if f.eval(&w).unwrap_or(false) { "-".into() } else { "+".into() }
            })
            .collect();
        println!("    signs on |000>..|111> (bit 1 first in the label): {}", signs.join(""));
    }
    Ok(())
}
