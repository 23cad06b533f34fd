use num_complex::Complex64;

use crate::bitmath::{BitMat, BitVec};
use crate::codes::Code;
use crate::error::{Error, Result};
use crate::pauli::{PauliString, QubitOperator};

/// Parity, flip and update sets of mode `j` for a full-Fock linear code
/// `e(v) = A v`. Diagonal entries are kept, so the sets may overlap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSets {
    /// Columns of row `j` of `R A^-1`, with `R` strictly lower triangular.
    pub parity: Vec<usize>,
    /// Columns of row `j` of `A^-1`.
    pub flip: Vec<usize>,
    /// Rows of column `j` of `A`.
    pub update: Vec<usize>,
}

fn matrices(code: &Code) -> Result<(&BitMat, &BitMat)> {
    let m = code.matrices().ok_or_else(|| {
        Error::Unsupported(format!(
            "code {} has no generator matrix; parity/flip/update sets need a full-Fock linear code",
            code.label()
        ))
    })?;
    Ok((&m.a, &m.a_inv))
}

pub fn linear_sets(code: &Code, j: usize) -> Result<LinearSets> {
    let (a, a_inv) = matrices(code)?;
    let n = code.modes();
    if j == 0 || j > n {
        return Err(Error::IndexOutOfRange { index: j, len: n });
    }
    // Row j of R A^-1 is the sum of rows 1..j-1 of A^-1.
    let mut parity = BitVec::zeros(n);
    for i in 1..j {
        parity.xor_assign(a_inv.row(i));
    }
    Ok(LinearSets {
        parity: parity.ones_iter().collect(),
        flip: a_inv.row(j).ones_iter().collect(),
        update: a.column(j).ones_iter().collect(),
    })
}

/// `(X_U (I - (-1)^b Z_F) Z_P) / 2` with `b = 1` for a creation operator.
pub fn transform_op_linear(code: &Code, j: usize, dagger: bool) -> Result<QubitOperator> {
    let sets = linear_sets(code, j)?;
    let n = code.qubits();
    let string = |x: &[usize], z: &[usize]| {
        PauliString::from_xz(BitVec::from_indices(n, x), BitVec::from_indices(n, z))
    };
    let half = Complex64::new(0.5, 0.0);
    let x_u = QubitOperator::from_term(string(&sets.update, &[]), half);
    let flip_sign = if dagger { 1.0 } else { -1.0 };
    let projector = QubitOperator::from_terms(
        n,
        [
            (PauliString::identity(n), Complex64::new(1.0, 0.0)),
            (string(&[], &sets.flip), Complex64::new(flip_sign, 0.0)),
        ],
    )?;
    let z_p = QubitOperator::from_term(string(&[], &sets.parity), Complex64::new(1.0, 0.0));
    x_u.mul(&projector)?.mul(&z_p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{make_jordan_wigner, make_parity_code};

    fn op(n: usize, terms: &[(f64, f64, &str)]) -> QubitOperator {
        QubitOperator::from_terms(
            n,
            terms
                .iter()
                .map(|&(re, im, s)| (PauliString::parse(s, n).unwrap(), Complex64::new(re, im))),
        )
        .unwrap()
    }

    #[test]
    fn sets_of_small_codes() {
        let jw = make_jordan_wigner(4);
        let s = linear_sets(&jw, 3).unwrap();
        assert_eq!((s.parity, s.flip, s.update), (vec![1, 2], vec![3], vec![3]));
        let parity = make_parity_code(4);
        let s = linear_sets(&parity, 2).unwrap();
        assert_eq!((s.flip, s.update), (vec![1, 2], vec![2, 3, 4]));
        assert!(linear_sets(&parity, 1).unwrap().parity.is_empty());
    }

    #[test]
    fn jordan_wigner_creation() {
        let jw = make_jordan_wigner(3);
        let c2 = transform_op_linear(&jw, 2, true).unwrap();
        assert_eq!(c2, op(3, &[(0.5, 0.0, "Z1*X2"), (0.0, -0.5, "Z1*Y2")]));
    }

    #[test]
    fn parity_code_singles() {
        // (Z_{j-1} X_j + i (-1)^b Y_j) X_{>j} / 2
        let code = make_parity_code(4);
        let c2 = transform_op_linear(&code, 2, true).unwrap();
        assert_eq!(c2, op(4, &[(0.5, 0.0, "Z1*X2*X3*X4"), (0.0, -0.5, "Y2*X3*X4")]));
        let a2 = transform_op_linear(&code, 2, false).unwrap();
        assert_eq!(a2, op(4, &[(0.5, 0.0, "Z1*X2*X3*X4"), (0.0, 0.5, "Y2*X3*X4")]));
    }
}
