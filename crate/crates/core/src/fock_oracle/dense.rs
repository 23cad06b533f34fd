use num_complex::Complex64;

use super::state::apply_fermion_term;
use crate::bitmath::BitVec;
use crate::error::{Error, Result};
use crate::transform::FermionHamiltonian;

/// Largest mode count for dense matrices.
pub const DENSE_MODE_LIMIT: usize = 14;

/// Row-major `2^N x 2^N` matrix of `h` in the occupation basis. Index `k`
/// stands for `BitVec::from_u64(N, k)`, so mode 1 is the least significant
/// bit, the same layout as `QubitOperator::to_dense`.
pub fn fermion_matrix(h: &FermionHamiltonian) -> Result<Vec<Complex64>> {
    let modes = h.modes();
    if modes > DENSE_MODE_LIMIT {
        return Err(Error::budget(format!("dense matrix on {modes} modes"), DENSE_MODE_LIMIT));
    }
    let dim = 1usize << modes;
    let mut m = vec![Complex64::default(); dim * dim];
    for col in 0..dim {
        let nu = BitVec::from_u64(modes, col as u64);
        for term in h.terms() {
            if let Some((c, image)) = apply_fermion_term(term, &nu) {
                m[image.to_u64() as usize * dim + col] += c;
            }
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transform::{FermionOp, FermionTerm};

    fn single(modes: usize, op: FermionOp) -> Vec<Complex64> {
        let h = FermionHamiltonian::from_terms(modes, vec![FermionTerm::real(1.0, vec![op])]).unwrap();
        fermion_matrix(&h).unwrap()
    }

    fn matmul(a: &[Complex64], b: &[Complex64], dim: usize) -> Vec<Complex64> {
        let mut out = vec![Complex64::default(); dim * dim];
        for r in 0..dim {
            for k in 0..dim {
                let x = a[r * dim + k];
                if x != Complex64::default() {
                    for c in 0..dim {
                        out[r * dim + c] += x * b[k * dim + c];
                    }
                }
            }
        }
        out
    }

    #[test]
    fn dense_singles_anticommute() {
        let modes = 3;
        let dim = 1 << modes;
        for i in 1..=modes {
            for j in 1..=modes {
                let a = single(modes, FermionOp::annihilate(i));
                let b = single(modes, FermionOp::create(j));
                let ab = matmul(&a, &b, dim);
                let ba = matmul(&b, &a, dim);
                for r in 0..dim {
                    for c in 0..dim {
                        let expected = if i == j && r == c { 1.0 } else { 0.0 };
                        assert_eq!(ab[r * dim + c] + ba[r * dim + c], Complex64::new(expected, 0.0));
                    }
                }
            }
        }
    }

    #[test]
    fn too_many_modes() {
        let h = FermionHamiltonian::new(DENSE_MODE_LIMIT + 1);
        assert!(matches!(fermion_matrix(&h), Err(Error::Budget { .. })));
    }
}
