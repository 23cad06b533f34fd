use std::collections::hash_map::Entry;

use num_complex::Complex64;

use crate::bitmath::BitVec;
use crate::codes::Code;
use crate::error::{Error, Result};
use crate::pauli::{FixedMap, QubitOperator};
use crate::transform::{FermionHamiltonian, FermionOp, FermionTerm};

/// Sparse vector over basis labels of one fixed length. Amplitudes that
/// cancel to exactly zero are dropped.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseState {
    len: usize,
    amps: FixedMap<BitVec, Complex64>,
}

/// A state in the occupation basis `|nu>` of `len` modes.
pub type FockState = SparseState;
/// A state in the computational basis `|w>` of `len` qubits.
pub type QubitState = SparseState;

impl SparseState {
    pub fn zero(len: usize) -> Self {
        SparseState {
            len,
            amps: FixedMap::default(),
        }
    }

    pub fn basis(label: BitVec) -> Self {
        let mut s = Self::zero(label.len());
        s.amps.insert(label, Complex64::new(1.0, 0.0));
        s
    }

    /// Vacuum: every mode empty.
    pub fn vacuum(len: usize) -> Self {
        Self::basis(BitVec::zeros(len))
    }

    /// Bit length of the labels.
    pub fn label_len(&self) -> usize {
        self.len
    }

    /// Number of stored amplitudes.
    pub fn support_size(&self) -> usize {
        self.amps.len()
    }

    pub fn is_zero(&self) -> bool {
        self.amps.is_empty()
    }

    pub fn amplitude(&self, label: &BitVec) -> Complex64 {
        self.amps.get(label).copied().unwrap_or_default()
    }

    pub fn add(&mut self, label: BitVec, amp: Complex64) -> Result<()> {
        if label.len() != self.len {
            return Err(Error::dim("SparseState::add", self.len, label.len()));
        }
        self.accumulate(label, amp);
        Ok(())
    }

    fn accumulate(&mut self, label: BitVec, amp: Complex64) {
        match self.amps.entry(label) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += amp;
                if *e.get() == Complex64::default() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                if amp != Complex64::default() {
                    e.insert(amp);
                }
            }
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BitVec, Complex64)> {
        self.amps.iter().map(|(k, v)| (k, *v))
    }

    /// Components ordered by label.
    pub fn sorted(&self) -> Vec<(&BitVec, Complex64)> {
        let mut v: Vec<_> = self.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.values().map(Complex64::norm_sqr).sum()
    }

    /// Largest amplitude difference over the union of both supports.
    pub fn max_difference(&self, other: &SparseState) -> f64 {
        let one_way = |a: &SparseState, b: &SparseState| {
            a.amps
                .iter()
                .map(|(k, v)| (v - b.amplitude(k)).norm())
                .fold(0.0, f64::max)
        };
        one_way(self, other).max(one_way(other, self))
    }
}

/// Action of one operator on an occupation vector: `None` for a creator on
/// an occupied mode or an annihilator on an empty one, otherwise the sign
/// `(-1)^(nu_1 + ... + nu_{j-1})` and the flipped occupation.
pub fn apply_fermion_op(op: FermionOp, nu: &BitVec) -> Option<(f64, BitVec)> {
    if nu.bit(op.mode) == op.dagger {
        return None;
    }
    let sign = if nu.parity_below(op.mode) { -1.0 } else { 1.0 };
    let mut out = nu.clone();
    out.flip(op.mode);
    Some((sign, out))
}

/// Applies the operators of `term` right to left. Returns `None` when the
/// term annihilates `nu`.
pub fn apply_fermion_term(term: &FermionTerm, nu: &BitVec) -> Option<(Complex64, BitVec)> {
    let mut state = nu.clone();
    let mut sign = 1.0;
    for &op in term.ops.iter().rev() {
        let (s, next) = apply_fermion_op(op, &state)?;
        sign *= s;
        state = next;
    }
    Some((term.coeff * sign, state))
}

pub fn apply_hamiltonian_fock(h: &FermionHamiltonian, s: &FockState) -> Result<FockState> {
    if s.label_len() != h.modes() {
        return Err(Error::dim("apply_hamiltonian_fock", h.modes(), s.label_len()));
    }
    let mut out = FockState::zero(s.label_len());
    for (nu, amp) in s.sorted() {
        for term in h.terms() {
            if let Some((c, image)) = apply_fermion_term(term, nu) {
                out.accumulate(image, c * amp);
            }
        }
    }
    Ok(out)
}

pub fn apply_qubit_operator(op: &QubitOperator, s: &QubitState) -> Result<QubitState> {
    if s.label_len() != op.num_qubits() {
        return Err(Error::dim("apply_qubit_operator", op.num_qubits(), s.label_len()));
    }
    let mut out = QubitState::zero(s.label_len());
    let terms = op.sorted_terms();
    for (omega, amp) in s.sorted() {
        for (string, c) in &terms {
            let (phase, image) = string.apply(omega);
            out.accumulate(image, phase.to_complex() * c * amp);
        }
    }
    Ok(out)
}

/// `sum_nu a_nu |e(nu)>`.
pub fn encode_state(code: &Code, s: &FockState) -> Result<QubitState> {
    if s.label_len() != code.modes() {
        return Err(Error::dim("encode_state", code.modes(), s.label_len()));
    }
    let mut out = QubitState::zero(code.qubits());
    for (nu, amp) in s.sorted() {
        out.accumulate(code.encode_unchecked(nu), amp);
    }
    Ok(out)
}
