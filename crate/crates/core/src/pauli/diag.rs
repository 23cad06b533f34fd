use std::collections::hash_map::Entry;

use num_complex::Complex64;

use super::operator::{FixedMap, QubitOperator};
use super::string::PauliString;
use crate::bitmath::{BitVec, BoolPoly};
use crate::error::{Error, Result};

/// Largest support for which extraction goes through a dense truth table and
/// a Walsh-Hadamard transform instead of expanding monomial by monomial.
const TABLE_LIMIT: usize = 22;

/// Real combination of Z-strings, keyed by their Z masks. Every extracted
/// boolean function and every product of projectors lives in this algebra,
/// where multiplication is just XOR of masks.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagOp {
    n: usize,
    terms: FixedMap<BitVec, f64>,
}

impl DiagOp {
    pub fn zero(n: usize) -> Self {
        DiagOp {
            n,
            terms: FixedMap::default(),
        }
    }

    pub fn scalar(n: usize, value: f64) -> Self {
        let mut d = Self::zero(n);
        if value != 0.0 {
            d.terms.insert(BitVec::zeros(n), value);
        }
        d
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, 1.0)
    }

    /// The string `Z^mask`.
    pub fn z(mask: BitVec) -> Self {
        let mut d = Self::zero(mask.len());
        d.terms.insert(mask, 1.0);
        d
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, mask: &BitVec) -> f64 {
        self.terms.get(mask).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BitVec, f64)> {
        self.terms.iter().map(|(m, c)| (m, *c))
    }

    fn sorted(&self) -> Vec<(&BitVec, f64)> {
        let mut v: Vec<_> = self.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v
    }

    fn accumulate(&mut self, mask: BitVec, value: f64) {
        match self.terms.entry(mask) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += value;
                if e.get().abs() <= f64::EPSILON * 1e-4 {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                if value != 0.0 {
                    e.insert(value);
                }
            }
        }
    }

    pub fn add(&self, other: &DiagOp) -> DiagOp {
        let mut out = self.clone();
        for (m, c) in other.sorted() {
            out.accumulate(m.clone(), c);
        }
        out
    }

    pub fn scale(&self, factor: f64) -> DiagOp {
        if factor == 0.0 {
            return DiagOp::zero(self.n);
        }
        DiagOp {
            n: self.n,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * factor)).collect(),
        }
    }

    /// Product, failing once the result would hold more than `budget`
    /// strings.
    pub fn mul(&self, other: &DiagOp, budget: usize) -> Result<DiagOp> {
        if self.n != other.n {
            return Err(Error::dim("DiagOp::mul", self.n, other.n));
        }
        let mut out = DiagOp::zero(self.n);
        let right = other.sorted();
        for (m1, c1) in self.sorted() {
            for &(m2, c2) in &right {
                out.accumulate(m1.xor(m2), c1 * c2);
            }
            if out.terms.len() > budget {
                return Err(Error::budget("diagonal operator product", budget));
            }
        }
        Ok(out)
    }

    /// `(1 + sign * self) / 2`, the projector built from an extracted
    /// function.
    pub fn projector(&self, sign: f64) -> DiagOp {
        DiagOp::scalar(self.n, 0.5).add(&self.scale(0.5 * sign))
    }

    /// Diagonal entry `<w|D|w>`.
    pub fn eval(&self, omega: &BitVec) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| if m.dot(omega) { -c } else { *c })
            .sum()
    }

    pub fn to_qubit_operator(&self) -> QubitOperator {
        let mut op = QubitOperator::zero(self.n);
        for (m, c) in self.sorted() {
            op.add_term(PauliString::z_string(m.clone()), Complex64::new(c, 0.0));
        }
        op.prune();
        op
    }
}

/// `I - 2 prod_{j in S} (I - Z_j)/2`: the sign `-1` exactly on words with
/// every qubit of `S` set. Two indices give the controlled phase
/// `(I + Z_i + Z_j - Z_i Z_j)/2`.
pub fn cphase_expand(n: usize, indices: &[usize]) -> Result<DiagOp> {
    if indices.is_empty() {
        return Err(Error::Input("cphase needs at least one qubit".into()));
    }
    if let Some(&j) = indices.iter().find(|&&j| j == 0 || j > n) {
        return Err(Error::IndexOutOfRange { index: j, len: n });
    }
    let mut vars = indices.to_vec();
    vars.sort_unstable();
    vars.dedup();
    if vars.len() > 30 {
        return Err(Error::budget(format!("cphase on {} qubits", vars.len()), 30));
    }
    let k = vars.len();
    let scale = -2.0 / (1u64 << k) as f64;
    let mut d = DiagOp::identity(n);
    for subset in 0u64..1 << k {
        let picked: Vec<usize> = (0..k).filter(|b| subset >> b & 1 == 1).map(|b| vars[b]).collect();
        let sign = if picked.len() % 2 == 1 { -1.0 } else { 1.0 };
        d.accumulate(BitVec::from_indices(n, &picked), scale * sign);
    }
    Ok(d)
}

/// Extraction of a boolean function: the diagonal operator with entries
/// `(-1)^f(w)`, expanded into Z-strings.
pub fn extract(f: &BoolPoly, budget: usize) -> Result<DiagOp> {
    if f.is_affine() {
        let sign = if f.constant_term() { -1.0 } else { 1.0 };
        return Ok(DiagOp::z(f.linear_part()).scale(sign));
    }
    let support: Vec<usize> = f.support().ones_iter().collect();
    if support.len() <= TABLE_LIMIT {
        Ok(extract_by_table(f, &support))
    } else {
        extract_by_products(f, budget)
    }
}

/// Extraction as the product over monomials: `-I` for the constant,
/// `Z_j` for a single variable and [`cphase_expand`] for the rest.
pub fn extract_by_products(f: &BoolPoly, budget: usize) -> Result<DiagOp> {
    let n = f.num_vars();
    let mut d = DiagOp::identity(n);
    for m in f.monomials() {
        let factor = match m.degree() {
            0 => DiagOp::scalar(n, -1.0),
            1 => DiagOp::z(m.mask().clone()),
            _ => cphase_expand(n, &m.vars().collect::<Vec<_>>())?,
        };
        d = d.mul(&factor, budget)?;
    }
    Ok(d)
}

/// Truth table over the support, then a Walsh-Hadamard transform. Exact,
/// since every coefficient is an integer divided by a power of two.
fn extract_by_table(f: &BoolPoly, support: &[usize]) -> DiagOp {
    let n = f.num_vars();
    let k = support.len();
    let mut local_of = vec![usize::MAX; n + 1];
    for (b, &v) in support.iter().enumerate() {
        local_of[v] = b;
    }
    // ANF -> truth table by the Moebius transform.
    let mut table = vec![false; 1 << k];
    for m in f.monomials() {
        let idx = m.vars().fold(0usize, |acc, v| acc | 1 << local_of[v]);
        table[idx] ^= true;
    }
    for b in 0..k {
        for idx in 0..table.len() {
            if idx >> b & 1 == 1 {
                table[idx] ^= table[idx ^ 1 << b];
            }
        }
    }
    let values = table.iter().map(|&t| if t { -1.0 } else { 1.0 }).collect();
    diag_from_values(n, support, values)
}

/// Z-string expansion of the diagonal operator whose entry on a word depends
/// only on the qubits in `support`: `values[idx]` is the entry for the local
/// assignment `idx` (bit `b` of `idx` is qubit `support[b]`).
pub(crate) fn diag_from_values(n: usize, support: &[usize], mut values: Vec<f64>) -> DiagOp {
    let k = support.len();
    debug_assert_eq!(values.len(), 1 << k);
    let mut h = 1;
    while h < values.len() {
        for block in values.chunks_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        h *= 2;
    }
    let norm = (1u64 << k) as f64;
    let mut d = DiagOp::zero(n);
    for (idx, &v) in values.iter().enumerate() {
        if v != 0.0 {
            let vars: Vec<usize> = (0..k).filter(|b| idx >> b & 1 == 1).map(|b| support[b]).collect();
            d.terms.insert(BitVec::from_indices(n, &vars), v / norm);
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitmath::DEFAULT_MONOMIAL_BUDGET;

    fn poly(text: &str, n: usize) -> BoolPoly {
        BoolPoly::parse(text, n).unwrap()
    }

    fn mask(n: usize, idx: &[usize]) -> BitVec {
        BitVec::from_indices(n, idx)
    }

    #[test]
    fn linear_and_constant_functions() {
        let d = extract(&poly("x2", 3), DEFAULT_MONOMIAL_BUDGET).unwrap();
        assert_eq!(d, DiagOp::z(mask(3, &[2])));
        assert_eq!(extract(&poly("0", 2), 10).unwrap(), DiagOp::identity(2));
        assert_eq!(extract(&poly("1", 2), 10).unwrap(), DiagOp::scalar(2, -1.0));
    }

    #[test]
    fn worked_example() {
        // X[1 + w1 + w1 w2] = -Z1 CPhase(1,2) = -(Z1 + I + Z1Z2 - Z2)/2
        let d = extract(&poly("1+x1+x1*x2", 2), DEFAULT_MONOMIAL_BUDGET).unwrap();
        assert_eq!(d.len(), 4);
        assert_eq!(d.coeff(&mask(2, &[])), -0.5);
        assert_eq!(d.coeff(&mask(2, &[1])), -0.5);
        assert_eq!(d.coeff(&mask(2, &[2])), 0.5);
        assert_eq!(d.coeff(&mask(2, &[1, 2])), -0.5);
        assert_eq!(d, extract_by_products(&poly("1+x1+x1*x2", 2), 100).unwrap());
    }

    #[test]
    fn cphase_forms() {
        let d = cphase_expand(2, &[1, 2]).unwrap();
        for (idx, c) in [(vec![], 0.5), (vec![1], 0.5), (vec![2], 0.5), (vec![1, 2], -0.5)] {
            assert_eq!(d.coeff(&mask(2, &idx)), c);
        }
        assert_eq!(cphase_expand(3, &[2]).unwrap(), DiagOp::z(mask(3, &[2])));
        let d = cphase_expand(3, &[1, 2, 3]).unwrap();
        for w in 0..8u64 {
            let expected = if w == 7 { -1.0 } else { 1.0 };
            assert_eq!(d.eval(&BitVec::from_u64(3, w)), expected);
        }
    }

    #[test]
    fn projector_and_budget() {
        let z1 = DiagOp::z(mask(1, &[1]));
        let p = z1.projector(-1.0);
        assert_eq!(p.mul(&p, 10).unwrap(), p);
        let big = cphase_expand(6, &[1, 2, 3, 4, 5, 6]).unwrap();
        assert!(matches!(big.mul(&big.clone(), 8), Err(Error::Budget { .. })));
    }
}
