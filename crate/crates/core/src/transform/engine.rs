use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use rayon::prelude::*;

use super::fermion::{FermionHamiltonian, FermionTerm};
use crate::bitmath::{BitVec, BoolPoly, DEFAULT_MONOMIAL_BUDGET};
use crate::codes::Code;
use crate::error::{Error, Result};
use crate::pauli::{
    diag_from_values, extract, DiagOp, FixedMap, HermiticityReport, PauliString, Phase,
    QubitOperator, DEFAULT_EPSILON,
};

/// Largest qubit count for which update functions are tabulated over every
/// code word instead of composed symbolically.
const TABULATE_LIMIT: usize = 20;

/// Largest support over which the diagonal part of a term is tabulated.
const DIAG_TABLE_LIMIT: usize = 20;

#[derive(Clone, Copy, Debug)]
pub struct TransformOptions {
    /// Cap on monomials, Z-strings and tabulated words in intermediate
    /// results.
    pub budget: usize,
    /// Pruning threshold of the output operator.
    pub epsilon: f64,
    /// Largest imaginary part tolerated on a hermitian result.
    pub hermitian_tol: f64,
}

impl Default for TransformOptions {
    fn default() -> Self {
        TransformOptions {
            budget: DEFAULT_MONOMIAL_BUDGET,
            epsilon: DEFAULT_EPSILON,
            hermitian_tol: 1e-9,
        }
    }
}

/// Parity function `p_j = d_1 + ... + d_{j-1}`.
pub fn parity_function(code: &Code, j: usize) -> Result<BoolPoly> {
    if j == 0 || j > code.modes() {
        return Err(Error::IndexOutOfRange {
            index: j,
            len: code.modes(),
        });
    }
    let mut p = BoolPoly::zero(code.qubits());
    for i in 1..j {
        p.add_assign(code.decode_poly(i));
    }
    Ok(p)
}

/// Update function `eps^q(w) = e(d(w) + q) + w`, one polynomial per qubit.
pub fn update_epsilon(code: &Code, q: &BitVec, budget: usize) -> Result<Vec<BoolPoly>> {
    mixed_epsilon(code, code, q, budget)
}

fn check_pair(input: &Code, output: &Code, q: &BitVec) -> Result<()> {
    if input.qubits() != output.qubits() {
        return Err(Error::dim("update between codes (qubits)", input.qubits(), output.qubits()));
    }
    if input.modes() != output.modes() {
        return Err(Error::dim("update between codes (modes)", input.modes(), output.modes()));
    }
    if q.len() != input.modes() {
        return Err(Error::dim("update vector", input.modes(), q.len()));
    }
    Ok(())
}

fn tabulable(n: usize, budget: usize) -> bool {
    n <= TABULATE_LIMIT && 1usize << n <= budget
}

/// `e_out(d_in(w) + q) + w`: reads a word of one code and writes the word of
/// another. With both codes equal this is the ordinary update function.
fn mixed_epsilon(input: &Code, output: &Code, q: &BitVec, budget: usize) -> Result<Vec<BoolPoly>> {
    check_pair(input, output, q)?;
    let n = input.qubits();
    if tabulable(n, budget) {
        let mut tables = vec![vec![false; 1 << n]; n];
        for k in 0..1u64 << n {
            let t = mixed_flip(input, output, q, &BitVec::from_u64(n, k));
            for i in t.ones_iter() {
                tables[i - 1][k as usize] = true;
            }
        }
        return tables.iter().map(|t| BoolPoly::from_truth_table(n, t)).collect();
    }
    let subs: Vec<BoolPoly> = input
        .decode_polys()
        .iter()
        .zip(q.iter())
        .map(|(d, bit)| {
            let mut s = d.clone();
            s.add_constant(bit);
            s
        })
        .collect();
    output
        .encode_polys()
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let mut p = e.compose(&subs, budget)?;
            p.add_assign(&BoolPoly::var(n, i + 1));
            Ok(p)
        })
        .collect()
}

fn mixed_flip(input: &Code, output: &Code, q: &BitVec, omega: &BitVec) -> BitVec {
    let nu = input.decode_unchecked(omega).xor(q);
    output.encode_unchecked(&nu).xor(omega)
}

/// An update operator `sum_t X^t Pi_t`, where `Pi_t` projects onto the words
/// `w` with `eps(w) = t`.
#[derive(Clone, Debug)]
pub enum Update {
    /// A single X-string: the update function is constant.
    Flip(BitVec),
    /// Flip patterns with their diagonal projectors, sorted by pattern.
    Branches(Vec<(BitVec, DiagOp)>),
}

impl Update {
    pub fn to_qubit_operator(&self, n: usize) -> QubitOperator {
        let mut op = QubitOperator::zero(n);
        match self {
            Update::Flip(m) => op.add_term(PauliString::x_string(m.clone()), Complex64::new(1.0, 0.0)),
            Update::Branches(branches) => {
                for (t, proj) in branches {
                    add_x_times_diag(&mut op, t, proj, Complex64::new(1.0, 0.0));
                }
            }
        }
        op.prune();
        op
    }
}

/// Adds `coeff * X^x * diag` to `op`, using `X^x Z^z = i^{-|x & z|} P(x, z)`.
fn add_x_times_diag(op: &mut QubitOperator, x: &BitVec, diag: &DiagOp, coeff: Complex64) {
    let mut terms: Vec<_> = diag.iter().collect();
    terms.sort_by(|a, b| a.0.cmp(b.0));
    for (z, c) in terms {
        let phase = Phase::from_power(-(x.and_weight(z) as i64)).to_complex();
        op.add_term(PauliString::from_xz(x.clone(), z.clone()), coeff * phase * c);
    }
}

fn compute_update(input: &Code, output: &Code, same: bool, q: &BitVec, budget: usize) -> Result<Update> {
    check_pair(input, output, q)?;
    let n = input.qubits();
    if same {
        if let Some(a) = input.encode_matrix() {
            return Ok(Update::Flip(a.mul_vec(q)?));
        }
    }
    if tabulable(n, budget) {
        let flips: Vec<BitVec> = (0..1u64 << n)
            .map(|k| mixed_flip(input, output, q, &BitVec::from_u64(n, k)))
            .collect();
        let mut patterns: Vec<BitVec> = flips.clone();
        patterns.sort();
        patterns.dedup();
        if let [only] = patterns.as_slice() {
            return Ok(Update::Flip(only.clone()));
        }
        if patterns.len().saturating_mul(1 << n) > budget.saturating_mul(16) {
            return Err(Error::budget("tabulated update operator", budget));
        }
        let all: Vec<usize> = (1..=n).collect();
        let branches = patterns
            .into_iter()
            .map(|t| {
                let values = flips.iter().map(|f| if *f == t { 1.0 } else { 0.0 }).collect();
                let proj = diag_from_values(n, &all, values);
                (t, proj)
            })
            .collect();
        return Ok(Update::Branches(branches));
    }
    let eps = mixed_epsilon(input, output, q, budget)?;
    if eps.iter().all(|e| e.as_constant().is_some()) {
        let bits: Vec<bool> = eps.iter().map(BoolPoly::constant_term).collect();
        return Ok(Update::Flip(BitVec::from_bools(&bits)));
    }
    // Walk the t-tree one qubit at a time, dropping branches whose projector
    // product vanishes.
    let extracted = eps.iter().map(|e| extract(e, budget)).collect::<Result<Vec<_>>>()?;
    let mut frontier = vec![(Vec::<bool>::new(), DiagOp::identity(n))];
    for (e, x) in eps.iter().zip(&extracted) {
        let mut next = Vec::new();
        for (bits, proj) in frontier {
            let choices: &[bool] = match e.as_constant() {
                Some(c) => if c { &[true] } else { &[false] },
                None => &[false, true],
            };
            for &bit in choices {
                let p = if e.as_constant().is_some() {
                    proj.clone()
                } else {
                    proj.mul(&x.projector(if bit { -1.0 } else { 1.0 }), budget)?
                };
                if !p.is_empty() {
                    let mut b = bits.clone();
                    b.push(bit);
                    next.push((b, p));
                }
            }
        }
        if next.len() > budget {
            return Err(Error::budget("update operator branches", budget));
        }
        frontier = next;
    }
    Ok(Update::Branches(
        frontier
            .into_iter()
            .map(|(bits, p)| (BitVec::from_bools(&bits), p))
            .collect(),
    ))
}

/// Update operator `U^q` of a code; see [`Update`].
pub fn update_operator(code: &Code, q: &BitVec, budget: usize) -> Result<QubitOperator> {
    Ok(compute_update(code, code, true, q, budget)?.to_qubit_operator(code.qubits()))
}

/// A transformed Hamiltonian together with its hermiticity check.
#[derive(Clone, Debug)]
pub struct Transformed {
    pub operator: QubitOperator,
    pub hermiticity: HermiticityReport,
}

impl Transformed {
    pub fn require_hermitian(self) -> Result<QubitOperator> {
        match self.hermiticity.witness {
            None => Ok(self.operator),
            Some((s, c)) => Err(Error::NonHermitian {
                witness: s.to_string(),
                coeff: format!("{c}"),
            }),
        }
    }
}

/// Maps fermionic operator sequences through one code. Extracted decoding
/// and parity functions and update operators are cached, so one instance
/// should serve a whole Hamiltonian.
pub struct Transformer<'a> {
    code: &'a Code,
    opts: TransformOptions,
    decode_x: Vec<OnceLock<Arc<DiagOp>>>,
    parity_x: Vec<OnceLock<Arc<DiagOp>>>,
    updates: Mutex<FixedMap<BitVec, Arc<Update>>>,
}

impl<'a> Transformer<'a> {
    pub fn new(code: &'a Code, opts: TransformOptions) -> Self {
        Transformer {
            code,
            opts,
            decode_x: (0..code.modes()).map(|_| OnceLock::new()).collect(),
            parity_x: (0..code.modes()).map(|_| OnceLock::new()).collect(),
            updates: Mutex::new(FixedMap::default()),
        }
    }

    pub fn code(&self) -> &Code {
        self.code
    }

    pub fn options(&self) -> TransformOptions {
        self.opts
    }

    fn check_mode(&self, j: usize) -> Result<()> {
        if j == 0 || j > self.code.modes() {
            return Err(Error::IndexOutOfRange {
                index: j,
                len: self.code.modes(),
            });
        }
        Ok(())
    }

    fn cached(
        cell: &OnceLock<Arc<DiagOp>>,
        make: impl FnOnce() -> Result<DiagOp>,
    ) -> Result<Arc<DiagOp>> {
        if let Some(d) = cell.get() {
            return Ok(d.clone());
        }
        let d = Arc::new(make()?);
        Ok(cell.get_or_init(|| d).clone())
    }

    /// Extraction of `d_j`.
    pub fn decode_extract(&self, j: usize) -> Result<Arc<DiagOp>> {
        self.check_mode(j)?;
        Self::cached(&self.decode_x[j - 1], || {
            extract(self.code.decode_poly(j), self.opts.budget)
        })
    }

    /// Extraction of `p_j`.
    pub fn parity_extract(&self, j: usize) -> Result<Arc<DiagOp>> {
        self.check_mode(j)?;
        Self::cached(&self.parity_x[j - 1], || {
            extract(&parity_function(self.code, j)?, self.opts.budget)
        })
    }

    pub fn update(&self, q: &BitVec) -> Result<Arc<Update>> {
        if let Some(u) = self.updates.lock().expect("update cache poisoned").get(q) {
            return Ok(u.clone());
        }
        let u = Arc::new(compute_update(self.code, self.code, true, q, self.opts.budget)?);
        let mut cache = self.updates.lock().expect("update cache poisoned");
        Ok(cache.entry(q.clone()).or_insert(u).clone())
    }

    pub fn update_operator(&self, q: &BitVec) -> Result<QubitOperator> {
        Ok(self.update(q)?.to_qubit_operator(self.code.qubits()))
    }

    /// `coeff * U * diag` as a Pauli sum.
    fn finish(&self, update: &Update, diag: &DiagOp, coeff: Complex64) -> Result<QubitOperator> {
        let mut op = QubitOperator::zero(self.code.qubits()).with_epsilon(self.opts.epsilon);
        match update {
            Update::Flip(m) => add_x_times_diag(&mut op, m, diag, coeff),
            Update::Branches(branches) => {
                for (t, proj) in branches {
                    let d = proj.mul(diag, self.opts.budget)?;
                    add_x_times_diag(&mut op, t, &d, coeff);
                }
            }
        }
        op.prune();
        Ok(op)
    }

    /// `sign * X[P] * prod (I + s X[d_m]) / 2` over the `(m, s)` pairs, with
    /// `P` the sum of the decoding components flagged in `parity`. Parity
    /// operators are merged into one extraction because extraction turns
    /// sums into products; when the combined support is small the diagonal
    /// is tabulated instead of multiplied out.
    fn diagonal(&self, sign: f64, projectors: &[(usize, f64)], parity: &BitVec) -> Result<DiagOp> {
        let n = self.code.qubits();
        let mut p = BoolPoly::zero(n);
        for i in parity.ones_iter() {
            p.add_assign(self.code.decode_poly(i));
        }
        let mut support = p.support();
        for &(m, _) in projectors {
            support = support.or(&self.code.decode_poly(m).support());
        }
        let vars: Vec<usize> = support.ones_iter().collect();
        if vars.len() <= DIAG_TABLE_LIMIT {
            let decode: Vec<(&BoolPoly, f64)> = projectors
                .iter()
                .map(|&(m, s)| (self.code.decode_poly(m), s))
                .collect();
            let mut omega = BitVec::zeros(n);
            let values: Vec<f64> = (0..1usize << vars.len())
                .map(|idx| {
                    for (b, &v) in vars.iter().enumerate() {
                        omega.set(v, idx >> b & 1 == 1);
                    }
                    let mut value = if p.eval_unchecked(&omega) { -sign } else { sign };
                    for &(d, s) in &decode {
                        let bit = if d.eval_unchecked(&omega) { -1.0 } else { 1.0 };
                        value *= 0.5 * (1.0 + s * bit);
                        if value == 0.0 {
                            break;
                        }
                    }
                    value
                })
                .collect();
            return Ok(diag_from_values(n, &vars, values));
        }
        let budget = self.opts.budget;
        let mut diag = extract(&p, budget)?.scale(sign);
        for &(m, s) in projectors {
            diag = diag.mul(&self.decode_extract(m)?.projector(s), budget)?;
            if diag.is_empty() {
                break;
            }
        }
        Ok(diag)
    }

    /// Maps one operator sequence: the update operator, the reordering sign,
    /// and per operator a projector on its occupation (corrected for later
    /// operators on the same mode) times its parity operator.
    pub fn transform_term(&self, term: &FermionTerm) -> Result<QubitOperator> {
        for op in &term.ops {
            self.check_mode(op.mode)?;
        }
        let modes: Vec<usize> = term.ops.iter().map(|o| o.mode).collect();
        let inversions = (0..modes.len())
            .flat_map(|v| (v + 1..modes.len()).map(move |w| (v, w)))
            .filter(|&(v, w)| modes[v] > modes[w])
            .count();
        let sign = if inversions % 2 == 1 { -1.0 } else { 1.0 };
        let mut projectors = Vec::with_capacity(modes.len());
        let mut parity = BitVec::zeros(self.code.modes());
        let mut q = BitVec::zeros(self.code.modes());
        for (x, op) in term.ops.iter().enumerate() {
            let repeats = modes[x + 1..].iter().filter(|&&m| m == op.mode).count();
            let later = if repeats % 2 == 1 { -1.0 } else { 1.0 };
            let occupied = if op.dagger { -1.0 } else { 1.0 };
            // (I - later * (-1)^b X[d]) / 2
            projectors.push((op.mode, -later * occupied));
            for i in 1..op.mode {
                parity.flip(i);
            }
            q.flip(op.mode);
        }
        let diag = self.diagonal(sign, &projectors, &parity)?;
        if diag.is_empty() {
            return Ok(QubitOperator::zero(self.code.qubits()));
        }
        self.finish(&*self.update(&q)?, &diag, term.coeff)
    }

    /// The `c†_i c_j` block on its own: `(I - X[d_j])/2` for `i = j`, and
    /// otherwise the update for `u_i + u_j` times both parities and the two
    /// projectors, with a minus sign when `i > j`.
    pub fn transform_pair(&self, i: usize, j: usize) -> Result<QubitOperator> {
        self.check_mode(i)?;
        self.check_mode(j)?;
        let n = self.code.qubits();
        let one = Complex64::new(1.0, 0.0);
        if i == j {
            let diag = self.decode_extract(j)?.projector(-1.0);
            return self.finish(&Update::Flip(BitVec::zeros(n)), &diag, one);
        }
        let sign = if i > j { -1.0 } else { 1.0 };
        let budget = self.opts.budget;
        let diag = DiagOp::scalar(n, sign)
            .mul(&*self.parity_extract(i)?, budget)?
            .mul(&*self.parity_extract(j)?, budget)?
            .mul(&self.decode_extract(i)?.projector(1.0), budget)?
            .mul(&self.decode_extract(j)?.projector(-1.0), budget)?;
        let q = BitVec::from_indices(self.code.modes(), &[i, j]);
        self.finish(&*self.update(&q)?, &diag, one)
    }

    /// Sum of all transformed terms. Terms are mapped in parallel and added
    /// in input order, so the result does not depend on scheduling.
    pub fn transform_hamiltonian(&self, h: &FermionHamiltonian) -> Result<Transformed> {
        if h.modes() != self.code.modes() {
            return Err(Error::dim("Hamiltonian modes vs code", self.code.modes(), h.modes()));
        }
        let parts: Vec<QubitOperator> = h
            .terms()
            .par_iter()
            .map(|t| self.transform_term(t))
            .collect::<Result<_>>()?;
        let mut total = QubitOperator::zero(self.code.qubits()).with_epsilon(self.opts.epsilon);
        for part in &parts {
            for (s, c) in part.sorted_terms() {
                total.add_term(s.clone(), c);
            }
        }
        total.prune();
        let hermiticity = total.check_hermitian(self.opts.hermitian_tol);
        Ok(Transformed {
            operator: total,
            hermiticity,
        })
    }
}

pub fn transform_term(code: &Code, term: &FermionTerm, opts: TransformOptions) -> Result<QubitOperator> {
    Transformer::new(code, opts).transform_term(term)
}

pub fn transform_hamiltonian(code: &Code, h: &FermionHamiltonian, opts: TransformOptions) -> Result<Transformed> {
    Transformer::new(code, opts).transform_hamiltonian(h)
}

pub fn transform_pair(code: &Code, i: usize, j: usize, opts: TransformOptions) -> Result<QubitOperator> {
    Transformer::new(code, opts).transform_pair(i, j)
}

/// Single operators for a blocked Hamiltonian encoded with one code on the
/// even subspace (states reached after an even number of operators) and
/// another on the odd subspace.
///
/// An annihilator reads an even-code word and writes an odd-code word; a
/// creator does the reverse. Each uses the projector and parity of the code
/// it reads, and the update `e_out(d_in(w) + u_j) + w` that switches codes.
pub struct TwoCodeTransformer<'a> {
    even: Transformer<'a>,
    odd: Transformer<'a>,
}

impl<'a> TwoCodeTransformer<'a> {
    pub fn new(even: &'a Code, odd: &'a Code, opts: TransformOptions) -> Result<Self> {
        check_pair(even, odd, &BitVec::zeros(even.modes()))?;
        Ok(TwoCodeTransformer {
            even: Transformer::new(even, opts),
            odd: Transformer::new(odd, opts),
        })
    }

    pub fn single(&self, j: usize, dagger: bool) -> Result<QubitOperator> {
        let (input, output) = if dagger { (&self.odd, &self.even) } else { (&self.even, &self.odd) };
        let budget = input.opts.budget;
        let occupied = if dagger { 1.0 } else { -1.0 };
        let diag = input
            .decode_extract(j)?
            .projector(occupied)
            .mul(&*input.parity_extract(j)?, budget)?;
        let q = BitVec::unit(input.code.modes(), j);
        let update = compute_update(input.code, output.code, false, &q, budget)?;
        input.finish(&update, &diag, Complex64::new(1.0, 0.0))
    }

    /// A blocked term as the product of its transformed single operators.
    pub fn transform_blocked_term(&self, term: &FermionTerm) -> Result<QubitOperator> {
        if !term.is_blocked() {
            return Err(Error::Precondition(
                "two-code transform needs alternating c†c blocks".into(),
            ));
        }
        let n = self.even.code.qubits();
        let mut op = QubitOperator::identity(n).scale(term.coeff);
        for f in &term.ops {
            op = op.mul(&self.single(f.mode, f.dagger)?)?;
        }
        Ok(op)
    }
}

pub fn transform_single_two_codes(
    even: &Code,
    odd: &Code,
    j: usize,
    dagger: bool,
    opts: TransformOptions,
) -> Result<QubitOperator> {
    TwoCodeTransformer::new(even, odd, opts)?.single(j, dagger)
}
