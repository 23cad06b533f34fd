use std::collections::HashSet;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use super::state::{
    apply_hamiltonian_fock, apply_qubit_operator, encode_state, FockState, QubitState,
};
use crate::bitmath::BitVec;
use crate::codes::Code;
use crate::error::{Error, Result};
use crate::pauli::QubitOperator;
use crate::transform::{transform_op_linear, FermionHamiltonian};

/// Absolute tolerance per amplitude.
pub const EQUIVALENCE_TOL: f64 = 1e-9;

/// How many failures a report keeps.
const MAX_FAILURES: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    /// Some amplitude differs by more than the tolerance.
    Fail,
    /// The fermionic image of a basis state leaves the basis, so the
    /// Hamiltonian cannot be represented on the encoded space.
    Incompatible,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Incompatible => "incompatible",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub nu: String,
    pub detail: String,
}

/// Result of [`verify_equivalence`]. Serializes to
/// `{status, max_deviation, failures: [{nu, detail}], ...}`.
#[derive(Clone, Debug, Serialize)]
pub struct EquivalenceReport {
    pub status: Status,
    pub max_deviation: f64,
    pub failures: Vec<Failure>,
    pub states_checked: usize,
    pub mismatch_count: usize,
    pub incompatible_count: usize,
}

impl EquivalenceReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for EquivalenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "status: {}", self.status)?;
        writeln!(f, "states checked: {}", self.states_checked)?;
        writeln!(f, "max deviation: {:.3e}", self.max_deviation)?;
        writeln!(
            f,
            "mismatches: {}, incompatible images: {}",
            self.mismatch_count, self.incompatible_count
        )?;
        for fail in &self.failures {
            writeln!(f, "  {}: {}", fail.nu, fail.detail)?;
        }
        Ok(())
    }
}

enum Outcome {
    Ok(f64),
    Mismatch(f64, String),
    Incompatible(String),
}

fn check_state(
    code: &Code,
    h: &FermionHamiltonian,
    hq: &QubitOperator,
    members: &HashSet<&BitVec>,
    nu: &BitVec,
) -> Result<Outcome> {
    if !code.round_trips(nu) {
        return Ok(Outcome::Incompatible("basis state is not encoded by the code".into()));
    }
    let image = apply_hamiltonian_fock(h, &FockState::basis(nu.clone()))?;
    let leaving: Vec<_> = image
        .sorted()
        .into_iter()
        .filter(|(out, amp)| amp.norm() > EQUIVALENCE_TOL && !members.contains(out))
        .collect();
    if let Some((out, amp)) = leaving.first() {
        let extra = leaving.len() - 1;
        return Ok(Outcome::Incompatible(format!(
            "image {out} (amplitude {amp:.3e}) is outside the basis{}",
            if extra > 0 { format!(", and {extra} more") } else { String::new() }
        )));
    }
    let expected = encode_state(code, &image)?;
    let actual = apply_qubit_operator(hq, &QubitState::basis(code.encode_unchecked(nu)))?;
    let dev = expected.max_difference(&actual);
    if dev > EQUIVALENCE_TOL {
        let worst = actual
            .sorted()
            .into_iter()
            .map(|(w, a)| (w.clone(), a, expected.amplitude(w)))
            .chain(
                expected
                    .sorted()
                    .into_iter()
                    .map(|(w, e)| (w.clone(), actual.amplitude(w), e)),
            )
            .max_by(|x, y| (x.1 - x.2).norm().total_cmp(&(y.1 - y.2).norm()))
            .expect("nonzero deviation has a witness");
        return Ok(Outcome::Mismatch(
            dev,
            format!("amplitude on |{}> is {} but should be {}", worst.0, worst.1, worst.2),
        ));
    }
    Ok(Outcome::Ok(dev))
}

/// Compares the qubit operator `hq` with the fermionic action of `h` on
/// every basis state: `hq |e(nu)>` must equal the encoding of `h |nu>`.
/// Images that leave the basis are reported as incompatible rather than
/// compared. Basis states are checked in parallel.
pub fn verify_equivalence(
    code: &Code,
    h: &FermionHamiltonian,
    hq: &QubitOperator,
    basis: &[BitVec],
) -> Result<EquivalenceReport> {
    if h.modes() != code.modes() {
        return Err(Error::dim("verify_equivalence modes", code.modes(), h.modes()));
    }
    if hq.num_qubits() != code.qubits() {
        return Err(Error::dim("verify_equivalence qubits", code.qubits(), hq.num_qubits()));
    }
    let members: HashSet<&BitVec> = basis.iter().collect();
    let outcomes: Vec<Outcome> = basis
        .par_iter()
        .map(|nu| check_state(code, h, hq, &members, nu))
        .collect::<Result<_>>()?;

    let mut report = EquivalenceReport {
        status: Status::Pass,
        max_deviation: 0.0,
        failures: Vec::new(),
        states_checked: basis.len(),
        mismatch_count: 0,
        incompatible_count: 0,
    };
    for (nu, outcome) in basis.iter().zip(outcomes) {
        let detail = match outcome {
            Outcome::Ok(dev) => {
                report.max_deviation = report.max_deviation.max(dev);
                continue;
            }
            Outcome::Mismatch(dev, detail) => {
                report.max_deviation = report.max_deviation.max(dev);
                report.mismatch_count += 1;
                detail
            }
            Outcome::Incompatible(detail) => {
                report.incompatible_count += 1;
                detail
            }
        };
        if report.failures.len() < MAX_FAILURES {
            report.failures.push(Failure {
                nu: nu.to_string(),
                detail,
            });
        }
    }
    report.status = if report.incompatible_count > 0 {
        Status::Incompatible
    } else if report.mismatch_count > 0 {
        Status::Fail
    } else {
        Status::Pass
    };
    Ok(report)
}

/// Result of [`check_compatibility`].
#[derive(Clone, Debug, Serialize)]
pub struct CompatibilityReport {
    pub words_scanned: usize,
    /// Distinct occupations `d(w)` that the code encodes.
    pub encoded_states: usize,
    /// Encoded states that some term maps outside the encoded set.
    pub incompatible_count: usize,
    /// `(state, image)` examples.
    pub examples: Vec<(String, String)>,
}

impl CompatibilityReport {
    pub fn compatible(&self) -> bool {
        self.incompatible_count == 0
    }
}

impl fmt::Display for CompatibilityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "compatibility: {} encoded state(s) from {} word(s), {} mapped outside",
            self.encoded_states, self.words_scanned, self.incompatible_count
        )?;
        for (nu, image) in &self.examples {
            writeln!(f, "  {nu} -> {image}")?;
        }
        Ok(())
    }
}

/// Scans every code word, collects the occupations the code encodes and
/// checks that `h` keeps them inside that set. Terms are summed before the
/// check, since dressed terms only cancel their overflow as a sum. This is the
/// condition that the Hamiltonian maps the encoded space into itself,
/// independent of any chosen basis.
pub fn check_compatibility(code: &Code, h: &FermionHamiltonian, budget: usize) -> Result<CompatibilityReport> {
    if h.modes() != code.modes() {
        return Err(Error::dim("check_compatibility modes", code.modes(), h.modes()));
    }
    let n = code.qubits();
    if n >= 63 || (1u64 << n) as u128 > budget as u128 {
        return Err(Error::budget(format!("scan of 2^{n} code words"), budget));
    }
    let words = 1u64 << n;
    let encoded: Vec<BitVec> = (0..words)
        .into_par_iter()
        .filter_map(|k| {
            let nu = code.decode_unchecked(&BitVec::from_u64(n, k));
            code.round_trips(&nu).then_some(nu)
        })
        .collect::<HashSet<_>>()
        .into_iter()
        .collect();
    let mut encoded = encoded;
    encoded.sort();
    let bad: Vec<(String, String)> = encoded
        .par_iter()
        .map(|nu| {
            let image = apply_hamiltonian_fock(h, &FockState::basis(nu.clone()))?;
            Ok(image
                .sorted()
                .into_iter()
                .find(|(out, amp)| amp.norm() > EQUIVALENCE_TOL && !code.round_trips(out))
                .map(|(out, _)| (nu.to_string(), out.to_string())))
        })
        .filter_map(Result::transpose)
        .collect::<Result<_>>()?;
    Ok(CompatibilityReport {
        words_scanned: words as usize,
        encoded_states: encoded.len(),
        incompatible_count: bad.len(),
        examples: bad.into_iter().take(MAX_FAILURES).collect(),
    })
}

/// Checks `U |e(nu)> = |e(nu + q)>` on every basis state. Returns the states
/// where it fails.
pub fn check_update_demand(code: &Code, q: &BitVec, update: &QubitOperator, basis: &[BitVec]) -> Result<Vec<BitVec>> {
    if q.len() != code.modes() {
        return Err(Error::dim("check_update_demand q", code.modes(), q.len()));
    }
    basis
        .par_iter()
        .filter_map(|nu| {
            let target = code.encode_unchecked(&nu.xor(q));
            let got = match apply_qubit_operator(update, &QubitState::basis(code.encode_unchecked(nu))) {
                Ok(s) => s,
                Err(e) => return Some(Err(e)),
            };
            let expected = QubitState::basis(target);
            (got.max_difference(&expected) > EQUIVALENCE_TOL).then(|| Ok(nu.clone()))
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct AnticommutationReport {
    pub modes: usize,
    pub checks: usize,
    pub max_deviation: f64,
    pub failures: Vec<String>,
}

impl AnticommutationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Builds every transformed single operator of a full-Fock linear code and
/// checks `{c_i, c†_j} = δ_ij`, `{c_i, c_j} = 0` and `{c†_i, c†_j} = 0` as
/// operator identities.
pub fn verify_anticommutation(code: &Code) -> Result<AnticommutationReport> {
    let modes = code.modes();
    if code.qubits() != modes {
        return Err(Error::Unsupported(format!(
            "code {} saves qubits; single operators are not defined",
            code.label()
        )));
    }
    let create: Vec<QubitOperator> = (1..=modes)
        .map(|j| transform_op_linear(code, j, true))
        .collect::<Result<_>>()?;
    let annihilate: Vec<QubitOperator> = (1..=modes)
        .map(|j| transform_op_linear(code, j, false))
        .collect::<Result<_>>()?;
    let zero = QubitOperator::zero(modes);
    let identity = QubitOperator::identity(modes);
    let mut report = AnticommutationReport {
        modes,
        checks: 0,
        max_deviation: 0.0,
        failures: Vec::new(),
    };
    for i in 0..modes {
        for j in 0..modes {
            let cases = [
                ("{c_i, c†_j}", &annihilate[i], &create[j], if i == j { &identity } else { &zero }),
                ("{c_i, c_j}", &annihilate[i], &annihilate[j], &zero),
                ("{c†_i, c†_j}", &create[i], &create[j], &zero),
            ];
            for (name, a, b, expected) in cases {
                let dev = a.anticommutator(b)?.max_difference(expected);
                report.checks += 1;
                report.max_deviation = report.max_deviation.max(dev);
                if dev > EQUIVALENCE_TOL {
                    report.failures.push(format!("{name} with i={}, j={}: deviation {dev:.3e}", i + 1, j + 1));
                }
            }
        }
    }
    Ok(report)
}
