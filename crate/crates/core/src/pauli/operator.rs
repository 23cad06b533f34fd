use std::collections::hash_map::{DefaultHasher, Entry};
use std::collections::HashMap;
use std::fmt;
use std::hash::BuildHasherDefault;

use num_complex::Complex64;

use super::string::PauliString;
use crate::error::{Error, Result};

/// Default magnitude below which coefficients are dropped.
pub const DEFAULT_EPSILON: f64 = 1e-12;

/// Hasher with fixed keys, so that iteration order (and with it the order of
/// floating-point sums) is identical from run to run.
pub(crate) type FixedState = BuildHasherDefault<DefaultHasher>;
pub(crate) type FixedMap<K, V> = HashMap<K, V, FixedState>;

/// Sparse linear combination of Pauli strings with complex coefficients.
#[derive(Clone)]
pub struct QubitOperator {
    n: usize,
    terms: FixedMap<PauliString, Complex64>,
    epsilon: f64,
}

/// Term and gate counts of an operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct OpStats {
    /// Stored strings, the identity included.
    pub terms: usize,
    /// Stored strings other than the identity.
    pub terms_without_identity: usize,
    /// Sum of string weights.
    pub gates: usize,
}

impl fmt::Display for OpStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "terms={} gates={}", self.terms, self.gates)
    }
}

/// Outcome of a hermiticity check.
#[derive(Clone, Debug, PartialEq)]
pub struct HermiticityReport {
    pub hermitian: bool,
    /// String with the largest imaginary coefficient, if any exceeds the
    /// tolerance.
    pub witness: Option<(PauliString, Complex64)>,
}

impl QubitOperator {
    pub fn zero(n: usize) -> Self {
        QubitOperator {
            n,
            terms: FixedMap::default(),
            epsilon: DEFAULT_EPSILON,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_term(PauliString::identity(n), Complex64::new(1.0, 0.0))
    }

    pub fn from_term(string: PauliString, coeff: Complex64) -> Self {
        let mut op = Self::zero(string.num_qubits());
        op.add_term(string, coeff);
        op.prune();
        op
    }

    pub fn from_terms<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (PauliString, Complex64)>,
    {
        let mut op = Self::zero(n);
        for (s, c) in terms {
            if s.num_qubits() != n {
                return Err(Error::dim("QubitOperator::from_terms", n, s.num_qubits()));
            }
            op.add_term(s, c);
        }
        op.prune();
        Ok(op)
    }

    pub fn with_epsilon(mut self, epsilon: f64) -> Self {
        self.epsilon = epsilon;
        self.prune();
        self
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
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

    /// Accumulates `coeff * string` without pruning.
    pub fn add_term(&mut self, string: PauliString, coeff: Complex64) {
        debug_assert_eq!(string.num_qubits(), self.n);
        match self.terms.entry(string) {
            Entry::Occupied(mut e) => *e.get_mut() += coeff,
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
        }
    }

    /// Drops every coefficient with magnitude at most the pruning threshold.
    pub fn prune(&mut self) {
        let eps = self.epsilon;
        self.terms.retain(|_, c| c.norm() > eps);
    }

    pub fn coeff(&self, string: &PauliString) -> Complex64 {
        self.terms.get(string).copied().unwrap_or_default()
    }

    /// Terms in unspecified (but run-to-run stable) order.
    pub fn iter(&self) -> impl Iterator<Item = (&PauliString, &Complex64)> {
        self.terms.iter()
    }

    /// Terms in canonical order.
    pub fn sorted_terms(&self) -> Vec<(&PauliString, Complex64)> {
        let mut v: Vec<_> = self.terms.iter().map(|(s, c)| (s, *c)).collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v
    }

    fn check_dims(&self, other: &QubitOperator, context: &'static str) -> Result<()> {
        if self.n != other.n {
            return Err(Error::dim(context, self.n, other.n));
        }
        Ok(())
    }

    pub fn add(&self, other: &QubitOperator) -> Result<QubitOperator> {
        let mut out = self.clone();
        out.add_assign(other)?;
        Ok(out)
    }

    pub fn add_assign(&mut self, other: &QubitOperator) -> Result<()> {
        self.check_dims(other, "QubitOperator::add")?;
        for (s, c) in &other.terms {
            self.add_term(s.clone(), *c);
        }
        self.prune();
        Ok(())
    }

    pub fn sub(&self, other: &QubitOperator) -> Result<QubitOperator> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, factor: Complex64) -> QubitOperator {
        let mut out = QubitOperator {
            n: self.n,
            terms: self.terms.iter().map(|(s, c)| (s.clone(), c * factor)).collect(),
            epsilon: self.epsilon,
        };
        out.prune();
        out
    }

    /// Operator product `self * other` (`other` acts first).
    pub fn mul(&self, other: &QubitOperator) -> Result<QubitOperator> {
        self.check_dims(other, "QubitOperator::mul")?;
        let mut out = QubitOperator::zero(self.n);
        out.epsilon = self.epsilon;
        let mut left: Vec<_> = self.terms.iter().collect();
        let mut right: Vec<_> = other.terms.iter().collect();
        // Fixed traversal order keeps the floating-point sums reproducible.
        left.sort_by(|a, b| a.0.cmp(b.0));
        right.sort_by(|a, b| a.0.cmp(b.0));
        for (s1, c1) in &left {
            for (s2, c2) in &right {
                let (phase, s) = s1.mul(s2);
                out.add_term(s, *c1 * *c2 * phase.to_complex());
            }
        }
        out.prune();
        Ok(out)
    }

    /// `self * other + other * self`.
    pub fn anticommutator(&self, other: &QubitOperator) -> Result<QubitOperator> {
        self.mul(other)?.add(&other.mul(self)?)
    }

    /// Conjugate transpose. Pauli strings are self-adjoint, so only the
    /// coefficients change.
    pub fn adjoint(&self) -> QubitOperator {
        QubitOperator {
            n: self.n,
            terms: self.terms.iter().map(|(s, c)| (s.clone(), c.conj())).collect(),
            epsilon: self.epsilon,
        }
    }

    /// Largest coefficient difference between two operators.
    pub fn max_difference(&self, other: &QubitOperator) -> f64 {
        let mut worst: f64 = 0.0;
        for (s, c) in &self.terms {
            worst = worst.max((c - other.coeff(s)).norm());
        }
        for (s, c) in &other.terms {
            if !self.terms.contains_key(s) {
                worst = worst.max(c.norm());
            }
        }
        worst
    }

    pub fn approx_eq(&self, other: &QubitOperator, tol: f64) -> bool {
        self.n == other.n && self.max_difference(other) <= tol
    }

    /// Hermitian iff every coefficient is real within `tol`.
    pub fn check_hermitian(&self, tol: f64) -> HermiticityReport {
        let witness = self
            .sorted_terms()
            .into_iter()
            .filter(|(_, c)| c.im.abs() > tol)
            .max_by(|a, b| a.1.im.abs().total_cmp(&b.1.im.abs()))
            .map(|(s, c)| (s.clone(), c));
        HermiticityReport {
            hermitian: witness.is_none(),
            witness,
        }
    }

    /// Errors with [`Error::NonHermitian`] unless the operator is hermitian.
    pub fn require_hermitian(&self, tol: f64) -> Result<()> {
        match self.check_hermitian(tol).witness {
            None => Ok(()),
            Some((s, c)) => Err(Error::NonHermitian {
                witness: s.to_string(),
                coeff: format!("{c}"),
            }),
        }
    }

    /// Drops imaginary parts, for operators already known to be hermitian.
    pub fn real_part(&self) -> QubitOperator {
        let mut out = QubitOperator {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(s, c)| (s.clone(), Complex64::new(c.re, 0.0)))
                .collect(),
            epsilon: self.epsilon,
        };
        out.prune();
        out
    }

    pub fn count_stats(&self) -> OpStats {
        let has_identity = self.terms.keys().any(PauliString::is_identity);
        OpStats {
            terms: self.terms.len(),
            terms_without_identity: self.terms.len() - usize::from(has_identity),
            gates: self.terms.keys().map(PauliString::weight).sum(),
        }
    }

    /// Dense `2^n x 2^n` matrix, row-major, with qubit 1 as the least
    /// significant bit of the basis index.
    pub fn to_dense(&self) -> Result<Vec<Complex64>> {
        if self.n > 14 {
            return Err(Error::budget(format!("dense matrix on {} qubits", self.n), 14));
        }
        let dim = 1usize << self.n;
        let mut m = vec![Complex64::default(); dim * dim];
        for (s, c) in &self.terms {
            let flip = s.x_mask().to_u64() as usize;
            let zmask = s.z_mask().to_u64();
            let y_phase = super::string::Phase::from_power(s.y_count() as i64).to_complex();
            for col in 0..dim {
                let row = col ^ flip;
                let sign = if (zmask & col as u64).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
                m[row * dim + col] += c * y_phase * sign;
            }
        }
        Ok(m)
    }

    /// Serializes as one `<re> <im> <string>` line per term in canonical
    /// order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (s, c) in self.sorted_terms() {
            out.push_str(&format!("{} {} {}\n", fmt_coeff(c.re), fmt_coeff(c.im), s));
        }
        out
    }

    /// Parses the text form. With `n = None` the qubit count is the largest
    /// index that appears.
    pub fn parse_text(text: &str, n: Option<usize>) -> Result<QubitOperator> {
        let mut rows = Vec::new();
        for (k, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parse_err = |message: String| Error::Parse {
                line: k + 1,
                message,
            };
            let fields: Vec<&str> = line.split_whitespace().collect();
            let [re, im, string] = fields[..] else {
                return Err(parse_err(format!("expected '<re> <im> <string>', found {line:?}")));
            };
            let re: f64 = re.parse().map_err(|_| parse_err(format!("bad number {re:?}")))?;
            let im: f64 = im.parse().map_err(|_| parse_err(format!("bad number {im:?}")))?;
            rows.push((k + 1, Complex64::new(re, im), string.to_string()));
        }
        let n = match n {
            Some(n) => n,
            None => rows
                .iter()
                .flat_map(|(_, _, s)| {
                    s.split('*')
                        .filter_map(|f| f.get(1..).and_then(|d| d.parse::<usize>().ok()))
                        .collect::<Vec<_>>()
                })
                .max()
                .unwrap_or(0),
        };
        let mut op = QubitOperator::zero(n);
        for (line, c, s) in rows {
            let string = PauliString::parse(&s, n).map_err(|e| Error::Parse {
                line,
                message: e.to_string(),
            })?;
            op.add_term(string, c);
        }
        op.prune();
        Ok(op)
    }
}

/// Fixed 15-significant-digit scientific form; negative zero prints as zero.
fn fmt_coeff(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.14e}")
}

impl PartialEq for QubitOperator {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.terms == other.terms
    }
}

impl fmt::Debug for QubitOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .sorted_terms()
            .into_iter()
            .map(|(s, c)| format!("({}{:+}i) {}", c.re, c.im, s))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Sum of two operators.
pub fn op_add(a: &QubitOperator, b: &QubitOperator) -> Result<QubitOperator> {
    a.add(b)
}

/// Product of two operators, `b` acting first.
pub fn op_mul(a: &QubitOperator, b: &QubitOperator) -> Result<QubitOperator> {
    a.mul(b)
}

pub fn op_scale(a: &QubitOperator, factor: Complex64) -> QubitOperator {
    a.scale(factor)
}

pub fn count_stats(op: &QubitOperator) -> OpStats {
    op.count_stats()
}

pub fn check_hermitian(op: &QubitOperator, tol: f64) -> HermiticityReport {
    op.check_hermitian(tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn op(n: usize, terms: &[(f64, f64, &str)]) -> QubitOperator {
        QubitOperator::from_terms(
            n,
            terms
                .iter()
                .map(|&(re, im, s)| (PauliString::parse(s, n).unwrap(), c(re, im))),
        )
        .unwrap()
    }

    #[test]
    fn cancellation_and_projectors() {
        let h = op(2, &[(0.5, 0.0, "X1*Z2"), (1.0, 0.0, "I")]);
        assert!(h.add(&h.scale(c(-1.0, 0.0))).unwrap().is_empty());

        let down = op(1, &[(0.5, 0.0, "I"), (-0.5, 0.0, "Z1")]);
        let up = op(1, &[(0.5, 0.0, "I"), (0.5, 0.0, "Z1")]);
        assert_eq!(down.mul(&down).unwrap(), down);
        assert!(up.mul(&down).unwrap().is_empty());
    }

    #[test]
    fn stats_and_hermiticity() {
        let down = op(1, &[(0.5, 0.0, "I"), (-0.5, 0.0, "Z1")]);
        let s = down.count_stats();
        assert_eq!((s.terms, s.gates, s.terms_without_identity), (2, 1, 1));
        assert_eq!(QubitOperator::zero(3).count_stats().terms, 0);
        assert!(down.check_hermitian(1e-12).hermitian);

        let ix = op(1, &[(0.0, 1.0, "X1")]);
        let report = ix.check_hermitian(1e-12);
        assert!(!report.hermitian);
        assert_eq!(report.witness.unwrap().0.to_string(), "X1");
        assert!(matches!(ix.require_hermitian(1e-12), Err(Error::NonHermitian { .. })));
    }

    #[test]
    fn text_round_trip_is_canonical() {
        let h = op(3, &[(-0.25, 0.0, "Z1*Z3"), (1.5, -0.0, "I"), (0.1, 0.2, "Y2")]);
        let text = h.to_text();
        assert_eq!(
            text,
            "1.50000000000000e0 0.00000000000000e0 I\n\
             1.00000000000000e-1 2.00000000000000e-1 Y2\n\
             -2.50000000000000e-1 0.00000000000000e0 Z1*Z3\n"
        );
        let back = QubitOperator::parse_text(&text, Some(3)).unwrap();
        assert_eq!(back.to_text(), text);
        assert_eq!(QubitOperator::parse_text(&text, None).unwrap().num_qubits(), 3);
        assert!(matches!(
            QubitOperator::parse_text("1 0\n", Some(1)),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn dense_matrix_of_y() {
        let m = op(1, &[(1.0, 0.0, "Y1")]).to_dense().unwrap();
        // Y|0> = i|1>: column 0 has i in row 1.
        assert_eq!(m, vec![c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)]);
    }

    #[test]
    fn dimension_mismatch() {
        assert!(QubitOperator::identity(2).mul(&QubitOperator::identity(3)).is_err());
    }
}
