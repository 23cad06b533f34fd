use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A single creation (`dagger`) or annihilation operator on a 1-based mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FermionOp {
    pub mode: usize,
    pub dagger: bool,
}

impl FermionOp {
    pub fn create(mode: usize) -> Self {
        FermionOp { mode, dagger: true }
    }

    pub fn annihilate(mode: usize) -> Self {
        FermionOp { mode, dagger: false }
    }

    pub fn adjoint(self) -> Self {
        FermionOp {
            mode: self.mode,
            dagger: !self.dagger,
        }
    }
}

impl fmt::Display for FermionOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", if self.dagger { '+' } else { '-' }, self.mode)
    }
}

/// A weighted operator sequence, written left to right as in
/// `c†_1 c_2` (so the rightmost operator acts first).
#[derive(Clone, Debug, PartialEq)]
pub struct FermionTerm {
    pub coeff: Complex64,
    pub ops: Vec<FermionOp>,
}

impl FermionTerm {
    pub fn new(coeff: Complex64, ops: Vec<FermionOp>) -> Self {
        FermionTerm { coeff, ops }
    }

    pub fn real(coeff: f64, ops: Vec<FermionOp>) -> Self {
        Self::new(Complex64::new(coeff, 0.0), ops)
    }

    /// `coeff c†_i c_j`.
    pub fn hop(coeff: f64, i: usize, j: usize) -> Self {
        Self::real(coeff, vec![FermionOp::create(i), FermionOp::annihilate(j)])
    }

    /// `coeff n_i n_j` written as `c†_i c_i c†_j c_j`.
    pub fn density_density(coeff: f64, i: usize, j: usize) -> Self {
        Self::real(
            coeff,
            vec![
                FermionOp::create(i),
                FermionOp::annihilate(i),
                FermionOp::create(j),
                FermionOp::annihilate(j),
            ],
        )
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn max_mode(&self) -> usize {
        self.ops.iter().map(|o| o.mode).max().unwrap_or(0)
    }

    pub fn adjoint(&self) -> FermionTerm {
        FermionTerm {
            coeff: self.coeff.conj(),
            ops: self.ops.iter().rev().map(|o| o.adjoint()).collect(),
        }
    }

    /// Equal numbers of creation and annihilation operators.
    pub fn is_particle_conserving(&self) -> bool {
        let creators = self.ops.iter().filter(|o| o.dagger).count();
        2 * creators == self.ops.len()
    }

    /// Operators alternate creation/annihilation, starting with a creation.
    pub fn is_blocked(&self) -> bool {
        self.ops.len().is_multiple_of(2) && self.ops.iter().enumerate().all(|(k, o)| o.dagger == (k % 2 == 0))
    }

    /// Parses the part after the colon: whitespace-separated `+k` / `-k`.
    pub fn parse_ops(text: &str) -> Result<Vec<FermionOp>> {
        text.split_whitespace()
            .map(|tok| {
                let (dagger, rest) = match tok.as_bytes().first() {
                    Some(b'+') => (true, &tok[1..]),
                    Some(b'-') => (false, &tok[1..]),
                    _ => return Err(Error::Input(format!("operator {tok:?} must start with + or -"))),
                };
                let mode: usize = rest
                    .parse()
                    .map_err(|_| Error::Input(format!("bad mode in operator {tok:?}")))?;
                if mode == 0 {
                    return Err(Error::Input("modes are 1-based".into()));
                }
                Ok(FermionOp { mode, dagger })
            })
            .collect()
    }
}

impl fmt::Display for FermionTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} :", fmt_real(self.coeff.re), fmt_real(self.coeff.im))?;
        for op in &self.ops {
            write!(f, " {op}")?;
        }
        Ok(())
    }
}

fn fmt_real(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.14e}")
}

/// A sum of [`FermionTerm`]s on a fixed number of modes.
#[derive(Clone, Debug, PartialEq)]
pub struct FermionHamiltonian {
    modes: usize,
    terms: Vec<FermionTerm>,
}

impl FermionHamiltonian {
    pub fn new(modes: usize) -> Self {
        FermionHamiltonian {
            modes,
            terms: Vec::new(),
        }
    }

    pub fn from_terms(modes: usize, terms: Vec<FermionTerm>) -> Result<Self> {
        let mut h = Self::new(modes);
        for t in terms {
            h.push(t)?;
        }
        Ok(h)
    }

    pub fn push(&mut self, term: FermionTerm) -> Result<()> {
        if let Some(op) = term.ops.iter().find(|o| o.mode == 0 || o.mode > self.modes) {
            return Err(Error::IndexOutOfRange {
                index: op.mode,
                len: self.modes,
            });
        }
        self.terms.push(term);
        Ok(())
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn terms(&self) -> &[FermionTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adjoint of the sum, taken term by term.
    pub fn adjoint(&self) -> FermionHamiltonian {
        FermionHamiltonian {
            modes: self.modes,
            terms: self.terms.iter().map(FermionTerm::adjoint).collect(),
        }
    }

    /// One `<re> <im> : <op> ...` line per term.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for t in &self.terms {
            out.push_str(&t.to_string());
            out.push('\n');
        }
        out
    }

    /// Parses the text form; blank lines and `#` comments are skipped. With
    /// `modes = None` the mode count is the largest mode that appears.
    pub fn parse_text(text: &str, modes: Option<usize>) -> Result<FermionHamiltonian> {
        let mut terms = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| Error::Parse { line: k + 1, message };
            let (coeffs, ops) = line
                .split_once(':')
                .ok_or_else(|| err("expected '<re> <im> : <ops>'".into()))?;
            let nums: Vec<&str> = coeffs.split_whitespace().collect();
            let [re, im] = nums[..] else {
                return Err(err(format!("expected two coefficients, found {}", nums.len())));
            };
            let re: f64 = re.parse().map_err(|_| err(format!("bad number {re:?}")))?;
            let im: f64 = im.parse().map_err(|_| err(format!("bad number {im:?}")))?;
            let ops = FermionTerm::parse_ops(ops).map_err(|e| err(e.to_string()))?;
            terms.push((k + 1, FermionTerm::new(Complex64::new(re, im), ops)));
        }
        let modes = modes.unwrap_or_else(|| terms.iter().map(|(_, t)| t.max_mode()).max().unwrap_or(0));
        let mut h = FermionHamiltonian::new(modes);
        for (line, t) in terms {
            h.push(t).map_err(|e| Error::Parse {
                line,
                message: e.to_string(),
            })?;
        }
        Ok(h)
    }
}
