use std::cmp::Ordering;
use std::fmt;

use num_complex::Complex64;

use crate::bitmath::BitVec;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    X,
    Y,
    Z,
}

impl Letter {
    fn bits(self) -> (bool, bool) {
        match self {
            Letter::X => (true, false),
            Letter::Y => (true, true),
            Letter::Z => (false, true),
        }
    }

    fn from_bits(x: bool, z: bool) -> Option<Letter> {
        match (x, z) {
            (true, false) => Some(Letter::X),
            (true, true) => Some(Letter::Y),
            (false, true) => Some(Letter::Z),
            (false, false) => None,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Letter::X => "X",
            Letter::Y => "Y",
            Letter::Z => "Z",
        })
    }
}

/// A power of `i`: the phases `1, i, -1, -i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn from_power(k: i64) -> Phase {
        Phase(k.rem_euclid(4) as u8)
    }

    pub fn power(self) -> u8 {
        self.0
    }

    pub fn to_complex(self) -> Complex64 {
        match self.0 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    }

    pub fn times(self, other: Phase) -> Phase {
        Phase((self.0 + other.0) % 4)
    }
}

/// Tensor product of single-qubit Paulis on `n` qubits, stored in symplectic
/// form: qubit `j` carries `X` for `(x_j, z_j) = (1, 0)`, `Z` for `(0, 1)` and
/// `Y` for `(1, 1)`. As an operator the string equals `i^{x.z} X^x Z^z`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    x: BitVec,
    z: BitVec,
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        PauliString {
            x: BitVec::zeros(n),
            z: BitVec::zeros(n),
        }
    }

    pub fn from_xz(x: BitVec, z: BitVec) -> Self {
        assert_eq!(x.len(), z.len(), "x and z masks differ in length");
        PauliString { x, z }
    }

    /// `X` on every qubit set in `mask`.
    pub fn x_string(mask: BitVec) -> Self {
        let n = mask.len();
        PauliString {
            x: mask,
            z: BitVec::zeros(n),
        }
    }

    /// `Z` on every qubit set in `mask`.
    pub fn z_string(mask: BitVec) -> Self {
        let n = mask.len();
        PauliString {
            x: BitVec::zeros(n),
            z: mask,
        }
    }

    pub fn single(n: usize, j: usize, letter: Letter) -> Self {
        Self::from_factors(n, &[(j, letter)]).expect("qubit index in range")
    }

    pub fn from_factors(n: usize, factors: &[(usize, Letter)]) -> Result<Self> {
        let mut s = Self::identity(n);
        for &(j, letter) in factors {
            if j == 0 || j > n {
                return Err(Error::IndexOutOfRange { index: j, len: n });
            }
            if s.letter(j).is_some() {
                return Err(Error::Input(format!("qubit {j} appears twice")));
            }
            let (xb, zb) = letter.bits();
            s.x.set(j, xb);
            s.z.set(j, zb);
        }
        Ok(s)
    }

    /// Parses `I` or a `*`-joined factor list such as `X1*Z3*Y4`.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let text = text.trim();
        if text == "I" {
            return Ok(Self::identity(n));
        }
        let mut factors = Vec::new();
        for f in text.split('*') {
            let mut chars = f.chars();
            let letter = match chars.next() {
                Some('X') => Letter::X,
                Some('Y') => Letter::Y,
                Some('Z') => Letter::Z,
                _ => return Err(Error::Input(format!("bad Pauli factor {f:?}"))),
            };
            let j: usize = chars
                .as_str()
                .parse()
                .map_err(|_| Error::Input(format!("bad qubit index in {f:?}")))?;
            factors.push((j, letter));
        }
        Self::from_factors(n, &factors)
    }

    pub fn num_qubits(&self) -> usize {
        self.x.len()
    }

    pub fn x_mask(&self) -> &BitVec {
        &self.x
    }

    pub fn z_mask(&self) -> &BitVec {
        &self.z
    }

    pub fn letter(&self, j: usize) -> Option<Letter> {
        Letter::from_bits(self.x.bit(j), self.z.bit(j))
    }

    pub fn support(&self) -> BitVec {
        self.x.or(&self.z)
    }

    pub fn weight(&self) -> usize {
        self.support().weight()
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    /// Non-identity factors in ascending qubit order.
    pub fn factors(&self) -> impl Iterator<Item = (usize, Letter)> + '_ {
        self.support()
            .ones_iter()
            .map(|j| (j, self.letter(j).expect("support position")))
            .collect::<Vec<_>>()
            .into_iter()
    }

    /// Number of `Y` factors, i.e. `x.z`.
    pub fn y_count(&self) -> usize {
        self.x.and_weight(&self.z)
    }

    /// `self * other` as `phase * string`, with `other` acting first.
    pub fn mul(&self, other: &PauliString) -> (Phase, PauliString) {
        // i^{x1.z1} X^x1 Z^z1 i^{x2.z2} X^x2 Z^z2
        //   = i^{x1.z1 + x2.z2} (-1)^{z1.x2} X^{x1+x2} Z^{z1+z2}
        let x = self.x.xor(&other.x);
        let z = self.z.xor(&other.z);
        let k = self.y_count() as i64 + other.y_count() as i64 - x.and_weight(&z) as i64
            + 2 * self.z.and_weight(&other.x) as i64;
        (Phase::from_power(k), PauliString { x, z })
    }

    /// Whether the two strings commute.
    pub fn commutes_with(&self, other: &PauliString) -> bool {
        (self.x.and_weight(&other.z) + self.z.and_weight(&other.x)).is_multiple_of(2)
    }

    /// Action on a computational basis state: `P|w> = phase |w xor x>`.
    pub fn apply(&self, omega: &BitVec) -> (Phase, BitVec) {
        let k = self.y_count() + 2 * self.z.and_weight(omega);
        (Phase::from_power(k as i64), omega.xor(&self.x))
    }
}

/// Product of two Pauli strings with its phase.
pub fn pauli_mul(a: &PauliString, b: &PauliString) -> (Phase, PauliString) {
    a.mul(b)
}

impl Ord for PauliString {
    /// Canonical order: by weight, then lexicographically by the
    /// `(qubit, letter)` factor lists with `X < Y < Z`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| self.factors().cmp(other.factors()))
    }
}

impl PartialOrd for PauliString {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("I");
        }
        for (k, (j, letter)) in self.factors().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            write!(f, "{letter}{j}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(s: &str, n: usize) -> PauliString {
        PauliString::parse(s, n).unwrap()
    }

    #[test]
    fn single_qubit_table() {
        assert_eq!(ps("X1", 1).mul(&ps("Z1", 1)), (Phase::MINUS_I, ps("Y1", 1)));
        assert_eq!(ps("Z1", 1).mul(&ps("X1", 1)), (Phase::I, ps("Y1", 1)));
        assert_eq!(ps("Z1", 1).mul(&ps("Z1", 1)), (Phase::ONE, ps("I", 1)));
        assert_eq!(ps("Y1", 1).mul(&ps("Y1", 1)), (Phase::ONE, ps("I", 1)));
        assert_eq!(ps("X1", 1).mul(&ps("Y1", 1)), (Phase::I, ps("Z1", 1)));
        assert_eq!(ps("Y1", 1).mul(&ps("Z1", 1)), (Phase::I, ps("X1", 1)));
    }

    #[test]
    fn two_qubit_phase() {
        assert_eq!(
            ps("X1*X2", 2).mul(&ps("Z1*Z2", 2)),
            (Phase::MINUS_ONE, ps("Y1*Y2", 2))
        );
    }

    #[test]
    fn text_round_trip() {
        let s = ps("Y4*X1*Z3", 4);
        assert_eq!(s.to_string(), "X1*Z3*Y4");
        assert_eq!(ps("I", 3).to_string(), "I");
        assert!(PauliString::parse("X5", 4).is_err());
        assert!(PauliString::parse("X1*Z1", 4).is_err());
        assert!(PauliString::parse("W1", 4).is_err());
    }

    #[test]
    fn basis_state_action() {
        let (p, w) = ps("Y1", 1).apply(&"0".parse().unwrap());
        assert_eq!((p, w.to_string()), (Phase::I, "1".to_string()));
        let (p, w) = ps("Y1", 1).apply(&"1".parse().unwrap());
        assert_eq!((p, w.to_string()), (Phase::MINUS_I, "0".to_string()));
        let (p, _) = ps("Z1", 2).apply(&"10".parse().unwrap());
        assert_eq!(p, Phase::MINUS_ONE);
    }

    #[test]
    fn canonical_order() {
        let mut v = [ps("Z1*Z2", 3), ps("Y1", 3), ps("X2", 3), ps("I", 3), ps("X1*Z3", 3), ps("X1", 3)];
        v.sort();
        let s: Vec<String> = v.iter().map(|p| p.to_string()).collect();
        assert_eq!(s, vec!["I", "X1", "Y1", "X2", "X1*Z3", "Z1*Z2"]);
    }
}
