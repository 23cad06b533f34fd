use std::fmt;
use std::str::FromStr;

use smallvec::SmallVec;

use crate::error::{Error, Result};

type Words = SmallVec<[u64; 1]>;

fn word_count(len: usize) -> usize {
    len.div_ceil(64)
}

/// Fixed-length vector over GF(2). Components are addressed 1..=len.
///
/// Bit `j` lives in word `(j-1)/64` at position `(j-1)%64`, so for vectors of
/// up to 64 bits [`BitVec::to_u64`] reads component 1 as the least significant
/// bit.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    len: usize,
    words: Words,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: SmallVec::from_elem(0, word_count(len)),
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self::zeros(len);
        for w in v.words.iter_mut() {
            *w = u64::MAX;
        }
        v.clear_tail();
        v
    }

    /// The unit vector `u_j`.
    pub fn unit(len: usize, j: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(j, true);
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i + 1, true);
            }
        }
        v
    }

    /// Builds a vector with ones at the given 1-based positions.
    pub fn from_indices(len: usize, ones: &[usize]) -> Self {
        let mut v = Self::zeros(len);
        for &j in ones {
            v.set(j, true);
        }
        v
    }

    /// Component `j` is bit `j-1` of `value`. Requires `len <= 64`.
    pub fn from_u64(len: usize, value: u64) -> Self {
        assert!(len <= 64, "from_u64 needs len <= 64, got {len}");
        let mut v = Self::zeros(len);
        if len > 0 {
            v.words[0] = value;
            v.clear_tail();
        }
        v
    }

    /// Inverse of [`BitVec::from_u64`]. Requires `len <= 64`.
    pub fn to_u64(&self) -> u64 {
        assert!(self.len <= 64, "to_u64 needs len <= 64, got {}", self.len);
        self.words.first().copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    fn check(&self, j: usize) -> Result<()> {
        if j == 0 || j > self.len {
            Err(Error::IndexOutOfRange {
                index: j,
                len: self.len,
            })
        } else {
            Ok(())
        }
    }

    /// Component `j`, or `None` outside 1..=len.
    pub fn get(&self, j: usize) -> Option<bool> {
        self.check(j).ok()?;
        Some(self.bit_unchecked(j))
    }

    /// Component `j`. Panics outside 1..=len.
    pub fn bit(&self, j: usize) -> bool {
        if let Err(e) = self.check(j) {
            panic!("{e}");
        }
        self.bit_unchecked(j)
    }

    #[inline]
    fn bit_unchecked(&self, j: usize) -> bool {
        let k = j - 1;
        (self.words[k / 64] >> (k % 64)) & 1 == 1
    }

    /// Sets component `j`. Panics outside 1..=len.
    pub fn set(&mut self, j: usize, value: bool) {
        if let Err(e) = self.check(j) {
            panic!("{e}");
        }
        let k = j - 1;
        let mask = 1u64 << (k % 64);
        if value {
            self.words[k / 64] |= mask;
        } else {
            self.words[k / 64] &= !mask;
        }
    }

    /// Fallible variant of [`BitVec::set`].
    pub fn try_set(&mut self, j: usize, value: bool) -> Result<()> {
        self.check(j)?;
        self.set(j, value);
        Ok(())
    }

    pub fn flip(&mut self, j: usize) {
        let v = self.bit(j);
        self.set(j, !v);
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Parity of the components strictly below `j`, i.e. `sum_{i<j} v_i mod 2`.
    pub fn parity_below(&self, j: usize) -> bool {
        let k = j - 1;
        let full = k / 64;
        let mut ones = 0u32;
        for w in &self.words[..full] {
            ones += w.count_ones();
        }
        let rem = k % 64;
        if rem > 0 {
            ones += (self.words[full] & ((1u64 << rem) - 1)).count_ones();
        }
        ones & 1 == 1
    }

    fn same_len(&self, other: &BitVec) {
        assert_eq!(
            self.len, other.len,
            "bit vector length mismatch: {} vs {}",
            self.len, other.len
        );
    }

    pub fn xor(&self, other: &BitVec) -> BitVec {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        self.same_len(other);
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a ^= b;
        }
    }

    pub fn and(&self, other: &BitVec) -> BitVec {
        self.same_len(other);
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(other.words.iter()) {
            *a &= b;
        }
        out
    }

    pub fn or(&self, other: &BitVec) -> BitVec {
        self.same_len(other);
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(other.words.iter()) {
            *a |= b;
        }
        out
    }

    pub fn not(&self) -> BitVec {
        let mut out = self.clone();
        for w in out.words.iter_mut() {
            *w = !*w;
        }
        out.clear_tail();
        out
    }

    /// Number of positions set in both vectors.
    pub fn and_weight(&self, other: &BitVec) -> usize {
        self.same_len(other);
        self.words
            .iter()
            .zip(other.words.iter())
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &BitVec) -> bool {
        self.and_weight(other) & 1 == 1
    }

    /// True when every set bit of `self` is also set in `other`.
    pub fn is_subset_of(&self, other: &BitVec) -> bool {
        self.same_len(other);
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & !b == 0)
    }

    /// 1-based positions of the set bits, ascending.
    pub fn ones_iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let t = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(wi * 64 + t + 1)
                }
            })
        })
    }

    /// Lowest set position, if any.
    pub fn first_one(&self) -> Option<usize> {
        self.ones_iter().next()
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (1..=self.len).map(move |j| self.bit_unchecked(j))
    }

    /// `self ⊕ other` as a direct sum: the components of `other` follow.
    pub fn concat(&self, other: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.len + other.len);
        for j in self.ones_iter() {
            out.set(j, true);
        }
        for j in other.ones_iter() {
            out.set(self.len + j, true);
        }
        out
    }

    /// Components `start..start+len` (1-based start) as a new vector.
    pub fn slice(&self, start: usize, len: usize) -> BitVec {
        assert!(
            start >= 1 && start + len - 1 <= self.len || len == 0,
            "slice {start}+{len} out of range for length {}",
            self.len
        );
        let mut out = BitVec::zeros(len);
        for j in 1..=len {
            if self.bit_unchecked(start + j - 1) {
                out.set(j, true);
            }
        }
        out
    }

    /// Writes `part` into components `start..start+part.len()`.
    pub fn splice(&mut self, start: usize, part: &BitVec) {
        for j in 1..=part.len {
            self.set(start + j - 1, part.bit_unchecked(j));
        }
    }

    fn clear_tail(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    /// Ordering with component 1 as the most significant key, 0 before 1.
    pub fn cmp_lex(&self, other: &BitVec) -> std::cmp::Ordering {
        self.iter().cmp(other.iter())
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({self})")
    }
}

impl FromStr for BitVec {
    type Err = Error;

    /// Parses a string of `0`/`1` characters, component 1 first.
    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Input(format!("bad bit character {other:?} in {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BitVec::from_bools(&bits))
    }
}
