use std::fmt;

use super::BitVec;
use crate::error::{Error, Result};

/// Dense matrix over GF(2), stored row by row. Entries are addressed
/// `(i, j)` with 1-based row and column.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMat {
    cols: usize,
    rows: Vec<BitVec>,
}

impl BitMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMat {
            cols,
            rows: vec![BitVec::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 1..=n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(rows: Vec<BitVec>) -> Result<Self> {
        let cols = rows.first().map_or(0, BitVec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::dim("BitMat::from_rows", cols, bad.len()));
        }
        Ok(BitMat { cols, rows })
    }

    /// Parses rows given as `0`/`1` strings.
    pub fn from_strs(rows: &[&str]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.parse()).collect::<Result<_>>()?)
    }

    /// Matrix with `A_ij = 1` iff `i > j`: the step function that counts the
    /// modes below `i`.
    pub fn strict_lower(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 1..=n {
            for j in 1..i {
                m.set(i, j, true);
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i - 1].bit(j)
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.rows[i - 1].set(j, value);
    }

    pub fn row(&self, i: usize) -> &BitVec {
        &self.rows[i - 1]
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn column(&self, j: usize) -> BitVec {
        let mut c = BitVec::zeros(self.nrows());
        for (i, r) in self.rows.iter().enumerate() {
            if r.bit(j) {
                c.set(i + 1, true);
            }
        }
        c
    }

    pub fn transpose(&self) -> BitMat {
        let mut t = BitMat::zeros(self.cols, self.nrows());
        for (i, r) in self.rows.iter().enumerate() {
            for j in r.ones_iter() {
                t.set(j, i + 1, true);
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &BitVec) -> Result<BitVec> {
        if v.len() != self.cols {
            return Err(Error::dim("BitMat::mul_vec", self.cols, v.len()));
        }
        let mut out = BitVec::zeros(self.nrows());
        for (i, r) in self.rows.iter().enumerate() {
            if r.dot(v) {
                out.set(i + 1, true);
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &BitMat) -> Result<BitMat> {
        if other.nrows() != self.cols {
            return Err(Error::dim("BitMat::mul", self.cols, other.nrows()));
        }
        let mut out = BitMat::zeros(self.nrows(), other.cols);
        for (i, r) in self.rows.iter().enumerate() {
            let mut acc = BitVec::zeros(other.cols);
            for k in r.ones_iter() {
                acc.xor_assign(other.row(k));
            }
            out.rows[i] = acc;
        }
        Ok(out)
    }

    pub fn is_identity(&self) -> bool {
        self.nrows() == self.cols && *self == BitMat::identity(self.cols)
    }

    /// Gauss-Jordan inverse over GF(2).
    pub fn inverse(&self) -> Result<BitMat> {
        let n = self.nrows();
        if self.cols != n {
            return Err(Error::dim("BitMat::inverse (square)", n, self.cols));
        }
        let mut a = self.rows.clone();
        let mut inv = BitMat::identity(n).rows;
        for col in 1..=n {
            let pivot = (col - 1..n)
                .find(|&r| a[r].bit(col))
                .ok_or(Error::NotInvertible)?;
            a.swap(col - 1, pivot);
            inv.swap(col - 1, pivot);
            let (pa, pi) = (a[col - 1].clone(), inv[col - 1].clone());
            for r in 0..n {
                if r != col - 1 && a[r].bit(col) {
                    a[r].xor_assign(&pa);
                    inv[r].xor_assign(&pi);
                }
            }
        }
        Ok(BitMat { cols: n, rows: inv })
    }
}

/// Free-function form of [`BitMat::inverse`].
pub fn mat_inverse_mod2(a: &BitMat) -> Result<BitMat> {
    a.inverse()
}

impl fmt::Display for BitMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMat[")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lower_ones(n: usize) -> BitMat {
        let mut m = BitMat::zeros(n, n);
        for i in 1..=n {
            for j in 1..=i {
                m.set(i, j, true);
            }
        }
        m
    }

    #[test]
    fn identity_inverts_to_itself() {
        assert!(BitMat::identity(5).inverse().unwrap().is_identity());
    }

    #[test]
    fn lower_triangular_ones_inverts_to_bidiagonal() {
        let inv = lower_ones(4).inverse().unwrap();
        let expected = BitMat::from_strs(&["1000", "1100", "0110", "0011"]).unwrap();
        assert_eq!(inv, expected);
    }

    #[test]
    fn singular_matrix_is_rejected() {
        assert!(matches!(
            BitMat::zeros(2, 2).inverse(),
            Err(Error::NotInvertible)
        ));
    }

    #[test]
    fn non_square_is_rejected() {
        assert!(matches!(
            BitMat::zeros(2, 3).inverse(),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn mul_vec_reduces_mod_two() {
        let a = lower_ones(2);
        let v: BitVec = "10".parse().unwrap();
        assert_eq!(a.mul_vec(&v).unwrap().to_string(), "11");
    }

    #[test]
    fn transpose_of_column() {
        let a = BitMat::from_strs(&["110", "011"]).unwrap();
        assert_eq!(a.transpose().row(2).to_string(), "11");
        assert_eq!(a.column(3).to_string(), "01");
    }
}
