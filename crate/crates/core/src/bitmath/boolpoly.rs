use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul};

use super::BitVec;
use crate::error::{Error, Result};

/// Default cap on the number of monomials any single polynomial operation may
/// produce.
pub const DEFAULT_MONOMIAL_BUDGET: usize = 1 << 20;

/// A product of distinct variables, stored as the mask of variables it uses.
/// The empty mask is the constant monomial `1`.
///
/// Monomials order by degree first, then lexicographically by their ascending
/// index lists.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(BitVec);

impl Monomial {
    pub fn one(num_vars: usize) -> Self {
        Monomial(BitVec::zeros(num_vars))
    }

    pub fn from_indices(num_vars: usize, vars: &[usize]) -> Result<Self> {
        let mut mask = BitVec::zeros(num_vars);
        for &v in vars {
            mask.try_set(v, true)?;
        }
        Ok(Monomial(mask))
    }

    pub fn mask(&self) -> &BitVec {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.weight()
    }

    /// Ascending 1-based variable indices.
    pub fn vars(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.ones_iter()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_zero()
    }

    /// Value of the monomial at `x`.
    #[inline]
    pub fn eval(&self, x: &BitVec) -> bool {
        self.0.is_subset_of(x)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            // Equal degree: the list holding the lowest differing index sorts first.
            match self.0.xor(&other.0).first_one() {
                None => Ordering::Equal,
                Some(j) if self.0.bit(j) => Ordering::Less,
                Some(_) => Ordering::Greater,
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for (k, v) in self.vars().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            write!(f, "x{v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Boolean function of `num_vars` inputs in algebraic normal form: an XOR of
/// AND-monomials. The monomial set is canonical, so equal functions compare
/// equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BoolPoly {
    num_vars: usize,
    monomials: BTreeSet<Monomial>,
}

fn toggle(set: &mut BTreeSet<Monomial>, m: Monomial) {
    if !set.remove(&m) {
        set.insert(m);
    }
}

impl BoolPoly {
    pub fn zero(num_vars: usize) -> Self {
        BoolPoly {
            num_vars,
            monomials: BTreeSet::new(),
        }
    }

    pub fn one(num_vars: usize) -> Self {
        Self::constant(num_vars, true)
    }

    pub fn constant(num_vars: usize, value: bool) -> Self {
        let mut p = Self::zero(num_vars);
        if value {
            p.monomials.insert(Monomial::one(num_vars));
        }
        p
    }

    /// The variable `x_i`. Panics if `i` is outside 1..=num_vars.
    pub fn var(num_vars: usize, i: usize) -> Self {
        let mut p = Self::zero(num_vars);
        p.monomials.insert(Monomial(BitVec::unit(num_vars, i)));
        p
    }

    /// Sum of the given monomials, each a list of variable indices. Repeated
    /// monomials cancel in pairs.
    pub fn from_monomials<I, M>(num_vars: usize, monomials: I) -> Result<Self>
    where
        I: IntoIterator<Item = M>,
        M: AsRef<[usize]>,
    {
        let mut p = Self::zero(num_vars);
        for m in monomials {
            toggle(&mut p.monomials, Monomial::from_indices(num_vars, m.as_ref())?);
        }
        Ok(p)
    }

    /// Linear function `c + sum_i row_i x_i`.
    pub fn affine(row: &BitVec, constant: bool) -> Self {
        let n = row.len();
        let mut p = Self::constant(n, constant);
        for i in row.ones_iter() {
            p.monomials.insert(Monomial(BitVec::unit(n, i)));
        }
        p
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.monomials.iter()
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn constant_term(&self) -> bool {
        self.monomials.contains(&Monomial::one(self.num_vars))
    }

    /// Constant value, if the polynomial has no variable monomials.
    pub fn as_constant(&self) -> Option<bool> {
        match self.monomials.len() {
            0 => Some(false),
            1 if self.constant_term() => Some(true),
            _ => None,
        }
    }

    pub fn degree(&self) -> usize {
        self.monomials.iter().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn is_affine(&self) -> bool {
        self.degree() <= 1
    }

    /// Coefficients of the degree-one monomials.
    pub fn linear_part(&self) -> BitVec {
        let mut v = BitVec::zeros(self.num_vars);
        for m in self.monomials.iter().filter(|m| m.degree() == 1) {
            v.xor_assign(m.mask());
        }
        v
    }

    /// Variables appearing in any monomial.
    pub fn support(&self) -> BitVec {
        let mut v = BitVec::zeros(self.num_vars);
        for m in &self.monomials {
            v = v.or(m.mask());
        }
        v
    }

    pub fn eval(&self, x: &BitVec) -> Result<bool> {
        if x.len() != self.num_vars {
            return Err(Error::dim("BoolPoly::eval", self.num_vars, x.len()));
        }
        Ok(self.eval_unchecked(x))
    }

    /// Evaluation without the length check.
    #[inline]
    pub fn eval_unchecked(&self, x: &BitVec) -> bool {
        self.monomials.iter().filter(|m| m.eval(x)).count() & 1 == 1
    }

    fn same_vars(&self, other: &BoolPoly, context: &'static str) -> Result<()> {
        if self.num_vars != other.num_vars {
            Err(Error::dim(context, self.num_vars, other.num_vars))
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, other: &BoolPoly) -> Result<BoolPoly> {
        self.same_vars(other, "BoolPoly::add")?;
        let mut out = self.clone();
        for m in &other.monomials {
            toggle(&mut out.monomials, m.clone());
        }
        Ok(out)
    }

    pub fn add_assign(&mut self, other: &BoolPoly) {
        assert_eq!(self.num_vars, other.num_vars, "BoolPoly variable count mismatch");
        for m in &other.monomials {
            toggle(&mut self.monomials, m.clone());
        }
    }

    /// Adds the constant `1` when `flag` is set.
    pub fn add_constant(&mut self, flag: bool) {
        if flag {
            toggle(&mut self.monomials, Monomial::one(self.num_vars));
        }
    }

    pub fn checked_mul(&self, other: &BoolPoly, budget: usize) -> Result<BoolPoly> {
        self.same_vars(other, "BoolPoly::mul")?;
        let mut out = BTreeSet::new();
        for a in &self.monomials {
            for b in &other.monomials {
                toggle(&mut out, Monomial(a.0.or(&b.0)));
            }
            if out.len() > budget {
                return Err(Error::budget("polynomial product", budget));
            }
        }
        Ok(BoolPoly {
            num_vars: self.num_vars,
            monomials: out,
        })
    }

    /// Substitutes `subs[i-1]` for variable `x_i` and reduces to ANF.
    pub fn compose(&self, subs: &[BoolPoly], budget: usize) -> Result<BoolPoly> {
        if subs.len() != self.num_vars {
            return Err(Error::dim("BoolPoly::compose", self.num_vars, subs.len()));
        }
        let k = subs.first().map_or(0, BoolPoly::num_vars);
        if let Some(bad) = subs.iter().find(|s| s.num_vars != k) {
            return Err(Error::dim("BoolPoly::compose substitutions", k, bad.num_vars));
        }
        let mut out = BoolPoly::zero(k);
        for m in &self.monomials {
            let mut term = BoolPoly::one(k);
            for v in m.vars() {
                term = term.checked_mul(&subs[v - 1], budget)?;
                if term.is_zero() {
                    break;
                }
            }
            out.add_assign(&term);
            if out.len() > budget {
                return Err(Error::budget("polynomial composition", budget));
            }
        }
        Ok(out)
    }

    /// Re-expresses the polynomial over `num_vars` variables with every index
    /// shifted up by `offset`.
    pub fn embed(&self, num_vars: usize, offset: usize) -> BoolPoly {
        assert!(offset + self.num_vars <= num_vars, "embedding does not fit");
        let monomials = self
            .monomials
            .iter()
            .map(|m| {
                let mut mask = BitVec::zeros(num_vars);
                for v in m.vars() {
                    mask.set(v + offset, true);
                }
                Monomial(mask)
            })
            .collect();
        BoolPoly {
            num_vars,
            monomials,
        }
    }

    /// Values on all `2^n` inputs; entry `k` is the value at
    /// `BitVec::from_u64(n, k)`.
    pub fn truth_table(&self) -> Vec<bool> {
        assert!(self.num_vars <= 26, "truth table too large");
        (0..1u64 << self.num_vars)
            .map(|k| self.eval_unchecked(&BitVec::from_u64(self.num_vars, k)))
            .collect()
    }

    /// Interpolates the ANF of a function from its truth table (binary Moebius
    /// transform). `table[k]` is the value at `BitVec::from_u64(n, k)`.
    pub fn from_truth_table(num_vars: usize, table: &[bool]) -> Result<BoolPoly> {
        if table.len() != 1usize << num_vars {
            return Err(Error::dim("BoolPoly::from_truth_table", 1 << num_vars, table.len()));
        }
        let mut coeffs = table.to_vec();
        for bit in 0..num_vars {
            let step = 1usize << bit;
            for k in 0..coeffs.len() {
                if k & step != 0 {
                    coeffs[k] ^= coeffs[k ^ step];
                }
            }
        }
        let monomials = coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c)
            .map(|(k, _)| Monomial(BitVec::from_u64(num_vars, k as u64)))
            .collect();
        Ok(BoolPoly {
            num_vars,
            monomials,
        })
    }

    /// Parses the text form, e.g. `x1*x2+x3+1`. Whitespace is ignored.
    pub fn parse(text: &str, num_vars: usize) -> Result<BoolPoly> {
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(Error::Input("empty polynomial text".into()));
        }
        if cleaned == "0" {
            return Ok(BoolPoly::zero(num_vars));
        }
        let mut p = BoolPoly::zero(num_vars);
        for mono in cleaned.split('+') {
            let mut vars = Vec::new();
            for factor in mono.split('*') {
                match factor {
                    "1" => {}
                    f if f.starts_with('x') => {
                        let v: usize = f[1..].parse().map_err(|_| {
                            Error::Input(format!("bad variable {f:?} in {text:?}"))
                        })?;
                        if v == 0 || v > num_vars {
                            return Err(Error::Input(format!(
                                "variable x{v} outside x1..x{num_vars} in {text:?}"
                            )));
                        }
                        vars.push(v);
                    }
                    f => {
                        return Err(Error::Input(format!("bad factor {f:?} in {text:?}")));
                    }
                }
            }
            toggle(&mut p.monomials, Monomial::from_indices(num_vars, &vars)?);
        }
        Ok(p)
    }
}

impl fmt::Display for BoolPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.monomials.is_empty() {
            return f.write_str("0");
        }
        // Lexicographic in the ascending index lists, constant last: `x1*x2+x3+1`.
        let mut terms: Vec<Vec<usize>> = self
            .monomials
            .iter()
            .filter(|m| !m.is_one())
            .map(|m| m.vars().collect())
            .collect();
        terms.sort();
        let mut parts: Vec<String> = terms
            .iter()
            .map(|t| t.iter().map(|v| format!("x{v}")).collect::<Vec<_>>().join("*"))
            .collect();
        if self.constant_term() {
            parts.push("1".into());
        }
        f.write_str(&parts.join("+"))?;
        Ok(())
    }
}

impl fmt::Debug for BoolPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BoolPoly[{}]({self})", self.num_vars)
    }
}

impl Add for &BoolPoly {
    type Output = BoolPoly;

    fn add(self, rhs: &BoolPoly) -> BoolPoly {
        self.checked_add(rhs).expect("BoolPoly addition")
    }
}

impl Mul for &BoolPoly {
    type Output = BoolPoly;

    fn mul(self, rhs: &BoolPoly) -> BoolPoly {
        self.checked_mul(rhs, DEFAULT_MONOMIAL_BUDGET)
            .expect("BoolPoly multiplication")
    }
}

/// Evaluates `p` at `x`.
pub fn bp_eval(p: &BoolPoly, x: &BitVec) -> Result<bool> {
    p.eval(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> BoolPoly {
        BoolPoly::parse(s, n).unwrap()
    }

    fn bits(s: &str) -> BitVec {
        s.parse().unwrap()
    }

    #[test]
    fn evaluation_examples() {
        assert!(p("1", 3).eval(&bits("010")).unwrap());
        assert!(p("1+x1+x1*x2", 2).eval(&bits("11")).unwrap());
        assert!(!p("x1*x2", 2).eval(&bits("10")).unwrap());
        assert!(p("x1", 2).eval(&bits("1")).is_err());
    }

    #[test]
    fn addition_cancels_mod_two() {
        assert!((&p("x1", 2) + &p("x1", 2)).is_zero());
        assert_eq!(&p("1", 2) + &p("x1", 2), p("x1+1", 2));
        assert_eq!(&p("x1+x2", 2) + &p("x2+x1*x2", 2), p("x1+x1*x2", 2));
        assert!(p("x1", 2).checked_add(&p("x1", 3)).is_err());
    }

    #[test]
    fn multiplication_is_idempotent_on_variables() {
        assert_eq!(&p("x1", 2) * &p("x1", 2), p("x1", 2));
        assert_eq!(&p("x1+x2", 2) * &p("x1", 2), p("x1+x1*x2", 2));
        assert_eq!(&p("1+x1", 2) * &p("1+x1", 2), p("1+x1", 2));
    }

    #[test]
    fn composition_examples() {
        let b = DEFAULT_MONOMIAL_BUDGET;
        assert_eq!(p("x1", 1).compose(&[p("x2+1", 2)], b).unwrap(), p("x2+1", 2));
        assert_eq!(
            p("x1*x2", 2).compose(&[p("x1", 1), p("x1", 1)], b).unwrap(),
            p("x1", 1)
        );
        assert_eq!(
            p("x1+x2", 2)
                .compose(&[p("x1*x2", 2), p("1+x1*x2", 2)], b)
                .unwrap(),
            p("1", 2)
        );
    }

    #[test]
    fn text_form_is_canonical() {
        assert_eq!(p("1+x3+x2*x1", 3).to_string(), "x1*x2+x3+1");
        assert_eq!(BoolPoly::zero(2).to_string(), "0");
        assert_eq!(BoolPoly::one(2).to_string(), "1");
        assert!(BoolPoly::parse("x4", 3).is_err());
        assert!(BoolPoly::parse("y1", 3).is_err());
    }

    #[test]
    fn budget_is_enforced() {
        let a = p("x1+x2+x3+x4", 8);
        let b = p("x5+x6+x7+x8", 8);
        assert!(matches!(a.checked_mul(&b, 10), Err(Error::Budget { .. })));
        assert_eq!(a.checked_mul(&b, 16).unwrap().len(), 16);
    }

    #[test]
    fn truth_table_round_trip() {
        let f = p("x1*x2*x3+x2+1", 3);
        assert_eq!(BoolPoly::from_truth_table(3, &f.truth_table()).unwrap(), f);
    }

    #[test]
    fn monomial_order_is_degree_then_indices() {
        let f = p("x2*x3+x1*x3+x1*x2+x4+x1", 4);
        let order: Vec<String> = f.monomials().map(|m| m.to_string()).collect();
        assert_eq!(order, vec!["x1", "x4", "x1*x2", "x1*x3", "x2*x3"]);
    }
}
