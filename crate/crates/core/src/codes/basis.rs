use std::fmt;

use crate::bitmath::BitVec;
use crate::error::{Error, Result};

/// Describes a set of occupation vectors: the modes are split into suits, and
/// each suit admits a list of particle numbers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisSpec {
    modes: usize,
    suits: Vec<Vec<usize>>,
    weights: Vec<Vec<usize>>,
}

impl BasisSpec {
    pub fn new(modes: usize, suits: Vec<Vec<usize>>, weights: Vec<Vec<usize>>) -> Result<Self> {
        if suits.len() != weights.len() {
            return Err(Error::dim("BasisSpec weights per suit", suits.len(), weights.len()));
        }
        let mut seen = vec![false; modes];
        for suit in &suits {
            for &m in suit {
                if m == 0 || m > modes {
                    return Err(Error::Input(format!("suit mode {m} outside 1..={modes}")));
                }
                if std::mem::replace(&mut seen[m - 1], true) {
                    return Err(Error::Input(format!("mode {m} appears in two suits")));
                }
            }
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::Input(format!("mode {} is in no suit", missing + 1)));
        }
        for (suit, ws) in suits.iter().zip(&weights) {
            if let Some(w) = ws.iter().find(|&&w| w > suit.len()) {
                return Err(Error::Input(format!(
                    "weight {w} exceeds suit size {}",
                    suit.len()
                )));
            }
        }
        let mut suits = suits;
        for s in &mut suits {
            s.sort_unstable();
        }
        Ok(BasisSpec {
            modes,
            suits,
            weights,
        })
    }

    /// Every occupation vector on `modes` modes.
    pub fn full(modes: usize) -> Self {
        BasisSpec {
            modes,
            suits: vec![(1..=modes).collect()],
            weights: vec![(0..=modes).collect()],
        }
    }

    /// One suit holding all modes, with the given admitted weights.
    pub fn weights(modes: usize, weights: Vec<usize>) -> Result<Self> {
        Self::new(modes, vec![(1..=modes).collect()], vec![weights])
    }

    /// Parses `"1-10:2;11-20:2"`: suits separated by `;`, each a `+`-joined
    /// list of mode ranges followed by `:` and a comma-separated weight list.
    pub fn parse(text: &str, modes: usize) -> Result<Self> {
        let mut suits = Vec::new();
        let mut weights = Vec::new();
        for chunk in text.split(';').map(str::trim).filter(|c| !c.is_empty()) {
            let (modes_part, weights_part) = chunk
                .split_once(':')
                .ok_or_else(|| Error::Input(format!("basis suit {chunk:?} lacks ':'")))?;
            let mut suit = Vec::new();
            for range in modes_part.split('+').map(str::trim) {
                let (lo, hi) = match range.split_once('-') {
                    Some((a, b)) => (parse_num(a)?, parse_num(b)?),
                    None => {
                        let v = parse_num(range)?;
                        (v, v)
                    }
                };
                if lo > hi {
                    return Err(Error::Input(format!("empty mode range {range:?}")));
                }
                suit.extend(lo..=hi);
            }
            let ws = weights_part
                .split(',')
                .map(|w| parse_num(w.trim()))
                .collect::<Result<Vec<_>>>()?;
            suits.push(suit);
            weights.push(ws);
        }
        Self::new(modes, suits, weights)
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn suits(&self) -> &[Vec<usize>] {
        &self.suits
    }

    pub fn target_weights(&self) -> &[Vec<usize>] {
        &self.weights
    }

    pub fn contains(&self, nu: &BitVec) -> bool {
        nu.len() == self.modes
            && self.suits.iter().zip(&self.weights).all(|(suit, ws)| {
                let w = suit.iter().filter(|&&m| nu.bit(m)).count();
                ws.contains(&w)
            })
    }
}

impl fmt::Display for BasisSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .suits
            .iter()
            .zip(&self.weights)
            .map(|(s, w)| {
                let ws: Vec<String> = w.iter().map(ToString::to_string).collect();
                format!("{}:{}", compress_ranges(s), ws.join(","))
            })
            .collect();
        f.write_str(&parts.join(";"))
    }
}

fn compress_ranges(modes: &[usize]) -> String {
    let mut out: Vec<String> = Vec::new();
    let mut i = 0;
    while i < modes.len() {
        let start = modes[i];
        let mut end = start;
        while i + 1 < modes.len() && modes[i + 1] == end + 1 {
            i += 1;
            end = modes[i];
        }
        out.push(if start == end {
            start.to_string()
        } else {
            format!("{start}-{end}")
        });
        i += 1;
    }
    out.join("+")
}

fn parse_num(s: &str) -> Result<usize> {
    s.trim()
        .parse()
        .map_err(|_| Error::Input(format!("expected a non-negative integer, found {s:?}")))
}

/// All subsets of `suit` with one of the given sizes, as occupation vectors.
fn suit_patterns(modes: usize, suit: &[usize], weights: &[usize]) -> Vec<BitVec> {
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fn rec(
        modes: usize,
        suit: &[usize],
        start: usize,
        left: usize,
        chosen: &mut Vec<usize>,
        out: &mut Vec<BitVec>,
    ) {
        if left == 0 {
            out.push(BitVec::from_indices(modes, chosen));
            return;
        }
        for i in start..suit.len() {
            if suit.len() - i < left {
                break;
            }
            chosen.push(suit[i]);
            rec(modes, suit, i + 1, left - 1, chosen, out);
            chosen.pop();
        }
    }
    for &w in weights {
        rec(modes, suit, 0, w, &mut chosen, &mut out);
    }
    out
}

/// All occupation vectors admitted by `spec`, ordered lexicographically with
/// component 1 as the most significant key.
pub fn enumerate_basis(spec: &BasisSpec) -> Vec<BitVec> {
    let mut states = vec![BitVec::zeros(spec.modes)];
    for (suit, ws) in spec.suits.iter().zip(&spec.weights) {
        let patterns = suit_patterns(spec.modes, suit, ws);
        states = states
            .iter()
            .flat_map(|s| patterns.iter().map(move |p| s.or(p)))
            .collect();
    }
    states.sort_by(BitVec::cmp_lex);
    states
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_suits_one_particle_each() {
        let spec = BasisSpec::new(4, vec![vec![1, 2], vec![3, 4]], vec![vec![1], vec![1]]).unwrap();
        let states: Vec<String> = enumerate_basis(&spec).iter().map(|s| s.to_string()).collect();
        assert_eq!(states, vec!["0101", "0110", "1001", "1010"]);
    }

    #[test]
    fn hubbard_sector_size() {
        let spec = BasisSpec::parse("1-10:2;11-20:2", 20).unwrap();
        assert_eq!(enumerate_basis(&spec).len(), 2025);
        assert_eq!(spec.to_string(), "1-10:2;11-20:2");
    }

    #[test]
    fn full_space() {
        assert_eq!(enumerate_basis(&BasisSpec::full(5)).len(), 32);
        let first = &enumerate_basis(&BasisSpec::full(3))[..3];
        let s: Vec<String> = first.iter().map(|s| s.to_string()).collect();
        assert_eq!(s, vec!["000", "001", "010"]);
    }

    #[test]
    fn rejects_bad_partitions() {
        assert!(BasisSpec::new(3, vec![vec![1, 2]], vec![vec![1]]).is_err());
        assert!(BasisSpec::new(3, vec![vec![1, 2], vec![2, 3]], vec![vec![1], vec![1]]).is_err());
        assert!(BasisSpec::new(2, vec![vec![1, 2]], vec![vec![3]]).is_err());
        assert!(BasisSpec::parse("1-3", 3).is_err());
    }
}
