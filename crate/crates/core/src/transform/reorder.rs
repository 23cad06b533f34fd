use num_complex::Complex64;

use super::fermion::{FermionHamiltonian, FermionOp, FermionTerm};
use crate::codes::Segment;
use crate::error::{Error, Result};

/// Rewrites every term into alternating `c†c` blocks using the
/// anticommutation relations. Creators keep their order and are paired with
/// the annihilators taken from the right, so `c†_i c†_j c_k c_l` becomes
/// `c†_i c_l c†_j c_k - δ_jl c†_i c_k`. Terms already in block form are kept.
pub fn normal_order_blocks(h: &FermionHamiltonian) -> Result<FermionHamiltonian> {
    let mut out = FermionHamiltonian::new(h.modes());
    for term in h.terms() {
        if !term.is_particle_conserving() {
            return Err(Error::Unsupported(format!(
                "term '{term}' does not conserve particle number"
            )));
        }
        // Re-pairing a blocked term would route it through intermediate
        // states the segment dressing cannot see, so those stay as they are.
        if term.is_blocked() {
            out.push(term.clone())?;
            continue;
        }
        for t in block_term(term.coeff, term.ops.clone()) {
            out.push(t)?;
        }
    }
    Ok(out)
}

fn block_term(coeff: Complex64, ops: Vec<FermionOp>) -> Vec<FermionTerm> {
    // Tag operators with their position so the target order survives swaps.
    let creators: Vec<usize> = (0..ops.len()).filter(|&k| ops[k].dagger).collect();
    let annihilators: Vec<usize> = (0..ops.len()).rev().filter(|&k| !ops[k].dagger).collect();
    let target: Vec<usize> = creators
        .iter()
        .zip(&annihilators)
        .flat_map(|(&c, &a)| [c, a])
        .collect();
    let tagged: Vec<(usize, FermionOp)> = ops.into_iter().enumerate().collect();
    let mut out = Vec::new();
    reorder(coeff, tagged, &target, &mut out);
    out
}

fn reorder(coeff: Complex64, mut ops: Vec<(usize, FermionOp)>, target: &[usize], out: &mut Vec<FermionTerm>) {
    let mut coeff = coeff;
    for (pos, &wanted) in target.iter().enumerate() {
        let Some(mut cur) = ops.iter().position(|(tag, _)| *tag == wanted) else {
            unreachable!("target order is a permutation of the tags");
        };
        while cur > pos {
            let (left, right) = (ops[cur - 1].1, ops[cur].1);
            // A B = -B A + {A, B}, and the anticommutator is δ for a c†/c
            // pair on one mode and zero otherwise.
            if left.mode == right.mode && left.dagger != right.dagger {
                let mut rest: Vec<FermionOp> = ops.iter().map(|(_, o)| *o).collect();
                rest.drain(cur - 1..=cur);
                out.extend(block_term(coeff, rest));
            }
            ops.swap(cur - 1, cur);
            coeff = -coeff;
            cur -= 1;
        }
    }
    out.push(FermionTerm::new(coeff, ops.into_iter().map(|(_, o)| o).collect()));
}

/// Switches off hops that would overfill a segment. Each block `c†_i c_j`
/// with `i` and `j` in different segments is dressed as
/// `(1 - E_K(seg j)) c†_i c_j (1 - E_K(seg i))`, where `E_K(S)` is the sum of
/// all products of `K` number operators in `S`. On states with at most `K`
/// particles per segment `E_K` is the indicator of a full segment, so the
/// hop is killed exactly when it would push `seg i` above `K` or start from
/// an overfull `seg j`. Modes outside every segment are left unconstrained.
pub fn adjust_for_segments(h: &FermionHamiltonian, segments: &[Segment]) -> Result<FermionHamiltonian> {
    let mut seg_of = vec![None; h.modes() + 1];
    for (s, seg) in segments.iter().enumerate() {
        for &m in &seg.modes {
            if m == 0 || m > h.modes() {
                return Err(Error::IndexOutOfRange { index: m, len: h.modes() });
            }
            if seg_of[m].replace(s).is_some() {
                return Err(Error::Input(format!("mode {m} is in two segments")));
            }
        }
    }
    let mut out = FermionHamiltonian::new(h.modes());
    for term in h.terms() {
        if !term.is_blocked() {
            return Err(Error::Precondition(format!(
                "term '{term}' is not in c†c block form; run normal_order_blocks first"
            )));
        }
        // Each block expands into a list of (sign, operator run) options.
        let mut expansions: Vec<(f64, Vec<FermionOp>)> = vec![(1.0, Vec::new())];
        for block in term.ops.chunks(2) {
            let (i, j) = (block[0].mode, block[1].mode);
            let options = match (seg_of[i], seg_of[j]) {
                (Some(si), Some(sj)) if si != sj => dressed_block(block, &segments[sj], &segments[si]),
                _ => vec![(1.0, block.to_vec())],
            };
            expansions = expansions
                .iter()
                .flat_map(|(s, ops)| {
                    options.iter().map(move |(s2, ops2)| {
                        let mut joined = ops.clone();
                        joined.extend_from_slice(ops2);
                        (s * s2, joined)
                    })
                })
                .collect();
        }
        for (sign, ops) in expansions {
            out.push(FermionTerm::new(term.coeff * sign, ops))?;
        }
    }
    Ok(out)
}

/// `(1 - E_K(left)) block (1 - E_K(right))` as signed operator runs.
fn dressed_block(block: &[FermionOp], left: &Segment, right: &Segment) -> Vec<(f64, Vec<FermionOp>)> {
    let factor = |seg: &Segment| -> Vec<(f64, Vec<FermionOp>)> {
        let mut v = vec![(1.0, Vec::new())];
        for subset in k_subsets(&seg.modes, seg.k) {
            let ops = subset
                .iter()
                .flat_map(|&m| [FermionOp::create(m), FermionOp::annihilate(m)])
                .collect();
            v.push((-1.0, ops));
        }
        v
    };
    let mut out = Vec::new();
    for (sl, l) in factor(left) {
        for (sr, r) in factor(right) {
            let mut ops = l.clone();
            ops.extend_from_slice(block);
            ops.extend(r.iter().copied());
            out.push((sl * sr, ops));
        }
    }
    out
}

fn k_subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if items.len() < k {
        return Vec::new();
    }
    let mut with_first: Vec<Vec<usize>> = k_subsets(&items[1..], k - 1)
        .into_iter()
        .map(|mut s| {
            s.insert(0, items[0]);
            s
        })
        .collect();
    with_first.extend(k_subsets(&items[1..], k));
    with_first
}
