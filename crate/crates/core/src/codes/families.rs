//! Constructors for the classical transforms and the qubit-saving code
//! families.

use serde::{Deserialize, Serialize};

use super::code::{concat_codes, Code};
use crate::bitmath::{BitMat, BitVec, BoolPoly};

/// Which total parity a checksum code encodes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    #[default]
    Even,
    Odd,
}

/// Identity code: qubit `j` stores occupation `j`.
pub fn make_jordan_wigner(modes: usize) -> Code {
    assert!(modes >= 1, "need at least one mode");
    let mut code = Code::linear(BitMat::identity(modes)).expect("identity is invertible");
    code.set_label("jordan_wigner");
    code
}

/// Qubit `j` stores the parity of modes `1..=j`.
pub fn make_parity_code(modes: usize) -> Code {
    assert!(modes >= 1, "need at least one mode");
    let mut a = BitMat::zeros(modes, modes);
    for i in 1..=modes {
        for j in 1..=i {
            a.set(i, j, true);
        }
    }
    let mut code = Code::linear(a).expect("lower-triangular ones is invertible");
    code.set_label("parity");
    code
}

/// Bravyi-Kitaev generator in the Fenwick-tree convention: qubit `k` stores the
/// parity of modes `k - lowbit(k) + 1 ..= k`.
pub fn bravyi_kitaev_matrix(modes: usize) -> BitMat {
    let mut a = BitMat::zeros(modes, modes);
    for k in 1..=modes {
        let low = k & k.wrapping_neg();
        for j in (k - low + 1)..=k {
            a.set(k, j, true);
        }
    }
    a
}

pub fn make_bravyi_kitaev(modes: usize) -> Code {
    assert!(modes >= 1, "need at least one mode");
    let mut code =
        Code::linear(bravyi_kitaev_matrix(modes)).expect("unit lower-triangular is invertible");
    code.set_label("bravyi_kitaev");
    code
}

/// Drops the last occupation and restores it from the total parity.
pub fn make_checksum(modes: usize, flavor: Flavor) -> Code {
    assert!(modes >= 2, "checksum code needs at least two modes");
    let n = modes - 1;
    let encode = (1..=n)
        .map(|i| BoolPoly::var(modes, i))
        .collect::<Vec<_>>();
    let mut decode = (1..=n).map(|i| BoolPoly::var(n, i)).collect::<Vec<_>>();
    let mut last = BoolPoly::affine(&BitVec::ones(n), false);
    last.add_constant(flavor == Flavor::Odd);
    decode.push(last);
    let mut code = Code::new(modes, n, encode, decode).expect("checksum dimensions");
    code.set_label(match flavor {
        Flavor::Even => "checksum_even",
        Flavor::Odd => "checksum_odd",
    });
    code
}

/// `q^{j}`: the `bits`-bit binary representation of `j - 1`, component 1 least
/// significant.
pub fn binary_label(j: usize, bits: usize) -> BitVec {
    BitVec::from_u64(bits, (j - 1) as u64)
}

/// Product over `vars` of `(x_v + c_v)`, i.e. the indicator of `x_vars = c + 1`.
fn indicator(num_vars: usize, vars: &[usize], shift: &BitVec, negate: bool) -> BoolPoly {
    let mut p = BoolPoly::one(num_vars);
    for (k, &v) in vars.iter().enumerate() {
        let mut factor = BoolPoly::var(num_vars, v);
        factor.add_constant(shift.bit(k + 1) ^ !negate);
        p = &p * &factor;
    }
    p
}

/// One particle on `2^r` orbitals, addressed by an `r`-bit binary number.
pub fn make_binary_addressing_k1(r: usize) -> Code {
    assert!(r >= 1, "need r >= 1");
    assert!(r < 30, "r too large");
    let modes = 1usize << r;
    let alpha: Vec<usize> = (1..=r).collect();
    let decode = (1..=modes)
        .map(|j| indicator(r, &alpha, &binary_label(j, r), false))
        .collect();
    let encode = (1..=r)
        .map(|i| {
            let row = BitVec::from_bools(
                &(1..=modes).map(|j| binary_label(j, r).bit(i)).collect::<Vec<_>>(),
            );
            BoolPoly::affine(&row, false)
        })
        .collect();
    let mut code = Code::new(modes, r, encode, decode).expect("binary addressing dimensions");
    code.set_label("binary_addressing_k1");
    code
}

/// Two particles on `2^r` orbitals stored in `2r - 1` qubits.
///
/// The register holds `alpha` (r bits, first) and `beta` (r - 1 bits). Reading
/// `y1 = bin(alpha) + 1` and `y2 = bin(beta) + 1`, the word decodes to the pair
/// `{y1, N/2 + y2}` when `y1 < N/2 + y2`, to `{N + 1 - y1, N/2 + 1 - y2}` when
/// `y1 > N/2 + y2`, and to the empty occupation on the diagonal
/// `y1 = N/2 + y2`.
pub fn make_binary_addressing_k2(r: usize) -> Code {
    assert!(r >= 2, "need r >= 2");
    assert!(r < 16, "r too large");
    let modes = 1usize << r;
    let half = modes / 2;
    let n = 2 * r - 1;
    let a = |i: usize| BoolPoly::var(n, i);
    let b = |k: usize| BoolPoly::var(n, r + k);
    let one = BoolPoly::one(n);

    // S = 1 iff y1 < N/2 + y2.
    let mut less = BoolPoly::zero(n);
    for j in 1..r {
        let mut term = &(&one + &a(j)) * &b(j);
        for i in j + 1..r {
            let mut eq = &a(i) + &b(i);
            eq.add_constant(true);
            term = &term * &eq;
        }
        less.add_assign(&term);
    }
    let mut s = &a(r) * &less;
    s.add_assign(&a(r));
    s.add_constant(true);

    // T = 1 on the diagonal y1 = N/2 + y2.
    let mut t = a(r);
    for i in 1..r {
        let mut eq = &a(i) + &b(i);
        eq.add_constant(true);
        t = &t * &eq;
    }

    let not_s = &one + &s;
    let off_diag = &not_s * &(&one + &t);
    let alpha_vars: Vec<usize> = (1..=r).collect();
    let beta_vars: Vec<usize> = (r + 1..=n).collect();

    let decode = (1..=modes)
        .map(|j| {
            let q = binary_label(j, r);
            let low = q.slice(1, r - 1);
            let mut d = &s * &indicator(n, &alpha_vars, &q, false);
            d.add_assign(&(&off_diag * &indicator(n, &alpha_vars, &q, true)));
            if q.bit(r) {
                d.add_assign(&(&s * &indicator(n, &beta_vars, &low, false)));
            } else {
                d.add_assign(&(&off_diag * &indicator(n, &beta_vars, &low, true)));
            }
            d
        })
        .collect();

    // e(nu) = sum over pairs i < j of nu_i nu_j times the pair's codeword.
    let codeword = |i: usize, j: usize| -> BitVec {
        if j <= half {
            binary_label(i, r).not().concat(&binary_label(j, r - 1).not())
        } else {
            binary_label(i, r).concat(&binary_label(j - half, r - 1))
        }
    };
    let mut encode_monos: Vec<Vec<[usize; 2]>> = vec![Vec::new(); n];
    for j in 2..=modes {
        for i in 1..j {
            for m in codeword(i, j).ones_iter() {
                encode_monos[m - 1].push([i, j]);
            }
        }
    }
    let encode = encode_monos
        .into_iter()
        .map(|monos| BoolPoly::from_monomials(modes, monos).expect("indices in range"))
        .collect();

    let mut code = Code::new(modes, n, encode, decode).expect("binary addressing dimensions");
    code.set_label("binary_addressing_k2");
    code.set_degenerate(vec![BitVec::zeros(modes)]);
    code
}

/// The function on `2K` inputs that is 1 iff the input weight exceeds `K`,
/// built as a sum of point indicators over all heavy inputs.
pub fn binary_switch(k: usize) -> BoolPoly {
    assert!(k >= 1, "need K >= 1");
    let n = 2 * k;
    assert!(n < 32, "K too large");
    let vars: Vec<usize> = (1..=n).collect();
    let mut f = BoolPoly::zero(n);
    for bits in 0..1u64 << n {
        if bits.count_ones() as usize > k {
            f.add_assign(&indicator(n, &vars, &BitVec::from_u64(n, bits), false));
        }
    }
    f
}

/// Segment subcode on `2K + 1` modes and `2K` qubits, encoding every local
/// occupation of weight at most `K`.
pub fn make_segment_subcode(k: usize) -> Code {
    let n = 2 * k;
    let modes = n + 1;
    let f = binary_switch(k);
    let encode = (1..=n)
        .map(|i| {
            let mut p = BoolPoly::var(modes, i);
            p.add_assign(&BoolPoly::var(modes, modes));
            p
        })
        .collect();
    let mut decode: Vec<BoolPoly> = (1..=n).map(|i| &BoolPoly::var(n, i) + &f).collect();
    decode.push(f);
    let mut code = Code::new(modes, n, encode, decode).expect("segment dimensions");
    code.set_label("segment");
    code.set_segment_k(k);
    code
}

/// `segments` segment subcodes of weight cap `K`, appended.
pub fn make_segment_code(k: usize, segments: usize) -> Code {
    assert!(segments >= 1, "need at least one segment");
    let sub = make_segment_subcode(k);
    let mut code = sub.clone();
    for _ in 1..segments {
        code = concat_codes(&code, &sub);
    }
    code
}

/// The two-qubit code for the minimal-basis hydrogen molecule: two appended
/// single-particle codes on two orbitals each.
pub fn make_h2_code() -> Code {
    let pair = make_binary_addressing_k1(1);
    concat_codes(&pair, &pair)
}
