use std::fmt;

use crate::bitmath::{BitMat, BitVec, BoolPoly};
use crate::error::{Error, Result};

/// A block of consecutive modes handled by one segment subcode, which encodes
/// every local occupation of weight at most `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub modes: Vec<usize>,
    pub k: usize,
}

/// Bookkeeping for one constituent of a (possibly concatenated) code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodePart {
    pub label: String,
    /// First mode of the block (1-based) and its size.
    pub mode_offset: usize,
    pub modes: usize,
    /// First qubit of the block (1-based) and its size.
    pub qubit_offset: usize,
    pub qubits: usize,
    /// Local occupation vectors that the decoder may produce outside the
    /// encoded set on purpose.
    pub degenerate: Vec<BitVec>,
    /// Weight cap when the block is a segment subcode.
    pub segment_k: Option<usize>,
}

/// Generator matrix of a full-Fock linear code and its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMatrices {
    pub a: BitMat,
    pub a_inv: BitMat,
}

/// An encoding `e: Z_2^N -> Z_2^n` and decoding `d: Z_2^n -> Z_2^N`, each a
/// vector of boolean polynomials. Affine offsets are stored as constant
/// monomials.
#[derive(Clone)]
pub struct Code {
    modes: usize,
    qubits: usize,
    encode: Vec<BoolPoly>,
    decode: Vec<BoolPoly>,
    matrices: Option<LinearMatrices>,
    parts: Vec<CodePart>,
}

impl Code {
    /// Builds a code from its component functions. `encode` must hold `n`
    /// polynomials over `N` variables, `decode` `N` polynomials over `n`.
    pub fn new(modes: usize, qubits: usize, encode: Vec<BoolPoly>, decode: Vec<BoolPoly>) -> Result<Code> {
        if encode.len() != qubits {
            return Err(Error::dim("Code encode components", qubits, encode.len()));
        }
        if decode.len() != modes {
            return Err(Error::dim("Code decode components", modes, decode.len()));
        }
        if let Some(p) = encode.iter().find(|p| p.num_vars() != modes) {
            return Err(Error::dim("Code encode variables", modes, p.num_vars()));
        }
        if let Some(p) = decode.iter().find(|p| p.num_vars() != qubits) {
            return Err(Error::dim("Code decode variables", qubits, p.num_vars()));
        }
        Ok(Code {
            modes,
            qubits,
            encode,
            decode,
            matrices: None,
            parts: vec![CodePart {
                label: "custom".into(),
                mode_offset: 1,
                modes,
                qubit_offset: 1,
                qubits,
                degenerate: Vec::new(),
                segment_k: None,
            }],
        })
    }

    /// Full-Fock linear code `e(v) = A v`, `d(w) = A^-1 w`.
    pub fn linear(a: BitMat) -> Result<Code> {
        let a_inv = a.inverse()?;
        let n = a.nrows();
        let encode = a.rows().iter().map(|r| BoolPoly::affine(r, false)).collect();
        let decode = a_inv.rows().iter().map(|r| BoolPoly::affine(r, false)).collect();
        let mut code = Code::new(n, n, encode, decode)?;
        code.matrices = Some(LinearMatrices { a, a_inv });
        code.set_label("linear");
        Ok(code)
    }

    pub(crate) fn set_label(&mut self, label: &str) {
        if let [part] = self.parts.as_mut_slice() {
            part.label = label.to_string();
        }
    }

    pub(crate) fn set_degenerate(&mut self, images: Vec<BitVec>) {
        if let [part] = self.parts.as_mut_slice() {
            part.degenerate = images;
        }
    }

    pub(crate) fn set_segment_k(&mut self, k: usize) {
        for part in &mut self.parts {
            part.segment_k = Some(k);
        }
    }

    /// Number of fermionic modes `N`.
    pub fn modes(&self) -> usize {
        self.modes
    }

    /// Number of qubits `n`.
    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn encode_polys(&self) -> &[BoolPoly] {
        &self.encode
    }

    pub fn decode_polys(&self) -> &[BoolPoly] {
        &self.decode
    }

    /// Decoding component `d_j`, 1-based.
    pub fn decode_poly(&self, j: usize) -> &BoolPoly {
        &self.decode[j - 1]
    }

    /// Encoding component `e_i`, 1-based.
    pub fn encode_poly(&self, i: usize) -> &BoolPoly {
        &self.encode[i - 1]
    }

    /// Constant terms of the encoding.
    pub fn encode_affine(&self) -> BitVec {
        BitVec::from_bools(&self.encode.iter().map(BoolPoly::constant_term).collect::<Vec<_>>())
    }

    /// Constant terms of the decoding.
    pub fn decode_affine(&self) -> BitVec {
        BitVec::from_bools(&self.decode.iter().map(BoolPoly::constant_term).collect::<Vec<_>>())
    }

    pub fn encode_is_linear(&self) -> bool {
        self.encode.iter().all(BoolPoly::is_affine)
    }

    pub fn decode_is_linear(&self) -> bool {
        self.decode.iter().all(BoolPoly::is_affine)
    }

    /// Linear part of the encoding as an `n x N` matrix, if the encoding is
    /// affine.
    pub fn encode_matrix(&self) -> Option<BitMat> {
        if !self.encode_is_linear() {
            return None;
        }
        BitMat::from_rows(self.encode.iter().map(BoolPoly::linear_part).collect()).ok()
    }

    /// Linear part of the decoding as an `N x n` matrix, if the decoding is
    /// affine.
    pub fn decode_matrix(&self) -> Option<BitMat> {
        if !self.decode_is_linear() {
            return None;
        }
        BitMat::from_rows(self.decode.iter().map(BoolPoly::linear_part).collect()).ok()
    }

    pub fn matrices(&self) -> Option<&LinearMatrices> {
        self.matrices.as_ref()
    }

    pub fn parts(&self) -> &[CodePart] {
        &self.parts
    }

    pub fn label(&self) -> String {
        self.parts
            .iter()
            .map(|p| p.label.as_str())
            .collect::<Vec<_>>()
            .join("+")
    }

    /// Segments of all segment-subcode blocks.
    pub fn segments(&self) -> Vec<Segment> {
        self.parts
            .iter()
            .filter_map(|p| {
                p.segment_k.map(|k| Segment {
                    modes: (p.mode_offset..p.mode_offset + p.modes).collect(),
                    k,
                })
            })
            .collect()
    }

    pub fn has_segments(&self) -> bool {
        self.parts.iter().any(|p| p.segment_k.is_some())
    }

    pub fn encode(&self, nu: &BitVec) -> Result<BitVec> {
        if nu.len() != self.modes {
            return Err(Error::dim("Code::encode", self.modes, nu.len()));
        }
        Ok(self.encode_unchecked(nu))
    }

    pub fn decode(&self, omega: &BitVec) -> Result<BitVec> {
        if omega.len() != self.qubits {
            return Err(Error::dim("Code::decode", self.qubits, omega.len()));
        }
        Ok(self.decode_unchecked(omega))
    }

    pub(crate) fn encode_unchecked(&self, nu: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.qubits);
        for (i, p) in self.encode.iter().enumerate() {
            if p.eval_unchecked(nu) {
                out.set(i + 1, true);
            }
        }
        out
    }

    pub(crate) fn decode_unchecked(&self, omega: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.modes);
        for (j, p) in self.decode.iter().enumerate() {
            if p.eval_unchecked(omega) {
                out.set(j + 1, true);
            }
        }
        out
    }

    /// True when `d(e(nu)) = nu`, i.e. `nu` is in the encoded set.
    pub fn round_trips(&self, nu: &BitVec) -> bool {
        nu.len() == self.modes && self.decode_unchecked(&self.encode_unchecked(nu)) == *nu
    }

    /// True when `nu` restricted to some block equals one of that block's
    /// designated degenerate images.
    pub fn is_designated_degenerate(&self, nu: &BitVec) -> bool {
        self.parts.iter().any(|p| {
            !p.degenerate.is_empty() && {
                let local = nu.slice(p.mode_offset, p.modes);
                p.degenerate.contains(&local)
            }
        })
    }
}

impl fmt::Debug for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Code {} (N={}, n={})", self.label(), self.modes, self.qubits)?;
        for (i, p) in self.encode.iter().enumerate() {
            writeln!(f, "  e{} = {}", i + 1, p)?;
        }
        for (j, p) in self.decode.iter().enumerate() {
            writeln!(f, "  d{} = {}", j + 1, p)?;
        }
        Ok(())
    }
}

/// Direct sum of two codes: `d(w1 ⊕ w2) = d1(w1) ⊕ d2(w2)` and likewise for
/// the encoding.
pub fn concat_codes(first: &Code, second: &Code) -> Code {
    let modes = first.modes + second.modes;
    let qubits = first.qubits + second.qubits;
    let encode = first
        .encode
        .iter()
        .map(|p| p.embed(modes, 0))
        .chain(second.encode.iter().map(|p| p.embed(modes, first.modes)))
        .collect();
    let decode = first
        .decode
        .iter()
        .map(|p| p.embed(qubits, 0))
        .chain(second.decode.iter().map(|p| p.embed(qubits, first.qubits)))
        .collect();
    let mut parts = first.parts.clone();
    parts.extend(second.parts.iter().map(|p| CodePart {
        mode_offset: p.mode_offset + first.modes,
        qubit_offset: p.qubit_offset + first.qubits,
        ..p.clone()
    }));
    let matrices = match (&first.matrices, &second.matrices) {
        (Some(m1), Some(m2)) => Some(LinearMatrices {
            a: block_diag(&m1.a, &m2.a),
            a_inv: block_diag(&m1.a_inv, &m2.a_inv),
        }),
        _ => None,
    };
    Code {
        modes,
        qubits,
        encode,
        decode,
        matrices,
        parts,
    }
}

fn block_diag(a: &BitMat, b: &BitMat) -> BitMat {
    let mut m = BitMat::zeros(a.nrows() + b.nrows(), a.ncols() + b.ncols());
    for i in 1..=a.nrows() {
        for j in a.row(i).ones_iter() {
            m.set(i, j, true);
        }
    }
    for i in 1..=b.nrows() {
        for j in b.row(i).ones_iter() {
            m.set(a.nrows() + i, a.ncols() + j, true);
        }
    }
    m
}
