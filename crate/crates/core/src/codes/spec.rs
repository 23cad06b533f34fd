use std::path::Path;

use serde::{Deserialize, Serialize};

use super::code::{concat_codes, Code};
use super::families::*;
use crate::bitmath::{BitVec, BoolPoly};
use crate::error::{Error, Result};

/// JSON description of a code, tagged by `"kind"`.
///
/// ```json
/// {"kind": "concat", "codes": [
///     {"kind": "checksum", "modes": 10, "flavor": "even"},
///     {"kind": "segment", "k": 2, "segments": 2}
/// ]}
/// ```
///
/// A `custom` code lists its components in the polynomial text form, with
/// optional affine offsets given as 0/1 arrays:
///
/// ```json
/// {"kind": "custom", "modes": 2, "qubits": 1,
///  "encode": ["x2"], "decode": ["x1", "x1"], "decode_affine": [1, 0]}
/// ```
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CodeSpec {
    JordanWigner {
        modes: usize,
    },
    Parity {
        modes: usize,
    },
    BravyiKitaev {
        modes: usize,
    },
    Checksum {
        modes: usize,
        #[serde(default)]
        flavor: Flavor,
    },
    BinaryAddressingK1 {
        r: usize,
    },
    BinaryAddressingK2 {
        r: usize,
    },
    Segment {
        k: usize,
        segments: usize,
    },
    Concat {
        codes: Vec<CodeSpec>,
    },
    Custom {
        modes: usize,
        qubits: usize,
        encode: Vec<String>,
        #[serde(default)]
        encode_affine: Option<Vec<u8>>,
        decode: Vec<String>,
        #[serde(default)]
        decode_affine: Option<Vec<u8>>,
        /// Occupation strings such as `"0000"` that may appear as images
        /// outside the encoded set.
        #[serde(default)]
        degenerate: Vec<String>,
    },
}

fn affine_vec(bits: &Option<Vec<u8>>, len: usize, what: &str) -> Result<BitVec> {
    match bits {
        None => Ok(BitVec::zeros(len)),
        Some(b) if b.len() != len => Err(Error::Input(format!(
            "{what} has {} entries, expected {len}",
            b.len()
        ))),
        Some(b) => b
            .iter()
            .map(|&x| match x {
                0 => Ok(false),
                1 => Ok(true),
                other => Err(Error::Input(format!("{what} entry {other} is not 0 or 1"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(|v| BitVec::from_bools(&v)),
    }
}

fn positive(value: usize, what: &str, min: usize) -> Result<()> {
    if value < min {
        Err(Error::Input(format!("{what} must be at least {min}, got {value}")))
    } else {
        Ok(())
    }
}

impl CodeSpec {
    pub fn build(&self) -> Result<Code> {
        Ok(match self {
            CodeSpec::JordanWigner { modes } => {
                positive(*modes, "modes", 1)?;
                make_jordan_wigner(*modes)
            }
            CodeSpec::Parity { modes } => {
                positive(*modes, "modes", 1)?;
                make_parity_code(*modes)
            }
            CodeSpec::BravyiKitaev { modes } => {
                positive(*modes, "modes", 1)?;
                make_bravyi_kitaev(*modes)
            }
            CodeSpec::Checksum { modes, flavor } => {
                positive(*modes, "modes", 2)?;
                make_checksum(*modes, *flavor)
            }
            CodeSpec::BinaryAddressingK1 { r } => {
                positive(*r, "r", 1)?;
                if *r > 20 {
                    return Err(Error::Input(format!("r = {r} is too large")));
                }
                make_binary_addressing_k1(*r)
            }
            CodeSpec::BinaryAddressingK2 { r } => {
                positive(*r, "r", 2)?;
                if *r > 8 {
                    return Err(Error::Input(format!("r = {r} is too large")));
                }
                make_binary_addressing_k2(*r)
            }
            CodeSpec::Segment { k, segments } => {
                positive(*k, "k", 1)?;
                positive(*segments, "segments", 1)?;
                if *k > 8 {
                    return Err(Error::Input(format!("k = {k} is too large")));
                }
                make_segment_code(*k, *segments)
            }
            CodeSpec::Concat { codes } => {
                let mut built = codes.iter().map(CodeSpec::build);
                let first = built
                    .next()
                    .ok_or_else(|| Error::Input("concat needs at least one code".into()))??;
                built.try_fold(first, |acc, c| Ok::<_, Error>(concat_codes(&acc, &c?)))?
            }
            CodeSpec::Custom {
                modes,
                qubits,
                encode,
                encode_affine,
                decode,
                decode_affine,
                degenerate,
            } => {
                let mut e = encode
                    .iter()
                    .map(|t| BoolPoly::parse(t, *modes))
                    .collect::<Result<Vec<_>>>()?;
                let mut d = decode
                    .iter()
                    .map(|t| BoolPoly::parse(t, *qubits))
                    .collect::<Result<Vec<_>>>()?;
                let ea = affine_vec(encode_affine, e.len(), "encode_affine")?;
                let da = affine_vec(decode_affine, d.len(), "decode_affine")?;
                for (p, c) in e.iter_mut().zip(ea.iter()) {
                    p.add_constant(c);
                }
                for (p, c) in d.iter_mut().zip(da.iter()) {
                    p.add_constant(c);
                }
                let mut code = Code::new(*modes, *qubits, e, d)?;
                let degenerate = degenerate
                    .iter()
                    .map(|s| {
                        let v: BitVec = s.parse()?;
                        if v.len() != *modes {
                            return Err(Error::dim("degenerate image length", *modes, v.len()));
                        }
                        Ok(v)
                    })
                    .collect::<Result<Vec<_>>>()?;
                code.set_degenerate(degenerate);
                code
            }
        })
    }

    pub fn from_json(text: &str) -> Result<CodeSpec> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Reads a code-spec JSON file and builds the code.
pub fn load_code(path: &Path) -> Result<Code> {
    let text = std::fs::read_to_string(path)?;
    CodeSpec::from_json(&text)?.build()
}
