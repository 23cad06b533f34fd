use std::collections::BTreeMap;
use std::fmt;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use super::basis::{enumerate_basis, BasisSpec};
use super::code::Code;
use crate::bitmath::BitVec;
use crate::error::{Error, Result};

/// How many example failures a report keeps per category.
const EXAMPLES: usize = 16;

/// Limits for the code-word scan in [`validate_code`].
#[derive(Clone, Copy, Debug)]
pub struct ValidationOptions {
    /// Largest number of code words scanned exhaustively.
    pub budget: usize,
    /// When `2^n` exceeds the budget, scan this many random words instead.
    pub sample: Option<(usize, u64)>,
}

impl Default for ValidationOptions {
    fn default() -> Self {
        ValidationOptions {
            budget: 1 << 20,
            sample: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub code: String,
    pub modes: usize,
    pub qubits: usize,
    pub basis_size: usize,
    /// Basis vectors with `d(e(nu)) != nu` (first few).
    pub round_trip_failures: Vec<String>,
    pub round_trip_failure_count: usize,
    pub words_scanned: usize,
    pub exhaustive: bool,
    /// Code words whose image is outside the basis and not designated
    /// degenerate, as `(word, image)` (first few).
    pub outside_images: Vec<(String, String)>,
    pub outside_count: usize,
    pub degenerate_count: usize,
    /// Histogram of image weights over the scanned words.
    pub image_weights: BTreeMap<usize, usize>,
    /// Whether `e(d(w)) = w` held on every scanned word.
    pub one_to_one: bool,
}

impl ValidationReport {
    pub fn round_trip_ok(&self) -> bool {
        self.round_trip_failure_count == 0
    }

    /// Round trips hold and every decoded image lies in the basis or is a
    /// designated degenerate state.
    pub fn passed(&self) -> bool {
        self.round_trip_ok() && self.outside_count == 0
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "code {} (N={}, n={}), basis of {} states",
            self.code, self.modes, self.qubits, self.basis_size
        )?;
        writeln!(
            f,
            "round trip: {} failure(s)",
            self.round_trip_failure_count
        )?;
        writeln!(
            f,
            "decode scan: {} word(s){}, {} outside basis, {} degenerate",
            self.words_scanned,
            if self.exhaustive { "" } else { " (sampled)" },
            self.outside_count,
            self.degenerate_count
        )?;
        let hist: Vec<String> = self
            .image_weights
            .iter()
            .map(|(w, c)| format!("{w}:{c}"))
            .collect();
        writeln!(f, "image weights: {}", hist.join(" "))?;
        write!(f, "one-to-one: {}", if self.one_to_one { "yes" } else { "no" })
    }
}

/// Checks `d(e(nu)) = nu` on the basis, scans code words for images outside
/// it, and tests whether `e(d(w)) = w` everywhere.
pub fn validate_code(code: &Code, spec: &BasisSpec, opts: ValidationOptions) -> Result<ValidationReport> {
    if spec.modes() != code.modes() {
        return Err(Error::dim("validate_code basis modes", code.modes(), spec.modes()));
    }
    let basis = enumerate_basis(spec);
    let failures: Vec<&BitVec> = basis.iter().filter(|nu| !code.round_trips(nu)).collect();

    let n = code.qubits();
    let exhaustive = n < 63 && (1u64 << n) as u128 <= opts.budget as u128;
    let words: Box<dyn Iterator<Item = BitVec>> = if exhaustive {
        Box::new((0..1u64 << n).map(move |k| BitVec::from_u64(n, k)))
    } else if let Some((count, seed)) = opts.sample {
        let mut rng = StdRng::seed_from_u64(seed);
        Box::new((0..count).map(move |_| {
            let bits: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
            BitVec::from_bools(&bits)
        }))
    } else {
        return Err(Error::budget(
            format!("exhaustive scan of 2^{n} code words"),
            opts.budget,
        ));
    };

    let mut report = ValidationReport {
        code: code.label(),
        modes: code.modes(),
        qubits: n,
        basis_size: basis.len(),
        round_trip_failures: failures.iter().take(EXAMPLES).map(|v| v.to_string()).collect(),
        round_trip_failure_count: failures.len(),
        words_scanned: 0,
        exhaustive,
        outside_images: Vec::new(),
        outside_count: 0,
        degenerate_count: 0,
        image_weights: BTreeMap::new(),
        one_to_one: true,
    };
    for w in words {
        report.words_scanned += 1;
        let image = code.decode_unchecked(&w);
        *report.image_weights.entry(image.weight()).or_default() += 1;
        if code.encode_unchecked(&image) != w {
            report.one_to_one = false;
        }
        if !spec.contains(&image) {
            if code.is_designated_degenerate(&image) {
                report.degenerate_count += 1;
            } else {
                report.outside_count += 1;
                if report.outside_images.len() < EXAMPLES {
                    report.outside_images.push((w.to_string(), image.to_string()));
                }
            }
        }
    }
    Ok(report)
}
