use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;

use super::builtin::resolve_code;
use super::models::{gen_h2, gen_hubbard, H2Params, HubbardParams};
use crate::bitmath::DEFAULT_MONOMIAL_BUDGET;
use crate::codes::{enumerate_basis, load_code, validate_code, BasisSpec, Code, ValidationOptions};
use crate::error::{Error, Result};
use crate::fock_oracle::{check_compatibility, verify_equivalence, CompatibilityReport, Failure, Status};
use crate::pauli::{HermiticityReport, QubitOperator, DEFAULT_EPSILON};
use crate::transform::{
    adjust_for_segments, normal_order_blocks, FermionHamiltonian, TransformOptions, Transformer,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

/// Exit status for an error that ends a run.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Budget { .. } => EXIT_BUDGET,
        Error::NonHermitian { .. } => EXIT_VERIFY_FAILED,
        _ => EXIT_INPUT,
    }
}

/// Where the fermionic Hamiltonian comes from.
#[derive(Clone, Debug, PartialEq)]
pub enum HamiltonianSource {
    File(PathBuf),
    Hubbard(HubbardParams),
    H2(H2Params),
}

impl HamiltonianSource {
    pub fn load(&self) -> Result<FermionHamiltonian> {
        match self {
            HamiltonianSource::File(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
                FermionHamiltonian::parse_text(&text, None)
            }
            HamiltonianSource::Hubbard(p) => gen_hubbard(*p),
            HamiltonianSource::H2(p) => Ok(gen_h2(*p)),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub hamiltonian: HamiltonianSource,
    /// Code-spec path or builtin name.
    pub code: String,
    pub out: Option<PathBuf>,
    pub verify: bool,
    pub basis: Option<String>,
    /// JSON verification report.
    pub report: Option<PathBuf>,
    pub epsilon: f64,
    pub budget: usize,
    pub no_adjust: bool,
}

impl RunConfig {
    pub fn new(hamiltonian: HamiltonianSource, code: impl Into<String>) -> Self {
        RunConfig {
            hamiltonian,
            code: code.into(),
            out: None,
            verify: false,
            basis: None,
            report: None,
            epsilon: DEFAULT_EPSILON,
            budget: DEFAULT_MONOMIAL_BUDGET,
            no_adjust: false,
        }
    }

    fn options(&self) -> TransformOptions {
        TransformOptions {
            budget: self.budget,
            epsilon: self.epsilon,
            ..TransformOptions::default()
        }
    }
}

/// Everything a transform run produces.
pub struct Pipeline {
    pub code: Code,
    /// The Hamiltonian as loaded.
    pub original: FermionHamiltonian,
    /// What was transformed: after normal ordering and segment dressing
    /// when those applied.
    pub transformed_input: FermionHamiltonian,
    pub adjusted: bool,
    pub operator: QubitOperator,
    pub hermiticity: HermiticityReport,
}

impl Pipeline {
    /// The operator, or the non-hermiticity error.
    pub fn hermitian_operator(&self) -> Result<&QubitOperator> {
        match &self.hermiticity.witness {
            None => Ok(&self.operator),
            Some((s, c)) => Err(Error::NonHermitian {
                witness: s.to_string(),
                coeff: format!("{c}"),
            }),
        }
    }
}

/// Loads, optionally adjusts for segments and transforms. A non-hermitian
/// result is recorded, not raised.
pub fn build_pipeline(cfg: &RunConfig) -> Result<Pipeline> {
    let original = cfg.hamiltonian.load()?;
    let code = resolve_code(&cfg.code, original.modes())?;
    let adjusted = code.has_segments() && !cfg.no_adjust;
    let transformed_input = if adjusted {
        adjust_for_segments(&normal_order_blocks(&original)?, &code.segments())?
    } else {
        original.clone()
    };
    let result = Transformer::new(&code, cfg.options()).transform_hamiltonian(&transformed_input)?;
    Ok(Pipeline {
        code,
        original,
        transformed_input,
        adjusted,
        operator: result.operator,
        hermiticity: result.hermiticity,
    })
}

fn write_output(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| Error::Input(format!("cannot write {}: {e}", p.display()))),
        None => Ok(out.write_all(text.as_bytes())?),
    }
}

/// The stats line `qubits=<n> terms=<T> gates=<W>`.
pub fn stats_line(op: &QubitOperator) -> String {
    format!("qubits={} {}", op.num_qubits(), op.count_stats())
}

/// `transform`: writes the Pauli file and prints the stats line (to `log`
/// when the operator itself goes to `out`).
pub fn run_transform(cfg: &RunConfig, out: &mut dyn Write, log: &mut dyn Write) -> Result<i32> {
    let started = Instant::now();
    let p = build_pipeline(cfg)?;
    p.hermitian_operator()?;
    write_output(cfg.out.as_deref(), &p.operator.to_text(), out)?;
    let info: &mut dyn Write = if cfg.out.is_some() { out } else { log };
    writeln!(info, "{}", stats_line(&p.operator))?;
    let stats = p.operator.count_stats();
    writeln!(
        info,
        "terms_without_identity={} code={} adjusted={} seconds={:.2}",
        stats.terms_without_identity,
        p.code.label(),
        p.adjusted,
        started.elapsed().as_secs_f64()
    )?;
    if cfg.verify {
        return finish_verification(cfg, &p, info);
    }
    Ok(EXIT_OK)
}

/// Combined equivalence and compatibility outcome. The JSON form carries
/// `status`, `max_deviation` and `failures` at the top level.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub status: Status,
    pub max_deviation: f64,
    pub failures: Vec<Failure>,
    pub states_checked: usize,
    pub mismatch_count: usize,
    pub incompatible_count: usize,
    pub hermitian: bool,
    /// Full code-word scan, when the code saves qubits and the scan fits
    /// the budget.
    pub compatibility: Option<CompatibilityReport>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "status: {}", self.status)?;
        writeln!(f, "states checked: {}", self.states_checked)?;
        writeln!(f, "max deviation: {:.3e}", self.max_deviation)?;
        writeln!(
            f,
            "mismatches: {}, incompatible: {}, hermitian: {}",
            self.mismatch_count, self.incompatible_count, self.hermitian
        )?;
        // The scan's examples are already among the failures.
        match &self.compatibility {
            Some(c) => writeln!(
                f,
                "compatibility: {} encoded state(s) from {} word(s), {} mapped outside",
                c.encoded_states, c.words_scanned, c.incompatible_count
            )?,
            None => writeln!(f, "compatibility: scan skipped")?,
        }
        for fail in &self.failures {
            writeln!(f, "  {}: {}", fail.nu, fail.detail)?;
        }
        Ok(())
    }
}

/// Checks the transformed operator against the loaded Hamiltonian on the
/// basis, and scans the code words for states that the transformed
/// Hamiltonian would carry out of the encoded set.
pub fn verify_pipeline(p: &Pipeline, basis: &[crate::bitmath::BitVec], budget: usize) -> Result<VerifyReport> {
    let eq = verify_equivalence(&p.code, &p.original, &p.operator, basis)?;
    let n = p.code.qubits();
    let scan = n < p.code.modes() && n < 63 && (1u128 << n) <= budget as u128;
    let compatibility = if scan {
        Some(check_compatibility(&p.code, &p.transformed_input, budget)?)
    } else {
        None
    };
    let mut report = VerifyReport {
        status: eq.status,
        max_deviation: eq.max_deviation,
        failures: eq.failures,
        states_checked: eq.states_checked,
        mismatch_count: eq.mismatch_count,
        incompatible_count: eq.incompatible_count,
        hermitian: p.hermiticity.hermitian,
        compatibility: None,
    };
    if let Some((s, c)) = &p.hermiticity.witness {
        if report.status == Status::Pass {
            report.status = Status::Fail;
        }
        report.failures.push(Failure {
            nu: "-".into(),
            detail: format!("transformed operator is not hermitian: {s} has coefficient {c}"),
        });
    }
    if let Some(c) = &compatibility {
        if !c.compatible() {
            report.status = Status::Incompatible;
            report.incompatible_count += c.incompatible_count;
            report.failures.extend(c.examples.iter().map(|(nu, image)| Failure {
                nu: nu.clone(),
                detail: format!("a term maps this encoded state to {image}, which the code does not encode"),
            }));
        }
    }
    report.compatibility = compatibility;
    Ok(report)
}

fn finish_verification(cfg: &RunConfig, p: &Pipeline, out: &mut dyn Write) -> Result<i32> {
    let text = cfg
        .basis
        .as_deref()
        .ok_or_else(|| Error::Input("verification needs --basis".into()))?;
    let basis = enumerate_basis(&BasisSpec::parse(text, p.code.modes())?);
    let report = verify_pipeline(p, &basis, cfg.budget)?;
    write!(out, "{report}")?;
    if let Some(path) = &cfg.report {
        let json = serde_json::to_string_pretty(&report)?;
        std::fs::write(path, json + "\n")
            .map_err(|e| Error::Input(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(if report.passed() { EXIT_OK } else { EXIT_VERIFY_FAILED })
}

/// `verify`: transform, then check against the fermionic action.
pub fn run_verify(cfg: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    let p = build_pipeline(cfg)?;
    writeln!(out, "{}", stats_line(&p.operator))?;
    if let Some(path) = &cfg.out {
        std::fs::write(path, p.operator.to_text())?;
    }
    finish_verification(cfg, &p, out)
}

#[derive(Clone, Debug)]
pub struct ValidateConfig {
    pub code: String,
    /// Mode count for builtin names; unused for spec files.
    pub modes: Option<usize>,
    pub basis: Option<String>,
    pub budget: usize,
    pub sample: Option<(usize, u64)>,
    pub report: Option<PathBuf>,
}

/// `validate-code`: round trips on the basis and a scan of decoded images.
pub fn run_validate(cfg: &ValidateConfig, out: &mut dyn Write) -> Result<i32> {
    let path = Path::new(&cfg.code);
    let code = if path.is_file() || cfg.code.ends_with(".json") {
        load_code(path)?
    } else {
        let modes = cfg
            .modes
            .ok_or_else(|| Error::Input("builtin code names need --modes".into()))?;
        resolve_code(&cfg.code, modes)?
    };
    let spec = match &cfg.basis {
        Some(text) => BasisSpec::parse(text, code.modes())?,
        None => BasisSpec::full(code.modes()),
    };
    let report = validate_code(
        &code,
        &spec,
        ValidationOptions {
            budget: cfg.budget,
            sample: cfg.sample,
        },
    )?;
    writeln!(out, "{report}")?;
    if let Some(p) = &cfg.report {
        std::fs::write(p, serde_json::to_string_pretty(&report)? + "\n")?;
    }
    Ok(if report.passed() { EXIT_OK } else { EXIT_VERIFY_FAILED })
}

/// `gen-model`: writes the Hamiltonian in the term-per-line text form.
pub fn run_gen_model(source: &HamiltonianSource, path: Option<&Path>, out: &mut dyn Write) -> Result<i32> {
    let h = source.load()?;
    write_output(path, &h.to_text(), out)?;
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h2_pipeline_stats() {
        let cfg = RunConfig::new(HamiltonianSource::H2(H2Params::default()), "h2");
        let p = build_pipeline(&cfg).unwrap();
        assert_eq!(stats_line(&p.operator), "qubits=2 terms=5 gates=6");
    }

    #[test]
    fn error_exit_codes() {
        assert_eq!(exit_code(&Error::budget("x", 1)), EXIT_BUDGET);
        assert_eq!(exit_code(&Error::Input("x".into())), EXIT_INPUT);
        let cfg = RunConfig::new(HamiltonianSource::File("/no/such/file".into()), "jw");
        assert_eq!(exit_code(&build_pipeline(&cfg).err().unwrap()), EXIT_INPUT);
    }

    #[test]
    fn segment_hops_need_adjustment() {
        let model = HamiltonianSource::Hubbard(HubbardParams {
            rows: 2,
            cols: 5,
            ..Default::default()
        });
        let mut cfg = RunConfig::new(model, "jw:modes=10+segment");
        cfg.basis = Some("1-10:2;11-20:2".into());
        let adjusted = build_pipeline(&cfg).unwrap();
        assert!(adjusted.adjusted);
        cfg.no_adjust = true;
        let raw = build_pipeline(&cfg).unwrap();
        assert!(adjusted.hermitian_operator().is_ok());
        assert!(raw.hermitian_operator().is_err());
        let basis = enumerate_basis(&BasisSpec::parse("1-10:2;11-20:2", 20).unwrap());
        let report = verify_pipeline(&raw, &basis[..50], 1 << 20).unwrap();
        assert_eq!(report.status, Status::Incompatible);
        assert_eq!(report.mismatch_count, 0);
    }
}
