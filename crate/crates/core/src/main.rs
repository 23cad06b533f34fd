use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fermion_codes::bitmath::DEFAULT_MONOMIAL_BUDGET;
use fermion_codes::cli::{
    exit_code, run_gen_model, run_transform, run_validate, run_verify, H2Params, HamiltonianSource, HubbardParams, Lattice,
    RunConfig, ValidateConfig, EXIT_INPUT,
};
use fermion_codes::pauli::DEFAULT_EPSILON;

#[derive(Parser)]
#[command(name = "fermion-codes", version, about = "Map fermionic Hamiltonians to qubit operators through binary codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Transform a Hamiltonian and write the Pauli-sum file.
    Transform(RunArgs),
    /// Transform and compare with the fermionic action on a basis.
    Verify(RunArgs),
    /// Check a code's round trips and decoded images.
    ValidateCode(ValidateArgs),
    /// Write a model Hamiltonian in the text format.
    GenModel(ModelArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum LatticeArg {
    Ladder,
    Reduced,
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Hubbard,
    H2,
}

#[derive(Args)]
struct ModelArgs {
    /// Generated model, used instead of --hamiltonian.
    #[arg(long, value_enum)]
    model: Option<Model>,
    #[arg(long, default_value_t = 2)]
    rows: usize,
    #[arg(long, default_value_t = 5)]
    cols: usize,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    t: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    u: f64,
    /// Open rows instead of periodic ones.
    #[arg(long)]
    open: bool,
    /// Full ladder, or horizontal links in the first row only.
    #[arg(long, value_enum, default_value = "ladder")]
    lattice: LatticeArg,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    h11: f64,
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    h22: f64,
    #[arg(long, default_value_t = 0.2, allow_negative_numbers = true)]
    h1331: f64,
    #[arg(long, default_value_t = 0.2, allow_negative_numbers = true)]
    h2442: f64,
    #[arg(long, default_value_t = 0.3, allow_negative_numbers = true)]
    h1221: f64,
    #[arg(long, default_value_t = 0.1, allow_negative_numbers = true)]
    h1212: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl ModelArgs {
    fn source(&self, file: Option<PathBuf>) -> Result<HamiltonianSource, String> {
        match (file, self.model) {
            (Some(path), None) => Ok(HamiltonianSource::File(path)),
            (None, Some(Model::Hubbard)) => Ok(HamiltonianSource::Hubbard(HubbardParams {
                rows: self.rows,
                cols: self.cols,
                hopping: self.t,
                interaction: self.u,
                periodic: !self.open,
                lattice: match self.lattice {
                    LatticeArg::Ladder => Lattice::Ladder,
                    LatticeArg::Reduced => Lattice::Reduced,
                },
            })),
            (None, Some(Model::H2)) => Ok(HamiltonianSource::H2(H2Params {
                h11: self.h11,
                h22: self.h22,
                h1331: self.h1331,
                h2442: self.h2442,
                h1221: self.h1221,
                h1212: self.h1212,
            })),
            (Some(_), Some(_)) => Err("give either --hamiltonian or --model, not both".into()),
            (None, None) => Err("give --hamiltonian <path> or --model hubbard|h2".into()),
        }
    }
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    hamiltonian: Option<PathBuf>,
    #[command(flatten)]
    model: ModelArgs,
    /// Code-spec JSON path or builtin name such as checksum+segment:k=2.
    #[arg(long)]
    code: String,
    #[arg(long)]
    verify: bool,
    /// Basis suits, e.g. "1-10:2;11-20:2".
    #[arg(long)]
    basis: Option<String>,
    /// Write the verification report as JSON.
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_EPSILON)]
    epsilon: f64,
    #[arg(long, default_value_t = DEFAULT_MONOMIAL_BUDGET)]
    budget: usize,
    /// Skip normal ordering and segment dressing for segment codes.
    #[arg(long)]
    no_adjust: bool,
}

impl RunArgs {
    fn config(self, verify: bool) -> Result<RunConfig, String> {
        let source = self.model.source(self.hamiltonian)?;
        Ok(RunConfig {
            hamiltonian: source,
            code: self.code,
            out: self.model.out,
            verify: verify || self.verify,
            basis: self.basis,
            report: self.report,
            epsilon: self.epsilon,
            budget: self.budget,
            no_adjust: self.no_adjust,
        })
    }
}

#[derive(Args)]
struct ValidateArgs {
    #[arg(long)]
    code: String,
    /// Mode count for builtin code names.
    #[arg(long)]
    modes: Option<usize>,
    #[arg(long)]
    basis: Option<String>,
    #[arg(long, default_value_t = 1 << 20)]
    budget: usize,
    /// Scan this many random code words when the full scan exceeds the budget.
    #[arg(long)]
    sample: Option<usize>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    report: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let mut err = io::stderr();
    let result = match cli.command {
        Command::Transform(args) => match args.config(false) {
            Ok(cfg) => run_transform(&cfg, &mut out, &mut err),
            Err(msg) => return usage_error(&msg),
        },
        Command::Verify(args) => match args.config(true) {
            Ok(cfg) => run_verify(&cfg, &mut out),
            Err(msg) => return usage_error(&msg),
        },
        Command::ValidateCode(args) => run_validate(
            &ValidateConfig {
                code: args.code,
                modes: args.modes,
                basis: args.basis,
                budget: args.budget,
                sample: args.sample.map(|count| (count, args.seed)),
                report: args.report,
            },
            &mut out,
        ),
        Command::GenModel(args) => match args.source(None) {
            Ok(source) => run_gen_model(&source, args.out.as_deref(), &mut out),
            Err(msg) => return usage_error(&msg),
        },
    };
    let _ = out.flush();
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_INPUT as u8)
}
