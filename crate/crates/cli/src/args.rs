use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "uvqc",
    version,
    about = "Compile circuits into certified variational objectives"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Conjugate single-qubit projectors through a circuit and certify
    /// every prefix.
    Telescope(TelescopeArgs),
    /// Build the clock-register propagation objective for a circuit.
    Clock(ClockArgs),
    /// Minimise an objective over an ansatz family.
    Optimize(OptimizeArgs),
    /// Sample ebits of random ansatz states against the area-law ceiling.
    Arealaw(ArealawArgs),
    /// Re-check a witness circuit against an objective.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct Common {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Largest qubit count diagonalised densely.
    #[arg(long, default_value_t = 12)]
    pub dense_cap: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// JSON report path; printed to stdout when absent.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

impl Common {
    pub fn max_dim(&self) -> usize {
        1usize
            .checked_shl(self.dense_cap as u32)
            .unwrap_or(usize::MAX)
    }
}

#[derive(Debug, Args)]
pub struct TelescopeArgs {
    #[arg(long)]
    pub circuit: PathBuf,
    /// Single-qubit circuit preparing the product input state.
    #[arg(long)]
    pub product_map: Option<PathBuf>,
    /// Largest number of Pauli terms allowed in any prefix objective.
    #[arg(long, default_value_t = uvqc::telescope::DEFAULT_CARDINALITY_CAP)]
    pub max_cardinality: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct ClockArgs {
    #[arg(long)]
    pub circuit: PathBuf,
    #[arg(long)]
    pub input_map: Option<PathBuf>,
    #[arg(long = "J", default_value_t = 1.0)]
    pub j: f64,
    #[arg(long = "K", default_value_t = 1.0)]
    pub k: f64,
    /// Identity gates appended after the circuit.
    #[arg(long, default_value_t = 0)]
    pub pad: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum AnsatzKind {
    HardwareEfficient,
    BrickLayer,
    CircuitShaped,
}

#[derive(Debug, Args)]
pub struct OptimizeArgs {
    #[arg(long)]
    pub objective: PathBuf,
    #[arg(long, value_enum, default_value_t = AnsatzKind::HardwareEfficient)]
    pub ansatz: AnsatzKind,
    /// Template circuit for `circuit_shaped`.
    #[arg(long, required_if_eq("ansatz", "circuit_shaped"))]
    pub template: Option<PathBuf>,
    #[arg(long, default_value = "line")]
    pub geometry: uvqc::variational::Geometry,
    #[arg(long, default_value_t = 1)]
    pub depth: usize,
    #[arg(long)]
    pub delta: f64,
    #[arg(long, default_value_t = uvqc::variational::DEFAULT_BUDGET)]
    pub budget: usize,
    /// Shots per Pauli term for each evaluation; 0 is exact.
    #[arg(long, default_value_t = 0)]
    pub shots: u64,
    #[arg(long)]
    pub restarts: Option<usize>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CutSet {
    Contiguous,
    Balanced,
    All,
}

#[derive(Debug, Args)]
pub struct ArealawArgs {
    #[arg(long)]
    pub geometry: uvqc::variational::Geometry,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub depth: usize,
    #[arg(long, default_value_t = 1000)]
    pub draws: usize,
    #[arg(long, value_enum, default_value_t = AnsatzKind::HardwareEfficient)]
    pub ansatz: AnsatzKind,
    /// `all` adds balanced cuts to the contiguous ones up to 8 qubits.
    #[arg(long, value_enum, default_value_t = CutSet::All)]
    pub cuts: CutSet,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub objective: PathBuf,
    /// Circuit applied to `|0...0>`.
    #[arg(long)]
    pub witness: PathBuf,
    #[arg(long, default_value_t = 1.0)]
    pub delta: f64,
    #[command(flatten)]
    pub common: Common,
}
