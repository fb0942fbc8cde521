use clap::{Args, Parser, Subcommand, ValueEnum};
use grasslab::qalg::TableId;

use crate::stages::Stage;
use crate::{CliError, RunConfig, DEFAULT_WITNESS_SAMPLES};

#[derive(Debug, Parser)]
#[command(name = "grasslab", version, about = "Exact verification of the five-orbit partition of Grassmann local graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the y-partition of Γ(x) and compare class sizes with the closed forms.
    Partition(PartitionArgs),
    /// Run every verification stage and emit a report.
    Verify(VerifyArgs),
    /// Construct a verified element of Stab(x,y) moving z to z2.
    Witness(WitnessArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Markdown,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    #[arg(long)]
    pub q: u32,
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub k: u32,
    #[arg(long)]
    pub i: u32,
    /// Seed 0 is the coordinate pair; other seeds move it by a random element of GL(V).
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Include per-stage wall times (makes output nondeterministic).
    #[arg(long)]
    pub timings: bool,
}

impl CommonArgs {
    pub fn config(&self) -> Result<RunConfig, CliError> {
        let mut cfg = RunConfig::new(self.q, self.n, self.k, self.i, self.seed)?;
        cfg.format = self.format;
        cfg.timings = self.timings;
        Ok(cfg)
    }
}

#[derive(Debug, Args)]
pub struct PartitionArgs {
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Stages to leave out.
    #[arg(long, value_enum, value_delimiter = ',')]
    pub skip: Vec<Stage>,
    /// Largest number of vertices enumerated for the BFS stage.
    #[arg(long, default_value_t = grasslab::grassmann::DEFAULT_VERTEX_BUDGET as u64,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub vertex_budget: u64,
    /// Largest valency for which the local adjacency matrix is built.
    #[arg(long, default_value_t = grasslab::spectra::DEFAULT_LOCAL_BUDGET as u64,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub local_budget: u64,
    /// Random same-class pairs per class in the witness stage.
    #[arg(long, default_value_t = DEFAULT_WITNESS_SAMPLES)]
    pub witness_samples: usize,
    /// Perturb one closed-form table before comparison.
    #[arg(long, hide = true, value_parser = parse_table)]
    pub tamper: Option<TableId>,
}

impl VerifyArgs {
    pub fn config(&self) -> Result<RunConfig, CliError> {
        let mut cfg = self.common.config()?;
        cfg.skip = self.skip.clone();
        cfg.vertex_budget = self.vertex_budget.into();
        cfg.local_budget = self.local_budget.into();
        cfg.witness_samples = self.witness_samples;
        cfg.tamper = self.tamper;
        Ok(cfg)
    }
}

#[derive(Debug, Args)]
pub struct WitnessArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// First neighbor of x, in subspace text form.
    #[arg(long)]
    pub z: String,
    /// Second neighbor of x, in subspace text form.
    #[arg(long)]
    pub z2: String,
}

fn parse_table(s: &str) -> Result<TableId, String> {
    s.parse().map_err(|e: grasslab::Error| e.to_string())
}
