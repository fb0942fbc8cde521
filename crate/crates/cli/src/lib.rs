//! Verification harness behind the `grasslab` binary.

mod args;
mod commands;
mod report;
mod stages;

pub use args::{Cli, Command, CommonArgs, Format, PartitionArgs, VerifyArgs, WitnessArgs};
pub use commands::{run, run_partition, run_verify, run_witness};
pub use report::{ParamsView, Skipped, VerificationReport, SCHEMA};
pub use stages::Stage;

use grasslab::gflinalg::Subspace;
use grasslab::qalg::{Params, TableId};
use grasslab::Error;

/// Default number of random same-class pairs per class for witness spot checks.
pub const DEFAULT_WITNESS_SAMPLES: usize = 25;

/// A fully validated set of run parameters.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub params: Params,
    pub seed: u64,
    pub vertex_budget: u128,
    pub local_budget: u128,
    pub witness_samples: usize,
    pub skip: Vec<Stage>,
    pub format: Format,
    pub tamper: Option<TableId>,
    pub timings: bool,
}

impl RunConfig {
    pub fn new(q: u32, n: u32, k: u32, i: u32, seed: u64) -> Result<Self, CliError> {
        let params = Params::local(q, n, k, i).map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(RunConfig {
            params,
            seed,
            vertex_budget: grasslab::grassmann::DEFAULT_VERTEX_BUDGET,
            local_budget: grasslab::spectra::DEFAULT_LOCAL_BUDGET,
            witness_samples: DEFAULT_WITNESS_SAMPLES,
            skip: Vec::new(),
            format: Format::Json,
            tamper: None,
            timings: false,
        })
    }

    pub fn i(&self) -> usize {
        self.params.interior_i().expect("validated") as usize
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage error: {0}")]
    Usage(String),
    #[error(transparent)]
    Lib(#[from] Error),
}

impl CliError {
    /// 64 for usage and parse errors, 2 for domain and class errors, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Lib(Error::Parse(_)) => 64,
            CliError::Lib(Error::Internal(_)) => 1,
            CliError::Lib(_) => 2,
        }
    }
}

/// Parses a subspace given on the command line.
pub fn parse_subspace(text: &str) -> Result<Subspace, CliError> {
    Ok(Subspace::parse(text)?)
}
