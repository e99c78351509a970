//! Command-line front end for `indperm`: sequence tables, the verification
//! suite, the `1-32` bijection, and OEIS b-file cross-checks.
//!
//! Exit codes: 0 success, 1 verification mismatch or bad data, 2 usage
//! error, 3 network failure.

pub mod app;
pub mod oeis;
pub mod report;

pub use app::{run, Cli};
pub use oeis::{compare, fetch_bfile, parse_bfile, Comparison, Provenance, SequenceRecord};
pub use report::{Report, Status};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("data: {0}")]
    Data(String),
    #[error("network: {0}")]
    Network(String),
    #[error(transparent)]
    Core(#[from] indperm::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Data(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Network(_) => 3,
            CliError::Core(indperm::Error::FormulaIntegrity { .. }) => 1,
            CliError::Core(_) => 2,
        }
    }
}
