use std::io;
use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Model(#[from] spectral_ce::Error),
    #[error("cannot write {}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("cannot write output: {0}")]
    Stdout(io::Error),
    #[error("self-check failed: {0}")]
    SelfCheck(String),
}

pub type CliResult<T> = std::result::Result<T, CliError>;

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_IO: u8 = 3;
pub const EXIT_SELF_CHECK: u8 = 4;

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use spectral_ce::Error as E;
        match self {
            CliError::Config(_) => EXIT_USAGE,
            CliError::Io { .. } | CliError::Stdout(_) => EXIT_IO,
            CliError::SelfCheck(_) => EXIT_SELF_CHECK,
            // numerical faults that no user input should provoke
            CliError::Model(E::EigenNonConvergence(_) | E::Bracketing(_) | E::NotInvertible(_)) => {
                EXIT_SELF_CHECK
            }
            CliError::Model(_) => EXIT_USAGE,
        }
    }
}
