//! Front end for `homlines-core`: space specifications, report documents,
//! table regeneration and the self-test suite.

pub mod commands;
pub mod fixtures;
pub mod oracles;
pub mod report;
pub mod selftest;
pub mod spec;
pub mod tables;

pub use commands::{run_command, Outcome};
pub use report::{Format, Report};
pub use spec::{format_space, parse_space, SpaceSpec, SpecError};

use homlines_core::chow::ChowError;
use homlines_core::Error as CoreError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error(transparent)]
    Chow(#[from] ChowError),
    #[error("self-test failed: {0} check(s)")]
    SelftestFailed(usize),
}

impl CliError {
    /// 2 for bad input, 3 for refused computations, 1 for a failed self-test.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Spec(_) => 2,
            CliError::Core(e) => match e {
                CoreError::UnsupportedCase { .. }
                | CoreError::CaseIHasNoRelativeTangent { .. }
                | CoreError::MultipleMarks { .. }
                | CoreError::Unclassified { .. } => 3,
                _ => 2,
            },
            CliError::Chow(ChowError::UnknownPreset(_) | ChowError::OutOfBox { .. }) => 2,
            CliError::Chow(_) => 3,
            CliError::SelftestFailed(_) => 1,
        }
    }
}
