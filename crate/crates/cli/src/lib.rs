//! Library side of the `slocc` command: state files, reports and the
//! command implementations.

pub mod commands;
pub mod report;
pub mod state_file;

pub use commands::{
    bound, canonical, canonical_state, classify_source, classify_state, ClassifyOptions, CliError, CANONICAL_NAMES,
};
pub use report::{Mode, Report};
pub use state_file::{ParseError, StateFile};
