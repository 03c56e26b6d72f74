//! Library side of the `deleg` binary: flag definitions, config merging,
//! report types, and rendering. Kept as a lib so integration tests can
//! parse the published output shapes back into their types.

pub mod cli;
pub mod config;
pub mod error;
pub mod render;
pub mod report;
pub mod run;

pub use cli::Cli;
pub use error::CliError;
pub use run::run;
