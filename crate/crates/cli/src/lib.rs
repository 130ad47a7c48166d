//! Library side of the `spinfluct` command: state JSON schema, preset
//! catalog, analysis documents and command dispatch.

pub mod analysis;
pub mod commands;
pub mod error;
pub mod presets;
pub mod schema;

pub use analysis::{analyze, AnalysisDocument, System};
pub use commands::{run, run_with_args, Cli, Outcome};
pub use error::CliError;
