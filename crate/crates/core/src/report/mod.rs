//! Configuration, artifacts and the command implementations behind the CLI.

pub mod artifact;
pub mod commands;
pub mod config;
pub mod svg;

pub use artifact::{GridArtifact, Provenance};
pub use commands::{run_command, Command, Format};
pub use config::RunConfig;
