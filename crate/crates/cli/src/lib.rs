//! Command-line front end: JSON sextuple documents, reports and SVG scenes.

pub mod commands;
pub mod document;
pub mod error;
pub mod scalar_io;
pub mod svg;

pub use commands::{run, Cli, Command};
pub use document::SextupleDocument;
pub use error::CliError;
