//! Command-line front end for `hochschild-core`: JSON file formats, report
//! serialization and the bundled fixture corpus.

pub mod commands;
pub mod fixtures;
pub mod format;
