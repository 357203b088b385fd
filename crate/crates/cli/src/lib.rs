//! Front end for the `cyclic-matroids` library: a JSON document format,
//! command implementations and the verification suite.

pub mod commands;
pub mod document;
pub mod error;
pub mod suite;

pub use document::{MatroidDocument, Representation};
pub use error::{CliError, CliResult};
