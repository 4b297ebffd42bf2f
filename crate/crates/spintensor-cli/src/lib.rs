//! Document types and error classification shared by the `spintensor` binary
//! and its tests.

use std::fmt;

pub mod doc;

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or malformed/invalid input documents; exit code 1.
    Input(String),
    /// The library contradicted itself; exit code 2.
    Consistency(String),
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        Self::Input(msg.into())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Input(m) => write!(f, "input error: {m}"),
            Self::Consistency(m) => write!(f, "consistency error: {m}"),
        }
    }
}
