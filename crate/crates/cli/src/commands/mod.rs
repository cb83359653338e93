pub mod asym;
pub mod endo;
pub mod lab;
pub mod linear;
pub mod spectral;
pub mod subgroup;

use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::Value;
use torus_core::linalg::IntMatrix;
use torus_core::wire::{parse_matrix, Scalar};

#[derive(Debug)]
pub enum CliError {
    /// Malformed input; exit code 2.
    Usage(String),
    /// Valid input rejected by the library; exit code 1.
    Domain(torus_core::Error),
}

impl From<torus_core::Error> for CliError {
    fn from(e: torus_core::Error) -> Self {
        CliError::Domain(e)
    }
}

pub type CmdResult = Result<Value, CliError>;

#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub precision: u32,
}

pub fn parse<T: DeserializeOwned>(input: &str, schema: &str) -> Result<T, CliError> {
    serde_json::from_str(input).map_err(|e| CliError::Usage(format!("{e}\nexpected input: {schema}")))
}

/// A bare matrix or `{"matrix": ...}`.
#[derive(Deserialize)]
#[serde(untagged)]
pub enum MatrixInput {
    Bare(Vec<Vec<Scalar>>),
    Wrapped(Wrapped),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Wrapped {
    matrix: Vec<Vec<Scalar>>,
}

pub const MATRIX_SCHEMA: &str = r#"[[int, ...], ...] or {"matrix": [[int, ...], ...]}"#;

pub fn parse_matrix_input(input: &str) -> Result<IntMatrix, CliError> {
    let rows = match parse::<MatrixInput>(input, MATRIX_SCHEMA)? {
        MatrixInput::Bare(m) => m,
        MatrixInput::Wrapped(w) => w.matrix,
    };
    Ok(parse_matrix(&rows)?)
}
