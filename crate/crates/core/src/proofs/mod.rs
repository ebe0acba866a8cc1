//! Hilbert-style derivations: schemas, a line-by-line checker, the
//! derivation file format and the box-lifting transformation.

mod derivation;
mod file;
mod lift;
mod schema;
mod tautology;

use thiserror::Error;

use crate::formula::ParseError;

pub use derivation::{
    check_derivation, Accepted, Derivation, DerivationError, Justification, Line, LineKind,
    Rejection,
};
pub use file::{load_derivation, store_derivation, DerivationFile, FileLine};
pub use lift::lift_box;
pub use schema::{match_schema, Binding, BoxModality, MetaVar, Pattern, Schema, SchemaId};
pub use tautology::{check_tautology, ATOM_BUDGET};

#[derive(Debug, Error)]
pub enum ProofError {
    #[error("unknown box modality `{0}`, expected K or A")]
    BadBox(String),
    #[error("unknown schema `{0}`")]
    UnknownSchema(String),
    #[error("schema {0} needs a binding for {1}")]
    MissingBinding(SchemaId, MetaVar),
    #[error("schema {0} needs a box modality")]
    MissingBox(SchemaId),
    #[error("{0} atoms exceed the truth table budget")]
    AtomBudget(usize),
    #[error("malformed derivation file: {0}")]
    Malformed(#[from] serde_json::Error),
    #[error("{context}: {source}")]
    Formula {
        context: String,
        #[source]
        source: ParseError,
    },
    #[error("line {line}: {message}")]
    BadArgs { line: usize, message: String },
    #[error("cannot access {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}
