//! The `.kwm` model file: a JSON object with the fields of [`RawModel`].

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{validate, validate_lenient, Model, ValidationErrors, Violation};

/// Unvalidated model description, field for field as in the file.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawModel {
    pub states: Vec<String>,
    pub agents: Vec<String>,
    #[serde(default)]
    pub presence: BTreeMap<String, Vec<String>>,
    /// Per agent, the list of indistinguishability classes.
    #[serde(default)]
    pub indist: BTreeMap<String, Vec<Vec<String>>>,
    pub names: Vec<String>,
    /// `[user, state, name, referent]` tuples.
    #[serde(default)]
    pub ident: Vec<[String; 4]>,
    /// Per variable, the `[agent, state]` views where it holds.
    #[serde(default)]
    pub valuation: BTreeMap<String, Vec<[String; 2]>>,
}

impl RawModel {
    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Canonical serialization: every list sorted, two-space indentation,
    /// trailing newline.
    pub fn to_json(&self) -> String {
        let mut canon = self.clone();
        canon.canonicalize();
        let mut out = serde_json::to_string_pretty(&canon).expect("model serializes");
        out.push('\n');
        out
    }

    pub fn canonicalize(&mut self) {
        self.states.sort();
        self.agents.sort();
        self.names.sort();
        self.ident.sort();
        for p in self.presence.values_mut() {
            p.sort();
        }
        for classes in self.indist.values_mut() {
            for c in classes.iter_mut() {
                c.sort();
            }
            classes.sort();
        }
        for views in self.valuation.values_mut() {
            views.sort();
        }
    }
}

#[derive(Debug, Error)]
pub enum ModelFileError {
    #[error("cannot access {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed model file {path}: {source}")]
    Malformed {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
    #[error("invalid model {path}:\n{errors}")]
    Invalid {
        path: PathBuf,
        errors: ValidationErrors,
    },
}

fn read_raw(path: &Path) -> Result<RawModel, ModelFileError> {
    let text = fs::read_to_string(path).map_err(|source| ModelFileError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    RawModel::from_json(&text).map_err(|source| ModelFileError::Malformed {
        path: path.to_path_buf(),
        source,
    })
}

/// Reads and validates a `.kwm` file.
pub fn load(path: impl AsRef<Path>) -> Result<Model, ModelFileError> {
    let path = path.as_ref();
    validate(&read_raw(path)?).map_err(|errors| ModelFileError::Invalid {
        path: path.to_path_buf(),
        errors,
    })
}

/// Reads a `.kwm` file, dropping identification tuples of absent users.
pub fn load_lenient(path: impl AsRef<Path>) -> Result<(Model, Vec<Violation>), ModelFileError> {
    let path = path.as_ref();
    validate_lenient(&read_raw(path)?).map_err(|errors| ModelFileError::Invalid {
        path: path.to_path_buf(),
        errors,
    })
}

pub fn store(model: &Model, path: impl AsRef<Path>) -> Result<(), ModelFileError> {
    let path = path.as_ref();
    fs::write(path, model.to_json()).map_err(|source| ModelFileError::Io {
        path: path.to_path_buf(),
        source,
    })
}
