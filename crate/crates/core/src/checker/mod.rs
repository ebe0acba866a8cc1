//! Semantic engine: pointwise evaluation, bottom-up labelling, bounded model
//! enumeration, countermodel search and random models.

mod enumerate;
mod eval;
mod frame;
mod random;
mod schema_check;
mod validity;

use std::fmt;

use thiserror::Error;

use crate::model::ModelError;

pub use enumerate::{enumerate_models, ModelSpace};
pub use eval::{evaluate, Evaluation};
pub use frame::{label, Extension, Frame, Labelling};
pub use random::random_model;
pub use schema_check::{
    check_schema_on_model, check_schema_on_model_with, instances, SchemaViolation,
};
pub use validity::{bounded_validity, minimize_counterexample, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("formula uses name `{0}`, which the model does not have")]
    UnknownName(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("bounds need at least one name")]
    NoNames,
    #[error("model space at these bounds is too large to index")]
    SpaceTooLarge,
    #[error("formula uses name `{0}`; enumerated models only have names n1..n{1}")]
    NameOutsideBounds(String, usize),
}

/// Size caps for model enumeration and random generation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Bounds {
    max_states: usize,
    max_agents: usize,
    max_names: usize,
    max_vars: usize,
}

impl Bounds {
    pub fn new(
        max_states: usize,
        max_agents: usize,
        max_names: usize,
        max_vars: usize,
    ) -> Result<Self, CheckError> {
        if max_names == 0 {
            return Err(CheckError::NoNames);
        }
        Ok(Bounds {
            max_states,
            max_agents,
            max_names,
            max_vars,
        })
    }

    pub fn max_states(&self) -> usize {
        self.max_states
    }

    pub fn max_agents(&self) -> usize {
        self.max_agents
    }

    pub fn max_names(&self) -> usize {
        self.max_names
    }

    pub fn max_vars(&self) -> usize {
        self.max_vars
    }

    pub(crate) fn with_vars(self, max_vars: usize) -> Self {
        Bounds { max_vars, ..self }
    }
}

/// Desk-scale default: two states, two agents, one name, one variable.
impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_states: 2,
            max_agents: 2,
            max_names: 1,
            max_vars: 1,
        }
    }
}

impl fmt::Display for Bounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "states={} agents={} names={} vars={}",
            self.max_states, self.max_agents, self.max_names, self.max_vars
        )
    }
}
