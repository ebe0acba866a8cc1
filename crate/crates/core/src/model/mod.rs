//! Models with names: states, agents that may be absent from
//! states, per-agent indistinguishability over present states, and an
//! agent- and state-relative identification relation between names and
//! agents.

mod file;
mod validate;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use file::{load, load_lenient, store, ModelFileError, RawModel};
pub use validate::{validate, validate_lenient, ValidationErrors, Violation};

/// A pair (agent, state); formulae are evaluated at views.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "(String, String)", into = "(String, String)")]
pub struct View {
    pub agent: String,
    pub state: String,
}

impl View {
    pub fn new(agent: impl Into<String>, state: impl Into<String>) -> Self {
        View {
            agent: agent.into(),
            state: state.into(),
        }
    }
}

impl From<(String, String)> for View {
    fn from((agent, state): (String, String)) -> Self {
        View { agent, state }
    }
}

impl From<View> for (String, String) {
    fn from(v: View) -> Self {
        (v.agent, v.state)
    }
}

impl fmt::Display for View {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.agent, self.state)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("view must be written agent@state, got `{0}`")]
pub struct ViewSyntaxError(pub String);

impl FromStr for View {
    type Err = ViewSyntaxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.split_once('@') {
            Some((a, st)) if !a.is_empty() && !st.is_empty() && !st.contains('@') => {
                Ok(View::new(a, st))
            }
            _ => Err(ViewSyntaxError(s.to_string())),
        }
    }
}

/// `(user, state, name, referent)`: in `state`, agent `user` may use `name`
/// to refer to `referent`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IdentTuple {
    pub user: String,
    pub state: String,
    pub name: String,
    pub referent: String,
}

impl IdentTuple {
    pub fn new(
        user: impl Into<String>,
        state: impl Into<String>,
        name: impl Into<String>,
        referent: impl Into<String>,
    ) -> Self {
        IdentTuple {
            user: user.into(),
            state: state.into(),
            name: name.into(),
            referent: referent.into(),
        }
    }
}

impl fmt::Display for IdentTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{},{})",
            self.user, self.state, self.name, self.referent
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("unknown agent `{0}`")]
    UnknownAgent(String),
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("agent `{agent}` is not present in state `{state}`")]
    AgentAbsent { agent: String, state: String },
}

/// A validated model. Construct it through [`validate`] or [`load`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Model {
    states: BTreeSet<String>,
    agents: BTreeSet<String>,
    presence: BTreeMap<String, BTreeSet<String>>,
    indist: BTreeMap<String, Vec<BTreeSet<String>>>,
    names: BTreeSet<String>,
    ident: BTreeSet<IdentTuple>,
    valuation: BTreeMap<String, BTreeSet<View>>,
    // (user, state, name) -> referents; derived from `ident`
    refs: BTreeMap<(String, String, String), BTreeSet<String>>,
}

impl Model {
    pub fn states(&self) -> &BTreeSet<String> {
        &self.states
    }

    pub fn agents(&self) -> &BTreeSet<String> {
        &self.agents
    }

    pub fn names(&self) -> &BTreeSet<String> {
        &self.names
    }

    pub fn ident(&self) -> &BTreeSet<IdentTuple> {
        &self.ident
    }

    pub fn valuation(&self) -> &BTreeMap<String, BTreeSet<View>> {
        &self.valuation
    }

    /// States in which `agent` is present.
    pub fn presence(&self, agent: &str) -> Result<&BTreeSet<String>, ModelError> {
        self.presence
            .get(agent)
            .ok_or_else(|| ModelError::UnknownAgent(agent.to_string()))
    }

    /// Indistinguishability classes of `agent`, a partition of its presence.
    pub fn indist(&self, agent: &str) -> Result<&[BTreeSet<String>], ModelError> {
        self.indist
            .get(agent)
            .map(Vec::as_slice)
            .ok_or_else(|| ModelError::UnknownAgent(agent.to_string()))
    }

    pub fn is_present(&self, agent: &str, state: &str) -> bool {
        self.presence.get(agent).is_some_and(|p| p.contains(state))
    }

    /// Every view of the model, ordered by agent then state.
    pub fn views(&self) -> Vec<View> {
        self.presence
            .iter()
            .flat_map(|(a, states)| states.iter().map(move |s| View::new(a.clone(), s.clone())))
            .collect()
    }

    pub fn check_view(&self, view: &View) -> Result<(), ModelError> {
        if !self.agents.contains(&view.agent) {
            return Err(ModelError::UnknownAgent(view.agent.clone()));
        }
        if !self.states.contains(&view.state) {
            return Err(ModelError::UnknownState(view.state.clone()));
        }
        if !self.is_present(&view.agent, &view.state) {
            return Err(ModelError::AgentAbsent {
                agent: view.agent.clone(),
                state: view.state.clone(),
            });
        }
        Ok(())
    }

    /// Agents present in `state`.
    pub fn present_agents(&self, state: &str) -> Result<BTreeSet<&str>, ModelError> {
        if !self.states.contains(state) {
            return Err(ModelError::UnknownState(state.to_string()));
        }
        Ok(self
            .presence
            .iter()
            .filter(|(_, p)| p.contains(state))
            .map(|(a, _)| a.as_str())
            .collect())
    }

    /// The class of `agent`'s indistinguishability relation containing `state`.
    pub fn epistemic_class(
        &self,
        agent: &str,
        state: &str,
    ) -> Result<&BTreeSet<String>, ModelError> {
        self.check_view(&View::new(agent, state))?;
        Ok(self.indist[agent]
            .iter()
            .find(|class| class.contains(state))
            .expect("validated partition covers presence"))
    }

    /// Agents that `agent` may refer to by `name` in `state`.
    pub fn referents(
        &self,
        agent: &str,
        state: &str,
        name: &str,
    ) -> Result<BTreeSet<&str>, ModelError> {
        self.check_view(&View::new(agent, state))?;
        if !self.names.contains(name) {
            return Err(ModelError::UnknownName(name.to_string()));
        }
        let key = (agent.to_string(), state.to_string(), name.to_string());
        Ok(self
            .refs
            .get(&key)
            .map(|r| r.iter().map(String::as_str).collect())
            .unwrap_or_default())
    }

    /// Views at which `var` holds. Variables without an entry hold nowhere.
    pub fn holds(&self, var: &str, view: &View) -> bool {
        self.valuation.get(var).is_some_and(|vs| vs.contains(view))
    }

    /// The raw, unvalidated description of this model in canonical order.
    pub fn to_raw(&self) -> RawModel {
        RawModel {
            states: self.states.iter().cloned().collect(),
            agents: self.agents.iter().cloned().collect(),
            presence: self
                .presence
                .iter()
                .map(|(a, p)| (a.clone(), p.iter().cloned().collect()))
                .collect(),
            indist: self
                .indist
                .iter()
                .map(|(a, classes)| {
                    (
                        a.clone(),
                        classes
                            .iter()
                            .map(|c| c.iter().cloned().collect())
                            .collect(),
                    )
                })
                .collect(),
            names: self.names.iter().cloned().collect(),
            ident: self
                .ident
                .iter()
                .map(|t| {
                    [
                        t.user.clone(),
                        t.state.clone(),
                        t.name.clone(),
                        t.referent.clone(),
                    ]
                })
                .collect(),
            valuation: self
                .valuation
                .iter()
                .map(|(v, views)| {
                    (
                        v.clone(),
                        views
                            .iter()
                            .map(|w| [w.agent.clone(), w.state.clone()])
                            .collect(),
                    )
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        self.to_raw().to_json()
    }

    /// Human-oriented summary, one fact per line.
    pub fn summary(&self) -> Vec<String> {
        let mut lines = vec![
            format!("states {}", join(&self.states)),
            format!("agents {}", join(&self.agents)),
            format!("names {}", join(&self.names)),
        ];
        for (a, p) in &self.presence {
            lines.push(format!("presence {a} {}", join(p)));
        }
        for (a, classes) in &self.indist {
            let cs: Vec<String> = classes
                .iter()
                .map(|c| format!("{{{}}}", join_sep(c, ",")))
                .collect();
            lines.push(format!("indist {a} {}", cs.join(" ")));
        }
        for t in &self.ident {
            lines.push(format!("ident {t}"));
        }
        for (v, views) in &self.valuation {
            let vs: Vec<String> = views.iter().map(View::to_string).collect();
            lines.push(format!("valuation {v} {}", vs.join(" ")));
        }
        lines
    }
}

fn join(set: &BTreeSet<String>) -> String {
    join_sep(set, " ")
}

fn join_sep(set: &BTreeSet<String>, sep: &str) -> String {
    set.iter().map(String::as_str).collect::<Vec<_>>().join(sep)
}
