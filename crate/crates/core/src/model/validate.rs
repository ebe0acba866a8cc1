use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use super::{IdentTuple, Model, RawModel, View};

/// A broken model condition, naming the offending elements.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Violation {
    /// Some present agent has no referent for a name.
    Cond6a {
        user: String,
        state: String,
        name: String,
    },
    /// A referent is not present in the state of the tuple.
    Cond6b(IdentTuple),
    IndistNotPartition {
        agent: String,
        reason: String,
    },
    ValuationOutsidePresence {
        var: String,
        view: View,
    },
    EmptyNameSet,
    /// The user of the tuple is not present in its state.
    IdentUserAbsent(IdentTuple),
    DuplicateId {
        kind: String,
        id: String,
    },
    UnknownId {
        kind: &'static str,
        id: String,
        context: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Cond6a { user, state, name } => write!(
                f,
                "cond6a: agent {user} in state {state} has no referent for name {name}"
            ),
            Violation::Cond6b(t) => write!(
                f,
                "cond6b: referent {} of {t} is absent from state {}",
                t.referent, t.state
            ),
            Violation::IndistNotPartition { agent, reason } => {
                write!(f, "indist-not-partition: agent {agent}: {reason}")
            }
            Violation::ValuationOutsidePresence { var, view } => write!(
                f,
                "valuation-outside-presence: {var} holds at {view} but the agent is absent"
            ),
            Violation::EmptyNameSet => write!(f, "empty-name-set: a model needs at least one name"),
            Violation::IdentUserAbsent(t) => write!(
                f,
                "ident-user-absent: user {} of {t} is absent from state {}",
                t.user, t.state
            ),
            Violation::DuplicateId { kind, id } => write!(f, "duplicate-id: {kind} {id}"),
            Violation::UnknownId { kind, id, context } => {
                write!(f, "unknown-id: {kind} {id} in {context}")
            }
        }
    }
}

/// Every violation found in a model description.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub struct ValidationErrors(pub Vec<Violation>);

impl fmt::Display for ValidationErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

fn collect_unique(ids: &[String], kind: &str, violations: &mut Vec<Violation>) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for id in ids {
        if !out.insert(id.clone()) {
            violations.push(Violation::DuplicateId {
                kind: kind.to_string(),
                id: id.clone(),
            });
        }
    }
    out
}

/// Checks every model condition and returns the model, or all violations.
pub fn validate(raw: &RawModel) -> Result<Model, ValidationErrors> {
    let (model, dropped) = check(raw, false)?;
    debug_assert!(dropped.is_empty());
    Ok(model)
}

/// Like [`validate`], but identification tuples whose user is absent from
/// the tuple's state are dropped and reported as warnings.
pub fn validate_lenient(raw: &RawModel) -> Result<(Model, Vec<Violation>), ValidationErrors> {
    check(raw, true)
}

fn check(raw: &RawModel, lenient: bool) -> Result<(Model, Vec<Violation>), ValidationErrors> {
    let mut violations = Vec::new();
    let mut warnings = Vec::new();

    let states = collect_unique(&raw.states, "state", &mut violations);
    let agents = collect_unique(&raw.agents, "agent", &mut violations);
    let names = collect_unique(&raw.names, "name", &mut violations);
    if names.is_empty() {
        violations.push(Violation::EmptyNameSet);
    }

    let unknown = |kind: &'static str, id: &str, context: String| Violation::UnknownId {
        kind,
        id: id.to_string(),
        context,
    };

    // presence
    let mut presence: BTreeMap<String, BTreeSet<String>> = agents
        .iter()
        .map(|a| (a.clone(), BTreeSet::new()))
        .collect();
    for (agent, present) in &raw.presence {
        let context = format!("presence of {agent}");
        if !agents.contains(agent) {
            violations.push(unknown("agent", agent, "presence".into()));
            continue;
        }
        let mut seen = BTreeSet::new();
        for s in present {
            if !states.contains(s) {
                violations.push(unknown("state", s, context.clone()));
            } else if !seen.insert(s.clone()) {
                violations.push(Violation::DuplicateId {
                    kind: context.clone(),
                    id: s.clone(),
                });
            }
        }
        presence.insert(agent.clone(), seen);
    }

    // indistinguishability partitions
    let mut indist: BTreeMap<String, Vec<BTreeSet<String>>> = BTreeMap::new();
    for agent in raw.indist.keys() {
        if !agents.contains(agent) {
            violations.push(unknown("agent", agent, "indist".into()));
        }
    }
    for agent in &agents {
        let present = &presence[agent];
        let classes = raw.indist.get(agent).cloned().unwrap_or_default();
        let mut covered = BTreeSet::new();
        let mut sets = Vec::new();
        let mut problems = Vec::new();
        for class in &classes {
            if class.is_empty() {
                problems.push("empty class".to_string());
            }
            let mut set = BTreeSet::new();
            for s in class {
                if !present.contains(s) {
                    problems.push(format!("state {s} is not in its presence set"));
                } else if !covered.insert(s.clone()) {
                    problems.push(format!("state {s} appears in more than one class"));
                }
                set.insert(s.clone());
            }
            sets.push(set);
        }
        for s in present.difference(&covered) {
            problems.push(format!("present state {s} is in no class"));
        }
        for reason in problems {
            violations.push(Violation::IndistNotPartition {
                agent: agent.clone(),
                reason,
            });
        }
        sets.sort();
        indist.insert(agent.clone(), sets);
    }

    // identification relation
    let mut ident = BTreeSet::new();
    for [user, state, name, referent] in &raw.ident {
        let t = IdentTuple::new(user, state, name, referent);
        let context = format!("ident {t}");
        let mut known = true;
        for (kind, id, ok) in [
            ("agent", user, agents.contains(user)),
            ("state", state, states.contains(state)),
            ("name", name, names.contains(name)),
            ("agent", referent, agents.contains(referent)),
        ] {
            if !ok {
                violations.push(unknown(kind, id, context.clone()));
                known = false;
            }
        }
        if !known {
            continue;
        }
        if ident.contains(&t) {
            violations.push(Violation::DuplicateId {
                kind: "ident tuple".into(),
                id: t.to_string(),
            });
            continue;
        }
        if !presence[user].contains(state) {
            if lenient {
                warnings.push(Violation::IdentUserAbsent(t));
            } else {
                violations.push(Violation::IdentUserAbsent(t));
            }
            continue;
        }
        if !presence[referent].contains(state) {
            violations.push(Violation::Cond6b(t.clone()));
        }
        ident.insert(t);
    }

    let mut refs: BTreeMap<(String, String, String), BTreeSet<String>> = BTreeMap::new();
    for t in &ident {
        refs.entry((t.user.clone(), t.state.clone(), t.name.clone()))
            .or_default()
            .insert(t.referent.clone());
    }
    for (agent, present) in &presence {
        for s in present {
            for n in &names {
                if !refs.contains_key(&(agent.clone(), s.clone(), n.clone())) {
                    violations.push(Violation::Cond6a {
                        user: agent.clone(),
                        state: s.clone(),
                        name: n.clone(),
                    });
                }
            }
        }
    }

    // valuation
    let mut valuation = BTreeMap::new();
    for (var, views) in &raw.valuation {
        let mut set = BTreeSet::new();
        for [agent, state] in views {
            let view = View::new(agent, state);
            let context = format!("valuation of {var}");
            if !agents.contains(agent) {
                violations.push(unknown("agent", agent, context));
            } else if !states.contains(state) {
                violations.push(unknown("state", state, context));
            } else if !presence[agent].contains(state) {
                violations.push(Violation::ValuationOutsidePresence {
                    var: var.clone(),
                    view,
                });
            } else if !set.insert(view.clone()) {
                violations.push(Violation::DuplicateId {
                    kind: context,
                    id: view.to_string(),
                });
            }
        }
        valuation.insert(var.clone(), set);
    }

    if !violations.is_empty() {
        return Err(ValidationErrors(violations));
    }
    Ok((
        Model {
            states,
            agents,
            presence,
            indist,
            names,
            ident,
            valuation,
            refs,
        },
        warnings,
    ))
}
