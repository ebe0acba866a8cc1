use crate::formula::Formula;
use crate::model::{Model, View};

use super::EvalError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evaluation {
    pub truth: bool,
    /// For a true `W` formula, the least name (in lexicographic order) that
    /// identifies only agents satisfying the body.
    pub witness: Option<String>,
}

/// Decides `view ⊩ f` clause by clause, straight off the model relations.
///
/// Variables missing from the valuation hold nowhere.
pub fn evaluate(model: &Model, view: &View, f: &Formula) -> Result<Evaluation, EvalError> {
    model.check_view(view)?;
    if let Some(n) = f.names().into_iter().find(|n| !model.names().contains(*n)) {
        return Err(EvalError::UnknownName(n.to_string()));
    }
    let (agent, state) = (view.agent.as_str(), view.state.as_str());
    let witness = match f {
        Formula::KnowWho(body) => witness(model, agent, state, body),
        _ => None,
    };
    let truth = match f {
        Formula::KnowWho(_) => witness.is_some(),
        _ => holds(model, agent, state, f),
    };
    Ok(Evaluation { truth, witness })
}

fn witness(model: &Model, agent: &str, state: &str, body: &Formula) -> Option<String> {
    model
        .names()
        .iter()
        .find(|n| identifies(model, agent, state, n, body))
        .cloned()
}

/// Whether `name` picks out only agents satisfying `body` across every state
/// `agent` cannot tell apart from `state`.
pub(crate) fn identifies(
    model: &Model,
    agent: &str,
    state: &str,
    name: &str,
    body: &Formula,
) -> bool {
    let class = model.epistemic_class(agent, state).expect("valid view");
    class.iter().all(|s2| {
        model
            .referents(agent, s2, name)
            .expect("valid view and name")
            .into_iter()
            .all(|other| holds(model, other, s2, body))
    })
}

fn holds(model: &Model, agent: &str, state: &str, f: &Formula) -> bool {
    match f {
        Formula::Var(p) => model.holds(p, &View::new(agent, state)),
        Formula::Not(b) => !holds(model, agent, state, b),
        Formula::Implies(l, r) => !holds(model, agent, state, l) || holds(model, agent, state, r),
        Formula::AllAgents(b) => model
            .present_agents(state)
            .expect("known state")
            .into_iter()
            .all(|other| holds(model, other, state, b)),
        Formula::Know(b) => model
            .epistemic_class(agent, state)
            .expect("valid view")
            .iter()
            .all(|s2| holds(model, agent, s2, b)),
        Formula::KnowWho(b) => model
            .names()
            .iter()
            .any(|n| identifies(model, agent, state, n, b)),
        Formula::AtName(n, b) => model
            .referents(agent, state, n)
            .expect("known name")
            .into_iter()
            .all(|other| holds(model, other, state, b)),
    }
}
