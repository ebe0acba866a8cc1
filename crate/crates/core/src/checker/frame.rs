use std::collections::{BTreeSet, HashMap};

use crate::formula::{Formula, Modality};
use crate::model::{Model, View};

use super::EvalError;

/// Truth value of one formula at each view of a [`Frame`], by view index.
pub type Extension = Vec<bool>;

/// Index-based form of a model for set-at-a-time evaluation.
///
/// Views are numbered in [`Model::views`] order. Each modality is
/// precomputed as a list of view indices to quantify over.
pub struct Frame<'m> {
    model: &'m Model,
    views: Vec<View>,
    names: Vec<String>,
    same_state: Vec<Vec<usize>>,
    same_class: Vec<Vec<usize>>,
    // [view][name]: referent views over the whole epistemic class
    identified: Vec<Vec<Vec<usize>>>,
    // [view][name]: referent views in the current state
    referred: Vec<Vec<Vec<usize>>>,
}

impl<'m> Frame<'m> {
    pub fn new(model: &'m Model) -> Self {
        let views = model.views();
        let index: HashMap<(&str, &str), usize> = views
            .iter()
            .enumerate()
            .map(|(i, v)| ((v.agent.as_str(), v.state.as_str()), i))
            .collect();
        let names: Vec<String> = model.names().iter().cloned().collect();

        let same_state = views
            .iter()
            .map(|v| {
                model
                    .present_agents(&v.state)
                    .expect("view state")
                    .into_iter()
                    .map(|a| index[&(a, v.state.as_str())])
                    .collect()
            })
            .collect();
        let same_class = views
            .iter()
            .map(|v| {
                model
                    .epistemic_class(&v.agent, &v.state)
                    .expect("valid view")
                    .iter()
                    .map(|s| index[&(v.agent.as_str(), s.as_str())])
                    .collect()
            })
            .collect();
        let referents_at = |agent: &str, state: &str, name: &str| -> Vec<usize> {
            model
                .referents(agent, state, name)
                .expect("valid view and name")
                .into_iter()
                .map(|a| index[&(a, state)])
                .collect()
        };
        let referred: Vec<Vec<Vec<usize>>> = views
            .iter()
            .map(|v| {
                names
                    .iter()
                    .map(|n| referents_at(&v.agent, &v.state, n))
                    .collect()
            })
            .collect();
        let identified = views
            .iter()
            .map(|v| {
                let class = model
                    .epistemic_class(&v.agent, &v.state)
                    .expect("valid view");
                names
                    .iter()
                    .map(|n| {
                        class
                            .iter()
                            .flat_map(|s| referents_at(&v.agent, s, n))
                            .collect()
                    })
                    .collect()
            })
            .collect();

        Frame {
            model,
            views,
            names,
            same_state,
            same_class,
            identified,
            referred,
        }
    }

    pub fn model(&self) -> &'m Model {
        self.model
    }

    pub fn views(&self) -> &[View] {
        &self.views
    }

    pub fn view_index(&self, view: &View) -> Option<usize> {
        self.views.iter().position(|v| v == view)
    }

    pub fn var(&self, p: &str) -> Extension {
        self.views.iter().map(|v| self.model.holds(p, v)).collect()
    }

    pub fn not(&self, e: &Extension) -> Extension {
        e.iter().map(|b| !b).collect()
    }

    pub fn implies(&self, l: &Extension, r: &Extension) -> Extension {
        l.iter().zip(r).map(|(a, b)| !a || *b).collect()
    }

    pub fn modal(&self, m: Modality, e: &Extension) -> Extension {
        match m {
            Modality::AllAgents => self.all_over(&self.same_state, e),
            Modality::Know => self.all_over(&self.same_class, e),
            Modality::KnowWho => (0..self.views.len())
                .map(|v| self.who_witness(v, e).is_some())
                .collect(),
        }
    }

    /// Index into the model's sorted names of the least name identifying
    /// only views in `e` from view `v`.
    pub fn who_witness(&self, v: usize, e: &Extension) -> Option<usize> {
        self.identified[v]
            .iter()
            .position(|targets| targets.iter().all(|&t| e[t]))
    }

    pub fn at_name(&self, name: &str, e: &Extension) -> Result<Extension, EvalError> {
        let n = self
            .names
            .binary_search_by(|x| x.as_str().cmp(name))
            .map_err(|_| EvalError::UnknownName(name.to_string()))?;
        Ok(self
            .referred
            .iter()
            .map(|per_name| per_name[n].iter().all(|&t| e[t]))
            .collect())
    }

    fn all_over(&self, groups: &[Vec<usize>], e: &Extension) -> Extension {
        groups.iter().map(|g| g.iter().all(|&t| e[t])).collect()
    }

    /// Extension of `f`, computed bottom-up without sharing subterms.
    pub fn extension(&self, f: &Formula) -> Result<Extension, EvalError> {
        Ok(match f {
            Formula::Var(p) => self.var(p),
            Formula::Not(b) => self.not(&self.extension(b)?),
            Formula::Implies(l, r) => self.implies(&self.extension(l)?, &self.extension(r)?),
            Formula::KnowWho(b) => self.modal(Modality::KnowWho, &self.extension(b)?),
            Formula::Know(b) => self.modal(Modality::Know, &self.extension(b)?),
            Formula::AllAgents(b) => self.modal(Modality::AllAgents, &self.extension(b)?),
            Formula::AtName(n, b) => self.at_name(n, &self.extension(b)?)?,
        })
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }
}

/// Views satisfying each subformula, in subformula order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labelling {
    pub entries: Vec<(Formula, BTreeSet<View>)>,
}

impl Labelling {
    pub fn get(&self, f: &Formula) -> Option<&BTreeSet<View>> {
        self.entries.iter().find(|(g, _)| g == f).map(|(_, vs)| vs)
    }
}

/// Labels every subformula of `f` with the set of views where it holds.
pub fn label(model: &Model, f: &Formula) -> Result<Labelling, EvalError> {
    let frame = Frame::new(model);
    let subs = f.subformulas();
    let mut slot: HashMap<&Formula, usize> = HashMap::new();
    let mut exts: Vec<Extension> = Vec::with_capacity(subs.len());
    for (i, g) in subs.iter().enumerate() {
        let child = |k: &Formula| &exts[slot[k]];
        let e = match g {
            Formula::Var(p) => frame.var(p),
            Formula::Not(b) => frame.not(child(b)),
            Formula::Implies(l, r) => frame.implies(child(l), child(r)),
            Formula::KnowWho(b) => frame.modal(Modality::KnowWho, child(b)),
            Formula::Know(b) => frame.modal(Modality::Know, child(b)),
            Formula::AllAgents(b) => frame.modal(Modality::AllAgents, child(b)),
            Formula::AtName(n, b) => frame.at_name(n, child(b))?,
        };
        exts.push(e);
        slot.insert(g, i);
    }
    let entries = subs
        .into_iter()
        .zip(exts)
        .map(|(g, e)| {
            let views = frame
                .views
                .iter()
                .zip(e)
                .filter(|(_, b)| *b)
                .map(|(v, _)| v.clone())
                .collect();
            (g.clone(), views)
        })
        .collect();
    Ok(Labelling { entries })
}
