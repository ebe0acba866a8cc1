use crate::formula::Formula;
use crate::model::{validate, Model, RawModel, View};

use super::enumerate::name_id;
use super::{evaluate, Bounds, CheckError, Frame, ModelSpace};

#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum Verdict {
    /// No model within `bounds` falsifies the formula at any view.
    ValidWithin {
        bounds: Bounds,
        models_checked: u128,
    },
    /// `view` of `model` falsifies the formula. `index` is the position of
    /// the unminimized model in the enumeration.
    Counterexample {
        model: Model,
        view: View,
        index: u128,
    },
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::ValidWithin { .. })
    }
}

/// First falsified view of `model`, if any.
fn falsified(model: &Model, f: &Formula) -> Option<View> {
    let frame = Frame::new(model);
    let ext = frame.extension(f).expect("names checked against the space");
    ext.iter()
        .position(|b| !b)
        .map(|i| frame.views()[i].clone())
}

/// Checks `f` at every view of every model in the bounded space and reports
/// the least-indexed counterexample, minimized.
///
/// The valuation ranges over exactly the variables of `f`. When `f` has more
/// variables than `bounds` allows, the variable bound is raised to fit and
/// the verdict reports the bounds actually used. `@` names must be among
/// `n1..n{max_names}`; models with fewer names than the largest one used are
/// skipped.
pub fn bounded_validity(f: &Formula, bounds: Bounds) -> Result<Verdict, CheckError> {
    let vars: Vec<String> = f.variables().into_iter().map(String::from).collect();
    let mut min_names = 1;
    for n in f.names() {
        let pos = (1..=bounds.max_names()).find(|&i| name_id(i - 1) == n);
        match pos {
            Some(i) => min_names = min_names.max(i),
            None => {
                return Err(CheckError::NameOutsideBounds(
                    n.to_string(),
                    bounds.max_names(),
                ))
            }
        }
    }
    let effective = bounds.with_vars(bounds.max_vars().max(vars.len()));
    let space = ModelSpace::with_vocabulary(effective, vars, min_names)?;

    match first_failure(&space, f) {
        None => Ok(Verdict::ValidWithin {
            bounds: effective,
            models_checked: space.len(),
        }),
        Some((index, model, view)) => {
            let model = minimize_counterexample(&model, &view, f);
            Ok(Verdict::Counterexample { model, view, index })
        }
    }
}

#[cfg(feature = "parallel")]
fn first_failure(space: &ModelSpace, f: &Formula) -> Option<(u128, Model, View)> {
    use rayon::prelude::*;

    const CHUNK: u128 = 1 << 16;
    let mut start = 0;
    while start < space.len() {
        let end = (start + CHUNK).min(space.len());
        let found = (start as u64..end as u64)
            .into_par_iter()
            .find_map_first(|i| {
                let m = space.get(i as u128).expect("index in range");
                falsified(&m, f).map(|v| (i as u128, m, v))
            });
        if found.is_some() {
            return found;
        }
        start = end;
    }
    None
}

#[cfg(not(feature = "parallel"))]
fn first_failure(space: &ModelSpace, f: &Formula) -> Option<(u128, Model, View)> {
    (0..space.len()).find_map(|i| {
        let m = space.get(i).expect("index in range");
        falsified(&m, f).map(|v| (i, m, v))
    })
}

fn still_fails(raw: &RawModel, view: &View, f: &Formula) -> Option<Model> {
    let m = validate(raw).ok()?;
    match evaluate(&m, view, f) {
        Ok(e) if !e.truth => Some(m),
        _ => None,
    }
}

fn without_state(raw: &RawModel, state: &str) -> RawModel {
    let mut out = raw.clone();
    out.states.retain(|s| s != state);
    for p in out.presence.values_mut() {
        p.retain(|s| s != state);
    }
    for classes in out.indist.values_mut() {
        for c in classes.iter_mut() {
            c.retain(|s| s != state);
        }
        classes.retain(|c| !c.is_empty());
    }
    out.ident.retain(|t| t[1] != state);
    for vs in out.valuation.values_mut() {
        vs.retain(|v| v[1] != state);
    }
    out
}

fn without_agent(raw: &RawModel, agent: &str) -> RawModel {
    let mut out = raw.clone();
    out.agents.retain(|a| a != agent);
    out.presence.remove(agent);
    out.indist.remove(agent);
    out.ident.retain(|t| t[0] != agent && t[3] != agent);
    for vs in out.valuation.values_mut() {
        vs.retain(|v| v[0] != agent);
    }
    out
}

/// Greedily drops states, agents and identification tuples while `view`
/// still falsifies `f` and the model stays valid.
pub fn minimize_counterexample(model: &Model, view: &View, f: &Formula) -> Model {
    let mut current = model.clone();
    'shrink: loop {
        let raw = current.to_raw();
        let mut candidates = Vec::new();
        for s in raw.states.iter().filter(|s| **s != view.state) {
            candidates.push(without_state(&raw, s));
        }
        for a in raw.agents.iter().filter(|a| **a != view.agent) {
            candidates.push(without_agent(&raw, a));
        }
        for i in 0..raw.ident.len() {
            let mut smaller = raw.clone();
            smaller.ident.remove(i);
            candidates.push(smaller);
        }
        for c in candidates {
            if let Some(m) = still_fails(&c, view, f) {
                current = m;
                continue 'shrink;
            }
        }
        return current;
    }
}
