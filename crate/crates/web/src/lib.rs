//! Browser bindings. Every operation is a plain function from strings to a
//! JSON string so it can be tested natively; the `#[wasm_bindgen]` exports
//! only convert errors.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use knowwho::checker::{bounded_validity, evaluate, Bounds, Verdict};
use knowwho::examples;
use knowwho::formula::parse;
use knowwho::model::{validate, RawModel, View};
use knowwho::proofs::{check_derivation, lift_box, BoxModality, DerivationFile};

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Truth of `formula` for every agent and state of the model.
///
/// Cells for absent agents are `null`; present cells carry the truth value
/// and, for a top-level `W`, the witnessing name.
pub fn evaluate_grid(model_json: &str, formula: &str) -> Result<String, String> {
    let raw = RawModel::from_json(model_json).map_err(err)?;
    let model = validate(&raw).map_err(err)?;
    let f = parse(formula).map_err(err)?;
    let mut rows = Vec::new();
    for agent in model.agents() {
        let mut cells = Vec::new();
        for state in model.states() {
            if !model.is_present(agent, state) {
                cells.push(Value::Null);
                continue;
            }
            let e = evaluate(&model, &View::new(agent.clone(), state.clone()), &f).map_err(err)?;
            cells.push(json!({ "truth": e.truth, "witness": e.witness }));
        }
        rows.push(json!({ "agent": agent, "cells": cells }));
    }
    Ok(json!({ "formula": f.to_string(), "states": model.states(), "rows": rows }).to_string())
}

/// Bounded countermodel search.
pub fn find_countermodel(
    formula: &str,
    states: usize,
    agents: usize,
    names: usize,
    vars: usize,
) -> Result<String, String> {
    let f = parse(formula).map_err(err)?;
    let bounds = Bounds::new(states, agents, names, vars).map_err(err)?;
    let out = match bounded_validity(&f, bounds).map_err(err)? {
        Verdict::ValidWithin {
            bounds,
            models_checked,
        } => json!({
            "valid": true,
            "bounds": bounds.to_string(),
            "models": models_checked.to_string(),
        }),
        Verdict::Counterexample { model, view, index } => json!({
            "valid": false,
            "view": view.to_string(),
            "index": index.to_string(),
            "summary": model.summary(),
            "model": model.to_json(),
        }),
    };
    Ok(out.to_string())
}

/// Checks a `.kwd` derivation and, when `lift` is `"K"` or `"A"`, lifts it.
pub fn check_proof(kwd: &str, lift: &str) -> Result<String, String> {
    let d = DerivationFile::from_json(kwd)
        .and_then(DerivationFile::into_derivation)
        .map_err(err)?;
    let accepted = match check_derivation(&d) {
        Ok(a) => a,
        Err(e) => {
            return Ok(
                json!({ "accepted": false, "line": e.line, "reason": e.reason.to_string() })
                    .to_string(),
            )
        }
    };
    let mut out = json!({
        "accepted": true,
        "theorem": accepted.is_theorem(),
        "conclusion": d.conclusion().map(ToString::to_string),
    });
    if !lift.is_empty() {
        let b: BoxModality = lift.parse().map_err(err)?;
        let lifted = lift_box(&d, b).map_err(err)?;
        out["lifted"] = Value::String(DerivationFile::from_derivation(&lifted).to_json());
    }
    Ok(out.to_string())
}

/// Text of a bundled model or derivation file.
pub fn example(name: &str) -> Result<String, String> {
    examples::MODELS
        .iter()
        .chain(examples::DERIVATIONS)
        .find(|(file, _)| *file == name)
        .map(|(_, text)| text.to_string())
        .ok_or_else(|| format!("no bundled example `{name}`"))
}

#[wasm_bindgen(js_name = evaluateGrid)]
pub fn evaluate_grid_js(model_json: &str, formula: &str) -> Result<String, JsValue> {
    evaluate_grid(model_json, formula).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = findCountermodel)]
pub fn find_countermodel_js(
    formula: &str,
    states: usize,
    agents: usize,
    names: usize,
    vars: usize,
) -> Result<String, JsValue> {
    find_countermodel(formula, states, agents, names, vars).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = checkProof)]
pub fn check_proof_js(kwd: &str, lift: &str) -> Result<String, JsValue> {
    check_proof(kwd, lift).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = example)]
pub fn example_js(name: &str) -> Result<String, JsValue> {
    example(name).map_err(|e| JsValue::from_str(&e))
}
