use crate::formula::Formula;
use crate::model::{Model, View};
use crate::proofs::{Binding, BoxModality, MetaVar, Pattern, Schema, SchemaId};

use super::frame::{Extension, Frame};
use super::EvalError;

/// An instance of a schema that fails at some view of a model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemaViolation {
    pub schema: SchemaId,
    pub instance: Formula,
    pub view: View,
}

/// Every binding of the schema's metavariables to pool formulas, under
/// both box readings when the schema has a box.
pub fn instances(schema: &Schema, pool: &[Formula]) -> Vec<(Binding, Formula)> {
    index_bindings(schema, pool.len())
        .into_iter()
        .map(|(phi, psi, boxed)| {
            let binding = Binding {
                phi: phi.map(|i| pool[i].clone()),
                psi: psi.map(|i| pool[i].clone()),
                boxed,
            };
            let f = schema.instantiate(&binding).expect("binding is complete");
            (binding, f)
        })
        .collect()
}

type IndexBinding = (Option<usize>, Option<usize>, Option<BoxModality>);

fn index_bindings(schema: &Schema, n: usize) -> Vec<IndexBinding> {
    let vars = schema.metavars();
    let slot = |m| vars.contains(&m);
    let phis: Vec<Option<usize>> = if slot(MetaVar::Phi) {
        (0..n).map(Some).collect()
    } else {
        vec![None]
    };
    let psis: Vec<Option<usize>> = if slot(MetaVar::Psi) {
        (0..n).map(Some).collect()
    } else {
        vec![None]
    };
    let boxes: Vec<Option<BoxModality>> = if schema.uses_box() {
        BoxModality::ALL.iter().copied().map(Some).collect()
    } else {
        vec![None]
    };
    let mut out = Vec::new();
    for &b in &boxes {
        for &phi in &phis {
            for &psi in &psis {
                out.push((phi, psi, b));
            }
        }
    }
    out
}

fn pattern_extension(
    frame: &Frame,
    p: &Pattern,
    exts: &[Extension],
    b: &IndexBinding,
) -> Extension {
    match p {
        Pattern::Meta(MetaVar::Phi) => exts[b.0.expect("phi bound")].clone(),
        Pattern::Meta(MetaVar::Psi) => exts[b.1.expect("psi bound")].clone(),
        Pattern::Not(q) => frame.not(&pattern_extension(frame, q, exts, b)),
        Pattern::Implies(l, r) => frame.implies(
            &pattern_extension(frame, l, exts, b),
            &pattern_extension(frame, r, exts, b),
        ),
        Pattern::Modal(m, q) => frame.modal(*m, &pattern_extension(frame, q, exts, b)),
        Pattern::Boxed(q) => frame.modal(
            b.2.expect("box bound").modality(),
            &pattern_extension(frame, q, exts, b),
        ),
    }
}

/// Checks every instance over `pool` at every view of `model`, reporting
/// the first failing view of each failing instance.
///
/// Each pool formula is labelled once; instances are then evaluated on
/// extensions.
pub fn check_schema_on_model(
    model: &Model,
    schema: &Schema,
    pool: &[Formula],
) -> Result<Vec<SchemaViolation>, EvalError> {
    let frame = Frame::new(model);
    let exts = pool
        .iter()
        .map(|f| frame.extension(f))
        .collect::<Result<Vec<_>, _>>()?;
    let mut out = Vec::new();
    for b in index_bindings(schema, pool.len()) {
        let ext = pattern_extension(&frame, &schema.pattern, &exts, &b);
        if let Some(v) = ext.iter().position(|t| !t) {
            let binding = Binding {
                phi: b.0.map(|i| pool[i].clone()),
                psi: b.1.map(|i| pool[i].clone()),
                boxed: b.2,
            };
            out.push(SchemaViolation {
                schema: schema.id,
                instance: schema.instantiate(&binding).expect("binding is complete"),
                view: frame.views()[v].clone(),
            });
        }
    }
    Ok(out)
}

/// Like [`check_schema_on_model`], but evaluates each instance pointwise
/// with the supplied satisfaction function.
pub fn check_schema_on_model_with<F>(
    model: &Model,
    schema: &Schema,
    pool: &[Formula],
    eval: F,
) -> Vec<SchemaViolation>
where
    F: Fn(&Model, &View, &Formula) -> bool,
{
    let views = model.views();
    instances(schema, pool)
        .into_iter()
        .filter_map(|(_, instance)| {
            views
                .iter()
                .find(|v| !eval(model, v, &instance))
                .map(|v| SchemaViolation {
                    schema: schema.id,
                    instance: instance.clone(),
                    view: v.clone(),
                })
        })
        .collect()
}
