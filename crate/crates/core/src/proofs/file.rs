use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::formula::{parse, Formula, Modality};

use super::derivation::{Derivation, Justification, Line};
use super::schema::{Binding, BoxModality, SchemaId};
use super::ProofError;

/// On-disk form of a derivation (`.kwd`), with formulas as text.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DerivationFile {
    #[serde(default)]
    pub hypotheses: Vec<String>,
    pub lines: Vec<FileLine>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conclusion: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileLine {
    pub formula: String,
    pub rule: String,
    #[serde(default, skip_serializing_if = "Value::is_null")]
    pub args: Value,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AxiomArgs {
    schema: String,
    #[serde(default)]
    binding: BindingArgs,
    #[serde(rename = "box", default, skip_serializing_if = "Option::is_none")]
    boxed: Option<String>,
}

#[derive(Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BindingArgs {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    phi: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    psi: Option<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NecArgs {
    modality: String,
    line: usize,
}

fn formula(text: &str, context: impl FnOnce() -> String) -> Result<Formula, ProofError> {
    parse(text).map_err(|source| ProofError::Formula {
        context: context(),
        source,
    })
}

impl DerivationFile {
    pub fn from_json(text: &str) -> Result<Self, ProofError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("derivation serializes");
        out.push('\n');
        out
    }

    pub fn into_derivation(self) -> Result<Derivation, ProofError> {
        let hypotheses = self
            .hypotheses
            .iter()
            .enumerate()
            .map(|(i, h)| formula(h, || format!("hypothesis {i}")))
            .collect::<Result<_, _>>()?;
        let mut lines = Vec::with_capacity(self.lines.len());
        for (i, line) in self.lines.into_iter().enumerate() {
            let f = formula(&line.formula, || format!("line {i}"))?;
            let bad = |message: String| ProofError::BadArgs { line: i, message };
            let args = |what: &str| {
                let what = what.to_string();
                move |e: serde_json::Error| bad(format!("{what} arguments: {e}"))
            };
            let justification = match line.rule.as_str() {
                "premise" => Justification::Premise(
                    serde_json::from_value(line.args).map_err(args("premise"))?,
                ),
                "taut" => {
                    if !line.args.is_null() {
                        return Err(bad("taut takes no arguments".into()));
                    }
                    Justification::Tautology
                }
                "mp" => {
                    let [j, k]: [usize; 2] =
                        serde_json::from_value(line.args).map_err(args("mp"))?;
                    Justification::ModusPonens(j, k)
                }
                "nec" => {
                    let a: NecArgs = serde_json::from_value(line.args).map_err(args("nec"))?;
                    let m = Modality::from_symbol(&a.modality)
                        .ok_or_else(|| bad(format!("unknown modality `{}`", a.modality)))?;
                    Justification::Necessitation(m, a.line)
                }
                "axiom" => {
                    let a: AxiomArgs = serde_json::from_value(line.args).map_err(args("axiom"))?;
                    let schema: SchemaId = a.schema.parse()?;
                    let meta = |text: &Option<String>, m: &str| {
                        text.as_deref()
                            .map(|t| formula(t, || format!("line {i} binding {m}")))
                            .transpose()
                    };
                    let binding = Binding {
                        phi: meta(&a.binding.phi, "phi")?,
                        psi: meta(&a.binding.psi, "psi")?,
                        boxed: a.boxed.as_deref().map(str::parse).transpose()?,
                    };
                    Justification::Axiom { schema, binding }
                }
                other => return Err(bad(format!("unknown rule `{other}`"))),
            };
            lines.push(Line::new(f, justification));
        }
        let claim = self
            .conclusion
            .as_deref()
            .map(|c| formula(c, || "conclusion".to_string()))
            .transpose()?;
        Ok(Derivation {
            hypotheses,
            lines,
            claim,
        })
    }

    pub fn from_derivation(d: &Derivation) -> Self {
        let text = |f: &Formula| f.to_string();
        let lines = d
            .lines
            .iter()
            .map(|line| {
                let (rule, args) = match &line.justification {
                    Justification::Premise(h) => ("premise", Value::from(*h)),
                    Justification::Tautology => ("taut", Value::Null),
                    Justification::ModusPonens(j, k) => ("mp", Value::from(vec![*j, *k])),
                    Justification::Necessitation(m, j) => (
                        "nec",
                        serde_json::to_value(NecArgs {
                            modality: m.symbol().to_string(),
                            line: *j,
                        })
                        .expect("serializes"),
                    ),
                    Justification::Axiom { schema, binding } => (
                        "axiom",
                        serde_json::to_value(AxiomArgs {
                            schema: schema.key().to_string(),
                            binding: BindingArgs {
                                phi: binding.phi.as_ref().map(text),
                                psi: binding.psi.as_ref().map(text),
                            },
                            boxed: binding.boxed.map(|b: BoxModality| b.to_string()),
                        })
                        .expect("serializes"),
                    ),
                };
                FileLine {
                    formula: text(&line.formula),
                    rule: rule.to_string(),
                    args,
                }
            })
            .collect();
        DerivationFile {
            hypotheses: d.hypotheses.iter().map(text).collect(),
            lines,
            conclusion: d.claim.as_ref().map(text),
        }
    }
}

pub fn load_derivation(path: &Path) -> Result<Derivation, ProofError> {
    let text = std::fs::read_to_string(path).map_err(|source| ProofError::Io {
        path: path.display().to_string(),
        source,
    })?;
    DerivationFile::from_json(&text)?.into_derivation()
}

pub fn store_derivation(path: &Path, d: &Derivation) -> Result<(), ProofError> {
    std::fs::write(path, DerivationFile::from_derivation(d).to_json()).map_err(|source| {
        ProofError::Io {
            path: path.display().to_string(),
            source,
        }
    })
}
