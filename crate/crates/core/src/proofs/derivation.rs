use std::fmt;

use thiserror::Error;

use crate::formula::{Formula, Modality};

use super::schema::{Binding, SchemaId};
use super::tautology::check_tautology;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    /// The i-th hypothesis, zero-based.
    Premise(usize),
    Tautology,
    Axiom {
        schema: SchemaId,
        binding: Binding,
    },
    /// `ModusPonens(j, k)`: line `j` holds φ and line `k` holds φ → ψ.
    ModusPonens(usize, usize),
    Necessitation(Modality, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    pub formula: Formula,
    pub justification: Justification,
}

impl Line {
    pub fn new(formula: Formula, justification: Justification) -> Self {
        Line {
            formula,
            justification,
        }
    }
}

/// Whether a line is a theorem of the calculus or depends on hypotheses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LineKind {
    Theorem,
    Deduction,
}

/// A Hilbert-style derivation of `X ⊢ φ`.
///
/// Necessitation only applies to theorem lines, so hypotheses are only ever
/// combined by modus ponens.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Derivation {
    pub hypotheses: Vec<Formula>,
    pub lines: Vec<Line>,
    /// Declared conclusion; must equal the last line when present.
    pub claim: Option<Formula>,
}

impl Derivation {
    pub fn conclusion(&self) -> Option<&Formula> {
        self.lines.last().map(|l| &l.formula)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rejection {
    Empty,
    BadPremiseIndex(usize),
    PremiseMismatch { index: usize },
    NotTautology,
    TooManyAtoms(usize),
    BadBinding(String),
    SchemaMismatch(SchemaId),
    ForwardReference(usize),
    ModusPonensShape,
    NecessitationOfDeduction(usize),
    NecessitationShape,
    ConclusionMismatch,
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rejection::Empty => write!(f, "derivation has no lines"),
            Rejection::BadPremiseIndex(i) => write!(f, "no hypothesis with index {i}"),
            Rejection::PremiseMismatch { index } => {
                write!(f, "formula differs from hypothesis {index}")
            }
            Rejection::NotTautology => write!(f, "not a propositional tautology"),
            Rejection::TooManyAtoms(n) => write!(f, "tautology check needs {n} atoms"),
            Rejection::BadBinding(msg) => write!(f, "bad axiom binding: {msg}"),
            Rejection::SchemaMismatch(id) => {
                write!(f, "formula is not the cited instance of {id}")
            }
            Rejection::ForwardReference(j) => write!(f, "cites line {j}, which is not earlier"),
            Rejection::ModusPonensShape => {
                write!(f, "modus ponens needs lines φ and φ -> ψ concluding ψ")
            }
            Rejection::NecessitationOfDeduction(j) => {
                write!(
                    f,
                    "necessitation applied to line {j}, which depends on hypotheses"
                )
            }
            Rejection::NecessitationShape => {
                write!(
                    f,
                    "necessitation must prefix the cited line with its modality"
                )
            }
            Rejection::ConclusionMismatch => {
                write!(f, "declared conclusion differs from the last line")
            }
        }
    }
}

/// A rejected derivation; `line` is zero-based when the fault is local.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub struct DerivationError {
    pub line: Option<usize>,
    pub reason: Rejection,
}

impl fmt::Display for DerivationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(l) => write!(f, "line {l}: {}", self.reason),
            None => write!(f, "{}", self.reason),
        }
    }
}

/// Kinds of the lines of an accepted derivation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Accepted {
    pub kinds: Vec<LineKind>,
}

impl Accepted {
    /// True when the conclusion is a theorem, i.e. `⊢ φ` without hypotheses.
    pub fn is_theorem(&self) -> bool {
        self.kinds.last() == Some(&LineKind::Theorem)
    }
}

/// Replays every justification in order.
pub fn check_derivation(d: &Derivation) -> Result<Accepted, DerivationError> {
    if d.lines.is_empty() {
        return Err(DerivationError {
            line: None,
            reason: Rejection::Empty,
        });
    }
    let mut kinds = Vec::with_capacity(d.lines.len());
    for (i, line) in d.lines.iter().enumerate() {
        let reject = |reason| DerivationError {
            line: Some(i),
            reason,
        };
        let earlier = |j: usize| {
            if j < i {
                Ok(())
            } else {
                Err(reject(Rejection::ForwardReference(j)))
            }
        };
        let kind = match &line.justification {
            Justification::Premise(h) => {
                let hyp = d
                    .hypotheses
                    .get(*h)
                    .ok_or_else(|| reject(Rejection::BadPremiseIndex(*h)))?;
                if *hyp != line.formula {
                    return Err(reject(Rejection::PremiseMismatch { index: *h }));
                }
                LineKind::Deduction
            }
            Justification::Tautology => match check_tautology(&line.formula) {
                Ok(true) => LineKind::Theorem,
                Ok(false) => return Err(reject(Rejection::NotTautology)),
                Err(super::ProofError::AtomBudget(n)) => {
                    return Err(reject(Rejection::TooManyAtoms(n)))
                }
                Err(e) => return Err(reject(Rejection::BadBinding(e.to_string()))),
            },
            Justification::Axiom { schema, binding } => {
                let instance = schema
                    .schema()
                    .instantiate(binding)
                    .map_err(|e| reject(Rejection::BadBinding(e.to_string())))?;
                if instance != line.formula {
                    return Err(reject(Rejection::SchemaMismatch(*schema)));
                }
                LineKind::Theorem
            }
            Justification::ModusPonens(j, k) => {
                earlier(*j)?;
                earlier(*k)?;
                let antecedent = &d.lines[*j].formula;
                match &d.lines[*k].formula {
                    Formula::Implies(l, r) if **l == *antecedent && **r == line.formula => {}
                    _ => return Err(reject(Rejection::ModusPonensShape)),
                }
                if kinds[*j] == LineKind::Theorem && kinds[*k] == LineKind::Theorem {
                    LineKind::Theorem
                } else {
                    LineKind::Deduction
                }
            }
            Justification::Necessitation(m, j) => {
                earlier(*j)?;
                if kinds[*j] != LineKind::Theorem {
                    return Err(reject(Rejection::NecessitationOfDeduction(*j)));
                }
                if m.apply(d.lines[*j].formula.clone()) != line.formula {
                    return Err(reject(Rejection::NecessitationShape));
                }
                LineKind::Theorem
            }
        };
        kinds.push(kind);
    }
    if let Some(claim) = &d.claim {
        if Some(claim) != d.conclusion() {
            return Err(DerivationError {
                line: Some(d.lines.len() - 1),
                reason: Rejection::ConclusionMismatch,
            });
        }
    }
    Ok(Accepted { kinds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples;
    use crate::formula::parse;
    use crate::proofs::BoxModality;

    fn f(text: &str) -> Formula {
        parse(text).unwrap()
    }

    fn axiom(text: &str, schema: SchemaId, phi: &str, boxed: Option<BoxModality>) -> Line {
        Line::new(
            f(text),
            Justification::Axiom {
                schema,
                binding: Binding {
                    phi: Some(f(phi)),
                    psi: None,
                    boxed,
                },
            },
        )
    }

    #[test]
    fn one_line_axiom() {
        let d = Derivation {
            lines: vec![axiom("W p -> K W p", SchemaId::IntroWho, "p", None)],
            ..Derivation::default()
        };
        assert!(check_derivation(&d).unwrap().is_theorem());
    }

    #[test]
    fn positive_introspection_derivations() {
        for name in ["introspection-k", "introspection-a"] {
            let d = examples::derivation(name).unwrap();
            let accepted = check_derivation(&d).unwrap();
            assert!(accepted.is_theorem());
        }
        let k = examples::derivation("introspection-k").unwrap();
        assert_eq!(k.conclusion(), Some(&f("K p -> K K p")));
    }

    #[test]
    fn corrupted_modus_ponens_index() {
        let mut d = examples::derivation("introspection-k").unwrap();
        d.lines[8].justification = Justification::ModusPonens(5, 7);
        let err = check_derivation(&d).unwrap_err();
        assert_eq!(err.line, Some(8));
        assert_eq!(err.reason, Rejection::ModusPonensShape);
    }

    #[test]
    fn necessitation_only_on_theorems() {
        let d = Derivation {
            hypotheses: vec![f("p")],
            lines: vec![
                Line::new(f("p"), Justification::Premise(0)),
                Line::new(f("K p"), Justification::Necessitation(Modality::Know, 0)),
            ],
            claim: None,
        };
        let err = check_derivation(&d).unwrap_err();
        assert_eq!(err.line, Some(1));
        assert_eq!(err.reason, Rejection::NecessitationOfDeduction(0));
    }

    #[test]
    fn premise_and_schema_errors() {
        let d = Derivation {
            hypotheses: vec![f("p")],
            lines: vec![Line::new(f("p"), Justification::Premise(3))],
            claim: None,
        };
        assert_eq!(
            check_derivation(&d).unwrap_err().reason,
            Rejection::BadPremiseIndex(3)
        );

        let d = Derivation {
            lines: vec![axiom(
                "K p -> p",
                SchemaId::Truth,
                "p",
                Some(BoxModality::AllAgents),
            )],
            ..Derivation::default()
        };
        assert_eq!(
            check_derivation(&d).unwrap_err().reason,
            Rejection::SchemaMismatch(SchemaId::Truth)
        );

        let d = Derivation {
            lines: vec![axiom("K p -> p", SchemaId::Truth, "p", None)],
            ..Derivation::default()
        };
        assert!(matches!(
            check_derivation(&d).unwrap_err().reason,
            Rejection::BadBinding(_)
        ));

        let d = Derivation {
            lines: vec![Line::new(f("K p -> p"), Justification::Tautology)],
            ..Derivation::default()
        };
        assert_eq!(
            check_derivation(&d).unwrap_err().reason,
            Rejection::NotTautology
        );
    }

    #[test]
    fn deduction_lines_and_claims() {
        let mut d = examples::derivation("modus-ponens").unwrap();
        let accepted = check_derivation(&d).unwrap();
        assert_eq!(accepted.kinds, [LineKind::Deduction; 3]);
        assert!(!accepted.is_theorem());

        d.claim = Some(f("p"));
        let err = check_derivation(&d).unwrap_err();
        assert_eq!(
            (err.line, err.reason),
            (Some(2), Rejection::ConclusionMismatch)
        );

        assert_eq!(
            check_derivation(&Derivation::default()).unwrap_err().reason,
            Rejection::Empty
        );
    }

    #[test]
    fn forward_references_rejected() {
        let d = Derivation {
            lines: vec![Line::new(f("p"), Justification::ModusPonens(0, 1))],
            ..Derivation::default()
        };
        assert_eq!(
            check_derivation(&d).unwrap_err().reason,
            Rejection::ForwardReference(0)
        );
    }
}
