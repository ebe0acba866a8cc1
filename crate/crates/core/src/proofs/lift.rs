use crate::formula::Formula;

use super::derivation::{
    check_derivation, Derivation, DerivationError, Justification, Line, LineKind,
};
use super::schema::{Binding, BoxModality, SchemaId};

/// Turns a derivation of `φ1, …, φn ⊢ ψ` into one of `□φ1, …, □φn ⊢ □ψ`.
///
/// Theorem lines are copied and necessitated, premises become boxed
/// premises, and each modus ponens step that depends on hypotheses is
/// replaced by a distributivity instance and two modus ponens steps.
pub fn lift_box(d: &Derivation, modality: BoxModality) -> Result<Derivation, DerivationError> {
    let accepted = check_derivation(d)?;
    let boxed = |f: &Formula| modality.apply(f.clone());

    let mut out: Vec<Line> = Vec::new();
    // index of the copied (unboxed) line, for theorem lines
    let mut copied: Vec<Option<usize>> = Vec::with_capacity(d.lines.len());
    // index of the line holding □φ_i
    let mut lifted: Vec<usize> = Vec::with_capacity(d.lines.len());

    let push = |out: &mut Vec<Line>, formula: Formula, j: Justification| {
        out.push(Line::new(formula, j));
        out.len() - 1
    };

    for (i, line) in d.lines.iter().enumerate() {
        match (accepted.kinds[i], &line.justification) {
            (LineKind::Theorem, j) => {
                let just = match j {
                    Justification::ModusPonens(a, b) => Justification::ModusPonens(
                        copied[*a].expect("theorem operand"),
                        copied[*b].expect("theorem operand"),
                    ),
                    Justification::Necessitation(m, a) => {
                        Justification::Necessitation(*m, copied[*a].expect("theorem operand"))
                    }
                    other => other.clone(),
                };
                let c = push(&mut out, line.formula.clone(), just);
                let n = push(
                    &mut out,
                    boxed(&line.formula),
                    Justification::Necessitation(modality.modality(), c),
                );
                copied.push(Some(c));
                lifted.push(n);
            }
            (LineKind::Deduction, Justification::Premise(h)) => {
                let n = push(&mut out, boxed(&line.formula), Justification::Premise(*h));
                copied.push(None);
                lifted.push(n);
            }
            (LineKind::Deduction, Justification::ModusPonens(a, b)) => {
                let antecedent = d.lines[*a].formula.clone();
                let consequent = line.formula.clone();
                // □(φ → ψ) → (□φ → □ψ)
                let dist = Formula::implies(
                    boxed(&Formula::implies(antecedent.clone(), consequent.clone())),
                    Formula::implies(boxed(&antecedent), boxed(&consequent)),
                );
                let ax = push(
                    &mut out,
                    dist,
                    Justification::Axiom {
                        schema: SchemaId::Dist,
                        binding: Binding {
                            phi: Some(antecedent.clone()),
                            psi: Some(consequent.clone()),
                            boxed: Some(modality),
                        },
                    },
                );
                let step = push(
                    &mut out,
                    Formula::implies(boxed(&antecedent), boxed(&consequent)),
                    Justification::ModusPonens(lifted[*b], ax),
                );
                let n = push(
                    &mut out,
                    boxed(&consequent),
                    Justification::ModusPonens(lifted[*a], step),
                );
                copied.push(None);
                lifted.push(n);
            }
            (LineKind::Deduction, _) => {
                unreachable!("only premises and modus ponens depend on hypotheses")
            }
        }
    }

    let result = Derivation {
        hypotheses: d.hypotheses.iter().map(boxed).collect(),
        lines: out,
        claim: d.conclusion().map(boxed),
    };
    debug_assert!(check_derivation(&result).is_ok());
    Ok(result)
}
