#![allow(dead_code)]

use knowwho::formula::{Formula, FormulaGen, Modality};
use knowwho::proofs::{Binding, BoxModality, Derivation, Justification, Line, SchemaId};
use rand::seq::SliceRandom;
use rand::Rng;

/// A random derivation that the checker should accept.
///
/// Hypotheses come in pairs `φ`, `φ -> ψ` so that modus ponens over
/// deduction lines occurs; theorem lines come from weakening tautologies,
/// axiom instances and necessitation.
pub fn random_derivation<R: Rng>(rng: &mut R, gen: &FormulaGen, hypotheses: usize) -> Derivation {
    let mut hyps = Vec::new();
    while hyps.len() < hypotheses {
        let phi = gen.generate(rng);
        let psi = gen.generate(rng);
        hyps.push(phi.clone());
        if hyps.len() < hypotheses {
            hyps.push(Formula::implies(phi, psi));
        }
    }
    let mut lines: Vec<Line> = Vec::new();
    let mut theorem: Vec<bool> = Vec::new();
    let steps = rng.gen_range(2..=10);
    while lines.len() < steps {
        match rng.gen_range(0..5) {
            0 if !hyps.is_empty() => {
                let h = rng.gen_range(0..hyps.len());
                lines.push(Line::new(hyps[h].clone(), Justification::Premise(h)));
                theorem.push(false);
            }
            1 if !lines.is_empty() => {
                // φ, φ -> (ψ -> φ) / ψ -> φ
                let j = rng.gen_range(0..lines.len());
                let phi = lines[j].formula.clone();
                let psi = gen.generate(rng);
                let weak = Formula::implies(psi, phi.clone());
                lines.push(Line::new(
                    Formula::implies(phi, weak.clone()),
                    Justification::Tautology,
                ));
                theorem.push(true);
                lines.push(Line::new(
                    weak,
                    Justification::ModusPonens(j, lines.len() - 1),
                ));
                theorem.push(theorem[j]);
            }
            2 => {
                let id = *SchemaId::ALL.choose(rng).unwrap();
                let binding = Binding {
                    phi: Some(gen.generate(rng)),
                    psi: Some(gen.generate(rng)),
                    boxed: Some(*BoxModality::ALL.choose(rng).unwrap()),
                };
                let f = id.schema().instantiate(&binding).unwrap();
                lines.push(Line::new(
                    f,
                    Justification::Axiom {
                        schema: id,
                        binding,
                    },
                ));
                theorem.push(true);
            }
            3 => {
                let theorems: Vec<usize> = (0..lines.len()).filter(|&i| theorem[i]).collect();
                if let Some(&j) = theorems.choose(rng) {
                    let m = *[Modality::KnowWho, Modality::Know, Modality::AllAgents]
                        .choose(rng)
                        .unwrap();
                    lines.push(Line::new(
                        m.apply(lines[j].formula.clone()),
                        Justification::Necessitation(m, j),
                    ));
                    theorem.push(true);
                }
            }
            _ => {
                let mut pairs = Vec::new();
                for (k, lk) in lines.iter().enumerate() {
                    if let Formula::Implies(l, _) = &lk.formula {
                        for (j, lj) in lines.iter().enumerate() {
                            if lj.formula == **l {
                                pairs.push((j, k));
                            }
                        }
                    }
                }
                if let Some(&(j, k)) = pairs.choose(rng) {
                    let Formula::Implies(_, r) = &lines[k].formula else {
                        unreachable!()
                    };
                    lines.push(Line::new((**r).clone(), Justification::ModusPonens(j, k)));
                    theorem.push(theorem[j] && theorem[k]);
                }
            }
        }
    }
    Derivation {
        hypotheses: hyps,
        lines,
        claim: None,
    }
}
