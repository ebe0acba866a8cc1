use std::collections::HashMap;

use crate::formula::Formula;

use super::ProofError;

/// Most modal atoms a truth table will enumerate.
pub const ATOM_BUDGET: usize = 20;

fn atoms<'a>(f: &'a Formula, out: &mut HashMap<&'a Formula, usize>) {
    match f {
        Formula::Not(b) => atoms(b, out),
        Formula::Implies(l, r) => {
            atoms(l, out);
            atoms(r, out);
        }
        _ => {
            let next = out.len();
            out.entry(f).or_insert(next);
        }
    }
}

fn value(f: &Formula, atoms: &HashMap<&Formula, usize>, row: u32) -> bool {
    match f {
        Formula::Not(b) => !value(b, atoms, row),
        Formula::Implies(l, r) => !value(l, atoms, row) || value(r, atoms, row),
        _ => row & (1 << atoms[f]) != 0,
    }
}

/// Whether `f` is a propositional tautology, treating every maximal
/// subformula headed by a variable, `W`, `K`, `A` or `@` as an atom.
pub fn check_tautology(f: &Formula) -> Result<bool, ProofError> {
    let mut table = HashMap::new();
    atoms(f, &mut table);
    if table.len() > ATOM_BUDGET {
        return Err(ProofError::AtomBudget(table.len()));
    }
    let rows = 1u32 << table.len();
    Ok((0..rows).all(|row| value(f, &table, row)))
}
