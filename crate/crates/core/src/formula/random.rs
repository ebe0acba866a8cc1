use rand::Rng;

use super::{Formula, Modality};

/// Random formula generator over a fixed vocabulary.
#[derive(Clone, Debug)]
pub struct FormulaGen {
    pub vars: Vec<String>,
    /// Names usable in `@n` nodes. Empty disables `@`.
    pub names: Vec<String>,
    pub max_depth: usize,
}

impl FormulaGen {
    pub fn new(vars: &[&str], names: &[&str], max_depth: usize) -> Self {
        FormulaGen {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            names: names.iter().map(|s| s.to_string()).collect(),
            max_depth,
        }
    }

    /// Draws a formula of depth at most `max_depth` (a variable has depth 1).
    pub fn generate<R: Rng + ?Sized>(&self, rng: &mut R) -> Formula {
        self.sized(rng, self.max_depth.max(1))
    }

    fn sized<R: Rng + ?Sized>(&self, rng: &mut R, depth: usize) -> Formula {
        assert!(!self.vars.is_empty(), "formula generator needs a variable");
        if depth <= 1 || rng.gen_bool(0.25) {
            return Formula::Var(self.vars[rng.gen_range(0..self.vars.len())].clone());
        }
        let choices = if self.names.is_empty() { 5 } else { 6 };
        match rng.gen_range(0..choices) {
            0 => Formula::not(self.sized(rng, depth - 1)),
            1 => {
                let l = self.sized(rng, depth - 1);
                let r = self.sized(rng, depth - 1);
                Formula::implies(l, r)
            }
            2 => Modality::KnowWho.apply(self.sized(rng, depth - 1)),
            3 => Modality::Know.apply(self.sized(rng, depth - 1)),
            4 => Modality::AllAgents.apply(self.sized(rng, depth - 1)),
            _ => {
                let n = self.names[rng.gen_range(0..self.names.len())].clone();
                Formula::at_name(n, self.sized(rng, depth - 1))
            }
        }
    }
}
