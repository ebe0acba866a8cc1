//! Abstract syntax of the know-who language with the `@n` reference-by-name
//! extension, plus its ASCII concrete syntax.
//!
//! The tree only carries the primitive connectives. Conjunction, disjunction,
//! the biconditional and the constants are desugared by the parser.

mod parser;
mod random;
mod render;

use std::collections::{BTreeSet, HashSet};
use std::fmt;

pub use parser::{parse, ParseError, ParseErrorKind};
pub use random::FormulaGen;
pub use render::render;

/// Variable reserved for the desugaring of `true` and `false`. It cannot be
/// written in source text.
pub const RESERVED_VAR: &str = "p0";

/// The three subscript-free modalities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Modality {
    /// `W`: knows who.
    KnowWho,
    /// `K`: knows about herself.
    Know,
    /// `A`: for all agents present in the state.
    AllAgents,
}

impl Modality {
    pub fn symbol(self) -> &'static str {
        match self {
            Modality::KnowWho => "W",
            Modality::Know => "K",
            Modality::AllAgents => "A",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Self> {
        match s {
            "W" => Some(Modality::KnowWho),
            "K" => Some(Modality::Know),
            "A" => Some(Modality::AllAgents),
            _ => None,
        }
    }

    /// Wraps `body` in this modality.
    pub fn apply(self, body: Formula) -> Formula {
        match self {
            Modality::KnowWho => Formula::know_who(body),
            Modality::Know => Formula::know(body),
            Modality::AllAgents => Formula::all_agents(body),
        }
    }
}

impl fmt::Display for Modality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Var(String),
    Not(Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    KnowWho(Box<Formula>),
    Know(Box<Formula>),
    AllAgents(Box<Formula>),
    AtName(String, Box<Formula>),
}

impl Formula {
    pub fn var(name: impl Into<String>) -> Self {
        Formula::Var(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(body: Formula) -> Self {
        Formula::Not(Box::new(body))
    }

    pub fn implies(left: Formula, right: Formula) -> Self {
        Formula::Implies(Box::new(left), Box::new(right))
    }

    pub fn know_who(body: Formula) -> Self {
        Formula::KnowWho(Box::new(body))
    }

    pub fn know(body: Formula) -> Self {
        Formula::Know(Box::new(body))
    }

    pub fn all_agents(body: Formula) -> Self {
        Formula::AllAgents(Box::new(body))
    }

    pub fn at_name(name: impl Into<String>, body: Formula) -> Self {
        Formula::AtName(name.into(), Box::new(body))
    }

    /// Desugared `true`: `p0 -> p0`.
    pub fn top() -> Self {
        Formula::implies(Formula::var(RESERVED_VAR), Formula::var(RESERVED_VAR))
    }

    /// Desugared `false`: `!(p0 -> p0)`.
    pub fn bottom() -> Self {
        Formula::not(Formula::top())
    }

    /// `a & b` as `!(a -> !b)`.
    pub fn and(left: Formula, right: Formula) -> Self {
        Formula::not(Formula::implies(left, Formula::not(right)))
    }

    /// `a | b` as `!a -> b`.
    pub fn or(left: Formula, right: Formula) -> Self {
        Formula::implies(Formula::not(left), right)
    }

    /// `a <-> b` as `(a -> b) & (b -> a)`.
    pub fn iff(left: Formula, right: Formula) -> Self {
        let forward = Formula::implies(left.clone(), right.clone());
        let backward = Formula::implies(right, left);
        Formula::and(forward, backward)
    }

    pub fn is_top(&self) -> bool {
        matches!(self, Formula::Implies(l, r)
            if matches!(&**l, Formula::Var(v) if v == RESERVED_VAR) && l == r)
    }

    pub fn is_bottom(&self) -> bool {
        matches!(self, Formula::Not(body) if body.is_top())
    }

    /// Direct children, left to right.
    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Var(_) => Vec::new(),
            Formula::Implies(l, r) => vec![&**l, &**r],
            Formula::Not(b)
            | Formula::KnowWho(b)
            | Formula::Know(b)
            | Formula::AllAgents(b)
            | Formula::AtName(_, b) => vec![&**b],
        }
    }

    /// Post-order list of distinct subformulae; `self` comes last.
    pub fn subformulas(&self) -> Vec<&Formula> {
        fn walk<'a>(f: &'a Formula, seen: &mut HashSet<&'a Formula>, out: &mut Vec<&'a Formula>) {
            if seen.contains(f) {
                return;
            }
            for child in f.children() {
                walk(child, seen, out);
            }
            seen.insert(f);
            out.push(f);
        }
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        walk(self, &mut seen, &mut out);
        out
    }

    pub fn depth(&self) -> usize {
        1 + self
            .children()
            .into_iter()
            .map(Formula::depth)
            .max()
            .unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        1 + self
            .children()
            .into_iter()
            .map(Formula::size)
            .sum::<usize>()
    }

    pub fn variables(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.collect(&mut |f| {
            if let Formula::Var(v) = f {
                out.insert(v.as_str());
            }
        });
        out
    }

    /// Names used by `@n` nodes.
    pub fn names(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.collect(&mut |f| {
            if let Formula::AtName(n, _) = f {
                out.insert(n.as_str());
            }
        });
        out
    }

    fn collect<'a>(&'a self, visit: &mut impl FnMut(&'a Formula)) {
        visit(self);
        for child in self.children() {
            child.collect(visit);
        }
    }

    /// Renames variables through `map`; unmapped variables are kept.
    pub fn rename_vars(&self, map: &dyn Fn(&str) -> Option<String>) -> Formula {
        match self {
            Formula::Var(v) => Formula::Var(map(v).unwrap_or_else(|| v.clone())),
            Formula::Not(b) => Formula::not(b.rename_vars(map)),
            Formula::Implies(l, r) => Formula::implies(l.rename_vars(map), r.rename_vars(map)),
            Formula::KnowWho(b) => Formula::know_who(b.rename_vars(map)),
            Formula::Know(b) => Formula::know(b.rename_vars(map)),
            Formula::AllAgents(b) => Formula::all_agents(b.rename_vars(map)),
            Formula::AtName(n, b) => Formula::at_name(n.clone(), b.rename_vars(map)),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self))
    }
}

impl std::str::FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

/// Right-nested conjunction of `fs`. The empty conjunction is `true`.
pub fn conj_all(fs: &[Formula]) -> Formula {
    match fs.split_last() {
        None => Formula::top(),
        Some((last, rest)) => rest
            .iter()
            .rev()
            .fold(last.clone(), |acc, f| Formula::and(f.clone(), acc)),
    }
}
