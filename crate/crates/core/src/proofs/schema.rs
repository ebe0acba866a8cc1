use std::fmt;
use std::str::FromStr;

use crate::formula::{Formula, Modality};

use super::ProofError;

/// The modalities a box metavariable may stand for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BoxModality {
    Know,
    AllAgents,
}

impl BoxModality {
    pub const ALL: [BoxModality; 2] = [BoxModality::Know, BoxModality::AllAgents];

    pub fn modality(self) -> Modality {
        match self {
            BoxModality::Know => Modality::Know,
            BoxModality::AllAgents => Modality::AllAgents,
        }
    }

    pub fn apply(self, f: Formula) -> Formula {
        self.modality().apply(f)
    }
}

impl fmt::Display for BoxModality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.modality().symbol())
    }
}

impl FromStr for BoxModality {
    type Err = ProofError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "K" => Ok(BoxModality::Know),
            "A" => Ok(BoxModality::AllAgents),
            other => Err(ProofError::BadBox(other.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MetaVar {
    Phi,
    Psi,
}

impl fmt::Display for MetaVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MetaVar::Phi => "phi",
            MetaVar::Psi => "psi",
        })
    }
}

/// Formula shape with metavariable leaves and box nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Pattern {
    Meta(MetaVar),
    Not(Box<Pattern>),
    Implies(Box<Pattern>, Box<Pattern>),
    Modal(Modality, Box<Pattern>),
    Boxed(Box<Pattern>),
}

fn meta(m: MetaVar) -> Pattern {
    Pattern::Meta(m)
}

fn not(p: Pattern) -> Pattern {
    Pattern::Not(Box::new(p))
}

fn imp(l: Pattern, r: Pattern) -> Pattern {
    Pattern::Implies(Box::new(l), Box::new(r))
}

fn modal(m: Modality, p: Pattern) -> Pattern {
    Pattern::Modal(m, Box::new(p))
}

fn boxed(p: Pattern) -> Pattern {
    Pattern::Boxed(Box::new(p))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SchemaId {
    Truth,
    Dist,
    NegIntro,
    KnowNobody,
    KnowAll,
    IntroWho,
}

impl SchemaId {
    pub const ALL: [SchemaId; 6] = [
        SchemaId::Truth,
        SchemaId::Dist,
        SchemaId::NegIntro,
        SchemaId::KnowNobody,
        SchemaId::KnowAll,
        SchemaId::IntroWho,
    ];

    pub fn key(self) -> &'static str {
        match self {
            SchemaId::Truth => "truth",
            SchemaId::Dist => "dist",
            SchemaId::NegIntro => "negintro",
            SchemaId::KnowNobody => "knownobody",
            SchemaId::KnowAll => "knowall",
            SchemaId::IntroWho => "introwho",
        }
    }

    pub fn schema(self) -> Schema {
        use MetaVar::{Phi, Psi};
        let pattern = match self {
            // □φ → φ
            SchemaId::Truth => imp(boxed(meta(Phi)), meta(Phi)),
            // □(φ → ψ) → (□φ → □ψ)
            SchemaId::Dist => imp(
                boxed(imp(meta(Phi), meta(Psi))),
                imp(boxed(meta(Phi)), boxed(meta(Psi))),
            ),
            // ¬□φ → □¬□φ
            SchemaId::NegIntro => imp(not(boxed(meta(Phi))), boxed(not(boxed(meta(Phi))))),
            // A¬φ → ¬Wφ
            SchemaId::KnowNobody => imp(
                modal(Modality::AllAgents, not(meta(Phi))),
                not(modal(Modality::KnowWho, meta(Phi))),
            ),
            // KA(φ → ψ) → (Wφ → Wψ)
            SchemaId::KnowAll => imp(
                modal(
                    Modality::Know,
                    modal(Modality::AllAgents, imp(meta(Phi), meta(Psi))),
                ),
                imp(
                    modal(Modality::KnowWho, meta(Phi)),
                    modal(Modality::KnowWho, meta(Psi)),
                ),
            ),
            // Wφ → KWφ
            SchemaId::IntroWho => imp(
                modal(Modality::KnowWho, meta(Phi)),
                modal(Modality::Know, modal(Modality::KnowWho, meta(Phi))),
            ),
        };
        Schema { id: self, pattern }
    }
}

impl fmt::Display for SchemaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

impl FromStr for SchemaId {
    type Err = ProofError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SchemaId::ALL
            .into_iter()
            .find(|id| id.key() == s)
            .ok_or_else(|| ProofError::UnknownSchema(s.to_string()))
    }
}

/// Metavariable and box assignment for one schema instance.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Binding {
    pub phi: Option<Formula>,
    pub psi: Option<Formula>,
    pub boxed: Option<BoxModality>,
}

impl Binding {
    pub fn get(&self, m: MetaVar) -> Option<&Formula> {
        match m {
            MetaVar::Phi => self.phi.as_ref(),
            MetaVar::Psi => self.psi.as_ref(),
        }
    }

    fn slot(&mut self, m: MetaVar) -> &mut Option<Formula> {
        match m {
            MetaVar::Phi => &mut self.phi,
            MetaVar::Psi => &mut self.psi,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Schema {
    pub id: SchemaId,
    pub pattern: Pattern,
}

impl Schema {
    pub fn all() -> Vec<Schema> {
        SchemaId::ALL.into_iter().map(SchemaId::schema).collect()
    }

    pub fn uses_box(&self) -> bool {
        fn walk(p: &Pattern) -> bool {
            match p {
                Pattern::Meta(_) => false,
                Pattern::Boxed(_) => true,
                Pattern::Not(b) | Pattern::Modal(_, b) => walk(b),
                Pattern::Implies(l, r) => walk(l) || walk(r),
            }
        }
        walk(&self.pattern)
    }

    /// Metavariables in the pattern, in `Phi`, `Psi` order.
    pub fn metavars(&self) -> Vec<MetaVar> {
        fn walk(p: &Pattern, out: &mut Vec<MetaVar>) {
            match p {
                Pattern::Meta(m) => {
                    if !out.contains(m) {
                        out.push(*m);
                    }
                }
                Pattern::Not(b) | Pattern::Modal(_, b) | Pattern::Boxed(b) => walk(b, out),
                Pattern::Implies(l, r) => {
                    walk(l, out);
                    walk(r, out);
                }
            }
        }
        let mut out = Vec::new();
        walk(&self.pattern, &mut out);
        out.sort();
        out
    }

    /// The formula obtained by substituting `binding` into the pattern.
    pub fn instantiate(&self, binding: &Binding) -> Result<Formula, ProofError> {
        fn build(p: &Pattern, b: &Binding, id: SchemaId) -> Result<Formula, ProofError> {
            Ok(match p {
                Pattern::Meta(m) => b
                    .get(*m)
                    .cloned()
                    .ok_or(ProofError::MissingBinding(id, *m))?,
                Pattern::Not(x) => Formula::not(build(x, b, id)?),
                Pattern::Implies(l, r) => Formula::implies(build(l, b, id)?, build(r, b, id)?),
                Pattern::Modal(m, x) => m.apply(build(x, b, id)?),
                Pattern::Boxed(x) => b
                    .boxed
                    .ok_or(ProofError::MissingBox(id))?
                    .apply(build(x, b, id)?),
            })
        }
        build(&self.pattern, binding, self.id)
    }
}

/// Structural match of `f` against the schema, binding metavariables and
/// the box consistently across occurrences.
pub fn match_schema(schema: &Schema, f: &Formula) -> Option<Binding> {
    fn go(p: &Pattern, f: &Formula, b: &mut Binding) -> bool {
        match (p, f) {
            (Pattern::Meta(m), _) => {
                let slot = b.slot(*m);
                match slot {
                    Some(bound) => bound == f,
                    None => {
                        *slot = Some(f.clone());
                        true
                    }
                }
            }
            (Pattern::Not(x), Formula::Not(y)) => go(x, y, b),
            (Pattern::Implies(pl, pr), Formula::Implies(fl, fr)) => go(pl, fl, b) && go(pr, fr, b),
            (Pattern::Modal(Modality::KnowWho, x), Formula::KnowWho(y))
            | (Pattern::Modal(Modality::Know, x), Formula::Know(y))
            | (Pattern::Modal(Modality::AllAgents, x), Formula::AllAgents(y)) => go(x, y, b),
            (Pattern::Boxed(x), Formula::Know(y)) => bind_box(b, BoxModality::Know) && go(x, y, b),
            (Pattern::Boxed(x), Formula::AllAgents(y)) => {
                bind_box(b, BoxModality::AllAgents) && go(x, y, b)
            }
            _ => false,
        }
    }
    fn bind_box(b: &mut Binding, m: BoxModality) -> bool {
        match b.boxed {
            Some(bound) => bound == m,
            None => {
                b.boxed = Some(m);
                true
            }
        }
    }
    let mut binding = Binding::default();
    go(&schema.pattern, f, &mut binding).then_some(binding)
}
