//! Bundled models and derivations.
//!
//! `nightstalker` has two states that spokesman `b` cannot tell apart. In
//! `s1` agent `d` is the murderer, in `s2` it is `e`, who is only present in
//! `s2`. The name `ns` picks out the murderer for `b` in both states, so `b`
//! knows who the murderer is. `pressconf` adds a journalist `j` who cannot
//! tell the states apart either, and a second name `sp` under which every
//! agent refers to the spokesman.

use crate::model::{validate, Model, RawModel};
use crate::proofs::{Derivation, DerivationFile};

pub const NIGHTSTALKER_KWM: &str = include_str!("../models/nightstalker.kwm");
pub const PRESSCONF_KWM: &str = include_str!("../models/pressconf.kwm");

/// `(file name, contents)` of every bundled derivation.
pub const DERIVATIONS: &[(&str, &str)] = &[
    (
        "axiom-truth.kwd",
        include_str!("../derivations/axiom-truth.kwd"),
    ),
    (
        "axiom-dist.kwd",
        include_str!("../derivations/axiom-dist.kwd"),
    ),
    (
        "axiom-negintro.kwd",
        include_str!("../derivations/axiom-negintro.kwd"),
    ),
    (
        "axiom-knownobody.kwd",
        include_str!("../derivations/axiom-knownobody.kwd"),
    ),
    (
        "axiom-knowall.kwd",
        include_str!("../derivations/axiom-knowall.kwd"),
    ),
    (
        "axiom-introwho.kwd",
        include_str!("../derivations/axiom-introwho.kwd"),
    ),
    (
        "introspection-k.kwd",
        include_str!("../derivations/introspection-k.kwd"),
    ),
    (
        "introspection-a.kwd",
        include_str!("../derivations/introspection-a.kwd"),
    ),
    (
        "modus-ponens.kwd",
        include_str!("../derivations/modus-ponens.kwd"),
    ),
];

/// `(file name, contents)` of every bundled model.
pub const MODELS: &[(&str, &str)] = &[
    ("nightstalker.kwm", NIGHTSTALKER_KWM),
    ("pressconf.kwm", PRESSCONF_KWM),
];

fn bundled_model(text: &str) -> Model {
    let raw = RawModel::from_json(text).expect("bundled model parses");
    validate(&raw).expect("bundled model is valid")
}

pub fn nightstalker() -> Model {
    bundled_model(NIGHTSTALKER_KWM)
}

pub fn pressconf() -> Model {
    bundled_model(PRESSCONF_KWM)
}

/// Looks up a bundled derivation by file name, with or without `.kwd`.
pub fn derivation(name: &str) -> Option<Derivation> {
    let file = if name.ends_with(".kwd") {
        name.to_string()
    } else {
        format!("{name}.kwd")
    };
    DERIVATIONS
        .iter()
        .find(|(n, _)| *n == file)
        .map(|(_, text)| {
            DerivationFile::from_json(text)
                .and_then(|f| f.into_derivation())
                .expect("bundled derivation parses")
        })
}
