//! Model checking and proof checking for a modal logic of knowing who.
//!
//! Formulas speak about agents who may or may not be present in a state and
//! who identify one another through names. `W φ` says the current agent
//! knows who satisfies `φ`: some name picks out, in every state the agent
//! considers possible, only agents satisfying `φ`.

pub mod checker;
pub mod examples;
pub mod formula;
pub mod model;
pub mod proofs;

pub use checker::{bounded_validity, evaluate, label, Bounds, Verdict};
pub use formula::{parse, Formula};
pub use model::{Model, RawModel, View};
pub use proofs::{check_derivation, lift_box, Derivation};
