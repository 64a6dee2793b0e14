//! Proof kernels, decision procedures and proof synthesizers for classical
//! propositional logic, first-order logic and the syllogistic fragment.

pub mod formula;
pub mod hilbert;
pub mod kalmar;
pub mod machines;
pub mod matrix;
pub mod predicate;
pub mod sequent;
pub mod syllogistic;
pub mod truth;

pub use formula::{Formula, Path, SubstitutionMap};
