//! Finite semi-Heyting algebras with a dually quasi-De Morgan negation.
//!
//! * [`algebra`]: lattices, algebras, structural validation.
//! * [`term`]: term syntax, parsing and evaluation, level terms.
//! * [`catalog`]: named identities and exhaustive checking.
//! * [`classify`]: variety memberships and levels.
//! * [`enumerate`]: lattice/arrow/negation generation and search.
//! * [`builtin`]: the shipped example algebras.
//! * [`claims`]: claim-by-claim verification against the examples and the model space.
//! * [`format`]: JSON algebra files and NDJSON corpora.

pub mod algebra;
pub mod builtin;
pub mod catalog;
pub mod claims;
pub mod classify;
pub mod enumerate;
pub mod format;
pub mod term;

pub use algebra::{AlgebraError, CoverRelation, Element, FiniteAlgebra, Lattice};
pub use catalog::{check, check_all, CheckOutcome};
pub use classify::{classify, level, level_alt, ClassificationReport, Level};
pub use term::{Identity, Term};
