//! Model-space generation: distributive lattices, semi-Heyting arrows, DQD
//! negations, isomorphism reduction and constraint search.

mod arrows;
mod iso;
mod lattices;
mod negations;
mod search;

use thiserror::Error;

pub use arrows::{heyting_arrow, semiheyting_arrows};
pub use iso::{canonical_form, is_isomorphic, lattice_automorphisms};
pub use lattices::{
    distributive_lattice_structures, distributive_lattices, posets_with_bounded_downsets, Poset,
    MAX_LATTICE_SIZE,
};
pub use negations::dqd_negations;
pub use search::{corpus, reduct_corpus, search, ArrowScope, SearchSpec};

pub const DEFAULT_MAX_NODES: u64 = 10_000_000;
pub const MAX_NODES_ENV: &str = "SHKIT_MAX_NODES";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumError {
    #[error("search space exceeded the cap of {cap} candidate nodes")]
    SearchSpaceExceeded { cap: u64 },
    #[error("lattice size bound {0} is above the supported maximum of {MAX_LATTICE_SIZE}")]
    TooLarge(usize),
    #[error("invalid search: {0}")]
    InvalidSpec(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    /// Cap on backtracking nodes per arrow enumeration.
    pub max_nodes: u64,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_nodes: DEFAULT_MAX_NODES,
        }
    }
}

impl SearchLimits {
    /// Default limits, with `SHKIT_MAX_NODES` overriding the node cap when
    /// it parses as a positive integer.
    pub fn from_env() -> Self {
        let max_nodes = std::env::var(MAX_NODES_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<u64>().ok())
            .filter(|&v| v > 0)
            .unwrap_or(DEFAULT_MAX_NODES);
        SearchLimits { max_nodes }
    }
}
