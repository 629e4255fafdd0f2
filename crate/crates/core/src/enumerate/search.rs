//! Constraint-driven search over the enumerated model space.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use super::arrows::{heyting_arrow, semiheyting_arrows};
use super::iso::{lattice_automorphisms, orbit_key};
use super::lattices::distributive_lattice_structures;
use super::negations::dqd_negations;
use super::{EnumError, SearchLimits};
use crate::algebra::{FiniteAlgebra, Lattice};
use crate::catalog::CompiledIdentity;
use crate::term::Identity;

/// Which arrows a search ranges over.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum ArrowScope {
    /// Every semi-Heyting arrow on each lattice.
    #[default]
    All,
    /// Only the Heyting arrow, so each (lattice, negation) class appears once.
    /// Identities using `->` only as `x -> 0` get the same verdict on every
    /// arrow of a class, so this scope decides them for the full space.
    Heyting,
}

#[derive(Debug, Clone, Default)]
pub struct SearchSpec {
    pub satisfy: Vec<Identity>,
    pub falsify: Vec<Identity>,
    pub max_lattice_size: usize,
    pub max_results: Option<usize>,
    pub arrows: ArrowScope,
}

impl SearchSpec {
    pub fn new(max_lattice_size: usize) -> Self {
        SearchSpec {
            max_lattice_size,
            ..Default::default()
        }
    }

    pub fn satisfying(mut self, ids: impl IntoIterator<Item = Identity>) -> Self {
        self.satisfy.extend(ids);
        self
    }

    pub fn falsifying(mut self, ids: impl IntoIterator<Item = Identity>) -> Self {
        self.falsify.extend(ids);
        self
    }

    pub fn limit(mut self, max_results: usize) -> Self {
        self.max_results = Some(max_results);
        self
    }

    pub fn heyting_only(mut self) -> Self {
        self.arrows = ArrowScope::Heyting;
        self
    }

    fn check_disjoint(&self) -> Result<(), EnumError> {
        for s in &self.satisfy {
            if let Some(f) = self.falsify.iter().find(|f| {
                f.name == s.name || (f.lhs == s.lhs && f.rhs == s.rhs && f.kind == s.kind)
            }) {
                return Err(EnumError::InvalidSpec(format!(
                    "{} is both required and forbidden",
                    f.name
                )));
            }
        }
        Ok(())
    }
}

/// Constraints split by whether they depend on the arrow beyond `x -> 0`.
/// On any semi-Heyting arrow `x -> 0` is the lattice pseudocomplement, so
/// star-only constraints are decided once per (lattice, negation) pair.
struct Constraints {
    star_satisfy: Vec<CompiledIdentity>,
    star_falsify: Vec<CompiledIdentity>,
    satisfy: Vec<CompiledIdentity>,
    falsify: Vec<CompiledIdentity>,
}

impl Constraints {
    fn new(spec: &SearchSpec) -> Self {
        let split = |ids: &[Identity]| -> (Vec<CompiledIdentity>, Vec<CompiledIdentity>) {
            let (a, b): (Vec<&Identity>, Vec<&Identity>) =
                ids.iter().partition(|i| i.arrow_only_as_star());
            (
                a.into_iter().map(CompiledIdentity::new).collect(),
                b.into_iter().map(CompiledIdentity::new).collect(),
            )
        };
        let (star_satisfy, satisfy) = split(&spec.satisfy);
        let (star_falsify, falsify) = split(&spec.falsify);
        Constraints {
            star_satisfy,
            star_falsify,
            satisfy,
            falsify,
        }
    }

    fn star_ok(&self, probe: &FiniteAlgebra) -> bool {
        self.star_satisfy.iter().all(|c| c.holds(probe))
            && self.star_falsify.iter().all(|c| !c.holds(probe))
    }

    fn full_ok(&self, a: &FiniteAlgebra) -> bool {
        self.satisfy.iter().all(|c| c.holds(a)) && self.falsify.iter().all(|c| !c.holds(a))
    }
}

struct LatticeSpace {
    lattice: Arc<Lattice>,
    negations: Vec<Vec<u8>>,
    automorphisms: Vec<Vec<usize>>,
    heyting: Vec<u8>,
}

fn lattice_spaces(max_size: usize) -> Result<Vec<LatticeSpace>, EnumError> {
    Ok(distributive_lattice_structures(max_size)?
        .into_par_iter()
        .map(|lattice| LatticeSpace {
            negations: dqd_negations(&lattice),
            automorphisms: lattice_automorphisms(&lattice),
            heyting: heyting_arrow(&lattice),
            lattice,
        })
        .collect())
}

/// Every algebra up to isomorphism with at most `max_lattice_size` elements
/// that satisfies all of `satisfy` and none of `falsify`, ordered by
/// lattice (size first) and then by canonical tables. The order does not
/// depend on the number of worker threads.
///
/// Arrows are only enumerated on lattices where some negation passes the
/// star-only constraints, and the node cap in `limits` applies to each such
/// enumeration.
pub fn search(spec: &SearchSpec, limits: &SearchLimits) -> Result<Vec<FiniteAlgebra>, EnumError> {
    spec.check_disjoint()?;
    let constraints = Constraints::new(spec);
    let spaces = lattice_spaces(spec.max_lattice_size)?;
    let units: Vec<(usize, usize)> = spaces
        .iter()
        .enumerate()
        .flat_map(|(li, s)| (0..s.negations.len()).map(move |ni| (li, ni)))
        .collect::<Vec<_>>()
        .into_par_iter()
        .filter(|&(li, ni)| {
            let space = &spaces[li];
            let probe = FiniteAlgebra::from_parts_unchecked(
                space.lattice.clone(),
                space.heyting.clone(),
                space.negations[ni].clone(),
            );
            constraints.star_ok(&probe)
        })
        .collect();

    let mut needed: Vec<usize> = units.iter().map(|u| u.0).collect();
    needed.dedup();
    let arrows: HashMap<usize, Vec<Vec<u8>>> = match spec.arrows {
        ArrowScope::Heyting => needed
            .iter()
            .map(|&li| (li, vec![spaces[li].heyting.clone()]))
            .collect(),
        ArrowScope::All => needed
            .into_par_iter()
            .map(|li| {
                Ok((
                    li,
                    semiheyting_arrows(&spaces[li].lattice, limits.max_nodes)?,
                ))
            })
            .collect::<Result<_, EnumError>>()?,
    };

    let mut found: Vec<(usize, Vec<u8>, FiniteAlgebra)> = units
        .into_par_iter()
        .flat_map_iter(|(li, ni)| {
            let space = &spaces[li];
            let neg = &space.negations[ni];
            let n = space.lattice.size();
            let mut hits = Vec::new();
            for arrow in &arrows[&li] {
                let a = FiniteAlgebra::from_parts_unchecked(
                    space.lattice.clone(),
                    arrow.clone(),
                    neg.clone(),
                );
                if constraints.full_ok(&a) {
                    let key = orbit_key(n, &space.automorphisms, arrow, neg);
                    hits.push((li, key, a));
                }
            }
            hits.into_iter()
        })
        .collect();
    found.par_sort_unstable_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    found.dedup_by(|a, b| a.0 == b.0 && a.1 == b.1);
    let mut out: Vec<FiniteAlgebra> = found.into_iter().map(|(_, _, a)| a).collect();
    if let Some(cap) = spec.max_results {
        out.truncate(cap);
    }
    Ok(out)
}

/// The whole model space up to the size bound, one algebra per
/// isomorphism class. Chains of seven or more elements carry far more
/// arrows than the default node cap allows.
pub fn corpus(max_size: usize, limits: &SearchLimits) -> Result<Vec<FiniteAlgebra>, EnumError> {
    search(&SearchSpec::new(max_size), limits)
}

/// One algebra per isomorphism class of (lattice, negation) pair up to the
/// size bound, each carrying the Heyting arrow.
pub fn reduct_corpus(max_size: usize) -> Result<Vec<FiniteAlgebra>, EnumError> {
    search(
        &SearchSpec::new(max_size).heyting_only(),
        &SearchLimits::default(),
    )
}
