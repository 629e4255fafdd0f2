//! Variety memberships and the level of an algebra.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::FiniteAlgebra;
use crate::catalog::{lookup, CompiledIdentity};
use crate::term::{level_identity, level_identity_alt};

pub const DEFAULT_MAX_LEVEL: usize = 6;

/// Varieties reported by [`classify`], each as the catalog identities it adds
/// on top of the DQD axioms.
pub const VARIETIES: &[(&str, &[&str])] = &[
    ("SH", &["SH1", "SH2", "SH3"]),
    (
        "DQD",
        &[
            "SH1", "SH2", "SH3", "DQDa0", "DQDa1", "DQDb", "DQDc", "DQDd",
        ],
    ),
    ("H", &["H"]),
    ("St", &["St"]),
    ("DM", &["DM"]),
    ("Dms", &["JDM"]),
    ("BDQD", &["BDM"]),
    ("Regular", &["R"]),
    ("Lee", &["Lee"]),
    ("DmsSt", &["JDM", "St"]),
    ("DMSt", &["DM", "St"]),
    ("BDQDSt", &["BDM", "St"]),
    ("DmsL", &["JDM", "Lee"]),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Level {
    Exactly(usize),
    /// No level identity up to the bound holds.
    ExceedsBound(usize),
}

impl Level {
    pub fn exact(self) -> Option<usize> {
        match self {
            Level::Exactly(n) => Some(n),
            Level::ExceedsBound(_) => None,
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Level::Exactly(n) => write!(f, "{n}"),
            Level::ExceedsBound(n) => write!(f, "exceeds {n}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub memberships: BTreeMap<String, bool>,
    pub level: Level,
    /// Level computed from the alternate identities; present only for DM or
    /// Stone algebras, where that characterization is known to apply.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub level_alt: Option<Level>,
}

impl ClassificationReport {
    pub fn member(&self, variety: &str) -> bool {
        self.memberships.get(variety).copied().unwrap_or(false)
    }
}

/// Smallest `n <= max_n` whose level identity `L_n` holds.
pub fn level(a: &FiniteAlgebra, max_n: usize) -> Level {
    (0..=max_n)
        .find(|&n| CompiledIdentity::new(&level_identity(n)).holds(a))
        .map_or(Level::ExceedsBound(max_n), Level::Exactly)
}

/// Level via the alternate identities: `L'_n` characterizes level `n + 1`,
/// and level 0 is still decided by `L_0`.
pub fn level_alt(a: &FiniteAlgebra, max_n: usize) -> Level {
    if CompiledIdentity::new(&level_identity(0)).holds(a) {
        return Level::Exactly(0);
    }
    (1..=max_n)
        .find(|&n| CompiledIdentity::new(&level_identity_alt(n - 1)).holds(a))
        .map_or(Level::ExceedsBound(max_n), Level::Exactly)
}

pub fn classify(a: &FiniteAlgebra) -> ClassificationReport {
    classify_with_bound(a, DEFAULT_MAX_LEVEL)
}

pub fn classify_with_bound(a: &FiniteAlgebra, max_n: usize) -> ClassificationReport {
    let mut cache: HashMap<&str, bool> = HashMap::new();
    let mut holds = |name: &'static str| {
        *cache.entry(name).or_insert_with(|| {
            let id = lookup(name).expect("variety refers to catalog entries");
            CompiledIdentity::new(&id).holds(a)
        })
    };
    let memberships: BTreeMap<String, bool> = VARIETIES
        .iter()
        .map(|(name, ids)| (name.to_string(), ids.iter().all(|id| holds(id))))
        .collect();
    let licensed = memberships["DM"] || memberships["St"];
    ClassificationReport {
        level: level(a, max_n),
        level_alt: licensed.then(|| level_alt(a, max_n)),
        memberships,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Lattice;
    use std::sync::Arc;

    #[test]
    fn trivial_algebra() {
        let a = FiniteAlgebra::new(Arc::new(Lattice::chain(1).unwrap()), &[vec![0]], &[0]).unwrap();
        let r = classify(&a);
        assert!(r.memberships.values().all(|&v| v));
        assert_eq!(r.level, Level::Exactly(0));
        assert_eq!(r.level_alt, Some(Level::Exactly(0)));
        assert_eq!(level_alt(&a, 3), Level::Exactly(0));
    }

    #[test]
    fn boolean_two_element_is_level_zero() {
        // x'* = x here: 0' = 1, 1* = 0 and 1' = 0, 0* = 1.
        let a = FiniteAlgebra::new(
            Arc::new(Lattice::chain(2).unwrap()),
            &[vec![1, 1], vec![0, 1]],
            &[1, 0],
        )
        .unwrap();
        assert_eq!(level(&a, 3), Level::Exactly(0));
    }

    #[test]
    fn level_display_and_json() {
        assert_eq!(Level::Exactly(2).to_string(), "2");
        assert_eq!(Level::ExceedsBound(2).to_string(), "exceeds 2");
        assert_eq!(
            serde_json::to_string(&Level::ExceedsBound(6)).unwrap(),
            r#"{"exceeds_bound":6}"#
        );
    }
}
