//! Named identities and exhaustive checking against a finite algebra.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{Element, FiniteAlgebra};
use crate::term::{
    level_identity, level_identity_alt, parse_identity, Identity, ParseError, Program,
};

const ENTRIES: &[(&str, &str)] = &[
    // semi-Heyting
    ("SH1", "x /\\ (x -> y) = x /\\ y"),
    ("SH2", "x /\\ (y -> z) = x /\\ ((x /\\ y) -> (x /\\ z))"),
    ("SH3", "x -> x = 1"),
    ("H", "(x /\\ y) -> y = 1"),
    ("St", "x* \\/ x** = 1"),
    // dually quasi-De Morgan
    ("DQDa0", "0' = 1"),
    ("DQDa1", "1' = 0"),
    ("DQDb", "(x /\\ y)' = x' \\/ y'"),
    ("DQDc", "(x \\/ y)'' = x'' \\/ y''"),
    ("DQDd", "x'' <= x"),
    ("DM", "x'' = x"),
    ("JDM", "(x \\/ y)' = x' /\\ y'"),
    ("BDM", "(x \\/ x*)' = x' /\\ x*'"),
    // The blended law as printed in the level-2 statement for BDQDSt; it
    // differs from BDM by the final prime. Shipped alongside, no stance taken.
    ("B", "(x \\/ x*)' = x' /\\ x*"),
    ("R", "x /\\ x+ <= y \\/ y*"),
    ("Lee", "(x /\\ y)* \\/ (x* /\\ y)* \\/ (x /\\ y*)* = 1"),
    // consequences of the DQD axioms
    ("DQD-i-a", "1'* = 1"),
    ("DQD-i-b", "1 -> x = x"),
    ("DQD-ii", "y' <= (x /\\ y)'"),
    ("DQD-iii", "(x /\\ y)'* = x'* /\\ y'*"),
    ("DQD-iv", "x''' = x'"),
    ("DQD-v", "x \\/ x+ = 1"),
    // consequence of DM plus level 1
    ("DM1-disjoint", "x*' /\\ x' /\\ x* = 0"),
    // consequences of JDM plus St
    ("DmsSt-1", "x*'* <= x'"),
    ("DmsSt-2", "x' \\/ x*'** = 1"),
    ("DmsSt-3", "x*' <= x**'*"),
    ("DmsSt-4", "x**' = x*'*"),
    ("DmsSt-5", "x*'' = x*"),
    ("DmsSt-6", "x*'' <= x'*'"),
    ("DmsSt-7", "x*+ = x**"),
];

pub const DQD_CONSEQUENCES: &[&str] =
    &["DQD-i-a", "DQD-i-b", "DQD-ii", "DQD-iii", "DQD-iv", "DQD-v"];
pub const DM1_CONSEQUENCES: &[&str] = &["DM1-disjoint"];
pub const DMSST_CONSEQUENCES: &[&str] = &[
    "DmsSt-1", "DmsSt-2", "DmsSt-3", "DmsSt-4", "DmsSt-5", "DmsSt-6", "DmsSt-7",
];

fn entry(name: &str, text: &str) -> Identity {
    parse_identity(name, text).expect("catalog entries parse")
}

/// Every fixed catalog entry, in catalog order. Level identities are
/// generated on demand by [`lookup`].
pub fn catalog() -> Vec<Identity> {
    ENTRIES.iter().map(|(n, t)| entry(n, t)).collect()
}

/// Fixed entries plus `L0..=Lk` and `L'0..=L'k`.
pub fn catalog_with_levels(k: usize) -> Vec<Identity> {
    let mut ids = catalog();
    ids.extend((0..=k).map(level_identity));
    ids.extend((0..=k).map(level_identity_alt));
    ids
}

/// Finds a catalog identity by name. `L<n>` is the level identity, `L'<n>`
/// (or `Lalt<n>`) its alternate form.
pub fn lookup(name: &str) -> Option<Identity> {
    if let Some((n, t)) = ENTRIES.iter().find(|(n, _)| *n == name) {
        return Some(entry(n, t));
    }
    let level = |prefix: &str| {
        name.strip_prefix(prefix)
            .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()))
            .and_then(|d| d.parse::<usize>().ok())
    };
    if let Some(n) = level("L'").or_else(|| level("Lalt")) {
        return Some(level_identity_alt(n));
    }
    level("L").map(level_identity)
}

/// Catalog name, or inline identity text.
pub fn resolve(name_or_text: &str) -> Result<Identity, ParseError> {
    match lookup(name_or_text.trim()) {
        Some(id) => Ok(id),
        None => parse_identity(name_or_text.trim(), name_or_text),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    /// Variables in sorted order with their values.
    pub assignment: Vec<(String, Element)>,
    pub lhs_value: Element,
    pub rhs_value: Element,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckOutcome {
    Pass,
    Fail(Counterexample),
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, CheckOutcome::Pass)
    }

    pub fn counterexample(&self) -> Option<&Counterexample> {
        match self {
            CheckOutcome::Pass => None,
            CheckOutcome::Fail(c) => Some(c),
        }
    }

    pub fn labelled(&self, a: &FiniteAlgebra) -> LabelledOutcome {
        match self {
            CheckOutcome::Pass => LabelledOutcome {
                verdict: Verdict::Pass,
                assignment: None,
                lhs: None,
                rhs: None,
            },
            CheckOutcome::Fail(c) => LabelledOutcome {
                verdict: Verdict::Fail,
                assignment: Some(
                    c.assignment
                        .iter()
                        .map(|(v, e)| (v.clone(), a.label(*e).to_string()))
                        .collect(),
                ),
                lhs: Some(a.label(c.lhs_value).to_string()),
                rhs: Some(a.label(c.rhs_value).to_string()),
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// A check outcome with element labels, ready for printing or JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelledOutcome {
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub assignment: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lhs: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rhs: Option<String>,
}

impl fmt::Display for LabelledOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.verdict {
            Verdict::Pass => f.write_str("pass"),
            Verdict::Fail => {
                f.write_str("fail at ")?;
                let asg = self.assignment.as_ref().filter(|a| !a.is_empty());
                match asg {
                    Some(asg) => {
                        let parts: Vec<String> =
                            asg.iter().map(|(v, e)| format!("{v}={e}")).collect();
                        f.write_str(&parts.join(", "))?;
                    }
                    None => f.write_str("(no variables)")?,
                }
                write!(
                    f,
                    " (lhs = {}, rhs = {})",
                    self.lhs.as_deref().unwrap_or("?"),
                    self.rhs.as_deref().unwrap_or("?")
                )
            }
        }
    }
}

/// An identity compiled once for repeated checking.
#[derive(Debug, Clone)]
pub struct CompiledIdentity {
    identity: Identity,
    program: Program,
}

impl CompiledIdentity {
    pub fn new(identity: &Identity) -> Self {
        let vars = identity.variables();
        let (el, er) = identity.equational_sides();
        let program = Program::compile_many(&[&el, &er, &identity.lhs, &identity.rhs], &vars)
            .expect("identity variables cover both sides");
        CompiledIdentity {
            identity: identity.clone(),
            program,
        }
    }

    pub fn identity(&self) -> &Identity {
        &self.identity
    }

    /// Visits all `|A|^k` assignments in lexicographic order (first variable
    /// most significant) and reports the first failure.
    pub fn check(&self, a: &FiniteAlgebra) -> CheckOutcome {
        let n = a.size();
        let k = self.program.variables().len();
        let mut values = vec![0 as Element; k];
        let mut regs = Vec::with_capacity(16);
        loop {
            self.program.run(a, &values, &mut regs);
            if self.program.output(&regs, 0) != self.program.output(&regs, 1) {
                return CheckOutcome::Fail(Counterexample {
                    assignment: self
                        .program
                        .variables()
                        .iter()
                        .cloned()
                        .zip(values.iter().copied())
                        .collect(),
                    lhs_value: self.program.output(&regs, 2),
                    rhs_value: self.program.output(&regs, 3),
                });
            }
            let mut i = k;
            loop {
                if i == 0 {
                    return CheckOutcome::Pass;
                }
                i -= 1;
                values[i] += 1;
                if values[i] < n {
                    break;
                }
                values[i] = 0;
            }
        }
    }

    pub fn holds(&self, a: &FiniteAlgebra) -> bool {
        self.check(a).passed()
    }
}

pub fn check(a: &FiniteAlgebra, id: &Identity) -> CheckOutcome {
    CompiledIdentity::new(id).check(a)
}

/// Checks each identity, keyed by name in input order.
pub fn check_all(a: &FiniteAlgebra, ids: &[Identity]) -> Vec<(String, CheckOutcome)> {
    ids.iter()
        .map(|id| (id.name.clone(), check(a, id)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Lattice;
    use crate::term::{eval, parse};
    use std::collections::HashMap;
    use std::sync::Arc;

    fn trivial() -> FiniteAlgebra {
        FiniteAlgebra::new(Arc::new(Lattice::chain(1).unwrap()), &[vec![0]], &[0]).unwrap()
    }

    fn boolean2() -> FiniteAlgebra {
        FiniteAlgebra::new(
            Arc::new(Lattice::chain(2).unwrap()),
            &[vec![1, 1], vec![0, 1]],
            &[1, 0],
        )
        .unwrap()
    }

    #[test]
    fn every_entry_parses_and_has_a_unique_name() {
        let ids = catalog();
        assert_eq!(ids.len(), ENTRIES.len());
        let mut names: Vec<_> = ids.iter().map(|i| i.name.clone()).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), ids.len());
        for group in [DQD_CONSEQUENCES, DM1_CONSEQUENCES, DMSST_CONSEQUENCES] {
            for name in group {
                assert!(lookup(name).is_some(), "{name}");
            }
        }
    }

    #[test]
    fn level_lookup() {
        assert_eq!(lookup("L3").unwrap(), level_identity(3));
        assert_eq!(lookup("L'1").unwrap(), level_identity_alt(1));
        assert_eq!(lookup("Lalt2").unwrap(), level_identity_alt(2));
        assert!(lookup("L").is_none());
        assert!(lookup("Lee").is_some());
        assert!(lookup("Lx").is_none());
    }

    #[test]
    fn resolve_falls_back_to_inline_text() {
        let id = resolve("x = x").unwrap();
        assert_eq!(id.name, "x = x");
        assert_eq!(resolve("St").unwrap().name, "St");
        assert!(resolve("NoSuchThing").is_err());
    }

    #[test]
    fn trivial_algebra_satisfies_everything() {
        let a = trivial();
        for (name, outcome) in check_all(&a, &catalog_with_levels(4)) {
            assert!(outcome.passed(), "{name}");
        }
    }

    #[test]
    fn reflexive_identity_passes() {
        assert!(check(&boolean2(), &resolve("x = x").unwrap()).passed());
    }

    #[test]
    fn counterexample_is_lexicographically_first() {
        let a = boolean2();
        // x /\ y = x fails first at x=1, y=0.
        let out = check(&a, &resolve("x /\\ y = x").unwrap());
        let c = out.counterexample().unwrap();
        assert_eq!(c.assignment, vec![("x".into(), 1), ("y".into(), 0)]);
        assert_eq!((c.lhs_value, c.rhs_value), (0, 1));
    }

    #[test]
    fn inequality_reports_original_sides() {
        let a = boolean2();
        let out = check(&a, &resolve("x <= x'").unwrap());
        let c = out.counterexample().unwrap();
        assert_eq!(c.assignment, vec![("x".into(), 1)]);
        assert_eq!((c.lhs_value, c.rhs_value), (1, 0));
        let lab = out.labelled(&a);
        assert_eq!(lab.to_string(), "fail at x=1 (lhs = 1, rhs = 0)");
    }

    #[test]
    fn counterexamples_re_evaluate() {
        let a = boolean2();
        let id = resolve("x -> y = y").unwrap();
        let c = check(&a, &id).counterexample().cloned().unwrap();
        let asg: HashMap<String, Element> = c.assignment.iter().cloned().collect();
        let l = eval(&id.lhs, &a, &asg).unwrap();
        let r = eval(&id.rhs, &a, &asg).unwrap();
        assert_ne!(l, r);
        assert_eq!((l, r), (c.lhs_value, c.rhs_value));
        assert_eq!(parse("x -> y").unwrap(), id.lhs);
    }
}
