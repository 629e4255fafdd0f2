//! Claim-by-claim verification of the shipped examples and of the
//! variety-level statements they illustrate.
//!
//! Claims about a shipped algebra are exact. Claims about a whole variety
//! are checked as "no countermodel up to size N": every identity involved
//! uses `->` only as `x -> 0`, which is the lattice pseudocomplement for
//! every semi-Heyting arrow, so a search over (lattice, negation) pairs
//! decides them for every algebra of size at most N. Identities that use
//! the arrow in earnest are swept over full triples up to a smaller bound.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::FiniteAlgebra;
use crate::builtin::builtin;
use crate::catalog::{check, lookup, DM1_CONSEQUENCES, DMSST_CONSEQUENCES, DQD_CONSEQUENCES};
use crate::classify::{level, level_alt, Level};
use crate::enumerate::{is_isomorphic, reduct_corpus, search, SearchLimits, SearchSpec};
use crate::term::{eval, Identity};

pub const DEFAULT_CLAIM_SIZE: usize = 8;
pub const DEFAULT_ARROW_SIZE: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClaimStatus {
    Match,
    Mismatch,
    /// Reported for information; no outcome is asserted.
    Info,
}

impl fmt::Display for ClaimStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClaimStatus::Match => "match",
            ClaimStatus::Mismatch => "mismatch",
            ClaimStatus::Info => "info",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimResult {
    pub id: String,
    pub description: String,
    pub expected: String,
    pub actual: String,
    pub status: ClaimStatus,
    /// Size bound of the model space searched, for corpus claims.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClaimConfig {
    /// Bound for claims decided on (lattice, negation) pairs.
    pub max_size: usize,
    /// Bound for claims that need every arrow enumerated.
    pub arrow_size: usize,
    pub limits: SearchLimits,
}

impl Default for ClaimConfig {
    fn default() -> Self {
        ClaimConfig {
            max_size: DEFAULT_CLAIM_SIZE,
            arrow_size: DEFAULT_ARROW_SIZE,
            limits: SearchLimits::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub max_size: usize,
    pub arrow_size: usize,
    pub claims: Vec<ClaimResult>,
}

impl ClaimReport {
    pub fn all_match(&self) -> bool {
        self.claims
            .iter()
            .all(|c| c.status != ClaimStatus::Mismatch)
    }

    pub fn get(&self, id: &str) -> Option<&ClaimResult> {
        self.claims.iter().find(|c| c.id == id)
    }
}

fn id(name: &str) -> Identity {
    lookup(name).unwrap_or_else(|| panic!("{name} is in the catalog"))
}

fn ids(names: &[&str]) -> Vec<Identity> {
    names.iter().map(|n| id(n)).collect()
}

fn exact(
    id: &str,
    description: &str,
    expected: impl Into<String>,
    actual: impl Into<String>,
) -> ClaimResult {
    let (expected, actual) = (expected.into(), actual.into());
    let status = if expected == actual {
        ClaimStatus::Match
    } else {
        ClaimStatus::Mismatch
    };
    ClaimResult {
        id: id.to_string(),
        description: description.to_string(),
        expected,
        actual,
        status,
        bound: None,
    }
}

fn algebra(name: &str) -> FiniteAlgebra {
    builtin(name).expect("builtin exists")
}

fn validity(name: &str) -> ClaimResult {
    let a = algebra(name);
    let report = a.validate();
    let actual = match report.failures.first() {
        None => "valid".to_string(),
        Some(f) => format!("violates {}", f.axiom),
    };
    exact(
        &format!("{name}-valid"),
        &format!("{name} satisfies every lattice, semi-Heyting and DQD axiom"),
        "valid",
        actual,
    )
}

fn verdict(name: &str, identity: &str, expected: &str, description: &str) -> ClaimResult {
    let a = algebra(name);
    let actual = check(&a, &id(identity)).labelled(&a).to_string();
    exact(
        &format!("{name}-{}", identity.to_lowercase().replace('\'', "alt")),
        description,
        expected,
        actual,
    )
}

fn level_claim(name: &str, max: usize, expected: &str, description: &str) -> ClaimResult {
    let a = algebra(name);
    exact(
        &format!("{name}-level"),
        description,
        expected,
        level(&a, max).to_string(),
    )
}

/// Verdict of an identity at one fixed assignment of its variables.
fn verdict_at(a: &FiniteAlgebra, identity: &Identity, assignment: &[(&str, &str)]) -> String {
    let env: HashMap<String, usize> = assignment
        .iter()
        .map(|(v, e)| (v.to_string(), a.index_of(e).expect("label exists")))
        .collect();
    let (l, r) = identity.equational_sides();
    let lv = eval(&l, a, &env).expect("all variables bound");
    let rv = eval(&r, a, &env).expect("all variables bound");
    let at: Vec<String> = assignment.iter().map(|(v, e)| format!("{v}={e}")).collect();
    let word = if lv == rv { "pass" } else { "fail" };
    format!("{word} at {}", at.join(", "))
}

fn none_found(n: usize) -> String {
    format!("no countermodel of size <= {n}")
}

fn describe_hit(found: &[FiniteAlgebra]) -> String {
    let a = &found[0];
    format!(
        "countermodel of size {} found (neg = [{}])",
        a.size(),
        a.neg_table()
            .iter()
            .map(|&x| a.label(x as usize))
            .collect::<Vec<_>>()
            .join(", ")
    )
}

/// No algebra of size at most `n` satisfies all of `given` and fails `goal`.
fn no_countermodel(
    claim: &str,
    description: &str,
    given: &[&str],
    goal: &str,
    n: usize,
    limits: &SearchLimits,
) -> ClaimResult {
    let spec = SearchSpec::new(n)
        .satisfying(ids(given))
        .falsifying([id(goal)])
        .limit(1);
    let actual = match search(&spec, limits) {
        Ok(found) if found.is_empty() => none_found(n),
        Ok(found) => describe_hit(&found),
        Err(e) => e.to_string(),
    };
    ClaimResult {
        bound: Some(n),
        ..exact(claim, description, none_found(n), actual)
    }
}

fn sharpness(
    claim: &str,
    description: &str,
    satisfy: &[&str],
    falsify: &[&str],
    n: usize,
    target: &str,
    limits: &SearchLimits,
) -> ClaimResult {
    let spec = SearchSpec::new(n)
        .satisfying(ids(satisfy))
        .falsifying(ids(falsify));
    let t = algebra(target);
    let expected = format!("contains an algebra isomorphic to {target}");
    let actual = match search(&spec, limits) {
        Ok(found) if found.iter().any(|a| is_isomorphic(a, &t)) => expected.clone(),
        Ok(found) => format!("{} algebras, none isomorphic to {target}", found.len()),
        Err(e) => e.to_string(),
    };
    ClaimResult {
        bound: Some(n),
        ..exact(claim, description, expected, actual)
    }
}

/// Sweep over one representative per (lattice, negation) class.
fn reduct_sweep(
    claim: &str,
    description: &str,
    reducts: &[FiniteAlgebra],
    n: usize,
    given: &[&str],
    bad: impl Fn(&FiniteAlgebra) -> bool,
) -> ClaimResult {
    let given = ids(given);
    let relevant: Vec<&FiniteAlgebra> = reducts
        .iter()
        .filter(|a| given.iter().all(|g| check(a, g).passed()))
        .collect();
    let violations = relevant.iter().filter(|a| bad(a)).count();
    let actual = if violations == 0 {
        none_found(n)
    } else {
        format!("{violations} of {} classes violate it", relevant.len())
    };
    ClaimResult {
        bound: Some(n),
        ..exact(claim, description, none_found(n), actual)
    }
}

type ClaimFn<'a> = Box<dyn Fn() -> Vec<ClaimResult> + Send + Sync + 'a>;

fn example_claims() -> Vec<ClaimResult> {
    let mut out = Vec::new();
    for name in crate::builtin::BUILTIN_NAMES {
        out.push(validity(name));
    }
    out.extend([
        verdict("fig1", "DM", "pass", "fig1 is a De Morgan algebra"),
        verdict(
            "fig1",
            "St",
            "fail at x=b (lhs = a, rhs = 1)",
            "fig1 fails the Stone identity, first at b",
        ),
        verdict("fig1", "R", "pass", "fig1 is regular"),
        level_claim("fig1", 6, "2", "fig1 is at level 2"),
        verdict(
            "fig2",
            "JDM",
            "pass",
            "fig2 satisfies the join De Morgan law",
        ),
        verdict("fig2", "R", "pass", "fig2 is regular"),
        verdict(
            "fig2",
            "DM",
            "fail at x=2 (lhs = 0, rhs = 2)",
            "fig2's negation is not an involution",
        ),
        level_claim("fig2", 6, "1", "fig2 is at level 1"),
        verdict(
            "fig3",
            "JDM",
            "pass",
            "fig3 satisfies the join De Morgan law",
        ),
        verdict("fig3", "St", "pass", "fig3 is a Stone algebra"),
        verdict(
            "fig3",
            "L'0",
            "fail at x=a (lhs = d, rhs = 0)",
            "fig3 fails the level 1 identity x /\\ x'* = (x /\\ x'*)'*, first at a",
        ),
        verdict(
            "fig3",
            "DM",
            "fail at x=a (lhs = b, rhs = a)",
            "fig3's negation is not an involution",
        ),
        level_claim("fig3", 6, "2", "fig3 is at level 2"),
        verdict(
            "ex15",
            "JDM",
            "pass",
            "ex15 satisfies the join De Morgan law",
        ),
        verdict("ex15", "Lee", "pass", "ex15 satisfies the Lee identity"),
        level_claim("ex15", 2, "exceeds 2", "ex15 is above level 2"),
    ]);
    let fig2 = algebra("fig2");
    let st = check(&fig2, &id("St"));
    out.push(exact(
        "fig2-st",
        "fig2 fails the Stone identity",
        "fail",
        if st.passed() { "pass" } else { "fail" },
    ));
    let ex15 = algebra("ex15");
    out.push(exact(
        "ex15-st",
        "ex15 fails the Stone identity",
        "fail",
        if check(&ex15, &id("St")).passed() {
            "pass"
        } else {
            "fail"
        },
    ));
    out.push(exact(
        "ex15-lalt1",
        "ex15 fails the level 2 identity at x=2",
        "fail at x=2",
        verdict_at(&ex15, &id("L'1"), &[("x", "2")]),
    ));
    out
}

/// Runs every claim. Claims run in parallel; the result order is fixed.
pub fn verify_claims(cfg: &ClaimConfig) -> ClaimReport {
    let n = cfg.max_size;
    let limits = &cfg.limits;
    let reducts = reduct_corpus(n).unwrap_or_default();
    let reducts = &reducts;

    let mut jobs: Vec<ClaimFn> = vec![Box::new(example_claims)];

    for &name in DQD_CONSEQUENCES {
        jobs.push(Box::new(move || {
            let ident = id(name);
            let bound = if ident.arrow_only_as_star() {
                n
            } else {
                cfg.arrow_size.min(n)
            };
            vec![no_countermodel(
                &format!("dqd-{}", name.to_lowercase().trim_start_matches("dqd-")),
                &format!("every algebra satisfies {ident}"),
                &[],
                name,
                bound,
                limits,
            )]
        }));
    }

    jobs.push(Box::new(move || {
        let spec = SearchSpec::new(n)
            .satisfying(ids(&["DM", "L1"]))
            .heyting_only();
        let count = search(&spec, limits).map(|v| v.len()).unwrap_or(0);
        let actual = if count > 0 { "at least one" } else { "none" };
        vec![
            ClaimResult {
                bound: Some(n),
                ..exact(
                    "dm-level1-exists",
                    "some De Morgan algebra is at level 1",
                    "at least one",
                    actual,
                )
            },
            no_countermodel(
                "dm-level1-stone",
                "every De Morgan algebra of level 1 is a Stone algebra",
                &["DM", "L1"],
                "St",
                n,
                limits,
            ),
        ]
    }));
    for &name in DM1_CONSEQUENCES {
        jobs.push(Box::new(move || {
            vec![no_countermodel(
                &format!(
                    "dm-level1-{}",
                    name.to_lowercase().trim_start_matches("dm1-")
                ),
                &format!("every De Morgan algebra of level 1 satisfies {}", id(name)),
                &["DM", "L1"],
                name,
                n,
                limits,
            )]
        }));
    }
    for (claim, given, what) in [
        ("dm-stone-level2", ["DM", "St"], "De Morgan Stone"),
        ("dms-stone-level2", ["JDM", "St"], "join De Morgan Stone"),
        ("bdm-stone-level2", ["BDM", "St"], "blended Stone"),
    ] {
        jobs.push(Box::new(move || {
            vec![no_countermodel(
                claim,
                &format!("every {what} algebra is at level 2"),
                &given,
                "L'1",
                n,
                limits,
            )]
        }));
    }
    for &name in DMSST_CONSEQUENCES {
        jobs.push(Box::new(move || {
            vec![no_countermodel(
                &format!(
                    "dms-stone-{}",
                    name.to_lowercase().trim_start_matches("dmsst-")
                ),
                &format!("every join De Morgan Stone algebra satisfies {}", id(name)),
                &["JDM", "St"],
                name,
                n,
                limits,
            )]
        }));
    }
    jobs.push(Box::new(move || {
        let spec = SearchSpec::new(n)
            .satisfying(ids(&["B", "St"]))
            .falsifying([id("L'1")])
            .heyting_only();
        let actual = match search(&spec, limits) {
            Ok(v) => format!("{} classes of size <= {n} above level 2", v.len()),
            Err(e) => e.to_string(),
        };
        vec![ClaimResult {
            id: "b-stone-level2".into(),
            description: format!(
                "level 2 under the variant blending law {} with Stone",
                id("B")
            ),
            expected: "not asserted".into(),
            actual,
            status: ClaimStatus::Info,
            bound: Some(n),
        }]
    }));
    jobs.push(Box::new(move || {
        let spec = SearchSpec::new(n)
            .satisfying(ids(&["JDM", "Lee"]))
            .falsifying([id("L3")])
            .heyting_only();
        let actual = match search(&spec, limits) {
            Ok(v) => format!("{} classes of size <= {n} above level 3", v.len()),
            Err(e) => e.to_string(),
        };
        vec![ClaimResult {
            id: "dmsl-level3".into(),
            description: "join De Morgan Lee algebras above level 3 (the suspected level is 3)"
                .into(),
            expected: "not asserted".into(),
            actual,
            status: ClaimStatus::Info,
            bound: Some(n),
        }]
    }));

    jobs.push(Box::new(move || {
        vec![
            reduct_sweep(
                "dm-level-alt",
                "on De Morgan algebras both level characterizations agree",
                reducts,
                n,
                &["DM"],
                |a| level(a, n + 1) != level_alt(a, n + 1),
            ),
            reduct_sweep(
                "stone-level-alt",
                "on Stone algebras both level characterizations agree",
                reducts,
                n,
                &["St"],
                |a| level(a, n + 1) != level_alt(a, n + 1),
            ),
            reduct_sweep(
                "dms-stone-level-alt",
                "join De Morgan Stone algebras are at level at most 2 under both characterizations",
                reducts,
                n,
                &["JDM", "St"],
                |a| {
                    let l = level(a, n + 1);
                    !matches!(l, Level::Exactly(k) if k <= 2) || level_alt(a, n + 1) != l
                },
            ),
            reduct_sweep(
                "level-monotone",
                "L_k implies L_(k+1) for k <= 4",
                reducts,
                n,
                &[],
                |a| {
                    (0..=4).any(|k| {
                        check(a, &id(&format!("L{k}"))).passed()
                            && !check(a, &id(&format!("L{}", k + 1))).passed()
                    })
                },
            ),
        ]
    }));

    jobs.push(Box::new(move || {
        vec![sharpness(
            "fig1-sharp",
            "a De Morgan algebra at level 2 that is not Stone exists, and fig1 is one",
            &["DM", "L'1"],
            &["St"],
            7.min(n),
            "fig1",
            limits,
        )]
    }));
    jobs.push(Box::new(move || {
        vec![
            sharpness(
                "fig2-sharp",
                "a join De Morgan algebra at level 1 that is not Stone exists, and fig2 is one",
                &["JDM", "L1"],
                &["St"],
                5.min(n),
                "fig2",
                limits,
            ),
            sharpness(
                "fig3-sharp",
                "a join De Morgan Stone algebra above level 1 exists, and fig3 is one",
                &["JDM", "St"],
                &["L'0"],
                6.min(n),
                "fig3",
                limits,
            ),
        ]
    }));

    let claims = jobs
        .par_iter()
        .map(|job| job())
        .collect::<Vec<_>>()
        .concat();
    ClaimReport {
        max_size: n,
        arrow_size: cfg.arrow_size.min(n),
        claims,
    }
}
