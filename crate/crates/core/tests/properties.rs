//! Algebraic invariants over the enumerated model space.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use proptest::prelude::*;
use shkit_core::catalog::{catalog, check, CompiledIdentity};
use shkit_core::classify::{classify, level, Level};
use shkit_core::enumerate::{corpus, heyting_arrow, reduct_corpus, SearchLimits};
use shkit_core::term::{eval, level_identity, Identity};
use shkit_core::{FiniteAlgebra, Term};

/// Every algebra up to five elements, plus one per negation class up to eight.
fn space() -> Arc<Vec<FiniteAlgebra>> {
    static CELL: OnceLock<Arc<Vec<FiniteAlgebra>>> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut v = corpus(5, &SearchLimits::default()).unwrap();
        v.extend(
            reduct_corpus(8)
                .unwrap()
                .into_iter()
                .filter(|a| a.size() > 5),
        );
        Arc::new(v)
    })
    .clone()
}

fn with_heyting_arrow(a: &FiniteAlgebra) -> FiniteAlgebra {
    let n = a.size();
    let h = heyting_arrow(a.lattice());
    let rows: Vec<Vec<usize>> = h
        .chunks(n)
        .map(|r| r.iter().map(|&v| v as usize).collect())
        .collect();
    let neg: Vec<usize> = a.neg_table().iter().map(|&v| v as usize).collect();
    FiniteAlgebra::new(a.lattice().clone(), &rows, &neg).unwrap()
}

#[test]
fn space_is_sound() {
    let all = space();
    assert!(all.len() > 84_000);
    for a in all.iter() {
        assert!(a.validate().is_valid());
    }
}

#[test]
fn pseudocomplement_is_maximal() {
    for a in space().iter() {
        for x in 0..a.size() {
            let s = a.star(x);
            assert_eq!(a.meet(x, s), a.bottom());
            for z in 0..a.size() {
                if a.meet(x, z) == a.bottom() {
                    assert!(a.leq(z, s));
                }
            }
        }
    }
}

#[test]
fn basic_negation_lemmas_hold_pointwise() {
    for a in space().iter() {
        let (top, n) = (a.top(), a.size());
        let ns = |x: usize| a.star(a.neg(x));
        assert_eq!(ns(top), top);
        for x in 0..n {
            assert_eq!(a.arrow(top, x), x);
            assert_eq!(a.neg(a.neg(a.neg(x))), a.neg(x));
            assert_eq!(a.join(x, a.plus(x)), top);
            for y in 0..n {
                if a.leq(x, y) {
                    assert!(a.leq(a.neg(y), a.neg(x)));
                }
                assert_eq!(ns(a.meet(x, y)), a.meet(ns(x), ns(y)));
            }
        }
    }
}

#[test]
fn star_only_verdicts_do_not_depend_on_the_arrow() {
    let star_only: Vec<CompiledIdentity> = catalog()
        .iter()
        .chain((0..4).map(level_identity).collect::<Vec<_>>().iter())
        .filter(|i| i.arrow_only_as_star())
        .map(CompiledIdentity::new)
        .collect();
    assert!(star_only.len() > 20);
    for a in space().iter().filter(|a| a.size() <= 5) {
        let h = with_heyting_arrow(a);
        for c in &star_only {
            assert_eq!(
                c.holds(a),
                c.holds(&h),
                "{} on {:?}",
                c.identity(),
                a.tables()
            );
        }
    }
}

#[test]
fn classification_implications() {
    for a in space().iter() {
        let r = classify(a);
        if r.member("DM") {
            assert!(r.member("Dms"));
        }
        if r.member("Dms") {
            assert!(r.member("BDQD"));
        }
        assert!(r.member("SH") && r.member("DQD"));
        if let Level::Exactly(n) = r.level {
            assert!(check(a, &level_identity(n)).passed());
            if n > 0 {
                assert!(!check(a, &level_identity(n - 1)).passed());
            }
        }
    }
}

fn term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        Just(Term::var("x")),
        Just(Term::var("y")),
        Just(Term::Zero),
        Just(Term::One),
    ];
    leaf.prop_recursive(5, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.join(b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.meet(b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.arrow(b)),
            inner.clone().prop_map(Term::neg),
            inner.prop_map(Term::star),
        ]
    })
}

/// Assignments in checking order: first variable most significant.
fn assignments(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0..n.pow(k as u32))
        .map(|mut code| {
            let mut v = vec![0; k];
            for slot in v.iter_mut().rev() {
                *slot = code % n;
                code /= n;
            }
            v
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn star_evaluates_through_the_arrow_table(t in term(), i in 0usize..100_000, x in 0usize..64, y in 0usize..64) {
        let all = space();
        let a = &all[i % all.len()];
        let env = HashMap::from([("x".to_string(), x % a.size()), ("y".to_string(), y % a.size())]);
        let v = eval(&t, a, &env).unwrap();
        prop_assert_eq!(eval(&t.clone().star(), a, &env).unwrap(), a.arrow(v, a.bottom()));
    }

    #[test]
    fn check_agrees_with_brute_force(l in term(), r in term(), i in 0usize..100_000) {
        let all = space();
        let a = &all[i % all.len()];
        let id = Identity::equation("random", l.clone(), r.clone());
        let vars = id.variables();
        let first_failure = assignments(a.size(), vars.len()).into_iter().find_map(|vals| {
            let env: HashMap<String, usize> = vars.iter().cloned().zip(vals.iter().copied()).collect();
            let (lv, rv) = (eval(&l, a, &env).unwrap(), eval(&r, a, &env).unwrap());
            (lv != rv).then_some((vals, lv, rv))
        });
        match (check(a, &id).counterexample(), first_failure) {
            (None, None) => {}
            (Some(c), Some((vals, lv, rv))) => {
                let got: Vec<usize> = c.assignment.iter().map(|(_, e)| *e).collect();
                prop_assert_eq!(got, vals);
                prop_assert_eq!((c.lhs_value, c.rhs_value), (lv, rv));
                prop_assert_ne!(c.lhs_value, c.rhs_value);
            }
            (got, want) => prop_assert!(false, "check {:?} vs brute force {:?}", got, want),
        }
    }

    #[test]
    fn levels_are_monotone(i in 0usize..100_000) {
        let all = space();
        let a = &all[i % all.len()];
        let holds: Vec<bool> = (0..=5).map(|n| check(a, &level_identity(n)).passed()).collect();
        for n in 0..5 {
            prop_assert!(!holds[n] || holds[n + 1]);
        }
        prop_assert_eq!(level(a, 5).exact(), holds.iter().position(|&h| h));
    }
}
