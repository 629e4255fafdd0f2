//! Canonical forms and corpus dedup against explicit bijection search.

use std::sync::Arc;

use proptest::prelude::*;
use shkit_core::builtin::builtin;
use shkit_core::enumerate::{
    canonical_form, corpus, distributive_lattice_structures, dqd_negations, is_isomorphic,
    reduct_corpus, semiheyting_arrows, SearchLimits,
};
use shkit_core::FiniteAlgebra;

/// Tries every bijection; sizes up to 7 only.
fn explicitly_isomorphic(a: &FiniteAlgebra, b: &FiniteAlgebra) -> bool {
    fn go(a: &FiniteAlgebra, b: &FiniteAlgebra, map: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let n = a.size();
        if map.len() == n {
            return (0..n).all(|x| {
                b.neg(map[x]) == map[a.neg(x)]
                    && (0..n).all(|y| {
                        b.meet(map[x], map[y]) == map[a.meet(x, y)]
                            && b.join(map[x], map[y]) == map[a.join(x, y)]
                            && b.arrow(map[x], map[y]) == map[a.arrow(x, y)]
                    })
            });
        }
        for j in 0..n {
            if !used[j] {
                used[j] = true;
                map.push(j);
                if go(a, b, map, used) {
                    return true;
                }
                map.pop();
                used[j] = false;
            }
        }
        false
    }
    a.size() == b.size() && go(a, b, &mut Vec::new(), &mut vec![false; b.size()])
}

#[test]
fn reduct_classes_are_pairwise_distinct_up_to_six() {
    let all = reduct_corpus(6).unwrap();
    for (i, a) in all.iter().enumerate() {
        for b in &all[i + 1..] {
            if a.size() == b.size() {
                assert!(!explicitly_isomorphic(a, b));
                assert!(!is_isomorphic(a, b));
            }
        }
    }
}

#[test]
fn corpus_is_complete_and_irredundant_up_to_four() {
    let all = corpus(4, &SearchLimits::default()).unwrap();
    for l in distributive_lattice_structures(4).unwrap() {
        for arrow in semiheyting_arrows(&l, u64::MAX).unwrap() {
            for neg in dqd_negations(&l) {
                let arrow: Vec<Vec<usize>> = arrow
                    .chunks(l.size())
                    .map(|r| r.iter().map(|&v| v as usize).collect())
                    .collect();
                let neg: Vec<usize> = neg.iter().map(|&v| v as usize).collect();
                let a = FiniteAlgebra::new(l.clone(), &arrow, &neg).unwrap();
                let hits = all.iter().filter(|c| explicitly_isomorphic(&a, c)).count();
                assert_eq!(hits, 1);
            }
        }
    }
}

#[test]
fn different_sizes_are_not_isomorphic() {
    assert!(!is_isomorphic(
        &builtin("fig2").unwrap(),
        &builtin("fig3").unwrap()
    ));
}

#[test]
fn two_chain_arrows_differ() {
    let all = corpus(2, &SearchLimits::default()).unwrap();
    let two: Vec<_> = all.iter().filter(|a| a.size() == 2).collect();
    assert_eq!(two.len(), 2);
    assert!(!is_isomorphic(two[0], two[1]));
}

fn shuffle(n: usize, seed: &[usize]) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    for (i, &s) in seed.iter().enumerate().take(n) {
        perm.swap(i, i + s % (n - i));
    }
    perm
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn relabelling_preserves_canonical_form(which in 0usize..4, seed in prop::collection::vec(0usize..1000, 15)) {
        let a = builtin(["fig1", "fig2", "fig3", "ex15"][which]).unwrap();
        let b = a.permuted(&shuffle(a.size(), &seed));
        prop_assert_eq!(canonical_form(&a), canonical_form(&b));
        prop_assert!(is_isomorphic(&a, &b));
        if a.size() <= 7 {
            prop_assert!(explicitly_isomorphic(&a, &b));
        }
    }

    #[test]
    fn canonical_forms_agree_with_bijection_search(i in 0usize..10_000, j in 0usize..10_000, seed in prop::collection::vec(0usize..1000, 6)) {
        let all = small_corpus();
        let a = &all[i % all.len()];
        // A third of the cases compare an algebra with a relabelled copy of itself.
        let other = if j % 3 == 0 { a } else { &all[j % all.len()] };
        let b = other.permuted(&shuffle(other.size(), &seed));
        prop_assert_eq!(canonical_form(a) == canonical_form(&b), explicitly_isomorphic(a, &b));
    }
}

fn small_corpus() -> Arc<Vec<FiniteAlgebra>> {
    use std::sync::OnceLock;
    static CELL: OnceLock<Arc<Vec<FiniteAlgebra>>> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut v = corpus(4, &SearchLimits::default()).unwrap();
        v.extend(reduct_corpus(6).unwrap());
        Arc::new(v)
    })
    .clone()
}
