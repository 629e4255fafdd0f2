//! The four example algebras shipped as data.
//!
//! The data files list elements in the order of the printed tables. On load
//! each algebra is relabelled into a fixed internal order: bottom first, top
//! last, and the rest sorted by label (numerically when labels are numbers).
//! Checks report the first counterexample in this order.

use std::cmp::Ordering;

use crate::algebra::FiniteAlgebra;
use crate::format::parse_algebra;

pub const BUILTIN_NAMES: &[&str] = &["fig1", "fig2", "fig3", "ex15"];

/// The shipped data file, in printed-table order.
pub fn builtin_json(name: &str) -> Option<&'static str> {
    Some(match name {
        "fig1" => include_str!("../data/fig1.json"),
        "fig2" => include_str!("../data/fig2.json"),
        "fig3" => include_str!("../data/fig3.json"),
        "ex15" => include_str!("../data/ex15.json"),
        _ => return None,
    })
}

fn label_order(a: &str, b: &str) -> Ordering {
    match (a.parse::<u64>(), b.parse::<u64>()) {
        (Ok(x), Ok(y)) => x.cmp(&y),
        (Ok(_), Err(_)) => Ordering::Less,
        (Err(_), Ok(_)) => Ordering::Greater,
        (Err(_), Err(_)) => a.cmp(b),
    }
}

/// Relabels `a` into internal order.
pub fn normalized(a: &FiniteAlgebra) -> FiniteAlgebra {
    let n = a.size();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| {
        let rank = |e: usize| match e {
            e if e == a.bottom() => 0,
            e if e == a.top() => 2,
            _ => 1,
        };
        rank(x)
            .cmp(&rank(y))
            .then_with(|| label_order(a.label(x), a.label(y)))
    });
    let mut perm = vec![0; n];
    for (new, &old) in order.iter().enumerate() {
        perm[old] = new;
    }
    a.permuted(&perm)
}

pub fn builtin(name: &str) -> Option<FiniteAlgebra> {
    builtin_json(name)
        .map(|json| normalized(&parse_algebra(json).expect("shipped algebras are valid")))
}
