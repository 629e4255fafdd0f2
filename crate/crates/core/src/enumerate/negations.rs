//! All dually quasi-De Morgan negations on a fixed lattice.

use crate::algebra::Lattice;

/// Every table `'` with `0' = 1`, `1' = 0`, `(x /\ y)' = x' \/ y'`,
/// `(x \/ y)'' = x'' \/ y''` and `x'' <= x`, in lexicographic order of the
/// table.
pub fn dqd_negations(l: &Lattice) -> Vec<Vec<u8>> {
    let n = l.size();
    let mut neg = vec![0u8; n];
    let mut assigned = vec![false; n];
    let mut out = Vec::new();
    if n == 1 {
        return vec![vec![0]];
    }
    neg[l.bottom()] = l.top() as u8;
    neg[l.top()] = l.bottom() as u8;
    assigned[l.bottom()] = true;
    assigned[l.top()] = true;
    let free: Vec<usize> = (0..n).filter(|&x| !assigned[x]).collect();
    // Bounds alone may already break the meet law in degenerate cases.
    if !meet_law_holds_for(l, &neg, &assigned, l.bottom())
        || !meet_law_holds_for(l, &neg, &assigned, l.top())
    {
        return out;
    }
    fill(l, &free, 0, &mut neg, &mut assigned, &mut out);
    out
}

fn meet_law_holds_for(l: &Lattice, neg: &[u8], assigned: &[bool], e: usize) -> bool {
    let n = l.size();
    for x in 0..n {
        if !assigned[x] {
            continue;
        }
        for y in 0..n {
            let m = l.meet(x, y);
            if !assigned[y] || !assigned[m] || (x != e && y != e && m != e) {
                continue;
            }
            if neg[m] as usize != l.join(neg[x] as usize, neg[y] as usize) {
                return false;
            }
        }
    }
    true
}

fn fill(
    l: &Lattice,
    free: &[usize],
    i: usize,
    neg: &mut [u8],
    assigned: &mut [bool],
    out: &mut Vec<Vec<u8>>,
) {
    if i == free.len() {
        if double_negation_laws_hold(l, neg) {
            out.push(neg.to_vec());
        }
        return;
    }
    let e = free[i];
    assigned[e] = true;
    for v in 0..l.size() {
        neg[e] = v as u8;
        if meet_law_holds_for(l, neg, assigned, e) {
            fill(l, free, i + 1, neg, assigned, out);
        }
    }
    assigned[e] = false;
}

fn double_negation_laws_hold(l: &Lattice, neg: &[u8]) -> bool {
    let n = l.size();
    let nn = |x: usize| neg[neg[x] as usize] as usize;
    (0..n).all(|x| l.leq(nn(x), x))
        && (0..n).all(|x| (0..n).all(|y| nn(l.join(x, y)) == l.join(nn(x), nn(y))))
}
