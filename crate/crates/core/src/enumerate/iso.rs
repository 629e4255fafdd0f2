//! Isomorphism of finite algebras via canonical forms.
//!
//! Any isomorphism is in particular an order isomorphism of the lattices, so
//! it carries linear extensions of one order onto linear extensions of the
//! other. The canonical form is therefore the lexicographically smallest
//! encoding of the algebra over all relabellings that list the elements in
//! some linear-extension order. Bottom always lands first and top last.

use crate::algebra::{FiniteAlgebra, Lattice};

/// Length-prefixed encoding: order matrix, then arrow table, then negation.
fn encode(a: &FiniteAlgebra, order: &[usize]) -> Vec<u8> {
    let n = a.size();
    let mut new_of = vec![0usize; n];
    for (new, &old) in order.iter().enumerate() {
        new_of[old] = new;
    }
    let mut out = Vec::with_capacity(1 + 2 * n * n + n);
    out.push(n as u8);
    for &x in order {
        for &y in order {
            out.push(a.leq(x, y) as u8);
        }
    }
    for &x in order {
        for &y in order {
            out.push(new_of[a.arrow(x, y)] as u8);
        }
    }
    for &x in order {
        out.push(new_of[a.neg(x)] as u8);
    }
    out
}

fn for_each_linear_extension(l: &Lattice, f: &mut impl FnMut(&[usize])) {
    fn go(
        l: &Lattice,
        placed: &mut Vec<usize>,
        used: &mut Vec<bool>,
        f: &mut impl FnMut(&[usize]),
    ) {
        let n = l.size();
        if placed.len() == n {
            f(placed);
            return;
        }
        for x in 0..n {
            if used[x] {
                continue;
            }
            let minimal = (0..n).all(|y| y == x || used[y] || !l.leq(y, x));
            if minimal {
                used[x] = true;
                placed.push(x);
                go(l, placed, used, f);
                placed.pop();
                used[x] = false;
            }
        }
    }
    let n = l.size();
    go(l, &mut Vec::with_capacity(n), &mut vec![false; n], f);
}

pub fn canonical_form(a: &FiniteAlgebra) -> Vec<u8> {
    let mut best: Option<Vec<u8>> = None;
    for_each_linear_extension(a.lattice(), &mut |order| {
        let code = encode(a, order);
        if best.as_ref().is_none_or(|b| code < *b) {
            best = Some(code);
        }
    });
    best.expect("every finite poset has a linear extension")
}

/// Cheap invariants that any isomorphism preserves.
fn invariants(a: &FiniteAlgebra) -> (usize, Vec<(usize, usize, usize)>) {
    let n = a.size();
    let mut profile: Vec<(usize, usize, usize)> = (0..n)
        .map(|x| {
            let down = (0..n).filter(|&y| a.leq(y, x)).count();
            let up = (0..n).filter(|&y| a.leq(x, y)).count();
            let fixed = (a.neg(x) == x) as usize;
            (down, up, fixed)
        })
        .collect();
    profile.sort_unstable();
    (n, profile)
}

pub fn is_isomorphic(a: &FiniteAlgebra, b: &FiniteAlgebra) -> bool {
    invariants(a) == invariants(b) && canonical_form(a) == canonical_form(b)
}

/// All order automorphisms of a lattice, identity first.
pub fn lattice_automorphisms(l: &Lattice) -> Vec<Vec<usize>> {
    fn go(
        l: &Lattice,
        i: usize,
        map: &mut Vec<usize>,
        used: &mut [bool],
        out: &mut Vec<Vec<usize>>,
    ) {
        let n = l.size();
        if i == n {
            out.push(map.clone());
            return;
        }
        for j in 0..n {
            if used[j] {
                continue;
            }
            let consistent =
                (0..i).all(|p| l.leq(p, i) == l.leq(map[p], j) && l.leq(i, p) == l.leq(j, map[p]));
            if consistent {
                used[j] = true;
                map.push(j);
                go(l, i + 1, map, used, out);
                map.pop();
                used[j] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(l, 0, &mut Vec::new(), &mut vec![false; l.size()], &mut out);
    out.sort();
    out
}

/// Smallest `(arrow, neg)` image under the given automorphisms; equal keys
/// mean the two structures on the same lattice are isomorphic.
pub(crate) fn orbit_key(n: usize, autos: &[Vec<usize>], arrow: &[u8], neg: &[u8]) -> Vec<u8> {
    let mut best: Option<Vec<u8>> = None;
    let mut buf = vec![0u8; n * n + n];
    for p in autos {
        for x in 0..n {
            for y in 0..n {
                buf[p[x] * n + p[y]] = p[arrow[x * n + y] as usize] as u8;
            }
            buf[n * n + p[x]] = p[neg[x] as usize] as u8;
        }
        if best.as_ref().is_none_or(|b| buf < *b) {
            best = Some(buf.clone());
        }
    }
    best.expect("identity is always an automorphism")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Lattice;
    use std::sync::Arc;

    fn two_chain(arrow01: usize) -> FiniteAlgebra {
        FiniteAlgebra::new(
            Arc::new(Lattice::chain(2).unwrap()),
            &[vec![1, arrow01], vec![0, 1]],
            &[1, 0],
        )
        .unwrap()
    }

    #[test]
    fn two_chain_arrows_are_not_isomorphic() {
        assert!(!is_isomorphic(&two_chain(1), &two_chain(0)));
        assert!(is_isomorphic(&two_chain(1), &two_chain(1)));
    }

    #[test]
    fn permutation_preserves_canonical_form() {
        let a = two_chain(0);
        let b = a.permuted(&[1, 0]);
        assert_eq!(canonical_form(&a), canonical_form(&b));
    }

    #[test]
    fn square_has_two_automorphisms() {
        let lats = crate::enumerate::distributive_lattice_structures(4).unwrap();
        let square = lats
            .iter()
            .find(|l| l.size() == 4 && l.covers().covers.len() == 4)
            .unwrap();
        assert_eq!(lattice_automorphisms(square).len(), 2);
        assert_eq!(lattice_automorphisms(&Lattice::chain(5).unwrap()).len(), 1);
    }
}
