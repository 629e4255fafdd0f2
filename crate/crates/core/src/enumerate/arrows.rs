//! Backtracking enumeration of semi-Heyting arrows on a fixed lattice.
//!
//! Entries are filled in row-major index order. The candidate set for
//! `x -> y` is `{z : x /\ z = x /\ y}` (the first semi-Heyting law), the
//! diagonal is forced to the top, and every instance of the second law is
//! checked as soon as both entries it mentions are filled.

use super::EnumError;
use crate::algebra::Lattice;

/// `x /\ (y -> z) = x /\ ((x /\ y) -> (x /\ z))` as two table positions.
#[derive(Debug, Clone, Copy)]
struct Sh2 {
    x: u8,
    left: u16,
    right: u16,
}

pub fn semiheyting_arrows(l: &Lattice, max_nodes: u64) -> Result<Vec<Vec<u8>>, EnumError> {
    let n = l.size();
    let cells = n * n;
    let candidates: Vec<Vec<u8>> = (0..cells)
        .map(|p| {
            let (x, y) = (p / n, p % n);
            if x == y {
                vec![l.top() as u8]
            } else {
                (0..n)
                    .filter(|&z| l.meet(x, z) == l.meet(x, y))
                    .map(|z| z as u8)
                    .collect()
            }
        })
        .collect();
    let mut ready: Vec<Vec<Sh2>> = vec![Vec::new(); cells];
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let left = y * n + z;
                let right = l.meet(x, y) * n + l.meet(x, z);
                if left != right {
                    ready[left.max(right)].push(Sh2 {
                        x: x as u8,
                        left: left as u16,
                        right: right as u16,
                    });
                }
            }
        }
    }

    let mut table = vec![0u8; cells];
    let mut choice = vec![0usize; cells];
    let mut out = Vec::new();
    let mut nodes = 0u64;
    let mut pos = 0usize;
    // Iterative depth-first search; `choice[pos]` is the next candidate to try.
    loop {
        if pos == cells {
            out.push(table.clone());
            pos -= 1;
            choice[pos] += 1;
            continue;
        }
        if choice[pos] >= candidates[pos].len() {
            choice[pos] = 0;
            if pos == 0 {
                break;
            }
            pos -= 1;
            choice[pos] += 1;
            continue;
        }
        nodes += 1;
        if nodes > max_nodes {
            return Err(EnumError::SearchSpaceExceeded { cap: max_nodes });
        }
        table[pos] = candidates[pos][choice[pos]];
        let ok = ready[pos].iter().all(|c| {
            let x = c.x as usize;
            l.meet(x, table[c.left as usize] as usize)
                == l.meet(x, table[c.right as usize] as usize)
        });
        if ok {
            pos += 1;
        } else {
            choice[pos] += 1;
        }
    }
    Ok(out)
}

/// The Heyting arrow: `x -> y` is the largest `z` with `x /\ z <= y`.
pub fn heyting_arrow(l: &Lattice) -> Vec<u8> {
    let n = l.size();
    let mut t = vec![0u8; n * n];
    for x in 0..n {
        for y in 0..n {
            t[x * n + y] = (0..n)
                .filter(|&z| l.leq(l.meet(x, z), y))
                .fold(l.bottom(), |acc, z| l.join(acc, z)) as u8;
        }
    }
    t
}
