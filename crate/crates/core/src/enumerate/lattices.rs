//! Finite distributive lattices as downset lattices of finite posets.

use std::collections::HashMap;
use std::sync::Arc;

use super::EnumError;
use crate::algebra::{generic_labels, CoverRelation, Lattice};

/// Largest lattice the generator will produce.
pub const MAX_LATTICE_SIZE: usize = 16;

/// A finite poset on `0..size`. `below[i]` has bit `j` set iff `j <= i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    below: Vec<u32>,
}

impl Poset {
    pub fn empty() -> Self {
        Poset { below: Vec::new() }
    }

    /// Builds a poset from a reflexive, antisymmetric, transitive relation.
    pub fn from_relation(leq: &[Vec<bool>]) -> Option<Self> {
        let k = leq.len();
        if k > 31 || leq.iter().any(|r| r.len() != k) {
            return None;
        }
        for i in 0..k {
            if !leq[i][i] {
                return None;
            }
            for j in 0..k {
                if i != j && leq[i][j] && leq[j][i] {
                    return None;
                }
                for m in 0..k {
                    if leq[i][j] && leq[j][m] && !leq[i][m] {
                        return None;
                    }
                }
            }
        }
        let below = (0..k)
            .map(|i| {
                (0..k)
                    .filter(|&j| leq[j][i])
                    .fold(0u32, |acc, j| acc | 1 << j)
            })
            .collect();
        Some(Poset { below })
    }

    pub fn size(&self) -> usize {
        self.below.len()
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.below[y] >> x & 1 == 1
    }

    /// All downsets as bitmasks, in discovery order.
    pub fn downsets(&self) -> Vec<u32> {
        // Every downset is reached from a smaller one by adding an element
        // whose strict down-set is already present.
        let k = self.size();
        let mut seen = vec![0u32];
        let mut i = 0;
        let mut index: HashMap<u32, ()> = HashMap::from([(0, ())]);
        while i < seen.len() {
            let d = seen[i];
            for e in 0..k {
                if d >> e & 1 == 0 && self.below[e] & !(1 << e) & !d == 0 {
                    let nd = d | 1 << e;
                    if index.insert(nd, ()).is_none() {
                        seen.push(nd);
                    }
                }
            }
            i += 1;
        }
        seen
    }

    /// Adds a new element whose strict down-set is the downset `d`.
    fn extended(&self, d: u32) -> Poset {
        let mut below = self.below.clone();
        below.push(d | 1 << self.size());
        Poset { below }
    }

    fn degrees(&self) -> Vec<(u32, u32)> {
        let k = self.size();
        (0..k)
            .map(|i| {
                let down = self.below[i].count_ones();
                let up = (0..k).filter(|&j| self.leq(i, j)).count() as u32;
                (down, up)
            })
            .collect()
    }

    pub fn is_isomorphic(&self, other: &Poset) -> bool {
        let k = self.size();
        if k != other.size() {
            return false;
        }
        let da = self.degrees();
        let db = other.degrees();
        let mut sa = da.clone();
        let mut sb = db.clone();
        sa.sort_unstable();
        sb.sort_unstable();
        if sa != sb {
            return false;
        }
        let mut map = vec![usize::MAX; k];
        let mut used = vec![false; k];
        fn go(
            a: &Poset,
            b: &Poset,
            da: &[(u32, u32)],
            db: &[(u32, u32)],
            i: usize,
            map: &mut [usize],
            used: &mut [bool],
        ) -> bool {
            if i == a.size() {
                return true;
            }
            for j in 0..b.size() {
                if used[j] || da[i] != db[j] {
                    continue;
                }
                let consistent = (0..i)
                    .all(|p| a.leq(p, i) == b.leq(map[p], j) && a.leq(i, p) == b.leq(j, map[p]));
                if !consistent {
                    continue;
                }
                map[i] = j;
                used[j] = true;
                if go(a, b, da, db, i + 1, map, used) {
                    return true;
                }
                used[j] = false;
            }
            false
        }
        go(self, other, &da, &db, 0, &mut map, &mut used)
    }

    /// The lattice of downsets, indexed by (cardinality, mask) so that index
    /// order is a linear extension with bottom first and top last.
    pub fn downset_lattice(&self) -> Lattice {
        let mut ds = self.downsets();
        ds.sort_unstable_by_key(|&d| (d.count_ones(), d));
        let n = ds.len();
        let pos: HashMap<u32, usize> = ds.iter().enumerate().map(|(i, &d)| (d, i)).collect();
        let mut meet = vec![0u8; n * n];
        let mut join = vec![0u8; n * n];
        for (i, &a) in ds.iter().enumerate() {
            for (j, &b) in ds.iter().enumerate() {
                meet[i * n + j] = pos[&(a & b)] as u8;
                join[i * n + j] = pos[&(a | b)] as u8;
            }
        }
        Lattice::from_flat_tables(generic_labels(n), meet, join, 0, (n - 1) as u8)
            .expect("downset lattices are distributive")
    }
}

type ShapeKey = (usize, usize, Vec<(u32, u32)>);

/// One poset per isomorphism class whose downset lattice has at most
/// `max_size` elements.
pub fn posets_with_bounded_downsets(max_size: usize) -> Vec<Poset> {
    let mut classes: HashMap<ShapeKey, Vec<Poset>> = HashMap::new();
    let mut stack = vec![Poset::empty()];
    let mut out = Vec::new();
    while let Some(p) = stack.pop() {
        let downs = p.downsets();
        let mut key_degrees = p.degrees();
        key_degrees.sort_unstable();
        let key = (p.size(), downs.len(), key_degrees);
        let bucket = classes.entry(key).or_default();
        if bucket.iter().any(|q| q.is_isomorphic(&p)) {
            continue;
        }
        bucket.push(p.clone());
        out.push(p.clone());
        // Adding an element with strict down-set d adds one new downset for
        // every downset containing d.
        for &d in &downs {
            let added = downs.iter().filter(|&&e| e & d == d).count();
            if downs.len() + added <= max_size {
                stack.push(p.extended(d));
            }
        }
    }
    out
}

/// One representative lattice per isomorphism class of distributive
/// lattices with at most `max_size` elements, ordered by size.
pub fn distributive_lattice_structures(max_size: usize) -> Result<Vec<Arc<Lattice>>, EnumError> {
    if max_size > MAX_LATTICE_SIZE {
        return Err(EnumError::TooLarge(max_size));
    }
    if max_size == 0 {
        return Ok(Vec::new());
    }
    let mut lattices: Vec<Lattice> = posets_with_bounded_downsets(max_size)
        .iter()
        .map(Poset::downset_lattice)
        .collect();
    // Stable sort keeps the deterministic generation order within a size.
    lattices.sort_by_key(|l| l.size());
    Ok(lattices.into_iter().map(Arc::new).collect())
}

pub fn distributive_lattices(max_size: usize) -> Result<Vec<CoverRelation>, EnumError> {
    Ok(distributive_lattice_structures(max_size)?
        .iter()
        .map(|l| l.covers())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_known_sequence() {
        // Distributive lattices on n elements: 1, 1, 1, 2, 3, 5, 8, 15, 26, 47.
        let lats = distributive_lattice_structures(10).unwrap();
        let mut counts = [0usize; 11];
        for l in &lats {
            counts[l.size()] += 1;
        }
        assert_eq!(&counts[1..], &[1, 1, 1, 2, 3, 5, 8, 15, 26, 47]);
    }

    #[test]
    fn small_bounds() {
        let two = distributive_lattices(2).unwrap();
        assert_eq!(two.len(), 2);
        assert_eq!(two[0].size(), 1);
        assert_eq!(two[1].size(), 2);
        assert!(distributive_lattices(17).is_err());
        assert!(distributive_lattices(0).unwrap().is_empty());
    }

    #[test]
    fn square_is_present_at_four() {
        let lats = distributive_lattice_structures(4).unwrap();
        let square = lats
            .iter()
            .find(|l| l.size() == 4 && l.covers().covers.len() == 4)
            .expect("2x2 square");
        assert_eq!(square.pseudocomplement(1), 2);
    }

    #[test]
    fn chains_are_present() {
        let lats = distributive_lattice_structures(12).unwrap();
        for k in 1..=12 {
            assert!(
                lats.iter()
                    .any(|l| l.size() == k && l.covers().covers.len() == k - 1),
                "{k}-chain"
            );
        }
    }

    #[test]
    fn downsets_of_antichain() {
        let p = Poset::from_relation(&[
            vec![true, false, false],
            vec![false, true, false],
            vec![false, false, true],
        ])
        .unwrap();
        assert_eq!(p.downsets().len(), 8);
        assert!(Poset::from_relation(&[vec![true, true], vec![true, true]]).is_none());
    }
}
