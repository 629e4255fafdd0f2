//! Finite bounded distributive lattices carrying a semi-Heyting arrow and a
//! dually quasi-De Morgan negation.
//!
//! Elements are dense indices `0..n`. Labels exist for presentation only and
//! never take part in table arithmetic.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Element index into a universe.
pub type Element = usize;

/// Largest universe accepted anywhere in the toolkit.
pub const MAX_UNIVERSE: usize = 64;

/// Variable bindings that witness a failed law, rendered with labels.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Witness(pub Vec<(String, String)>);

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("(no variables)");
        }
        for (i, (var, val)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{var}={val}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("universe must have between 1 and {MAX_UNIVERSE} elements, got {0}")]
    BadSize(usize),
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("table {table} has the wrong shape")]
    BadShape { table: &'static str },
    #[error("table {table} contains an out-of-range entry")]
    OutOfRange { table: &'static str },
    #[error("invalid cover relation: {0}")]
    InvalidCovers(String),
    #[error("not a lattice: {x} and {y} have no unique {bound}")]
    NotALattice {
        x: String,
        y: String,
        bound: &'static str,
    },
    #[error("lattice is not distributive at x={x}, y={y}, z={z}")]
    NotDistributive { x: String, y: String, z: String },
    #[error("axiom {axiom} fails at {witness}")]
    AxiomViolation { axiom: String, witness: Witness },
}

/// Hasse diagram of a bounded poset: `(lower, upper)` covering pairs over
/// indexed labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverRelation {
    pub labels: Vec<String>,
    pub covers: Vec<(Element, Element)>,
}

impl CoverRelation {
    pub fn size(&self) -> usize {
        self.labels.len()
    }

    /// Builds a cover relation from label pairs.
    pub fn from_labels<S: AsRef<str>>(
        labels: &[S],
        covers: &[(S, S)],
    ) -> Result<Self, AlgebraError> {
        let labels: Vec<String> = labels.iter().map(|l| l.as_ref().to_string()).collect();
        let index = label_index(&labels)?;
        let covers = covers
            .iter()
            .map(|(lo, hi)| Ok((lookup(&index, lo.as_ref())?, lookup(&index, hi.as_ref())?)))
            .collect::<Result<Vec<_>, AlgebraError>>()?;
        Ok(CoverRelation { labels, covers })
    }
}

fn label_index(labels: &[String]) -> Result<HashMap<&str, Element>, AlgebraError> {
    if labels.is_empty() || labels.len() > MAX_UNIVERSE {
        return Err(AlgebraError::BadSize(labels.len()));
    }
    let mut index = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if index.insert(l.as_str(), i).is_some() {
            return Err(AlgebraError::DuplicateLabel(l.clone()));
        }
    }
    Ok(index)
}

fn lookup(index: &HashMap<&str, Element>, label: &str) -> Result<Element, AlgebraError> {
    index
        .get(label)
        .copied()
        .ok_or_else(|| AlgebraError::UnknownLabel(label.to_string()))
}

/// A finite bounded distributive lattice with precomputed tables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lattice {
    labels: Vec<String>,
    meet: Vec<u8>,
    join: Vec<u8>,
    bottom: u8,
    top: u8,
    pseudo: Vec<u8>,
}

impl Lattice {
    /// Computes meet and join from a covering relation. Rejects cycles,
    /// redundant (non-covering) pairs, missing bounds, non-lattices and
    /// non-distributive lattices.
    pub fn from_covers(covers: &CoverRelation) -> Result<Self, AlgebraError> {
        let n = covers.size();
        if n == 0 || n > MAX_UNIVERSE {
            return Err(AlgebraError::BadSize(n));
        }
        label_index(&covers.labels)?;
        let mut below = vec![0u64; n];
        for (i, b) in below.iter_mut().enumerate() {
            *b = 1 << i;
        }
        for &(lo, hi) in &covers.covers {
            if lo >= n || hi >= n {
                return Err(AlgebraError::InvalidCovers(format!(
                    "pair ({lo}, {hi}) out of range"
                )));
            }
            if lo == hi {
                return Err(AlgebraError::InvalidCovers(format!(
                    "{} covers itself",
                    covers.labels[lo]
                )));
            }
            below[hi] |= 1 << lo;
        }
        // Transitive closure; below[y] bit x means x <= y.
        for k in 0..n {
            for y in 0..n {
                if below[y] >> k & 1 == 1 {
                    below[y] |= below[k];
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                if x != y && below[y] >> x & 1 == 1 && below[x] >> y & 1 == 1 {
                    return Err(AlgebraError::InvalidCovers(format!(
                        "cycle through {} and {}",
                        covers.labels[x], covers.labels[y]
                    )));
                }
            }
        }
        for &(lo, hi) in &covers.covers {
            let between = (0..n)
                .any(|m| m != lo && m != hi && below[m] >> lo & 1 == 1 && below[hi] >> m & 1 == 1);
            if between {
                return Err(AlgebraError::InvalidCovers(format!(
                    "{} < {} is not a covering pair",
                    covers.labels[lo], covers.labels[hi]
                )));
            }
        }
        let leq = |x: usize, y: usize| below[y] >> x & 1 == 1;
        let bottom = (0..n).find(|&b| (0..n).all(|x| leq(b, x)));
        let top = (0..n).find(|&t| (0..n).all(|x| leq(x, t)));
        let (Some(bottom), Some(top)) = (bottom, top) else {
            return Err(AlgebraError::InvalidCovers(
                "no unique least and greatest element".into(),
            ));
        };
        let mut meet = vec![0u8; n * n];
        let mut join = vec![0u8; n * n];
        for x in 0..n {
            for y in 0..n {
                let lower: Vec<usize> = (0..n).filter(|&z| leq(z, x) && leq(z, y)).collect();
                let glb = lower
                    .iter()
                    .copied()
                    .find(|&z| lower.iter().all(|&w| leq(w, z)));
                let upper: Vec<usize> = (0..n).filter(|&z| leq(x, z) && leq(y, z)).collect();
                let lub = upper
                    .iter()
                    .copied()
                    .find(|&z| upper.iter().all(|&w| leq(z, w)));
                let not_lattice = |bound| AlgebraError::NotALattice {
                    x: covers.labels[x].clone(),
                    y: covers.labels[y].clone(),
                    bound,
                };
                meet[x * n + y] = glb.ok_or_else(|| not_lattice("meet"))? as u8;
                join[x * n + y] = lub.ok_or_else(|| not_lattice("join"))? as u8;
            }
        }
        Self::from_raw(covers.labels.clone(), meet, join, bottom as u8, top as u8)
    }

    /// Builds a lattice from full meet and join tables, checking every
    /// lattice law and distributivity.
    pub fn from_tables(
        labels: Vec<String>,
        meet: &[Vec<Element>],
        join: &[Vec<Element>],
        bottom: Element,
        top: Element,
    ) -> Result<Self, AlgebraError> {
        let n = labels.len();
        label_index(&labels)?;
        let meet = flatten_square(meet, n, "meet")?;
        let join = flatten_square(join, n, "join")?;
        if bottom >= n || top >= n {
            return Err(AlgebraError::OutOfRange { table: "bounds" });
        }
        let tables = LatticeTables {
            n,
            meet: &meet,
            join: &join,
            bottom,
            top,
        };
        if let Some((axiom, witness)) = first_failure(&tables, &lattice_axioms(), &labels) {
            return Err(AlgebraError::AxiomViolation { axiom, witness });
        }
        Self::from_raw(labels, meet, join, bottom as u8, top as u8)
    }

    pub(crate) fn from_flat_tables(
        labels: Vec<String>,
        meet: Vec<u8>,
        join: Vec<u8>,
        bottom: u8,
        top: u8,
    ) -> Result<Self, AlgebraError> {
        Self::from_raw(labels, meet, join, bottom, top)
    }

    /// Final assembly shared by both constructors: distributivity and the
    /// pseudocomplement table.
    fn from_raw(
        labels: Vec<String>,
        meet: Vec<u8>,
        join: Vec<u8>,
        bottom: u8,
        top: u8,
    ) -> Result<Self, AlgebraError> {
        let n = labels.len();
        let m = |x: usize, y: usize| meet[x * n + y] as usize;
        let j = |x: usize, y: usize| join[x * n + y] as usize;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if m(x, j(y, z)) != j(m(x, y), m(x, z)) {
                        return Err(AlgebraError::NotDistributive {
                            x: labels[x].clone(),
                            y: labels[y].clone(),
                            z: labels[z].clone(),
                        });
                    }
                }
            }
        }
        // In a finite distributive lattice the join of everything disjoint
        // from x is again disjoint from x.
        let pseudo = (0..n)
            .map(|x| {
                (0..n)
                    .filter(|&z| m(x, z) == bottom as usize)
                    .fold(bottom as usize, j) as u8
            })
            .collect();
        Ok(Lattice {
            labels,
            meet,
            join,
            bottom,
            top,
            pseudo,
        })
    }

    /// The `k`-element chain `0 < a < b < ... < 1`.
    pub fn chain(k: usize) -> Result<Self, AlgebraError> {
        if k == 0 || k > MAX_UNIVERSE {
            return Err(AlgebraError::BadSize(k));
        }
        let labels = generic_labels(k);
        let covers = (0..k.saturating_sub(1)).map(|i| (i, i + 1)).collect();
        Self::from_covers(&CoverRelation { labels, covers })
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: Element) -> &str {
        &self.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Option<Element> {
        self.labels.iter().position(|l| l == label)
    }

    #[inline]
    pub fn meet(&self, x: Element, y: Element) -> Element {
        self.meet[x * self.size() + y] as Element
    }

    #[inline]
    pub fn join(&self, x: Element, y: Element) -> Element {
        self.join[x * self.size() + y] as Element
    }

    #[inline]
    pub fn leq(&self, x: Element, y: Element) -> bool {
        self.meet(x, y) == x
    }

    pub fn bottom(&self) -> Element {
        self.bottom as Element
    }

    pub fn top(&self) -> Element {
        self.top as Element
    }

    /// Greatest element whose meet with `x` is the bottom.
    #[inline]
    pub fn pseudocomplement(&self, x: Element) -> Element {
        self.pseudo[x] as Element
    }

    /// Transitive reduction of the order, sorted.
    pub fn covers(&self) -> CoverRelation {
        let n = self.size();
        let mut covers = Vec::new();
        for lo in 0..n {
            for hi in 0..n {
                if lo != hi
                    && self.leq(lo, hi)
                    && !(0..n).any(|m| m != lo && m != hi && self.leq(lo, m) && self.leq(m, hi))
                {
                    covers.push((lo, hi));
                }
            }
        }
        CoverRelation {
            labels: self.labels.clone(),
            covers,
        }
    }
}

/// Labels `0`, `a`, `b`, ..., `1` in index order (bottom first, top last).
pub(crate) fn generic_labels(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| match i {
            0 => "0".to_string(),
            i if i == n - 1 => "1".to_string(),
            i if i <= 26 => ((b'a' + (i - 1) as u8) as char).to_string(),
            i => format!("e{i}"),
        })
        .collect()
}

fn flatten_square(
    table: &[Vec<Element>],
    n: usize,
    name: &'static str,
) -> Result<Vec<u8>, AlgebraError> {
    if table.len() != n || table.iter().any(|r| r.len() != n) {
        return Err(AlgebraError::BadShape { table: name });
    }
    let flat: Vec<Element> = table.iter().flatten().copied().collect();
    if flat.iter().any(|&v| v >= n) {
        return Err(AlgebraError::OutOfRange { table: name });
    }
    Ok(flat.into_iter().map(|v| v as u8).collect())
}

/// Unvalidated operation tables, as read from a file or typed by hand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraTables {
    pub labels: Vec<String>,
    pub meet: Vec<Vec<Element>>,
    pub join: Vec<Vec<Element>>,
    pub arrow: Vec<Vec<Element>>,
    pub neg: Vec<Element>,
    pub bottom: Element,
    pub top: Element,
}

/// One failed structural axiom with its lexicographically first witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomFailure {
    pub axiom: String,
    pub witness: Witness,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub failures: Vec<AxiomFailure>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failed(&self, axiom: &str) -> Option<&AxiomFailure> {
        self.failures.iter().find(|f| f.axiom == axiom)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return writeln!(f, "valid");
        }
        for fail in &self.failures {
            writeln!(f, "{} fails at {}", fail.axiom, fail.witness)?;
        }
        Ok(())
    }
}

/// Operation access shared by the raw tables and validated algebras so one
/// axiom sweep serves both.
trait Ops {
    fn n(&self) -> usize;
    fn meet(&self, x: usize, y: usize) -> usize;
    fn join(&self, x: usize, y: usize) -> usize;
    fn arrow(&self, x: usize, y: usize) -> usize;
    fn neg(&self, x: usize) -> usize;
    fn bottom(&self) -> usize;
    fn top(&self) -> usize;
    fn leq(&self, x: usize, y: usize) -> bool {
        self.meet(x, y) == x
    }
}

struct LatticeTables<'a> {
    n: usize,
    meet: &'a [u8],
    join: &'a [u8],
    bottom: usize,
    top: usize,
}

impl Ops for LatticeTables<'_> {
    fn n(&self) -> usize {
        self.n
    }
    fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.n + y] as usize
    }
    fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.n + y] as usize
    }
    fn arrow(&self, _: usize, _: usize) -> usize {
        unreachable!("lattice-only sweep")
    }
    fn neg(&self, _: usize) -> usize {
        unreachable!("lattice-only sweep")
    }
    fn bottom(&self) -> usize {
        self.bottom
    }
    fn top(&self) -> usize {
        self.top
    }
}

impl Ops for AlgebraTables {
    fn n(&self) -> usize {
        self.labels.len()
    }
    fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x][y]
    }
    fn join(&self, x: usize, y: usize) -> usize {
        self.join[x][y]
    }
    fn arrow(&self, x: usize, y: usize) -> usize {
        self.arrow[x][y]
    }
    fn neg(&self, x: usize) -> usize {
        self.neg[x]
    }
    fn bottom(&self) -> usize {
        self.bottom
    }
    fn top(&self) -> usize {
        self.top
    }
}

impl Ops for FiniteAlgebra {
    fn n(&self) -> usize {
        self.size()
    }
    fn meet(&self, x: usize, y: usize) -> usize {
        FiniteAlgebra::meet(self, x, y)
    }
    fn join(&self, x: usize, y: usize) -> usize {
        FiniteAlgebra::join(self, x, y)
    }
    fn arrow(&self, x: usize, y: usize) -> usize {
        FiniteAlgebra::arrow(self, x, y)
    }
    fn neg(&self, x: usize) -> usize {
        FiniteAlgebra::neg(self, x)
    }
    fn bottom(&self) -> usize {
        FiniteAlgebra::bottom(self)
    }
    fn top(&self) -> usize {
        FiniteAlgebra::top(self)
    }
}

struct Axiom<O> {
    name: &'static str,
    vars: &'static [&'static str],
    holds: fn(&O, &[usize]) -> bool,
}

fn lattice_axioms<O: Ops>() -> Vec<Axiom<O>> {
    vec![
        Axiom {
            name: "meet-commutative",
            vars: &["x", "y"],
            holds: |o: &O, v: &[usize]| o.meet(v[0], v[1]) == o.meet(v[1], v[0]),
        },
        Axiom {
            name: "join-commutative",
            vars: &["x", "y"],
            holds: |o: &O, v: &[usize]| o.join(v[0], v[1]) == o.join(v[1], v[0]),
        },
        Axiom {
            name: "meet-associative",
            vars: &["x", "y", "z"],
            holds: |o: &O, v: &[usize]| {
                o.meet(v[0], o.meet(v[1], v[2])) == o.meet(o.meet(v[0], v[1]), v[2])
            },
        },
        Axiom {
            name: "join-associative",
            vars: &["x", "y", "z"],
            holds: |o: &O, v: &[usize]| {
                o.join(v[0], o.join(v[1], v[2])) == o.join(o.join(v[0], v[1]), v[2])
            },
        },
        Axiom {
            name: "meet-idempotent",
            vars: &["x"],
            holds: |o: &O, v: &[usize]| o.meet(v[0], v[0]) == v[0],
        },
        Axiom {
            name: "join-idempotent",
            vars: &["x"],
            holds: |o: &O, v: &[usize]| o.join(v[0], v[0]) == v[0],
        },
        Axiom {
            name: "meet-absorbs-join",
            vars: &["x", "y"],
            holds: |o: &O, v: &[usize]| o.meet(v[0], o.join(v[0], v[1])) == v[0],
        },
        Axiom {
            name: "join-absorbs-meet",
            vars: &["x", "y"],
            holds: |o: &O, v: &[usize]| o.join(v[0], o.meet(v[0], v[1])) == v[0],
        },
        Axiom {
            name: "bottom-least",
            vars: &["x"],
            holds: |o: &O, v: &[usize]| o.meet(o.bottom(), v[0]) == o.bottom(),
        },
        Axiom {
            name: "top-greatest",
            vars: &["x"],
            holds: |o: &O, v: &[usize]| o.join(o.top(), v[0]) == o.top(),
        },
    ]
}

fn algebra_axioms<O: Ops>() -> Vec<Axiom<O>> {
    let mut axioms = lattice_axioms();
    axioms.extend([
        Axiom {
            name: "distributive",
            vars: &["x", "y", "z"],
            holds: |o: &O, v: &[usize]| {
                o.meet(v[0], o.join(v[1], v[2])) == o.join(o.meet(v[0], v[1]), o.meet(v[0], v[2]))
            },
        },
        Axiom {
            name: "SH1",
            vars: &["x", "y"],
            holds: |o: &O, v: &[usize]| o.meet(v[0], o.arrow(v[0], v[1])) == o.meet(v[0], v[1]),
        },
        Axiom {
            name: "SH2",
            vars: &["x", "y", "z"],
            holds: |o: &O, v: &[usize]| {
                let (x, y, z) = (v[0], v[1], v[2]);
                o.meet(x, o.arrow(y, z)) == o.meet(x, o.arrow(o.meet(x, y), o.meet(x, z)))
            },
        },
        Axiom {
            name: "SH3",
            vars: &["x"],
            holds: |o: &O, v: &[usize]| o.arrow(v[0], v[0]) == o.top(),
        },
        Axiom {
            name: "DQDa0",
            vars: &[],
            holds: |o: &O, _: &[usize]| o.neg(o.bottom()) == o.top(),
        },
        Axiom {
            name: "DQDa1",
            vars: &[],
            holds: |o: &O, _: &[usize]| o.neg(o.top()) == o.bottom(),
        },
        Axiom {
            name: "DQDb",
            vars: &["x", "y"],
            holds: |o: &O, v: &[usize]| {
                o.neg(o.meet(v[0], v[1])) == o.join(o.neg(v[0]), o.neg(v[1]))
            },
        },
        Axiom {
            name: "DQDc",
            vars: &["x", "y"],
            holds: |o: &O, v: &[usize]| {
                let nn = |x| o.neg(o.neg(x));
                nn(o.join(v[0], v[1])) == o.join(nn(v[0]), nn(v[1]))
            },
        },
        Axiom {
            name: "DQDd",
            vars: &["x"],
            holds: |o: &O, v: &[usize]| o.leq(o.neg(o.neg(v[0])), v[0]),
        },
    ]);
    axioms
}

fn witness_for(axiom_vars: &[&str], values: &[usize], labels: &[String]) -> Witness {
    Witness(
        axiom_vars
            .iter()
            .zip(values)
            .map(|(v, &e)| (v.to_string(), labels[e].clone()))
            .collect(),
    )
}

/// Lexicographically first failing assignment for an axiom.
fn first_witness<O: Ops>(ops: &O, axiom: &Axiom<O>) -> Option<Vec<usize>> {
    let n = ops.n();
    let k = axiom.vars.len();
    let mut values = vec![0usize; k];
    loop {
        if !(axiom.holds)(ops, &values) {
            return Some(values);
        }
        // Odometer with the first variable most significant.
        let mut i = k;
        loop {
            if i == 0 {
                return None;
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

fn first_failure<O: Ops>(
    ops: &O,
    axioms: &[Axiom<O>],
    labels: &[String],
) -> Option<(String, Witness)> {
    axioms.iter().find_map(|a| {
        first_witness(ops, a).map(|vals| (a.name.to_string(), witness_for(a.vars, &vals, labels)))
    })
}

fn sweep<O: Ops>(ops: &O, labels: &[String]) -> ValidationReport {
    let failures = algebra_axioms::<O>()
        .iter()
        .filter_map(|a| {
            first_witness(ops, a).map(|vals| AxiomFailure {
                axiom: a.name.to_string(),
                witness: witness_for(a.vars, &vals, labels),
            })
        })
        .collect();
    ValidationReport { failures }
}

/// Checks every structural axiom on raw tables. An empty report means the
/// tables form a dually quasi-De Morgan semi-Heyting algebra.
pub fn validate(tables: &AlgebraTables) -> ValidationReport {
    let n = tables.labels.len();
    let mut shape = Vec::new();
    if n == 0 || n > MAX_UNIVERSE {
        shape.push(("table-shape", Witness(vec![("size".into(), n.to_string())])));
    } else {
        for (name, t) in [
            ("meet", &tables.meet),
            ("join", &tables.join),
            ("arrow", &tables.arrow),
        ] {
            if t.len() != n || t.iter().any(|r| r.len() != n) {
                shape.push(("table-shape", Witness(vec![("table".into(), name.into())])));
            }
        }
        if tables.neg.len() != n {
            shape.push(("table-shape", Witness(vec![("table".into(), "neg".into())])));
        }
    }
    if !shape.is_empty() {
        return ValidationReport {
            failures: shape
                .into_iter()
                .map(|(axiom, witness)| AxiomFailure {
                    axiom: axiom.into(),
                    witness,
                })
                .collect(),
        };
    }
    let mut closure = Vec::new();
    let label = |e: usize| tables.labels[e].clone();
    for (name, t) in [
        ("meet", &tables.meet),
        ("join", &tables.join),
        ("arrow", &tables.arrow),
    ] {
        let bad = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .find(|&(x, y)| t[x][y] >= n);
        if let Some((x, y)) = bad {
            closure.push(AxiomFailure {
                axiom: "table-closure".into(),
                witness: Witness(vec![
                    ("table".into(), name.into()),
                    ("x".into(), label(x)),
                    ("y".into(), label(y)),
                ]),
            });
        }
    }
    if let Some(x) = (0..n).find(|&x| tables.neg[x] >= n) {
        closure.push(AxiomFailure {
            axiom: "table-closure".into(),
            witness: Witness(vec![("table".into(), "neg".into()), ("x".into(), label(x))]),
        });
    }
    if tables.bottom >= n || tables.top >= n {
        closure.push(AxiomFailure {
            axiom: "table-closure".into(),
            witness: Witness(vec![("table".into(), "bounds".into())]),
        });
    }
    if !closure.is_empty() {
        return ValidationReport { failures: closure };
    }
    sweep(tables, &tables.labels)
}

/// A validated finite DQD semi-Heyting algebra. Immutable after
/// construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteAlgebra {
    lattice: Arc<Lattice>,
    arrow: Vec<u8>,
    neg: Vec<u8>,
}

impl FiniteAlgebra {
    /// Attaches an arrow and negation (index tables) to a lattice and checks
    /// every semi-Heyting and DQD axiom.
    pub fn new(
        lattice: Arc<Lattice>,
        arrow: &[Vec<Element>],
        neg: &[Element],
    ) -> Result<Self, AlgebraError> {
        let n = lattice.size();
        let arrow = flatten_square(arrow, n, "arrow")?;
        if neg.len() != n {
            return Err(AlgebraError::BadShape { table: "neg" });
        }
        if neg.iter().any(|&v| v >= n) {
            return Err(AlgebraError::OutOfRange { table: "neg" });
        }
        let neg = neg.iter().map(|&v| v as u8).collect();
        let algebra = FiniteAlgebra {
            lattice,
            arrow,
            neg,
        };
        if let Some(fail) = algebra.validate().failures.into_iter().next() {
            return Err(AlgebraError::AxiomViolation {
                axiom: fail.axiom,
                witness: fail.witness,
            });
        }
        Ok(algebra)
    }

    /// Skips validation; callers guarantee the tables came out of a
    /// generator that only emits valid algebras.
    pub(crate) fn from_parts_unchecked(
        lattice: Arc<Lattice>,
        arrow: Vec<u8>,
        neg: Vec<u8>,
    ) -> Self {
        debug_assert_eq!(arrow.len(), lattice.size() * lattice.size());
        debug_assert_eq!(neg.len(), lattice.size());
        FiniteAlgebra {
            lattice,
            arrow,
            neg,
        }
    }

    /// Builds an algebra from unvalidated tables; the first structural
    /// failure becomes the error.
    pub fn from_tables(tables: &AlgebraTables) -> Result<Self, AlgebraError> {
        let lattice = Lattice::from_tables(
            tables.labels.clone(),
            &tables.meet,
            &tables.join,
            tables.bottom,
            tables.top,
        )?;
        Self::new(Arc::new(lattice), &tables.arrow, &tables.neg)
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn size(&self) -> usize {
        self.lattice.size()
    }

    pub fn labels(&self) -> &[String] {
        self.lattice.labels()
    }

    pub fn label(&self, x: Element) -> &str {
        self.lattice.label(x)
    }

    pub fn index_of(&self, label: &str) -> Option<Element> {
        self.lattice.index_of(label)
    }

    #[inline]
    pub fn meet(&self, x: Element, y: Element) -> Element {
        self.lattice.meet(x, y)
    }

    #[inline]
    pub fn join(&self, x: Element, y: Element) -> Element {
        self.lattice.join(x, y)
    }

    #[inline]
    pub fn arrow(&self, x: Element, y: Element) -> Element {
        self.arrow[x * self.size() + y] as Element
    }

    #[inline]
    pub fn neg(&self, x: Element) -> Element {
        self.neg[x] as Element
    }

    #[inline]
    pub fn leq(&self, x: Element, y: Element) -> bool {
        self.lattice.leq(x, y)
    }

    pub fn bottom(&self) -> Element {
        self.lattice.bottom()
    }

    pub fn top(&self) -> Element {
        self.lattice.top()
    }

    /// `x* = x -> 0`.
    #[inline]
    pub fn star(&self, x: Element) -> Element {
        self.arrow(x, self.bottom())
    }

    /// `x+ = x'*'`.
    #[inline]
    pub fn plus(&self, x: Element) -> Element {
        self.neg(self.star(self.neg(x)))
    }

    pub fn arrow_table(&self) -> &[u8] {
        &self.arrow
    }

    pub fn neg_table(&self) -> &[u8] {
        &self.neg
    }

    /// Reruns the full structural sweep.
    pub fn validate(&self) -> ValidationReport {
        sweep(self, self.labels())
    }

    /// Raw index tables, e.g. for mutation in tests or re-validation.
    pub fn tables(&self) -> AlgebraTables {
        let n = self.size();
        let square = |f: &dyn Fn(usize, usize) -> usize| {
            (0..n)
                .map(|x| (0..n).map(|y| f(x, y)).collect())
                .collect::<Vec<Vec<usize>>>()
        };
        AlgebraTables {
            labels: self.labels().to_vec(),
            meet: square(&|x, y| self.meet(x, y)),
            join: square(&|x, y| self.join(x, y)),
            arrow: square(&|x, y| self.arrow(x, y)),
            neg: (0..n).map(|x| self.neg(x)).collect(),
            bottom: self.bottom(),
            top: self.top(),
        }
    }

    /// Same algebra under a new labelling: element `x` is moved to index
    /// `perm[x]` and keeps its label.
    pub fn permuted(&self, perm: &[Element]) -> FiniteAlgebra {
        let n = self.size();
        assert_eq!(perm.len(), n, "permutation has wrong length");
        let mut labels = vec![String::new(); n];
        let mut meet = vec![0u8; n * n];
        let mut join = vec![0u8; n * n];
        let mut arrow = vec![0u8; n * n];
        let mut neg = vec![0u8; n];
        for x in 0..n {
            labels[perm[x]] = self.label(x).to_string();
            neg[perm[x]] = perm[self.neg(x)] as u8;
            for y in 0..n {
                let at = perm[x] * n + perm[y];
                meet[at] = perm[self.meet(x, y)] as u8;
                join[at] = perm[self.join(x, y)] as u8;
                arrow[at] = perm[self.arrow(x, y)] as u8;
            }
        }
        let pseudo = {
            let mut p = vec![0u8; n];
            for x in 0..n {
                p[perm[x]] = perm[self.lattice.pseudocomplement(x)] as u8;
            }
            p
        };
        let lattice = Lattice {
            labels,
            meet,
            join,
            bottom: perm[self.bottom()] as u8,
            top: perm[self.top()] as u8,
            pseudo,
        };
        FiniteAlgebra {
            lattice: Arc::new(lattice),
            arrow,
            neg,
        }
    }
}

/// Attaches arrow and negation tables to a lattice given by covers.
pub fn from_covers(
    covers: &CoverRelation,
    arrow: &[Vec<Element>],
    neg: &[Element],
) -> Result<FiniteAlgebra, AlgebraError> {
    let lattice = Lattice::from_covers(covers)?;
    FiniteAlgebra::new(Arc::new(lattice), arrow, neg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_chain_boolean() -> FiniteAlgebra {
        let lattice = Arc::new(Lattice::chain(2).unwrap());
        FiniteAlgebra::new(lattice, &[vec![1, 1], vec![0, 1]], &[1, 0]).unwrap()
    }

    #[test]
    fn trivial_algebra_is_valid() {
        let covers = CoverRelation {
            labels: vec!["0".into()],
            covers: vec![],
        };
        let a = from_covers(&covers, &[vec![0]], &[0]).unwrap();
        assert_eq!(a.size(), 1);
        assert_eq!(a.bottom(), a.top());
        assert!(a.validate().is_valid());
    }

    #[test]
    fn chain_tables() {
        let l = Lattice::chain(4).unwrap();
        assert_eq!(l.labels(), ["0", "a", "b", "1"]);
        assert_eq!(l.meet(1, 2), 1);
        assert_eq!(l.join(1, 2), 2);
        assert_eq!(l.pseudocomplement(0), 3);
        assert_eq!(l.pseudocomplement(2), 0);
        assert_eq!(l.covers().covers, vec![(0, 1), (1, 2), (2, 3)]);
    }

    #[test]
    fn pentagon_is_rejected_as_non_distributive() {
        // N5: 0 < a < b < 1, 0 < c < 1
        let covers = CoverRelation::from_labels(
            &["0", "a", "b", "c", "1"],
            &[("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")],
        )
        .unwrap();
        assert!(matches!(
            Lattice::from_covers(&covers),
            Err(AlgebraError::NotDistributive { .. })
        ));
    }

    #[test]
    fn non_lattice_is_rejected() {
        // Two incomparable middle pairs with no least upper bound.
        let covers = CoverRelation::from_labels(
            &["0", "a", "b", "c", "d", "1"],
            &[
                ("0", "a"),
                ("0", "b"),
                ("a", "c"),
                ("b", "c"),
                ("a", "d"),
                ("b", "d"),
                ("c", "1"),
                ("d", "1"),
            ],
        )
        .unwrap();
        assert!(matches!(
            Lattice::from_covers(&covers),
            Err(AlgebraError::NotALattice { .. })
        ));
    }

    #[test]
    fn bad_cover_relations() {
        let cyc = CoverRelation::from_labels(&["0", "1"], &[("0", "1"), ("1", "0")]).unwrap();
        assert!(matches!(
            Lattice::from_covers(&cyc),
            Err(AlgebraError::InvalidCovers(_))
        ));
        let redundant =
            CoverRelation::from_labels(&["0", "a", "1"], &[("0", "a"), ("a", "1"), ("0", "1")])
                .unwrap();
        assert!(matches!(
            Lattice::from_covers(&redundant),
            Err(AlgebraError::InvalidCovers(_))
        ));
        let no_top =
            CoverRelation::from_labels(&["0", "a", "b"], &[("0", "a"), ("0", "b")]).unwrap();
        assert!(matches!(
            Lattice::from_covers(&no_top),
            Err(AlgebraError::InvalidCovers(_))
        ));
        assert!(matches!(
            CoverRelation::from_labels(&["0", "0"], &[]),
            Err(AlgebraError::DuplicateLabel(_))
        ));
    }

    #[test]
    fn neg_fixing_bottom_fails_dqd_a() {
        let mut t = two_chain_boolean().tables();
        t.neg[0] = 0;
        let report = validate(&t);
        assert!(report.failed("DQDa0").is_some());
        assert!(matches!(
            FiniteAlgebra::from_tables(&t),
            Err(AlgebraError::AxiomViolation { ref axiom, .. }) if axiom == "DQDa0"
        ));
    }

    #[test]
    fn out_of_range_entries_are_reported() {
        let mut t = two_chain_boolean().tables();
        t.arrow[1][0] = 7;
        let report = validate(&t);
        assert_eq!(report.failures.len(), 1);
        assert_eq!(report.failures[0].axiom, "table-closure");
    }

    #[test]
    fn star_and_plus_on_two_chain() {
        let a = two_chain_boolean();
        assert_eq!(a.star(0), 1);
        assert_eq!(a.star(1), 0);
        assert_eq!(a.plus(0), 1);
        assert_eq!(a.plus(1), 0);
        assert!(a.leq(0, 1));
        assert!(!a.leq(1, 0));
    }

    #[test]
    fn permutation_keeps_validity() {
        let a = two_chain_boolean();
        let p = a.permuted(&[1, 0]);
        assert!(p.validate().is_valid());
        assert_eq!(p.bottom(), 1);
        assert_eq!(p.label(p.bottom()), "0");
        assert_eq!(p.star(1), 0);
    }

    #[test]
    fn from_tables_rejects_broken_meet() {
        let mut t = two_chain_boolean().tables();
        t.meet[0][1] = 1;
        assert!(matches!(
            FiniteAlgebra::from_tables(&t),
            Err(AlgebraError::AxiomViolation { ref axiom, .. }) if axiom == "meet-commutative"
        ));
    }
}
