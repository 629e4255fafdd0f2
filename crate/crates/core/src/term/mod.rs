//! Terms over `\/`, `/\`, `->`, `'`, `0`, `1` and identities between them.
//!
//! The derived operations `x* = x -> 0` and `x+ = x'*'` are expanded as soon
//! as they are built, so a [`Term`] only ever holds the primitive forms.

mod eval;
mod parser;

use std::collections::BTreeSet;
use std::fmt;

pub use eval::{eval, EvalError, Program};
pub use parser::{parse, parse_identity, parse_identity_file, parse_identity_line, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    Zero,
    One,
    Join(Box<Term>, Box<Term>),
    Meet(Box<Term>, Box<Term>),
    Arrow(Box<Term>, Box<Term>),
    Neg(Box<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        assert!(!name.is_empty(), "variable names are nonempty");
        Term::Var(name.to_string())
    }

    pub fn join(self, rhs: Term) -> Term {
        Term::Join(Box::new(self), Box::new(rhs))
    }

    pub fn meet(self, rhs: Term) -> Term {
        Term::Meet(Box::new(self), Box::new(rhs))
    }

    pub fn arrow(self, rhs: Term) -> Term {
        Term::Arrow(Box::new(self), Box::new(rhs))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(self) -> Term {
        Term::Neg(Box::new(self))
    }

    /// `t -> 0`
    pub fn star(self) -> Term {
        self.arrow(Term::Zero)
    }

    /// `t'*'`
    pub fn plus(self) -> Term {
        self.neg().star().neg()
    }

    /// Variable names in sorted order.
    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Zero | Term::One => {}
            Term::Join(a, b) | Term::Meet(a, b) | Term::Arrow(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Term::Neg(a) => a.collect_vars(out),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) | Term::Zero | Term::One => 1,
            Term::Join(a, b) | Term::Meet(a, b) | Term::Arrow(a, b) => 1 + a.depth().max(b.depth()),
            Term::Neg(a) => 1 + a.depth(),
        }
    }

    /// True when every arrow in the term has `0` on its right, i.e. the term
    /// only uses `->` through the pseudocomplement.
    pub fn arrow_only_as_star(&self) -> bool {
        match self {
            Term::Var(_) | Term::Zero | Term::One => true,
            Term::Arrow(a, b) => **b == Term::Zero && a.arrow_only_as_star(),
            Term::Join(a, b) | Term::Meet(a, b) => a.arrow_only_as_star() && b.arrow_only_as_star(),
            Term::Neg(a) => a.arrow_only_as_star(),
        }
    }

    /// Binding strength used by the printer; higher binds tighter.
    fn precedence(&self) -> u8 {
        match self {
            Term::Arrow(_, b) if **b == Term::Zero => 4,
            Term::Arrow(..) => 1,
            Term::Join(..) => 2,
            Term::Meet(..) => 3,
            Term::Neg(_) => 4,
            Term::Var(_) | Term::Zero | Term::One => 5,
        }
    }
}

fn write_at(f: &mut fmt::Formatter<'_>, t: &Term, min: u8) -> fmt::Result {
    if t.precedence() < min {
        write!(f, "({t})")
    } else {
        write!(f, "{t}")
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v),
            Term::Zero => f.write_str("0"),
            Term::One => f.write_str("1"),
            Term::Neg(a) => {
                write_at(f, a, 4)?;
                f.write_str("'")
            }
            Term::Arrow(a, b) if **b == Term::Zero => {
                write_at(f, a, 4)?;
                f.write_str("*")
            }
            Term::Arrow(a, b) => {
                write_at(f, a, 2)?;
                f.write_str(" -> ")?;
                write_at(f, b, 2)
            }
            // Left-associative: a right operand of equal strength needs parentheses.
            Term::Join(a, b) => {
                write_at(f, a, 2)?;
                f.write_str(" \\/ ")?;
                write_at(f, b, 3)
            }
            Term::Meet(a, b) => {
                write_at(f, a, 3)?;
                f.write_str(" /\\ ")?;
                write_at(f, b, 4)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IdentityKind {
    Equation,
    /// `lhs <= rhs`, checked as `lhs /\ rhs = lhs`.
    Inequality,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Identity {
    pub name: String,
    pub lhs: Term,
    pub rhs: Term,
    pub kind: IdentityKind,
}

impl Identity {
    pub fn equation(name: &str, lhs: Term, rhs: Term) -> Self {
        Identity {
            name: name.to_string(),
            lhs,
            rhs,
            kind: IdentityKind::Equation,
        }
    }

    pub fn inequality(name: &str, lhs: Term, rhs: Term) -> Self {
        Identity {
            name: name.to_string(),
            lhs,
            rhs,
            kind: IdentityKind::Inequality,
        }
    }

    pub fn renamed(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    /// Union of both sides' variables, sorted; this is the quantification
    /// order for exhaustive checks.
    pub fn variables(&self) -> Vec<String> {
        let mut vars = self.lhs.variables();
        vars.extend(self.rhs.variables());
        vars.into_iter().collect()
    }

    /// The pair of terms that must be equal.
    pub fn equational_sides(&self) -> (Term, Term) {
        match self.kind {
            IdentityKind::Equation => (self.lhs.clone(), self.rhs.clone()),
            IdentityKind::Inequality => (self.lhs.clone().meet(self.rhs.clone()), self.lhs.clone()),
        }
    }

    pub fn arrow_only_as_star(&self) -> bool {
        self.lhs.arrow_only_as_star() && self.rhs.arrow_only_as_star()
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = match self.kind {
            IdentityKind::Equation => "=",
            IdentityKind::Inequality => "<=",
        };
        write!(f, "{} {rel} {}", self.lhs, self.rhs)
    }
}

/// `x^{n('*)}`: apply `'` then `*` to `x`, `n` times.
pub fn iter_prime_star(x: Term, n: usize) -> Term {
    (0..n).fold(x, |t, _| t.neg().star())
}

/// `t_0(x) = x`, `t_{n+1}(x) = t_n(x) /\ x^{(n+1)('*)}`.
pub fn t_term(n: usize) -> Term {
    let x = Term::var("x");
    (1..=n).fold(x.clone(), |t, k| t.meet(iter_prime_star(x.clone(), k)))
}

/// `L_n`: `t_n(x) = t_{n+1}(x)`.
pub fn level_identity(n: usize) -> Identity {
    Identity::equation(&format!("L{n}"), t_term(n), t_term(n + 1))
}

/// `L'_n`: `(x /\ x'*)^{n('*)} = (x /\ x'*)^{(n+1)('*)}`.
pub fn level_identity_alt(n: usize) -> Identity {
    let x = Term::var("x");
    let base = x.clone().meet(x.neg().star());
    Identity::equation(
        &format!("L'{n}"),
        iter_prime_star(base.clone(), n),
        iter_prime_star(base, n + 1),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Term {
        Term::var("x")
    }

    #[test]
    fn derived_constructors_leave_primitive_forms() {
        assert_eq!(x().star(), Term::Arrow(Box::new(x()), Box::new(Term::Zero)));
        assert_eq!(
            x().plus(),
            Term::Neg(Box::new(Term::Arrow(
                Box::new(Term::Neg(Box::new(x()))),
                Box::new(Term::Zero)
            )))
        );
    }

    #[test]
    fn iterated_prime_star() {
        assert_eq!(iter_prime_star(x(), 0), x());
        assert_eq!(iter_prime_star(x(), 1), x().neg().star());
        assert_eq!(iter_prime_star(x(), 2), x().neg().star().neg().star());
        for n in 0..10 {
            assert_eq!(iter_prime_star(x(), n).depth(), 2 * n + 1);
        }
    }

    #[test]
    fn t_terms() {
        assert_eq!(t_term(0), x());
        assert_eq!(t_term(1), x().meet(x().neg().star()));
        assert_eq!(
            t_term(2),
            x().meet(x().neg().star())
                .meet(x().neg().star().neg().star())
        );
    }

    #[test]
    fn level_identities() {
        let l0 = level_identity(0);
        assert_eq!(l0.lhs, x());
        assert_eq!(l0.rhs, x().meet(x().neg().star()));
        assert_eq!(level_identity(1).rhs, t_term(2));
        assert_eq!(level_identity(2).lhs, t_term(2));
        assert_eq!(level_identity(2).rhs, t_term(3));
        assert_eq!(level_identity(2).name, "L2");

        let base = x().meet(x().neg().star());
        let alt0 = level_identity_alt(0);
        assert_eq!(alt0.lhs, base);
        assert_eq!(alt0.rhs, base.clone().neg().star());
        let alt1 = level_identity_alt(1);
        assert_eq!(alt1.lhs, base.clone().neg().star());
        assert_eq!(alt1.rhs, base.neg().star().neg().star());
        assert_eq!(alt1.name, "L'1");
    }

    #[test]
    fn printing() {
        assert_eq!(x().neg().star().neg().to_string(), "x'*'");
        assert_eq!(x().meet(x().neg().star()).to_string(), "x /\\ x'*");
        assert_eq!(x().meet(Term::var("y")).star().to_string(), "(x /\\ y)*");
        assert_eq!(
            x().arrow(Term::var("y")).arrow(Term::var("z")).to_string(),
            "(x -> y) -> z"
        );
        assert_eq!(
            x().join(Term::var("y").join(Term::var("z"))).to_string(),
            "x \\/ (y \\/ z)"
        );
    }

    #[test]
    fn inequality_encoding() {
        let id = Identity::inequality("le", x().neg().neg(), x());
        let (l, r) = id.equational_sides();
        assert_eq!(l, x().neg().neg().meet(x()));
        assert_eq!(r, x().neg().neg());
        assert_eq!(id.to_string(), "x'' <= x");
    }

    #[test]
    fn star_only_detection() {
        assert!(t_term(3).arrow_only_as_star());
        assert!(!x().arrow(Term::var("y")).arrow_only_as_star());
    }
}
