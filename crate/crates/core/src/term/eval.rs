use std::collections::HashMap;

use thiserror::Error;

use super::Term;
use crate::algebra::{Element, FiniteAlgebra};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("unbound variable {0:?}")]
    UnboundVariable(String),
    #[error("element {0} is outside the universe")]
    OutOfRange(Element),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Instr {
    Var(usize),
    Zero,
    One,
    Join(usize, usize),
    Meet(usize, usize),
    Arrow(usize, usize),
    Neg(usize),
}

/// A term flattened to straight-line code with shared subterms computed
/// once. Register `i` holds the value of instruction `i`; the last register
/// is the result.
#[derive(Debug, Clone)]
pub struct Program {
    code: Vec<Instr>,
    vars: Vec<String>,
    outputs: Vec<usize>,
}

impl Program {
    /// Compiles several terms over a shared variable order; `vars` fixes the
    /// slot of each variable in assignments passed to [`Program::run`].
    pub fn compile_many(terms: &[&Term], vars: &[String]) -> Result<Self, EvalError> {
        let mut b = Builder {
            code: Vec::new(),
            seen: HashMap::new(),
            vars,
        };
        let outputs = terms
            .iter()
            .map(|t| b.emit(t))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Program {
            code: b.code,
            vars: vars.to_vec(),
            outputs,
        })
    }

    /// Compiles one term with its own sorted variables.
    pub fn compile(term: &Term) -> Self {
        let vars: Vec<String> = term.variables().into_iter().collect();
        Self::compile_many(&[term], &vars).expect("all variables are bound")
    }

    pub fn variables(&self) -> &[String] {
        &self.vars
    }

    /// Number of table lookups one run performs.
    pub fn lookups(&self) -> usize {
        self.code
            .iter()
            .filter(|i| {
                matches!(
                    i,
                    Instr::Join(..) | Instr::Meet(..) | Instr::Arrow(..) | Instr::Neg(_)
                )
            })
            .count()
    }

    /// Evaluates every output term; `regs` is scratch space reused across calls.
    #[inline]
    pub fn run(&self, a: &FiniteAlgebra, values: &[Element], regs: &mut Vec<Element>) {
        regs.clear();
        for instr in &self.code {
            let v = match *instr {
                Instr::Var(s) => values[s],
                Instr::Zero => a.bottom(),
                Instr::One => a.top(),
                Instr::Join(l, r) => a.join(regs[l], regs[r]),
                Instr::Meet(l, r) => a.meet(regs[l], regs[r]),
                Instr::Arrow(l, r) => a.arrow(regs[l], regs[r]),
                Instr::Neg(l) => a.neg(regs[l]),
            };
            regs.push(v);
        }
    }

    #[inline]
    pub fn output(&self, regs: &[Element], i: usize) -> Element {
        regs[self.outputs[i]]
    }
}

struct Builder<'v> {
    code: Vec<Instr>,
    seen: HashMap<Instr, usize>,
    vars: &'v [String],
}

impl Builder<'_> {
    fn push(&mut self, i: Instr) -> usize {
        if let Some(&r) = self.seen.get(&i) {
            return r;
        }
        self.code.push(i);
        let r = self.code.len() - 1;
        self.seen.insert(i, r);
        r
    }

    fn emit(&mut self, t: &Term) -> Result<usize, EvalError> {
        let i = match t {
            Term::Var(v) => {
                let slot = self
                    .vars
                    .iter()
                    .position(|w| w == v)
                    .ok_or_else(|| EvalError::UnboundVariable(v.clone()))?;
                Instr::Var(slot)
            }
            Term::Zero => Instr::Zero,
            Term::One => Instr::One,
            Term::Join(a, b) => Instr::Join(self.emit(a)?, self.emit(b)?),
            Term::Meet(a, b) => Instr::Meet(self.emit(a)?, self.emit(b)?),
            Term::Arrow(a, b) => Instr::Arrow(self.emit(a)?, self.emit(b)?),
            Term::Neg(a) => Instr::Neg(self.emit(a)?),
        };
        Ok(self.push(i))
    }
}

/// Evaluates a term under an assignment by structural recursion.
pub fn eval(
    t: &Term,
    a: &FiniteAlgebra,
    asg: &HashMap<String, Element>,
) -> Result<Element, EvalError> {
    Ok(match t {
        Term::Var(v) => {
            let e = *asg
                .get(v)
                .ok_or_else(|| EvalError::UnboundVariable(v.clone()))?;
            if e >= a.size() {
                return Err(EvalError::OutOfRange(e));
            }
            e
        }
        Term::Zero => a.bottom(),
        Term::One => a.top(),
        Term::Join(l, r) => a.join(eval(l, a, asg)?, eval(r, a, asg)?),
        Term::Meet(l, r) => a.meet(eval(l, a, asg)?, eval(r, a, asg)?),
        Term::Arrow(l, r) => a.arrow(eval(l, a, asg)?, eval(r, a, asg)?),
        Term::Neg(l) => a.neg(eval(l, a, asg)?),
    })
}
