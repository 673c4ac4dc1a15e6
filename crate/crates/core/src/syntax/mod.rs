//! Abstract syntax for the two logics.
//!
//! Both languages share the Łukasiewicz core (`¬`, `→`, variables) and differ only
//! in their scalar connective, so a single [`Term`] type is parameterised by the
//! connective: [`Nabla`] (`∇_r`, `r ∈ [0,1] ∩ Q`) for [`Formula`] and [`DeltaN`]
//! (`δ_n`, `n ≥ 1`) for [`DFormula`]. Derived connectives are desugared at
//! construction time; the tree only ever holds the four primitive node kinds.

mod parse;
mod print;
mod translate;

use std::fmt;
use std::hash::Hash;

pub use parse::{parse_ql, parse_ratluk};
pub use translate::{translate_i1, translate_i2};

use crate::algebra::UnitRational;
use crate::error::{Error, Result};

/// A scalar connective of one of the two languages.
pub trait Connective: Clone + Eq + Hash + fmt::Debug {
    /// Writes the prefix form, e.g. `nabla(1/2)` or `delta(3)`.
    fn write_prefix(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result;
}

/// `∇_r`. Its truth function is `x ↦ (r·x*)*`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Nabla(pub UnitRational);

/// `δ_n`, `n ≥ 1`. Its truth function is `x ↦ x/n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct DeltaN(u64);

impl DeltaN {
    pub fn new(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDivisor(n));
        }
        Ok(DeltaN(n))
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

impl Connective for Nabla {
    fn write_prefix(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "nabla({})", self.0)
    }
}

impl Connective for DeltaN {
    fn write_prefix(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "delta({})", self.0)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Term<C> {
    Var(usize),
    Neg(Box<Term<C>>),
    Implies(Box<Term<C>>, Box<Term<C>>),
    Scalar(C, Box<Term<C>>),
}

/// Formulas of the logic with `∇_r` connectives.
pub type Formula = Term<Nabla>;
/// Formulas of rational Łukasiewicz logic (`δ_n` connectives).
pub type DFormula = Term<DeltaN>;

#[allow(clippy::should_implement_trait)]
impl<C: Connective> Term<C> {
    pub fn var(i: usize) -> Self {
        Term::Var(i)
    }

    pub fn neg(a: Self) -> Self {
        Term::Neg(Box::new(a))
    }

    pub fn implies(a: Self, b: Self) -> Self {
        Term::Implies(Box::new(a), Box::new(b))
    }

    pub fn scalar(c: C, a: Self) -> Self {
        Term::Scalar(c, Box::new(a))
    }

    /// `a ⊕ b := ¬a → b`
    pub fn plus(a: Self, b: Self) -> Self {
        Self::implies(Self::neg(a), b)
    }

    /// `a ⊙ b := ¬(¬a ⊕ ¬b)`
    pub fn times(a: Self, b: Self) -> Self {
        Self::neg(Self::plus(Self::neg(a), Self::neg(b)))
    }

    /// `a ∨ b := (a → b) → b`
    pub fn join(a: Self, b: Self) -> Self {
        Self::implies(Self::implies(a, b.clone()), b)
    }

    /// `a ∧ b := ¬(¬a ∨ ¬b)`
    pub fn meet(a: Self, b: Self) -> Self {
        Self::neg(Self::join(Self::neg(a), Self::neg(b)))
    }

    /// `a ↔ b := (a → b) ⊙ (b → a)`
    pub fn iff(a: Self, b: Self) -> Self {
        Self::times(Self::implies(a.clone(), b.clone()), Self::implies(b, a))
    }

    /// A formula equivalent to the constant `0` built from `a`: `¬(a → a)`.
    pub fn zero_like(a: &Self) -> Self {
        Self::neg(Self::implies(a.clone(), a.clone()))
    }

    /// `m`-fold `a ⊕ ... ⊕ a`, right-nested. The empty sum is [`Term::zero_like`].
    pub fn fold_plus(a: &Self, m: u64) -> Self {
        match m {
            0 => Self::zero_like(a),
            _ => {
                let mut acc = a.clone();
                for _ in 1..m {
                    acc = Self::plus(a.clone(), acc);
                }
                acc
            }
        }
    }

    /// Number of variables the formula ranges over: `1 + max index` (0 if none).
    pub fn dim(&self) -> usize {
        match self {
            Term::Var(i) => i + 1,
            Term::Neg(a) | Term::Scalar(_, a) => a.dim(),
            Term::Implies(a, b) => a.dim().max(b.dim()),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::Neg(a) | Term::Scalar(_, a) => 1 + a.depth(),
            Term::Implies(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::Neg(a) | Term::Scalar(_, a) => 1 + a.size(),
            Term::Implies(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// All scalar connectives occurring in the formula, in prefix order.
    pub fn connectives(&self) -> Vec<&C> {
        let mut out = Vec::new();
        self.collect_connectives(&mut out);
        out
    }

    fn collect_connectives<'a>(&'a self, out: &mut Vec<&'a C>) {
        match self {
            Term::Var(_) => {}
            Term::Neg(a) => a.collect_connectives(out),
            Term::Scalar(c, a) => {
                out.push(c);
                a.collect_connectives(out);
            }
            Term::Implies(a, b) => {
                a.collect_connectives(out);
                b.collect_connectives(out);
            }
        }
    }
}

impl Formula {
    pub fn nabla(r: UnitRational, a: Self) -> Self {
        Term::scalar(Nabla(r), a)
    }

    /// `Δ_r a := ¬∇_r ¬a`; its truth function is `r·x`.
    pub fn delta_r(r: UnitRational, a: Self) -> Self {
        Self::neg(Self::nabla(r, Self::neg(a)))
    }
}

impl DFormula {
    pub fn delta_n(n: u64, a: Self) -> Result<Self> {
        Ok(Term::scalar(DeltaN::new(n)?, a))
    }
}
