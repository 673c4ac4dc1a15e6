//! Seeded random formulas for property tests and benchmarks.

use num_rational::BigRational;
use rand::Rng;

use crate::algebra::UnitRational;
use crate::syntax::{Connective, DeltaN, Nabla, Term};

/// Random scalar connectives with denominators bounded by `max_den`.
pub trait RandomConnective: Connective {
    fn random<R: Rng + ?Sized>(rng: &mut R, max_den: u64) -> Self;
}

impl RandomConnective for Nabla {
    fn random<R: Rng + ?Sized>(rng: &mut R, max_den: u64) -> Self {
        Nabla(random_unit(rng, max_den))
    }
}

impl RandomConnective for DeltaN {
    fn random<R: Rng + ?Sized>(rng: &mut R, max_den: u64) -> Self {
        DeltaN::new(rng.gen_range(1..=max_den.max(1))).expect("n >= 1")
    }
}

/// A rational in `[0,1]` with denominator at most `max_den`.
pub fn random_unit<R: Rng + ?Sized>(rng: &mut R, max_den: u64) -> UnitRational {
    let den = rng.gen_range(1..=max_den.max(1));
    let num = rng.gen_range(0..=den);
    UnitRational::new(BigRational::new(num.into(), den.into())).expect("num <= den")
}

/// Shape of generated formulas. `depth` bounds the nesting of connectives,
/// counting the derived binary connectives (`⊕ ⊙ ∨ ∧`) as one level each.
#[derive(Clone, Copy, Debug)]
pub struct FormulaGen {
    pub dim: usize,
    pub depth: usize,
    pub max_den: u64,
}

impl FormulaGen {
    pub fn new(dim: usize, depth: usize, max_den: u64) -> Self {
        FormulaGen {
            dim,
            depth,
            max_den,
        }
    }

    pub fn generate<C: RandomConnective, R: Rng + ?Sized>(&self, rng: &mut R) -> Term<C> {
        self.node(rng, self.depth)
    }

    fn leaf<C: Connective, R: Rng + ?Sized>(&self, rng: &mut R) -> Term<C> {
        Term::var(rng.gen_range(0..self.dim.max(1)))
    }

    fn node<C: RandomConnective, R: Rng + ?Sized>(&self, rng: &mut R, depth: usize) -> Term<C> {
        if depth == 0 || rng.gen_ratio(1, 6) {
            return self.leaf(rng);
        }
        let d = depth - 1;
        match rng.gen_range(0..8) {
            0 => Term::neg(self.node(rng, d)),
            1 | 2 => Term::scalar(C::random(rng, self.max_den), self.node(rng, d)),
            3 => Term::implies(self.node(rng, d), self.node(rng, d)),
            4 => Term::plus(self.node(rng, d), self.node(rng, d)),
            5 => Term::times(self.node(rng, d), self.node(rng, d)),
            6 => Term::join(self.node(rng, d), self.node(rng, d)),
            _ => Term::meet(self.node(rng, d), self.node(rng, d)),
        }
    }
}
