//! Evaluation in the standard model `[0,1] ∩ Q`.

use std::fmt;
use std::ops::Index;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{self, Rational, UnitRational};
use crate::error::{Error, Result};
use crate::syntax::{Connective, DeltaN, Nabla, Term};

/// A rational point of the unit cube, one coordinate per variable.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Valuation(pub Vec<UnitRational>);

impl Valuation {
    pub fn new(point: Vec<UnitRational>) -> Self {
        Valuation(point)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coords(&self) -> &[UnitRational] {
        &self.0
    }

    /// The point as plain rationals.
    pub fn to_point(&self) -> Vec<Rational> {
        self.0.iter().map(|x| x.value().clone()).collect()
    }

    /// Converts a point of the cube; fails if some coordinate leaves `[0, 1]`.
    pub fn from_point(point: &[Rational]) -> Result<Self> {
        point
            .iter()
            .map(|q| UnitRational::new(q.clone()).map_err(|_| Error::OutsideCube))
            .collect::<Result<Vec<_>>>()
            .map(Valuation)
    }

    /// Parses `"r1,...,rn"`.
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim().is_empty() {
            return Ok(Valuation::default());
        }
        text.split(',')
            .map(|s| s.trim().parse::<UnitRational>())
            .collect::<Result<Vec<_>>>()
            .map(Valuation)
    }
}

impl Index<usize> for Valuation {
    type Output = UnitRational;

    fn index(&self, i: usize) -> &UnitRational {
        &self.0[i]
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "x{i}={x}")?;
        }
        Ok(())
    }
}

/// Truth function of a scalar connective in the standard model.
pub trait Interpret: Connective {
    fn interpret(&self, x: &UnitRational) -> UnitRational;
}

impl Interpret for Nabla {
    /// `e(∇_r φ) = (r · e(φ)*)*`
    fn interpret(&self, x: &UnitRational) -> UnitRational {
        algebra::mv_neg(&algebra::scalar(&self.0, &algebra::mv_neg(x)))
    }
}

impl Interpret for DeltaN {
    fn interpret(&self, x: &UnitRational) -> UnitRational {
        algebra::delta(self.get(), x).expect("DeltaN holds n >= 1")
    }
}

/// Evaluates `phi` at `v` by structural recursion.
pub fn eval<C: Interpret>(phi: &Term<C>, v: &Valuation) -> Result<UnitRational> {
    let needed = phi.dim();
    if v.len() < needed {
        return Err(Error::ValuationTooShort {
            needed,
            got: v.len(),
        });
    }
    Ok(eval_unchecked(phi, v))
}

fn eval_unchecked<C: Interpret>(phi: &Term<C>, v: &Valuation) -> UnitRational {
    match phi {
        Term::Var(i) => v[*i].clone(),
        Term::Neg(a) => algebra::mv_neg(&eval_unchecked(a, v)),
        Term::Implies(a, b) => algebra::mv_add(
            &algebra::mv_neg(&eval_unchecked(a, v)),
            &eval_unchecked(b, v),
        ),
        Term::Scalar(c, a) => c.interpret(&eval_unchecked(a, v)),
    }
}

pub fn eval_ql(phi: &crate::syntax::Formula, v: &Valuation) -> Result<UnitRational> {
    eval(phi, v)
}

pub fn eval_ratluk(phi: &crate::syntax::DFormula, v: &Valuation) -> Result<UnitRational> {
    eval(phi, v)
}

/// A seeded point of `[0,1]^n` whose coordinates have denominators at most `max_den`.
pub fn random_rational_point(n: usize, max_den: u64, seed: u64) -> Valuation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_point_with(&mut rng, n, max_den)
}

pub fn random_point_with<R: Rng + ?Sized>(rng: &mut R, n: usize, max_den: u64) -> Valuation {
    let max_den = max_den.max(1);
    let coords = (0..n)
        .map(|_| {
            let den = rng.gen_range(1..=max_den);
            let num = rng.gen_range(0..=den);
            UnitRational::new_unchecked(BigRational::new(num.into(), den.into()))
        })
        .collect();
    Valuation(coords)
}
