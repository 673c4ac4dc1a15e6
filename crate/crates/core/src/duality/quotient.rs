use std::sync::Arc;

use super::{distance_formula, vanishing_ideal_member, zeroset, RatPolyhedron};
use crate::algebra::UnitRational;
use crate::error::{Error, Result};
use crate::pwl::{pwl_delta, pwl_neg, pwl_scalar, Limits, PwlFunc};

/// The quotient of the free algebra on `n` generators by the principal ideal
/// `(f]`, realized as functions restricted to `V(f)`.
#[derive(Clone, Debug)]
pub struct Presentation {
    generator: PwlFunc,
    zeroset: RatPolyhedron,
}

impl Presentation {
    pub fn new(generator: PwlFunc) -> Self {
        let zeroset = zeroset(&generator);
        Presentation { generator, zeroset }
    }

    /// The presentation whose zeroset is `p`.
    pub fn of_polyhedron(p: &RatPolyhedron) -> Result<Self> {
        Ok(Presentation {
            generator: distance_formula(p)?,
            zeroset: p.clone(),
        })
    }

    pub fn n(&self) -> usize {
        self.generator.dim()
    }

    pub fn generator(&self) -> &PwlFunc {
        &self.generator
    }

    pub fn zeroset(&self) -> &RatPolyhedron {
        &self.zeroset
    }

    /// Two presentations agree when their zerosets coincide.
    pub fn same_as(&self, other: &Presentation) -> Result<bool> {
        if self.n() != other.n() {
            return Ok(false);
        }
        if self.generator == other.generator {
            return Ok(true);
        }
        self.zeroset.set_eq(&other.zeroset)
    }
}

/// The divisible hull of the MV-algebra presented by an integer-coefficient
/// generator: the same generator, now read with division and rational scalars.
pub fn divisible_hull(p: &Presentation) -> Result<Presentation> {
    if !p.generator.has_integer_coefficients() {
        return Err(Error::NonIntegerGenerator);
    }
    Ok(p.clone())
}

/// A function considered modulo the ideal of its presentation.
#[derive(Clone, Debug)]
pub struct QuotientElement {
    rep: PwlFunc,
    presentation: Arc<Presentation>,
}

impl QuotientElement {
    pub fn new(rep: PwlFunc, presentation: Arc<Presentation>) -> Result<Self> {
        if rep.dim() != presentation.n() {
            return Err(Error::DimensionMismatch {
                expected: presentation.n(),
                got: rep.dim(),
            });
        }
        Ok(QuotientElement { rep, presentation })
    }

    pub fn rep(&self) -> &PwlFunc {
        &self.rep
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.presentation
    }

    fn check_same(&self, other: &QuotientElement) -> Result<()> {
        if Arc::ptr_eq(&self.presentation, &other.presentation)
            || self.presentation.same_as(&other.presentation)?
        {
            Ok(())
        } else {
            Err(Error::PresentationMismatch)
        }
    }

    fn with_rep(&self, rep: PwlFunc) -> QuotientElement {
        QuotientElement {
            rep,
            presentation: Arc::clone(&self.presentation),
        }
    }

    pub fn plus(&self, other: &QuotientElement) -> Result<QuotientElement> {
        self.check_same(other)?;
        Ok(self.with_rep(Limits::default().plus(&self.rep, &other.rep)?))
    }

    pub fn neg(&self) -> QuotientElement {
        self.with_rep(pwl_neg(&self.rep))
    }

    pub fn delta(&self, n: u64) -> Result<QuotientElement> {
        Ok(self.with_rep(pwl_delta(n, &self.rep)?))
    }

    pub fn scalar(&self, r: &UnitRational) -> QuotientElement {
        self.with_rep(pwl_scalar(r, &self.rep))
    }
}

/// `a = b` modulo the ideal: `|a - b|` vanishes on the zeroset.
pub fn quotient_equal(a: &QuotientElement, b: &QuotientElement) -> Result<bool> {
    a.check_same(b)?;
    let d = Limits::default().distance(&a.rep, &b.rep)?;
    vanishing_ideal_member(&d, a.presentation.zeroset())
}
