//! Tautology, satisfiability and equivalence over `[0,1] ∩ Q`.
//!
//! A formula compiles to a continuous piecewise-linear function whose
//! breakpoints are rational, so its infimum over rational points is the
//! minimum over the cube, attained at a rational cell vertex. The same holds
//! for maxima. Each verdict therefore comes with an exact rational witness.

use std::fmt;

use crate::error::Result;
use crate::pwl::{compile_in, pwl_max, pwl_min, Compile, Limits};
use crate::semantics::Valuation;
use crate::syntax::Term;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Verdict {
    pub answer: bool,
    /// A countermodel for a failed tautology or equivalence, a model for a
    /// satisfiable formula, and `None` otherwise.
    pub witness: Option<Valuation>,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.answer { "true" } else { "false" })?;
        if let Some(w) = &self.witness {
            write!(f, " [{w}]")?;
        }
        Ok(())
    }
}

pub fn is_tautology<C: Compile>(phi: &Term<C>) -> Result<Verdict> {
    is_tautology_with(phi, &Limits::default())
}

pub fn is_tautology_with<C: Compile>(phi: &Term<C>, limits: &Limits) -> Result<Verdict> {
    let m = pwl_min(&compile_in(phi, phi.dim(), limits)?);
    let answer = m.value.is_one();
    Ok(Verdict {
        answer,
        witness: (!answer).then_some(m.witness),
    })
}

pub fn is_satisfiable<C: Compile>(phi: &Term<C>) -> Result<Verdict> {
    is_satisfiable_with(phi, &Limits::default())
}

pub fn is_satisfiable_with<C: Compile>(phi: &Term<C>, limits: &Limits) -> Result<Verdict> {
    let m = pwl_max(&compile_in(phi, phi.dim(), limits)?);
    let answer = m.value.is_one();
    Ok(Verdict {
        answer,
        witness: answer.then_some(m.witness),
    })
}

pub fn equivalent<C: Compile>(phi: &Term<C>, psi: &Term<C>) -> Result<Verdict> {
    equivalent_with(phi, psi, &Limits::default())
}

pub fn equivalent_with<C: Compile>(
    phi: &Term<C>,
    psi: &Term<C>,
    limits: &Limits,
) -> Result<Verdict> {
    let n = phi.dim().max(psi.dim());
    let f = compile_in(phi, n, limits)?;
    let g = compile_in(psi, n, limits)?;
    let witness = limits.difference_witness(&f, &g)?;
    Ok(Verdict {
        answer: witness.is_none(),
        witness,
    })
}
