use std::collections::HashMap;

use super::{projection, pwl_delta, pwl_nabla, pwl_neg, Limits, PwlFunc};
use crate::error::{Error, Result};
use crate::semantics::Interpret;
use crate::syntax::{DFormula, DeltaN, Formula, Nabla, Term};

/// Scalar connectives that act on piecewise-linear functions.
pub trait Compile: Interpret {
    fn lift(&self, f: &PwlFunc) -> PwlFunc;
}

impl Compile for Nabla {
    fn lift(&self, f: &PwlFunc) -> PwlFunc {
        pwl_nabla(&self.0, f)
    }
}

impl Compile for DeltaN {
    fn lift(&self, f: &PwlFunc) -> PwlFunc {
        pwl_delta(self.get(), f).expect("DeltaN holds n >= 1")
    }
}

/// The term function of `phi` on `[0,1]^n` with `n = phi.dim()`.
pub fn compile<C: Compile>(phi: &Term<C>, limits: &Limits) -> Result<PwlFunc> {
    compile_in(phi, phi.dim(), limits)
}

/// The term function of `phi` on `[0,1]^n`; `n` may exceed the variables used.
pub fn compile_in<C: Compile>(phi: &Term<C>, n: usize, limits: &Limits) -> Result<PwlFunc> {
    if n < phi.dim() {
        return Err(Error::DimensionMismatch {
            expected: phi.dim(),
            got: n,
        });
    }
    let mut memo = HashMap::new();
    build(phi, n, limits, &mut memo)
}

fn build<'a, C: Compile>(
    phi: &'a Term<C>,
    n: usize,
    limits: &Limits,
    memo: &mut HashMap<&'a Term<C>, PwlFunc>,
) -> Result<PwlFunc> {
    if let Some(f) = memo.get(phi) {
        return Ok(f.clone());
    }
    let f = match phi {
        Term::Var(i) => projection(n, *i)?,
        Term::Neg(a) => pwl_neg(&build(a, n, limits, memo)?),
        Term::Implies(a, b) => {
            let fa = pwl_neg(&build(a, n, limits, memo)?);
            let fb = build(b, n, limits, memo)?;
            limits.plus(&fa, &fb)?
        }
        Term::Scalar(c, a) => c.lift(&build(a, n, limits, memo)?),
    };
    memo.insert(phi, f.clone());
    Ok(f)
}

pub fn compile_ql(phi: &Formula) -> Result<PwlFunc> {
    compile(phi, &Limits::default())
}

pub fn compile_ratluk(phi: &DFormula) -> Result<PwlFunc> {
    compile(phi, &Limits::default())
}
