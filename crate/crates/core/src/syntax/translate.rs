//! Translations between the two languages.
//!
//! `translate_i1` replaces `δ_n φ` by `Δ_{1/n} φ`; `translate_i2` replaces
//! `Δ_{m/n} φ` (lowest terms) by the `m`-fold sum of `δ_n φ`. A bare `∇_r φ`
//! is read as `¬Δ_r ¬φ` first.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use super::{DFormula, DeltaN, Formula, Nabla, Term};
use crate::algebra::UnitRational;

pub fn translate_i1(phi: &DFormula) -> Formula {
    match phi {
        Term::Var(i) => Term::Var(*i),
        Term::Neg(a) => Formula::neg(translate_i1(a)),
        Term::Implies(a, b) => Formula::implies(translate_i1(a), translate_i1(b)),
        Term::Scalar(n, a) => {
            let r = UnitRational::new(num_rational::BigRational::new(
                BigInt::one(),
                BigInt::from(n.get()),
            ))
            .expect("1/n lies in [0,1] for n >= 1");
            Formula::delta_r(r, translate_i1(a))
        }
    }
}

pub fn translate_i2(phi: &Formula) -> DFormula {
    match phi {
        Term::Var(i) => Term::Var(*i),
        Term::Neg(inner) => match inner.as_ref() {
            // Δ_r ψ = ¬∇_r¬ψ
            Term::Scalar(Nabla(r), arg) => match arg.as_ref() {
                Term::Neg(psi) => expand_delta(r, translate_i2(psi)),
                _ => DFormula::neg(translate_i2(inner)),
            },
            _ => DFormula::neg(translate_i2(inner)),
        },
        Term::Implies(a, b) => DFormula::implies(translate_i2(a), translate_i2(b)),
        Term::Scalar(Nabla(r), a) => DFormula::neg(expand_delta(r, DFormula::neg(translate_i2(a)))),
    }
}

/// `Δ_{m/n} ψ ↦ δ_n ψ ⊕ ... ⊕ δ_n ψ` (`m` summands); `δ_1` is dropped.
fn expand_delta(r: &UnitRational, psi: DFormula) -> DFormula {
    let m = r.numer().to_u64().expect("numerator fits in u64");
    let n = r.denom().to_u64().expect("denominator fits in u64");
    let summand = if n == 1 {
        psi
    } else {
        Term::scalar(DeltaN::new(n).expect("denominator is positive"), psi)
    };
    DFormula::fold_plus(&summand, m)
}
