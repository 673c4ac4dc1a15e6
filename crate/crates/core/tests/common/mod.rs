#![allow(dead_code)]

use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ratluk::algebra::{mv_mul_trunc, mv_neg, Rational, UnitRational};
use ratluk::semantics::Interpret;
use ratluk::syntax::{DFormula, DeltaN, Formula, Term};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn u(n: i64, d: i64) -> UnitRational {
    UnitRational::from_ratio(n, d).unwrap()
}

/// A one-variable piecewise-linear function as its sorted knots `(x, f(x))`,
/// with `x` running from 0 to 1. Built without the engine.
#[derive(Clone, Debug)]
pub struct Knots(pub Vec<(Rational, Rational)>);

impl Knots {
    fn var() -> Knots {
        Knots(vec![(q(0, 1), q(0, 1)), (q(1, 1), q(1, 1))])
    }

    fn at(&self, x: &Rational) -> Rational {
        let k = &self.0;
        for w in k.windows(2) {
            let ((x0, y0), (x1, y1)) = (&w[0], &w[1]);
            if x0 <= x && x <= x1 {
                return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
            }
        }
        panic!("x outside [0,1]");
    }

    fn map(&self, op: impl Fn(&Rational) -> Rational) -> Knots {
        Knots(self.0.iter().map(|(x, y)| (x.clone(), op(y))).collect())
    }

    /// `min(1, 1 - f + g)`, with a knot added wherever `g - f` changes sign.
    fn implies(&self, g: &Knots) -> Knots {
        let mut xs: Vec<Rational> = self.0.iter().chain(&g.0).map(|(x, _)| x.clone()).collect();
        xs.sort();
        xs.dedup();
        let mut all = xs.clone();
        for w in xs.windows(2) {
            let sa = g.at(&w[0]) - self.at(&w[0]);
            let sb = g.at(&w[1]) - self.at(&w[1]);
            if sa.is_positive() && sb.is_negative() || sa.is_negative() && sb.is_positive() {
                all.push(&w[0] + (&w[1] - &w[0]) * &sa / (&sa - &sb));
            }
        }
        all.sort();
        let one = Rational::one();
        Knots(
            all.into_iter()
                .map(|x| {
                    let v = (&one - self.at(&x) + g.at(&x)).min(one.clone());
                    (x, v)
                })
                .collect(),
        )
    }

    pub fn min(&self) -> Rational {
        self.0.iter().map(|(_, y)| y.clone()).min().unwrap()
    }

    pub fn max(&self) -> Rational {
        self.0.iter().map(|(_, y)| y.clone()).max().unwrap()
    }
}

/// Scalar connectives as affine maps of a single truth value.
pub trait AffineScalar: Interpret {
    fn affine(&self, y: &Rational) -> Rational;
}

impl AffineScalar for ratluk::syntax::Nabla {
    fn affine(&self, y: &Rational) -> Rational {
        let r = self.0.value();
        Rational::one() - r * (Rational::one() - y)
    }
}

impl AffineScalar for DeltaN {
    fn affine(&self, y: &Rational) -> Rational {
        y / Rational::from_integer(self.get().into())
    }
}

/// The knot representation of a formula in the single variable `x0`.
pub fn knots<C: AffineScalar>(phi: &Term<C>) -> Knots {
    match phi {
        Term::Var(0) => Knots::var(),
        Term::Var(_) => panic!("one-variable formulas only"),
        Term::Neg(a) => knots(a).map(|y| Rational::one() - y),
        Term::Implies(a, b) => knots(a).implies(&knots(b)),
        Term::Scalar(c, a) => knots(a).map(|y| c.affine(y)),
    }
}

/// Instances of the four Łukasiewicz axiom schemas.
pub fn lukasiewicz_axioms<C: ratluk::syntax::Connective>(
    phi: &Term<C>,
    psi: &Term<C>,
    chi: &Term<C>,
) -> Vec<Term<C>> {
    let imp = |a: &Term<C>, b: &Term<C>| Term::implies(a.clone(), b.clone());
    let l1 = imp(phi, &imp(psi, phi));
    let l2 = imp(&imp(phi, psi), &imp(&imp(psi, chi), &imp(phi, chi)));
    let l3 = imp(
        &Term::join(phi.clone(), psi.clone()),
        &Term::join(psi.clone(), phi.clone()),
    );
    let l4 = imp(
        &imp(&Term::neg(psi.clone()), &Term::neg(phi.clone())),
        &imp(phi, psi),
    );
    vec![l1, l2, l3, l4]
}

/// Instances of the four scalar axiom schemas.
pub fn scalar_axioms(
    phi: &Formula,
    psi: &Formula,
    r: &UnitRational,
    s: &UnitRational,
) -> Vec<Formula> {
    let nab = |r: &UnitRational, a: &Formula| Formula::nabla(r.clone(), a.clone());
    let q1 = Formula::iff(
        nab(r, &Formula::implies(phi.clone(), psi.clone())),
        Formula::implies(nab(r, phi), nab(r, psi)),
    );
    let q2 = Formula::iff(
        nab(&mv_mul_trunc(r, &mv_neg(s)), phi),
        Formula::implies(nab(s, phi), nab(r, phi)),
    );
    let rs = UnitRational::new(r.value() * s.value()).unwrap();
    let q3 = Formula::iff(nab(r, &nab(s, phi)), nab(&rs, phi));
    let q4 = Formula::iff(nab(&UnitRational::one(), phi), phi.clone());
    vec![q1, q2, q3, q4]
}

/// Instances of the three division axiom schemas.
pub fn division_axioms(phi: &DFormula, n: u64) -> Vec<DFormula> {
    let d = DFormula::delta_n(n, phi.clone()).unwrap();
    let d1 = DFormula::implies(DFormula::fold_plus(&d, n), phi.clone());
    let d2 = DFormula::implies(phi.clone(), DFormula::fold_plus(&d, n));
    let d3 = DFormula::plus(
        DFormula::neg(d.clone()),
        DFormula::neg(DFormula::fold_plus(&d, n - 1)),
    );
    vec![d1, d2, d3]
}

/// All points `k/den` of `[0,1]^n`.
pub fn grid(n: usize, den: i64) -> Vec<Vec<Rational>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..=den).map(move |k| {
                    let mut p = p.clone();
                    p.push(q(k, den));
                    p
                })
            })
            .collect();
    }
    out
}

pub fn is_zero(x: &Rational) -> bool {
    x.is_zero()
}
