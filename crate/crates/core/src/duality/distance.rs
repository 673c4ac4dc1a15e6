use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::{zeroset, RatPolyhedron};
use crate::algebra::{Rational, UnitRational};
use crate::error::{Error, Result};
use crate::geometry::{HalfSpace, Polytope};
use crate::pwl::{constant, truncated_affine, AffinePiece, Limits, PwlFunc};

/// A function with integer coefficients whose zeroset is exactly `c`.
///
/// Each piece of `c` is triangulated. A simplex `S = {x : a_j·x ≤ b_j}` with
/// integer data yields `max_j min(1, max(0, a_j·x - b_j))`, which vanishes
/// exactly on `S`; the result is the minimum of these over all simplices.
/// The constant 1 is returned for the empty polyhedron.
pub fn distance_formula(c: &RatPolyhedron) -> Result<PwlFunc> {
    distance_formula_with(c, &Limits::default())
}

pub fn distance_formula_with(c: &RatPolyhedron, limits: &Limits) -> Result<PwlFunc> {
    let n = c.dim();
    if c.is_empty() {
        return Ok(constant(n, &UnitRational::one()));
    }
    let mut f: Option<PwlFunc> = None;
    for piece in c.pieces() {
        for simplex in piece.triangulate() {
            let s = Polytope::from_vertices(n, &simplex).expect("simplices are nonempty");
            let g = simplex_distance(n, &s, limits)?;
            f = Some(match f {
                None => g,
                Some(f) => limits.meet(&f, &g)?,
            });
        }
    }
    let f = f.expect("a nonempty polyhedron has a simplex");
    if !zeroset(&f).set_eq(c)? {
        return Err(Error::Internal(
            "distance formula has the wrong zeroset".into(),
        ));
    }
    Ok(f)
}

fn simplex_distance(n: usize, s: &Polytope, limits: &Limits) -> Result<PwlFunc> {
    let mut g: Option<PwlFunc> = None;
    for h in s.constraints() {
        let t = truncated_affine(&integer_excess(h));
        g = Some(match g {
            None => t,
            Some(g) => limits.join(&g, &t)?,
        });
    }
    Ok(g.unwrap_or_else(|| constant(n, &UnitRational::zero())))
}

/// `a·x - b` scaled by the least common denominator of `a` and `b`.
fn integer_excess(h: &HalfSpace) -> AffinePiece {
    let m = h
        .normal
        .iter()
        .chain(std::iter::once(&h.bound))
        .fold(BigInt::one(), |m, q| m.lcm(q.denom()));
    let m = Rational::from_integer(m);
    AffinePiece::new(h.normal.iter().map(|a| a * &m).collect(), -&h.bound * &m)
}

/// `V(I(c))`, computed as the zeroset of [`distance_formula`].
pub fn v_of_i_closure(c: &RatPolyhedron) -> Result<RatPolyhedron> {
    Ok(zeroset(&distance_formula(c)?))
}

/// The `m`-fold truncated sum `f ⊕ ... ⊕ f`, with `m` the least common multiple
/// of the coefficient denominators of `f`. It has integer coefficients,
/// dominates `f`, and has the same zeroset.
pub fn mv_approximant(f: &PwlFunc) -> Result<PwlFunc> {
    mv_approximant_with(f, &Limits::default())
}

pub fn mv_approximant_with(f: &PwlFunc, limits: &Limits) -> Result<PwlFunc> {
    let m = Rational::from_integer(f.denominator_lcm());
    limits.multiple(&m, f)
}
