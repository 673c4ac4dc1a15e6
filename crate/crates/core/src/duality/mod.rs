//! Rational polyhedra in the unit cube and the correspondence between
//! polyhedra and ideals of piecewise-linear functions: zerosets, vanishing
//! ideals, principal ideal membership, quotients by restriction, and maps
//! between polyhedra acting on functions by precomposition.

mod distance;
mod format;
mod qmap;
mod quotient;

use std::fmt;

use num_traits::{Signed, Zero};

use crate::algebra::Rational;
use crate::error::{Error, Result};
use crate::geometry::{Point, Polytope};
use crate::pwl::PwlFunc;
use crate::semantics::Valuation;

pub use distance::{
    distance_formula, distance_formula_with, mv_approximant, mv_approximant_with, v_of_i_closure,
};
pub use format::{PieceRecord, PolyhedronRecord, QMapRecord};
pub use qmap::{
    compose_pwl, faithfulness_probe, qmap_check, qmap_check_with, qmap_compose, qmap_compose_with,
    qmap_image, DualHom, QMap, Separation,
};
pub use quotient::{divisible_hull, quotient_equal, Presentation, QuotientElement};

/// A finite union of convex rational polytopes inside `[0,1]^n`. Pieces may
/// be lower-dimensional; no pieces means the empty set.
#[derive(Clone, Debug)]
pub struct RatPolyhedron {
    dim: usize,
    pieces: Vec<Polytope>,
}

impl RatPolyhedron {
    pub fn new(dim: usize, pieces: Vec<Polytope>) -> Result<Self> {
        if let Some(p) = pieces.iter().find(|p| p.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: p.dim(),
            });
        }
        Ok(RatPolyhedron { dim, pieces })
    }

    pub fn empty(dim: usize) -> Self {
        RatPolyhedron {
            dim,
            pieces: Vec::new(),
        }
    }

    pub fn cube(dim: usize) -> Self {
        RatPolyhedron {
            dim,
            pieces: vec![Polytope::cube(dim)],
        }
    }

    /// Convex hull of the given points, which must lie in the cube.
    pub fn hull(dim: usize, points: &[Point]) -> Result<Self> {
        if points.iter().any(|p| p.len() != dim) {
            return Err(Error::InvalidPolyhedron(
                "point of the wrong dimension".into(),
            ));
        }
        if points
            .iter()
            .flatten()
            .any(|c| c.is_negative() || *c > num_traits::One::one())
        {
            return Err(Error::OutsideCube);
        }
        match Polytope::from_vertices(dim, points) {
            Some(p) => Ok(RatPolyhedron {
                dim,
                pieces: vec![p],
            }),
            None => Ok(RatPolyhedron::empty(dim)),
        }
    }

    pub fn point(x: &[Rational]) -> Result<Self> {
        RatPolyhedron::hull(x.len(), &[x.to_vec()])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn pieces(&self) -> &[Polytope] {
        &self.pieces
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.pieces.iter().any(|p| p.contains(x))
    }

    /// Vertices of all pieces, without repetition.
    pub fn vertices(&self) -> Vec<Point> {
        let mut out: Vec<Point> = Vec::new();
        for v in self.pieces.iter().flat_map(|p| p.vertices()) {
            if !out.contains(v) {
                out.push(v.clone());
            }
        }
        out
    }

    pub fn union(&self, other: &RatPolyhedron) -> Result<RatPolyhedron> {
        same_dim(self.dim, other.dim)?;
        let mut pieces = self.pieces.clone();
        pieces.extend(other.pieces.iter().cloned());
        Ok(RatPolyhedron::from_pieces(self.dim, pieces))
    }

    /// Drops pieces contained in another piece.
    fn from_pieces(dim: usize, pieces: Vec<Polytope>) -> RatPolyhedron {
        let mut kept: Vec<Polytope> = Vec::new();
        for p in pieces {
            if kept
                .iter()
                .any(|k| p.vertices().iter().all(|v| k.contains(v)))
            {
                continue;
            }
            kept.retain(|k| !k.vertices().iter().all(|v| p.contains(v)));
            kept.push(p);
        }
        RatPolyhedron { dim, pieces: kept }
    }

    /// A point of `self` outside `other`, or `None` if `self ⊆ other`.
    pub fn uncovered_point(&self, other: &RatPolyhedron) -> Result<Option<Point>> {
        same_dim(self.dim, other.dim)?;
        for z in &self.pieces {
            let d = z.affine_dim();
            let mut remaining = vec![z.clone()];
            for p in &other.pieces {
                remaining = remaining.iter().flat_map(|r| subtract(r, p, d)).collect();
                if remaining.is_empty() {
                    break;
                }
            }
            if let Some(r) = remaining.first() {
                return Ok(Some(r.centroid()));
            }
        }
        Ok(None)
    }

    pub fn is_subset_of(&self, other: &RatPolyhedron) -> Result<bool> {
        Ok(self.uncovered_point(other)?.is_none())
    }

    pub fn set_eq(&self, other: &RatPolyhedron) -> Result<bool> {
        Ok(self.is_subset_of(other)? && other.is_subset_of(self)?)
    }
}

impl fmt::Display for RatPolyhedron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pieces.is_empty() {
            return f.write_str("empty");
        }
        for (i, p) in self.pieces.iter().enumerate() {
            if i > 0 {
                f.write_str(" u ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

fn same_dim(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::DimensionMismatch { expected, got });
    }
    Ok(())
}

/// Closed pieces of dimension `d` covering the closure of `r \ p`, where
/// `r` has dimension `d`. Each returned piece has relative interior outside `p`.
pub(crate) fn subtract(r: &Polytope, p: &Polytope, d: usize) -> Vec<Polytope> {
    if !r.bounding_box().overlaps(&p.bounding_box()) {
        return vec![r.clone()];
    }
    let mut out = Vec::new();
    let mut cur = r.clone();
    for h in p.constraints() {
        if cur.vertices().iter().all(|v| h.contains(v)) {
            continue;
        }
        if let Some(outside) = cur.clip(&h.flipped()) {
            if outside.affine_dim() == d && outside.vertices().iter().any(|v| !h.contains(v)) {
                out.push(outside);
            }
        }
        match cur.clip(h) {
            Some(c) if c.affine_dim() == d => cur = c,
            _ => return out,
        }
    }
    out
}

/// `V(f)`: per cell, the face where the piece vanishes.
pub fn zeroset(f: &PwlFunc) -> RatPolyhedron {
    let mut pieces = Vec::new();
    for c in f.cells() {
        let values: Vec<Rational> = c.v_rep().iter().map(|v| c.piece().eval(v)).collect();
        if values.iter().all(Zero::is_zero) {
            pieces.push(c.polytope().clone());
        } else if values.iter().any(Zero::is_zero) {
            let h =
                crate::geometry::HalfSpace::new(c.piece().coeffs().to_vec(), -c.piece().constant());
            if let Some(face) = c.polytope().clip(&h) {
                pieces.push(face);
            }
        }
    }
    RatPolyhedron::from_pieces(f.dim(), pieces)
}

/// A point of `c` where `f` is nonzero, or `None` if `f ∈ I(c)`.
pub fn vanishing_witness(f: &PwlFunc, c: &RatPolyhedron) -> Result<Option<Valuation>> {
    same_dim(f.dim(), c.dim())?;
    for p in c.pieces() {
        let pbox = p.bounding_box();
        for cell in f.cells() {
            if !pbox.overlaps(&cell.polytope().bounding_box()) {
                continue;
            }
            let Some(common) = p.intersect(cell.polytope()) else {
                continue;
            };
            if let Some(v) = common
                .vertices()
                .iter()
                .find(|v| !cell.piece().eval(v).is_zero())
            {
                return Ok(Some(Valuation::from_point(v)?));
            }
        }
    }
    Ok(None)
}

/// `f ∈ I(c)`: `f` vanishes on every point of `c`.
pub fn vanishing_ideal_member(f: &PwlFunc, c: &RatPolyhedron) -> Result<bool> {
    Ok(vanishing_witness(f, c)?.is_none())
}

/// `g ∈ (f]`, decided as `V(f) ⊆ V(g)`.
pub fn ideal_member(g: &PwlFunc, f: &PwlFunc) -> Result<bool> {
    same_dim(f.dim(), g.dim())?;
    vanishing_ideal_member(g, &zeroset(f))
}
