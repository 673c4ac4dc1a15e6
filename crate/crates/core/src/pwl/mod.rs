//! Continuous piecewise-linear functions `[0,1]^n → [0,1]` with rational
//! coefficients, stored as a cell complex of full-dimensional polytopes each
//! carrying an affine piece.
//!
//! Binary operations intersect every pair of cells and split the result along
//! the single hyperplane where the operation changes branch. Cells are never
//! merged, except that a function whose pieces all coincide collapses to one
//! cube cell.

mod compile;
mod format;

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::algebra::{Rational, UnitRational};
use crate::error::{Error, Result};
use crate::geometry::{self, HalfSpace, Point, Polytope};
use crate::linalg;
use crate::semantics::Valuation;

pub use compile::{compile, compile_in, compile_ql, compile_ratluk, Compile};
pub use format::{CellRecord, PieceRecord, PwlRecord};

/// `coeffs · x + constant`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AffinePiece {
    coeffs: Vec<Rational>,
    constant: Rational,
}

impl AffinePiece {
    pub fn new(coeffs: Vec<Rational>, constant: Rational) -> Self {
        AffinePiece { coeffs, constant }
    }

    pub fn constant_fn(n: usize, c: Rational) -> Self {
        AffinePiece {
            coeffs: vec![Rational::zero(); n],
            constant: c,
        }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn constant(&self) -> &Rational {
        &self.constant
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        linalg::dot(&self.coeffs, x) + &self.constant
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer()) && self.constant.is_integer()
    }

    fn map(&self, mul: &Rational, add: &Rational) -> AffinePiece {
        AffinePiece {
            coeffs: self.coeffs.iter().map(|c| c * mul).collect(),
            constant: &self.constant * mul + add,
        }
    }

    fn add(&self, other: &AffinePiece) -> AffinePiece {
        AffinePiece {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
            constant: &self.constant + &other.constant,
        }
    }

    fn sub(&self, other: &AffinePiece) -> AffinePiece {
        AffinePiece {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
            constant: &self.constant - &other.constant,
        }
    }

    fn offset(&self, c: &Rational) -> AffinePiece {
        AffinePiece {
            coeffs: self.coeffs.clone(),
            constant: &self.constant + c,
        }
    }

    /// The half-space where this piece is `≤ 0`.
    fn nonpositive(&self) -> HalfSpace {
        HalfSpace::new(self.coeffs.clone(), -&self.constant)
    }

    /// `self ∘ (x ↦ Ax + b)` where `rows[i]` is the `i`-th component.
    pub fn compose(&self, rows: &[AffinePiece]) -> AffinePiece {
        let n = rows.first().map_or(0, |r| r.coeffs.len());
        let mut out = AffinePiece::constant_fn(n, self.constant.clone());
        for (c, row) in self.coeffs.iter().zip(rows) {
            out = out.add(&row.map(c, &Rational::zero()));
        }
        out
    }
}

impl fmt::Display for AffinePiece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                write!(f, "{c}*x{i}")?;
            } else if c.is_negative() {
                write!(f, " - {}*x{i}", -c)?;
            } else {
                write!(f, " + {c}*x{i}")?;
            }
            first = false;
        }
        if first {
            write!(f, "{}", self.constant)
        } else if self.constant.is_negative() {
            write!(f, " - {}", -&self.constant)
        } else if self.constant.is_zero() {
            Ok(())
        } else {
            write!(f, " + {}", self.constant)
        }
    }
}

/// A full-dimensional polytope and the affine piece the function equals on it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cell {
    polytope: Polytope,
    piece: AffinePiece,
}

impl Cell {
    pub fn new(polytope: Polytope, piece: AffinePiece) -> Self {
        Cell { polytope, piece }
    }

    pub fn polytope(&self) -> &Polytope {
        &self.polytope
    }

    pub fn h_rep(&self) -> &[HalfSpace] {
        self.polytope.constraints()
    }

    pub fn v_rep(&self) -> &[Point] {
        self.polytope.vertices()
    }

    pub fn piece(&self) -> &AffinePiece {
        &self.piece
    }
}

/// Cell-count budget for refinement.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_cells: usize,
}

pub const DEFAULT_MAX_CELLS: usize = 100_000;

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_cells: DEFAULT_MAX_CELLS,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PwlFunc {
    dim: usize,
    cells: Vec<Cell>,
}

/// An extreme value together with a vertex where it is attained.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Extremum {
    pub value: UnitRational,
    pub witness: Valuation,
}

impl PwlFunc {
    /// Assembles a function from cells; no checks are made (see [`PwlFunc::check`]).
    pub fn from_cells(dim: usize, cells: Vec<Cell>) -> Self {
        PwlFunc { dim, cells }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    fn single(n: usize, piece: AffinePiece) -> PwlFunc {
        PwlFunc {
            dim: n,
            cells: vec![Cell::new(Polytope::cube(n), piece)],
        }
    }

    fn map_pieces(&self, op: impl Fn(&AffinePiece) -> AffinePiece) -> PwlFunc {
        PwlFunc {
            dim: self.dim,
            cells: self
                .cells
                .iter()
                .map(|c| Cell::new(c.polytope.clone(), op(&c.piece)))
                .collect(),
        }
    }

    /// Collapses to a single cell when every piece is the same.
    fn simplify(mut self) -> PwlFunc {
        if self.cells.len() > 1 && self.cells.iter().all(|c| c.piece == self.cells[0].piece) {
            let piece = self.cells.swap_remove(0).piece;
            return PwlFunc::single(self.dim, piece);
        }
        self
    }

    /// Value at `x` (a point of the cube given as rationals).
    pub fn value_at(&self, x: &[Rational]) -> Option<Rational> {
        self.cells
            .iter()
            .find(|c| c.polytope.contains(x))
            .map(|c| c.piece.eval(x))
    }

    /// All `(vertex, value)` pairs over all cells.
    fn vertex_values(&self) -> impl Iterator<Item = (&Point, Rational)> {
        self.cells.iter().flat_map(|c| {
            c.polytope
                .vertices()
                .iter()
                .map(move |v| (v, c.piece.eval(v)))
        })
    }

    /// Least common multiple of all coefficient denominators.
    pub fn denominator_lcm(&self) -> num_bigint::BigInt {
        use num_integer::Integer;
        let mut m = num_bigint::BigInt::one();
        for c in &self.cells {
            for q in c
                .piece
                .coeffs
                .iter()
                .chain(std::iter::once(&c.piece.constant))
            {
                m = m.lcm(q.denom());
            }
        }
        m
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.cells
            .iter()
            .all(|c| c.piece.has_integer_coefficients())
    }

    /// Verifies the structural invariants: every cell is full-dimensional with
    /// its cached vertices equal to the vertex set of its H-rep, values stay in
    /// `[0,1]`, cell volumes sum to 1, interiors are pairwise disjoint, and
    /// pieces agree on every common face.
    pub fn check(&self) -> std::result::Result<(), String> {
        let n = self.dim;
        let mut volume = Rational::zero();
        for (k, c) in self.cells.iter().enumerate() {
            let p = &c.polytope;
            if p.dim() != n || c.piece.coeffs.len() != n {
                return Err(format!("cell {k} has the wrong dimension"));
            }
            if !p.is_full_dimensional() {
                return Err(format!("cell {k} is not full-dimensional"));
            }
            let mut cached = p.vertices().to_vec();
            let mut enumerated = geometry::vertex_enumerate(n, p.constraints());
            cached.sort();
            enumerated.sort();
            if cached != enumerated {
                return Err(format!("cell {k} has a stale vertex cache"));
            }
            for v in p.vertices() {
                let y = c.piece.eval(v);
                if y.is_negative() || y > Rational::one() {
                    return Err(format!("cell {k} leaves [0,1] at a vertex"));
                }
            }
            volume += simplex_volume_sum(p);
        }
        if volume != Rational::one() {
            return Err(format!("cell volumes sum to {volume}"));
        }
        for i in 0..self.cells.len() {
            for j in i + 1..self.cells.len() {
                let (a, b) = (&self.cells[i], &self.cells[j]);
                if !a
                    .polytope
                    .bounding_box()
                    .overlaps(&b.polytope.bounding_box())
                {
                    continue;
                }
                let Some(common) = a.polytope.intersect(&b.polytope) else {
                    continue;
                };
                if common.is_full_dimensional() {
                    return Err(format!("cells {i} and {j} overlap"));
                }
                for v in common.vertices() {
                    if a.piece.eval(v) != b.piece.eval(v) {
                        return Err(format!("cells {i} and {j} disagree on a shared face"));
                    }
                }
            }
        }
        Ok(())
    }
}

fn simplex_volume_sum(p: &Polytope) -> Rational {
    let n = p.dim();
    let mut fact = Rational::one();
    for k in 2..=n {
        fact *= Rational::from_integer(k.into());
    }
    p.triangulate()
        .iter()
        .map(|s| {
            let rows: Vec<Vec<Rational>> = s[1..]
                .iter()
                .map(|v| v.iter().zip(&s[0]).map(|(a, b)| a - b).collect())
                .collect();
            linalg::det(&rows).abs() / &fact
        })
        .sum()
}

fn check_dims(f: &PwlFunc, g: &PwlFunc) -> Result<()> {
    if f.dim != g.dim {
        return Err(Error::DimensionMismatch {
            expected: f.dim,
            got: g.dim,
        });
    }
    Ok(())
}

/// Splits a full-dimensional polytope by the sign of `d` into the parts where
/// `d ≤ 0` and `d ≥ 0`, keeping only full-dimensional parts.
fn split(p: &Polytope, d: &AffinePiece) -> (Option<Polytope>, Option<Polytope>) {
    let values: Vec<Rational> = p.vertices().iter().map(|v| d.eval(v)).collect();
    if values.iter().all(|s| !s.is_positive()) {
        return (Some(p.clone()), None);
    }
    if values.iter().all(|s| !s.is_negative()) {
        return (None, Some(p.clone()));
    }
    let h = d.nonpositive();
    (p.clip_full(&h), p.clip_full(&h.flipped()))
}

/// How a binary operation acts on a pair of pieces `p`, `q`: the result is
/// `below` where `switch ≤ 0` and `above` where `switch ≥ 0`.
struct Branches {
    switch: AffinePiece,
    below: AffinePiece,
    above: AffinePiece,
}

impl Limits {
    pub fn new(max_cells: usize) -> Self {
        Limits { max_cells }
    }

    pub(crate) fn check_cells(&self, count: usize) -> Result<()> {
        if count > self.max_cells {
            return Err(Error::BudgetExceeded {
                cells: count,
                limit: self.max_cells,
            });
        }
        Ok(())
    }

    fn push(&self, out: &mut Vec<Cell>, cell: Cell) -> Result<()> {
        out.push(cell);
        self.check_cells(out.len())
    }

    fn combine(
        &self,
        f: &PwlFunc,
        g: &PwlFunc,
        branches: impl Fn(&AffinePiece, &AffinePiece) -> Branches,
    ) -> Result<PwlFunc> {
        check_dims(f, g)?;
        let boxes: Vec<_> = g.cells.iter().map(|c| c.polytope.bounding_box()).collect();
        let mut out = Vec::new();
        for a in &f.cells {
            let abox = a.polytope.bounding_box();
            for (b, bbox) in g.cells.iter().zip(&boxes) {
                if !abox.overlaps(bbox) {
                    continue;
                }
                let Some(p) = a.polytope.intersect_full(&b.polytope) else {
                    continue;
                };
                let br = branches(&a.piece, &b.piece);
                let (lo, hi) = split(&p, &br.switch);
                if let Some(lo) = lo {
                    self.push(&mut out, Cell::new(lo, br.below))?;
                }
                if let Some(hi) = hi {
                    self.push(&mut out, Cell::new(hi, br.above))?;
                }
            }
        }
        Ok(PwlFunc::from_cells(f.dim, out).simplify())
    }

    /// `min(f + g, 1)`
    pub fn plus(&self, f: &PwlFunc, g: &PwlFunc) -> Result<PwlFunc> {
        let n = f.dim;
        self.combine(f, g, |p, q| {
            let s = p.add(q);
            Branches {
                switch: s.offset(&-Rational::one()),
                below: s,
                above: AffinePiece::constant_fn(n, Rational::one()),
            }
        })
    }

    /// `max(f + g - 1, 0)`
    pub fn times(&self, f: &PwlFunc, g: &PwlFunc) -> Result<PwlFunc> {
        let n = f.dim;
        self.combine(f, g, |p, q| {
            let s = p.add(q).offset(&-Rational::one());
            Branches {
                switch: s.clone(),
                below: AffinePiece::constant_fn(n, Rational::zero()),
                above: s,
            }
        })
    }

    /// `max(f, g)`
    pub fn join(&self, f: &PwlFunc, g: &PwlFunc) -> Result<PwlFunc> {
        self.combine(f, g, |p, q| Branches {
            switch: p.sub(q),
            below: q.clone(),
            above: p.clone(),
        })
    }

    /// `min(f, g)`
    pub fn meet(&self, f: &PwlFunc, g: &PwlFunc) -> Result<PwlFunc> {
        self.combine(f, g, |p, q| Branches {
            switch: p.sub(q),
            below: p.clone(),
            above: q.clone(),
        })
    }

    /// `max(f - g, 0)`, that is `f ⊙ g*`.
    pub fn minus(&self, f: &PwlFunc, g: &PwlFunc) -> Result<PwlFunc> {
        self.times(f, &pwl_neg(g))
    }

    /// `|f - g|`, that is `(f ⊖ g) ⊕ (g ⊖ f)`.
    pub fn distance(&self, f: &PwlFunc, g: &PwlFunc) -> Result<PwlFunc> {
        self.plus(&self.minus(f, g)?, &self.minus(g, f)?)
    }

    /// `Some(x)` with `f(x) ≠ g(x)`, or `None` if the functions coincide.
    pub fn difference_witness(&self, f: &PwlFunc, g: &PwlFunc) -> Result<Option<Valuation>> {
        let m = pwl_max(&self.distance(f, g)?);
        Ok((!m.value.is_zero()).then_some(m.witness))
    }

    pub fn equal(&self, f: &PwlFunc, g: &PwlFunc) -> Result<bool> {
        Ok(self.difference_witness(f, g)?.is_none())
    }

    /// `min(1, m · f)`, the `m`-fold truncated sum `f ⊕ ... ⊕ f`.
    pub fn multiple(&self, m: &Rational, f: &PwlFunc) -> Result<PwlFunc> {
        let mut out = Vec::new();
        for c in &f.cells {
            for cell in clamp_cell(&c.polytope, &c.piece.map(m, &Rational::zero())) {
                self.push(&mut out, cell)?;
            }
        }
        Ok(PwlFunc::from_cells(f.dim, out).simplify())
    }
}

/// Splits a cell so that `min(1, max(0, ℓ))` is affine on each part.
fn clamp_cell(p: &Polytope, l: &AffinePiece) -> Vec<Cell> {
    let n = p.dim();
    let mut out = Vec::new();
    let (zero, rest) = split(p, l);
    if let Some(z) = zero {
        out.push(Cell::new(z, AffinePiece::constant_fn(n, Rational::zero())));
    }
    if let Some(r) = rest {
        let (mid, one) = split(&r, &l.offset(&-Rational::one()));
        if let Some(m) = mid {
            out.push(Cell::new(m, l.clone()));
        }
        if let Some(o) = one {
            out.push(Cell::new(o, AffinePiece::constant_fn(n, Rational::one())));
        }
    }
    out
}

/// `min(1, max(0, ℓ))` on the whole cube.
pub fn truncated_affine(l: &AffinePiece) -> PwlFunc {
    let n = l.coeffs.len();
    PwlFunc::from_cells(n, clamp_cell(&Polytope::cube(n), l)).simplify()
}

pub fn constant(n: usize, c: &UnitRational) -> PwlFunc {
    PwlFunc::single(n, AffinePiece::constant_fn(n, c.value().clone()))
}

pub fn projection(n: usize, i: usize) -> Result<PwlFunc> {
    if i >= n {
        return Err(Error::IndexOutOfRange { index: i, dim: n });
    }
    let mut coeffs = vec![Rational::zero(); n];
    coeffs[i] = Rational::one();
    Ok(PwlFunc::single(
        n,
        AffinePiece::new(coeffs, Rational::zero()),
    ))
}

/// `1 - f`
pub fn pwl_neg(f: &PwlFunc) -> PwlFunc {
    f.map_pieces(|p| p.map(&-Rational::one(), &Rational::one()))
}

/// `f / n`
pub fn pwl_delta(n: u64, f: &PwlFunc) -> Result<PwlFunc> {
    if n == 0 {
        return Err(Error::ZeroDivisor(0));
    }
    let inv = Rational::new(1.into(), n.into());
    Ok(f.map_pieces(|p| p.map(&inv, &Rational::zero())))
}

/// `r · f`
pub fn pwl_scalar(r: &UnitRational, f: &PwlFunc) -> PwlFunc {
    f.map_pieces(|p| p.map(r.value(), &Rational::zero()))
        .simplify()
}

/// `1 - r (1 - f)`, the truth function of `∇_r`.
pub fn pwl_nabla(r: &UnitRational, f: &PwlFunc) -> PwlFunc {
    let r = r.value();
    f.map_pieces(|p| p.map(r, &(Rational::one() - r)))
        .simplify()
}

pub fn pwl_plus(f: &PwlFunc, g: &PwlFunc) -> Result<PwlFunc> {
    Limits::default().plus(f, g)
}

pub fn pwl_times(f: &PwlFunc, g: &PwlFunc) -> Result<PwlFunc> {
    Limits::default().times(f, g)
}

pub fn pwl_join(f: &PwlFunc, g: &PwlFunc) -> Result<PwlFunc> {
    Limits::default().join(f, g)
}

pub fn pwl_meet(f: &PwlFunc, g: &PwlFunc) -> Result<PwlFunc> {
    Limits::default().meet(f, g)
}

pub fn pwl_equal(f: &PwlFunc, g: &PwlFunc) -> Result<bool> {
    Limits::default().equal(f, g)
}

pub fn pwl_distance(f: &PwlFunc, g: &PwlFunc) -> Result<PwlFunc> {
    Limits::default().distance(f, g)
}

pub fn pwl_eval(f: &PwlFunc, v: &Valuation) -> Result<UnitRational> {
    if v.len() < f.dim {
        return Err(Error::ValuationTooShort {
            needed: f.dim,
            got: v.len(),
        });
    }
    let x: Vec<Rational> = v.to_point().into_iter().take(f.dim).collect();
    let y = f
        .value_at(&x)
        .ok_or_else(|| Error::Internal("cells do not cover the point".into()))?;
    UnitRational::new(y).map_err(|_| Error::Internal("value outside [0,1]".into()))
}

fn extremum(f: &PwlFunc, better: impl Fn(&Rational, &Rational) -> bool) -> Extremum {
    let mut best: Option<(&Point, Rational)> = None;
    for (v, y) in f.vertex_values() {
        if best.as_ref().is_none_or(|(_, b)| better(&y, b)) {
            best = Some((v, y));
        }
    }
    let (v, y) = best.expect("a function has at least one cell");
    Extremum {
        value: UnitRational::new(y).expect("values stay in [0,1]"),
        witness: Valuation::from_point(v).expect("vertices lie in the cube"),
    }
}

pub fn pwl_min(f: &PwlFunc) -> Extremum {
    extremum(f, |a, b| a < b)
}

pub fn pwl_max(f: &PwlFunc) -> Extremum {
    extremum(f, |a, b| a > b)
}

impl fmt::Display for PwlFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.cells.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{} on {}", c.piece, c.polytope)?;
        }
        Ok(())
    }
}
