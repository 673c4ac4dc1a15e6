//! Convex rational polytopes inside a unit cube.
//!
//! A [`Polytope`] keeps an H-representation (a list of half-spaces `a·x ≤ b`
//! that describes the set exactly) together with its exact vertex set.
//! New polytopes are produced by clipping: cutting with a half-space keeps the
//! vertices on the inner side and adds the crossing points of every edge that
//! the boundary hyperplane cuts. Two vertices span an edge iff the constraints
//! tight at both have rank `n - 1`, which holds for any valid H-rep, so
//! lower-dimensional polytopes are handled by the same code.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::Rational;
use crate::linalg;

pub type Point = Vec<Rational>;

/// The closed half-space `normal · x ≤ bound`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct HalfSpace {
    pub normal: Vec<Rational>,
    pub bound: Rational,
}

impl HalfSpace {
    pub fn new(normal: Vec<Rational>, bound: Rational) -> Self {
        HalfSpace { normal, bound }
    }

    /// `normal · x - bound`; nonpositive exactly on the half-space.
    pub fn slack(&self, x: &[Rational]) -> Rational {
        linalg::dot(&self.normal, x) - &self.bound
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        !self.slack(x).is_positive()
    }

    pub fn is_trivial(&self) -> bool {
        self.normal.iter().all(Zero::is_zero)
    }

    /// Scales so that the first nonzero normal coefficient has absolute value 1.
    pub fn normalized(&self) -> HalfSpace {
        match self.normal.iter().find(|c| !c.is_zero()) {
            None => self.clone(),
            Some(lead) => {
                let s = lead.abs();
                HalfSpace {
                    normal: self.normal.iter().map(|c| c / &s).collect(),
                    bound: &self.bound / &s,
                }
            }
        }
    }

    pub fn flipped(&self) -> HalfSpace {
        HalfSpace {
            normal: self.normal.iter().map(|c| -c).collect(),
            bound: -&self.bound,
        }
    }
}

/// The `2n` bounds `0 ≤ x_i ≤ 1`.
pub fn cube_constraints(n: usize) -> Vec<HalfSpace> {
    let mut out = Vec::with_capacity(2 * n);
    for i in 0..n {
        let mut lo = vec![Rational::zero(); n];
        lo[i] = -Rational::one();
        out.push(HalfSpace::new(lo, Rational::zero()));
        let mut hi = vec![Rational::zero(); n];
        hi[i] = Rational::one();
        out.push(HalfSpace::new(hi, Rational::one()));
    }
    out
}

/// Equality compares the dimension and the H-rep; the vertices are determined by it.
#[derive(Clone, Debug)]
pub struct Polytope {
    dim: usize,
    constraints: Vec<HalfSpace>,
    vertices: Vec<Point>,
}

impl PartialEq for Polytope {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.constraints == other.constraints
    }
}

impl Eq for Polytope {}

/// Axis-aligned bounding box of a vertex set.
#[derive(Clone, Debug)]
pub struct BoundingBox {
    pub lo: Point,
    pub hi: Point,
}

impl BoundingBox {
    pub fn overlaps(&self, other: &BoundingBox) -> bool {
        self.lo
            .iter()
            .zip(&self.hi)
            .zip(other.lo.iter().zip(&other.hi))
            .all(|((a_lo, a_hi), (b_lo, b_hi))| a_lo <= b_hi && b_lo <= a_hi)
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        x.iter()
            .zip(self.lo.iter().zip(&self.hi))
            .all(|(c, (lo, hi))| lo <= c && c <= hi)
    }
}

impl Polytope {
    /// The unit cube `[0,1]^n`.
    pub fn cube(n: usize) -> Polytope {
        let vertices = (0..1usize << n)
            .map(|mask| {
                (0..n)
                    .map(|i| {
                        if mask >> i & 1 == 1 {
                            Rational::one()
                        } else {
                            Rational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        Polytope {
            dim: n,
            constraints: cube_constraints(n),
            vertices,
        }
    }

    /// Builds the polytope `{x ∈ [0,1]^n : h·x ≤ b for all h}` keeping the given
    /// constraint list verbatim. Returns `None` if the set is empty.
    pub fn from_hrep(n: usize, constraints: Vec<HalfSpace>) -> Option<Polytope> {
        let mut p = Polytope::cube(n);
        for h in &constraints {
            p = p.clip(h)?;
        }
        Some(Polytope {
            dim: n,
            constraints,
            vertices: p.vertices,
        })
    }

    /// Convex hull of a finite point set, with an irredundant H-rep
    /// (affine-hull equalities as pairs of inequalities plus facets).
    pub fn from_vertices(n: usize, points: &[Point]) -> Option<Polytope> {
        let mut pts: Vec<Point> = Vec::new();
        for p in points {
            if !pts.contains(p) {
                pts.push(p.clone());
            }
        }
        let refs: Vec<&[Rational]> = pts.iter().map(Vec::as_slice).collect();
        let d = linalg::affine_rank(&refs)?;
        let base = pts[0].clone();
        let diffs: Vec<Vec<Rational>> = pts[1..]
            .iter()
            .map(|p| p.iter().zip(&base).map(|(a, b)| a - b).collect())
            .collect();
        let eq_normals = linalg::nullspace(&diffs, n);
        let mut constraints = Vec::new();
        for w in &eq_normals {
            let b = linalg::dot(w, &base);
            let h = HalfSpace::new(w.clone(), b).normalized();
            constraints.push(h.flipped());
            constraints.push(h);
        }
        if d > 0 {
            let mut facets: Vec<HalfSpace> = Vec::new();
            for subset in combinations(pts.len(), d) {
                let q0 = &pts[subset[0]];
                let mut rows: Vec<Vec<Rational>> = subset[1..]
                    .iter()
                    .map(|&j| pts[j].iter().zip(q0).map(|(a, b)| a - b).collect())
                    .collect();
                rows.extend(eq_normals.iter().cloned());
                let ns = linalg::nullspace(&rows, n);
                if ns.len() != 1 {
                    continue;
                }
                let a = &ns[0];
                let b = linalg::dot(a, q0);
                let sides: Vec<Rational> = pts.iter().map(|p| linalg::dot(a, p) - &b).collect();
                let h = if sides.iter().all(|s| !s.is_positive()) {
                    HalfSpace::new(a.clone(), b)
                } else if sides.iter().all(|s| !s.is_negative()) {
                    HalfSpace::new(a.clone(), b).flipped()
                } else {
                    continue;
                };
                let h = h.normalized();
                if !facets.contains(&h) {
                    facets.push(h);
                }
            }
            constraints.extend(facets);
        }
        let vertices = pts
            .into_iter()
            .filter(|p| {
                let tight: Vec<&[Rational]> = constraints
                    .iter()
                    .filter(|h| h.slack(p).is_zero())
                    .map(|h| h.normal.as_slice())
                    .collect();
                linalg::rank_of(&tight) == n
            })
            .collect();
        Some(Polytope {
            dim: n,
            constraints,
            vertices,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constraints(&self) -> &[HalfSpace] {
        &self.constraints
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.constraints.iter().all(|h| h.contains(x))
    }

    /// Dimension of the affine hull.
    pub fn affine_dim(&self) -> usize {
        let refs: Vec<&[Rational]> = self.vertices.iter().map(Vec::as_slice).collect();
        linalg::affine_rank(&refs).expect("polytopes are nonempty")
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim() == self.dim
    }

    pub fn bounding_box(&self) -> BoundingBox {
        let mut lo = self.vertices[0].clone();
        let mut hi = self.vertices[0].clone();
        for v in &self.vertices[1..] {
            for i in 0..self.dim {
                if v[i] < lo[i] {
                    lo[i] = v[i].clone();
                }
                if v[i] > hi[i] {
                    hi[i] = v[i].clone();
                }
            }
        }
        BoundingBox { lo, hi }
    }

    /// Arithmetic mean of the vertices, a point of the relative interior.
    pub fn centroid(&self) -> Point {
        let k = Rational::from_integer(self.vertices.len().into());
        (0..self.dim)
            .map(|i| self.vertices.iter().map(|v| &v[i]).sum::<Rational>() / &k)
            .collect()
    }

    fn tight_sets(&self) -> Vec<Vec<usize>> {
        self.vertices
            .iter()
            .map(|v| {
                self.constraints
                    .iter()
                    .enumerate()
                    .filter(|(_, h)| h.slack(v).is_zero())
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect()
    }

    fn is_edge(&self, a: &[usize], b: &[usize]) -> bool {
        if self.dim == 0 {
            return false;
        }
        let common: Vec<&[Rational]> = a
            .iter()
            .filter(|i| b.binary_search(i).is_ok())
            .map(|&i| self.constraints[i].normal.as_slice())
            .collect();
        common.len() + 1 >= self.dim && linalg::rank_of(&common) == self.dim - 1
    }

    /// `self ∩ h`, possibly lower-dimensional; `None` if empty.
    pub fn clip(&self, h: &HalfSpace) -> Option<Polytope> {
        self.cut(h, false)
    }

    /// `self ∩ h` when that intersection is full-dimensional, else `None`.
    /// `self` must be full-dimensional.
    pub fn clip_full(&self, h: &HalfSpace) -> Option<Polytope> {
        self.cut(h, true)
    }

    fn cut(&self, h: &HalfSpace, full: bool) -> Option<Polytope> {
        let slack: Vec<Rational> = self.vertices.iter().map(|v| h.slack(v)).collect();
        if slack.iter().all(|s| !s.is_positive()) {
            return Some(self.clone());
        }
        let any_neg = slack.iter().any(Signed::is_negative);
        if full && !any_neg {
            return None;
        }
        let tight = self.tight_sets();
        let mut vertices: Vec<Point> = self
            .vertices
            .iter()
            .zip(&slack)
            .filter(|(_, s)| !s.is_positive())
            .map(|(v, _)| v.clone())
            .collect();
        if vertices.is_empty() {
            return None;
        }
        for (i, si) in slack.iter().enumerate() {
            if !si.is_negative() {
                continue;
            }
            for (j, sj) in slack.iter().enumerate() {
                if !sj.is_positive() || !self.is_edge(&tight[i], &tight[j]) {
                    continue;
                }
                let t = si / (si - sj);
                let u = &self.vertices[i];
                let w = &self.vertices[j];
                vertices.push(u.iter().zip(w).map(|(a, b)| a + &t * (b - a)).collect());
            }
        }
        let mut constraints = self.constraints.clone();
        constraints.push(h.normalized());
        let mut p = Polytope {
            dim: self.dim,
            constraints,
            vertices,
        };
        if full {
            p.prune_to_facets();
        } else {
            p.prune_slack();
        }
        Some(p)
    }

    /// Keeps only facet-defining constraints (full-dimensional polytopes).
    fn prune_to_facets(&mut self) {
        let n = self.dim;
        let mut kept: Vec<HalfSpace> = Vec::new();
        for h in &self.constraints {
            let on: Vec<&[Rational]> = self
                .vertices
                .iter()
                .filter(|v| h.slack(v).is_zero())
                .map(Vec::as_slice)
                .collect();
            if on.len() < n.max(1) || linalg::affine_rank(&on) != Some(n - 1) {
                continue;
            }
            let h = h.normalized();
            if !kept.contains(&h) {
                kept.push(h);
            }
        }
        self.constraints = kept;
    }

    /// Drops constraints that are slack at every vertex, and duplicates.
    fn prune_slack(&mut self) {
        let mut kept: Vec<HalfSpace> = Vec::new();
        for h in &self.constraints {
            if self.vertices.iter().any(|v| h.slack(v).is_zero()) {
                let h = h.normalized();
                if !kept.contains(&h) {
                    kept.push(h);
                }
            }
        }
        self.constraints = kept;
    }

    /// `self ∩ other` when full-dimensional (both operands full-dimensional).
    pub fn intersect_full(&self, other: &Polytope) -> Option<Polytope> {
        let mut p = self.clone();
        for h in &other.constraints {
            p = p.clip_full(h)?;
        }
        Some(p)
    }

    /// `self ∩ other`, of any dimension.
    pub fn intersect(&self, other: &Polytope) -> Option<Polytope> {
        let mut p = self.clone();
        for h in &other.constraints {
            p = p.clip(h)?;
        }
        Some(p)
    }

    /// Triangulates into simplices of dimension `affine_dim()`, each given by its vertices.
    pub fn triangulate(&self) -> Vec<Vec<Point>> {
        let tight_by_constraint: Vec<Vec<usize>> = self
            .constraints
            .iter()
            .map(|h| {
                (0..self.vertices.len())
                    .filter(|&v| h.slack(&self.vertices[v]).is_zero())
                    .collect()
            })
            .collect();
        let all: Vec<usize> = (0..self.vertices.len()).collect();
        let d = self.affine_dim();
        self.triangulate_face(&all, d, &tight_by_constraint)
            .into_iter()
            .map(|s| s.into_iter().map(|i| self.vertices[i].clone()).collect())
            .collect()
    }

    fn triangulate_face(&self, face: &[usize], d: usize, tight: &[Vec<usize>]) -> Vec<Vec<usize>> {
        if d == 0 {
            return vec![vec![face[0]]];
        }
        let apex = face[0];
        let mut facets: Vec<Vec<usize>> = Vec::new();
        for t in tight {
            let sub: Vec<usize> = face.iter().copied().filter(|v| t.contains(v)).collect();
            if sub.contains(&apex) || sub.len() < d || facets.contains(&sub) {
                continue;
            }
            let pts: Vec<&[Rational]> = sub.iter().map(|&i| self.vertices[i].as_slice()).collect();
            if linalg::affine_rank(&pts) == Some(d - 1) {
                facets.push(sub);
            }
        }
        let mut out = Vec::new();
        for f in facets {
            for mut s in self.triangulate_face(&f, d - 1, tight) {
                s.insert(0, apex);
                out.push(s);
            }
        }
        out
    }
}

impl fmt::Display for Polytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("conv{")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("(")?;
            for (j, c) in v.iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{c}")?;
            }
            f.write_str(")")?;
        }
        f.write_str("}")
    }
}

/// All `k`-element subsets of `0..n`, in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Vertex set of `{x ∈ [0,1]^n : h·x ≤ b}` by solving every `n`-subset of the
/// constraints (cube bounds included) and keeping the feasible solutions.
/// Empty iff the polytope is empty.
pub fn vertex_enumerate(n: usize, h_rep: &[HalfSpace]) -> Vec<Point> {
    let mut all: Vec<HalfSpace> = cube_constraints(n);
    all.extend(h_rep.iter().filter(|h| !h.is_trivial()).cloned());
    if h_rep
        .iter()
        .any(|h| h.is_trivial() && h.bound.is_negative())
    {
        return Vec::new();
    }
    let mut out: Vec<Point> = Vec::new();
    for subset in combinations(all.len(), n) {
        let a: Vec<Vec<Rational>> = subset.iter().map(|&i| all[i].normal.clone()).collect();
        let b: Vec<Rational> = subset.iter().map(|&i| all[i].bound.clone()).collect();
        let Some(x) = linalg::solve(&a, &b) else {
            continue;
        };
        if all.iter().all(|h| h.contains(&x)) && !out.contains(&x) {
            out.push(x);
        }
    }
    out
}

/// Serializable form of a half-space: rationals as `"p/q"` strings.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HalfSpaceRecord {
    pub a: Vec<String>,
    pub b: String,
}

impl From<&HalfSpace> for HalfSpaceRecord {
    fn from(h: &HalfSpace) -> Self {
        HalfSpaceRecord {
            a: h.normal.iter().map(ToString::to_string).collect(),
            b: h.bound.to_string(),
        }
    }
}

impl HalfSpaceRecord {
    pub fn to_halfspace(&self, n: usize) -> crate::Result<HalfSpace> {
        if self.a.len() != n {
            return Err(crate::Error::DimensionMismatch {
                expected: n,
                got: self.a.len(),
            });
        }
        let normal = self
            .a
            .iter()
            .map(|s| crate::algebra::parse_rational(s))
            .collect::<crate::Result<Vec<_>>>()?;
        Ok(HalfSpace::new(
            normal,
            crate::algebra::parse_rational(&self.b)?,
        ))
    }
}
