use std::sync::Arc;

use num_traits::Zero;

use super::{same_dim, subtract, vanishing_witness, Presentation, QuotientElement, RatPolyhedron};
use crate::algebra::Rational;
use crate::error::{Error, Result};
use crate::geometry::{HalfSpace, Point, Polytope};
use crate::pwl::{projection, AffinePiece, Cell, Limits, PwlFunc};
use crate::semantics::Valuation;

/// A piecewise-linear map from `domain ⊆ [0,1]^n` into `codomain ⊆ [0,1]^m`,
/// given by `m` component functions on `[0,1]^n`.
#[derive(Clone, Debug)]
pub struct QMap {
    domain: RatPolyhedron,
    codomain: RatPolyhedron,
    components: Vec<PwlFunc>,
}

impl QMap {
    /// Builds the map and verifies that the image of the domain lies in the codomain.
    pub fn new(
        domain: RatPolyhedron,
        codomain: RatPolyhedron,
        components: Vec<PwlFunc>,
    ) -> Result<Self> {
        let map = QMap::new_unchecked(domain, codomain, components)?;
        if let Some(w) = qmap_check(&map)? {
            return Err(Error::ImageNotContained { witness: w });
        }
        Ok(map)
    }

    /// Builds the map checking only dimensions.
    pub fn new_unchecked(
        domain: RatPolyhedron,
        codomain: RatPolyhedron,
        components: Vec<PwlFunc>,
    ) -> Result<Self> {
        if components.len() != codomain.dim() {
            return Err(Error::MapMismatch(format!(
                "{} components for a codomain in dimension {}",
                components.len(),
                codomain.dim()
            )));
        }
        for c in &components {
            same_dim(domain.dim(), c.dim())?;
        }
        Ok(QMap {
            domain,
            codomain,
            components,
        })
    }

    pub fn identity(p: &RatPolyhedron) -> Result<Self> {
        let n = p.dim();
        let components = (0..n)
            .map(|i| projection(n, i))
            .collect::<Result<Vec<_>>>()?;
        QMap::new_unchecked(p.clone(), p.clone(), components)
    }

    pub fn domain(&self) -> &RatPolyhedron {
        &self.domain
    }

    pub fn codomain(&self) -> &RatPolyhedron {
        &self.codomain
    }

    pub fn components(&self) -> &[PwlFunc] {
        &self.components
    }

    /// `λ(x)`, for any `x` in the cube.
    pub fn apply(&self, x: &[Rational]) -> Option<Point> {
        self.components.iter().map(|c| c.value_at(x)).collect()
    }

    /// Full-dimensional regions on which every component is affine.
    fn refinement(&self, limits: &Limits) -> Result<Vec<(Polytope, Vec<AffinePiece>)>> {
        let mut regions: Vec<(Polytope, Vec<AffinePiece>)> = self.components[0]
            .cells()
            .iter()
            .map(|c| (c.polytope().clone(), vec![c.piece().clone()]))
            .collect();
        for comp in &self.components[1..] {
            let mut next = Vec::new();
            for (k, pieces) in &regions {
                let kbox = k.bounding_box();
                for c in comp.cells() {
                    if !kbox.overlaps(&c.polytope().bounding_box()) {
                        continue;
                    }
                    if let Some(p) = k.intersect_full(c.polytope()) {
                        let mut ps = pieces.clone();
                        ps.push(c.piece().clone());
                        next.push((p, ps));
                        limits.check_cells(next.len())?;
                    }
                }
            }
            regions = next;
        }
        Ok(regions)
    }

    /// Images of the convex parts `domain piece ∩ region`, with one domain
    /// vertex per part for error reporting.
    fn image_parts(&self, limits: &Limits) -> Result<Vec<(Polytope, Point)>> {
        let m = self.codomain.dim();
        let mut out = Vec::new();
        for (k, pieces) in self.refinement(limits)? {
            let kbox = k.bounding_box();
            for p in self.domain.pieces() {
                if !kbox.overlaps(&p.bounding_box()) {
                    continue;
                }
                let Some(part) = p.intersect(&k) else {
                    continue;
                };
                let images: Vec<Point> = part
                    .vertices()
                    .iter()
                    .map(|v| pieces.iter().map(|a| a.eval(v)).collect())
                    .collect();
                let hull = Polytope::from_vertices(m, &images).expect("nonempty image");
                out.push((hull, part.vertices()[0].clone()));
            }
        }
        Ok(out)
    }
}

/// `None` if `λ(domain) ⊆ codomain`; otherwise a description of a point that escapes.
pub fn qmap_check(map: &QMap) -> Result<Option<String>> {
    qmap_check_with(map, &Limits::default())
}

pub fn qmap_check_with(map: &QMap, limits: &Limits) -> Result<Option<String>> {
    let m = map.codomain.dim();
    for (image, origin) in map.image_parts(limits)? {
        if let Some(v) = image.vertices().iter().find(|v| !map.codomain.contains(v)) {
            return Ok(Some(format!(
                "image point {} of the part at {}",
                show(v),
                show(&origin)
            )));
        }
        let part = RatPolyhedron::new(m, vec![image])?;
        if let Some(y) = part.uncovered_point(&map.codomain)? {
            return Ok(Some(format!(
                "image point {} of the part at {}",
                show(&y),
                show(&origin)
            )));
        }
    }
    Ok(None)
}

fn show(p: &[Rational]) -> String {
    let coords: Vec<String> = p.iter().map(ToString::to_string).collect();
    format!("({})", coords.join(", "))
}

/// `λ(domain)` as a union of convex images.
pub fn qmap_image(map: &QMap) -> Result<RatPolyhedron> {
    let pieces = map
        .image_parts(&Limits::default())?
        .into_iter()
        .map(|(p, _)| p)
        .collect();
    Ok(RatPolyhedron::from_pieces(map.codomain.dim(), pieces))
}

/// `g ∘ λ` on `[0,1]^n`, where `g` is defined on `[0,1]^m` and `components`
/// are the `m` components of `λ`.
pub fn compose_pwl(g: &PwlFunc, components: &[PwlFunc], limits: &Limits) -> Result<PwlFunc> {
    let first = components
        .first()
        .ok_or_else(|| Error::MapMismatch("map without components".into()))?;
    same_dim(components.len(), g.dim())?;
    let n = first.dim();
    let map = QMap::new_unchecked(
        RatPolyhedron::cube(n),
        RatPolyhedron::cube(g.dim()),
        components.to_vec(),
    )?;
    let mut out = Vec::new();
    for (k, rows) in map.refinement(limits)? {
        let mut remaining = vec![k];
        for cell in g.cells() {
            let pulled: Vec<HalfSpace> = cell.h_rep().iter().map(|h| pull_back(h, &rows)).collect();
            let mut next = Vec::new();
            for r in &remaining {
                let mut part = Some(r.clone());
                for h in &pulled {
                    part = match part {
                        Some(p) => p.clip_full(h),
                        None => break,
                    };
                }
                match part {
                    Some(p) => {
                        next.extend(subtract(r, &p, n));
                        out.push(Cell::new(p, cell.piece().compose(&rows)));
                        limits.check_cells(out.len())?;
                    }
                    None => next.push(r.clone()),
                }
            }
            remaining = next;
            if remaining.is_empty() {
                break;
            }
        }
        if !remaining.is_empty() {
            return Err(Error::Internal("pull-back does not cover a region".into()));
        }
    }
    Ok(PwlFunc::from_cells(n, out))
}

/// `{x : h·(Ax + c) ≤ b}` for the affine map with rows `rows`.
fn pull_back(h: &HalfSpace, rows: &[AffinePiece]) -> HalfSpace {
    let n = rows[0].coeffs().len();
    let mut normal = vec![Rational::zero(); n];
    let mut bound = h.bound.clone();
    for (a, row) in h.normal.iter().zip(rows) {
        if a.is_zero() {
            continue;
        }
        for (x, c) in normal.iter_mut().zip(row.coeffs()) {
            *x += a * c;
        }
        bound -= a * row.constant();
    }
    HalfSpace::new(normal, bound)
}

/// `σ ∘ λ`; requires `codomain(λ) = domain(σ)` as sets.
pub fn qmap_compose(sigma: &QMap, lambda: &QMap) -> Result<QMap> {
    qmap_compose_with(sigma, lambda, &Limits::default())
}

pub fn qmap_compose_with(sigma: &QMap, lambda: &QMap, limits: &Limits) -> Result<QMap> {
    if lambda.codomain.dim() != sigma.domain.dim() || !lambda.codomain.set_eq(&sigma.domain)? {
        return Err(Error::MapMismatch(
            "codomain of the inner map differs from the domain of the outer map".into(),
        ));
    }
    let components = sigma
        .components
        .iter()
        .map(|s| compose_pwl(s, &lambda.components, limits))
        .collect::<Result<Vec<_>>>()?;
    QMap::new_unchecked(lambda.domain.clone(), sigma.codomain.clone(), components)
}

/// Precomposition with `λ : P → Q`, sending functions restricted to `Q` to
/// functions restricted to `P`.
#[derive(Clone, Debug)]
pub struct DualHom {
    map: QMap,
    source: Arc<Presentation>,
    target: Arc<Presentation>,
}

impl DualHom {
    pub fn new(map: &QMap) -> Result<Self> {
        let source = Arc::new(Presentation::of_polyhedron(map.codomain())?);
        let target = Arc::new(Presentation::of_polyhedron(map.domain())?);
        DualHom::with_presentations(map, source, target)
    }

    pub fn with_presentations(
        map: &QMap,
        source: Arc<Presentation>,
        target: Arc<Presentation>,
    ) -> Result<Self> {
        if !source.zeroset().set_eq(map.codomain())? || !target.zeroset().set_eq(map.domain())? {
            return Err(Error::PresentationMismatch);
        }
        Ok(DualHom {
            map: map.clone(),
            source,
            target,
        })
    }

    pub fn source(&self) -> &Arc<Presentation> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Presentation> {
        &self.target
    }

    /// `f ↦ f ∘ λ`
    pub fn apply(&self, f: &QuotientElement) -> Result<QuotientElement> {
        if !Arc::ptr_eq(f.presentation(), &self.source)
            && !f.presentation().same_as(&self.source)?
        {
            return Err(Error::PresentationMismatch);
        }
        let rep = compose_pwl(f.rep(), &self.map.components, &Limits::default())?;
        QuotientElement::new(rep, Arc::clone(&self.target))
    }
}

/// Evidence that two maps with the same domain are told apart by their duals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Separation {
    /// The coordinate projection whose images differ.
    pub coordinate: usize,
    /// A point of the domain where the two images differ.
    pub point: Valuation,
}

/// If `λ ≠ μ` on their common domain, finds a coordinate `i` such that the
/// duals send `π_i` to different elements, and a point where they differ.
pub fn faithfulness_probe(lambda: &QMap, mu: &QMap) -> Result<Option<Separation>> {
    if !lambda.domain.set_eq(&mu.domain)? || !lambda.codomain.set_eq(&mu.codomain)? {
        return Err(Error::MapMismatch(
            "maps have different domains or codomains".into(),
        ));
    }
    let limits = Limits::default();
    for (i, (l, m)) in lambda.components.iter().zip(&mu.components).enumerate() {
        let d = limits.distance(l, m)?;
        if let Some(point) = vanishing_witness(&d, &lambda.domain)? {
            let dl = DualHom::new(lambda)?;
            let dm =
                DualHom::with_presentations(mu, Arc::clone(dl.source()), Arc::clone(dl.target()))?;
            let pi = QuotientElement::new(
                projection(lambda.codomain.dim(), i)?,
                Arc::clone(dl.source()),
            )?;
            let (a, b) = (dl.apply(&pi)?, dm.apply(&pi)?);
            let x = point.to_point();
            if a.rep().value_at(&x) == b.rep().value_at(&x) {
                return Err(Error::Internal("duals agree at a separating point".into()));
            }
            return Ok(Some(Separation {
                coordinate: i,
                point,
            }));
        }
    }
    Ok(None)
}
