//! JSON forms of polyhedra and maps. Rationals are `"p/q"` strings. A piece
//! may be given by an H-rep, by vertices, or both (then they must agree).

use serde::{Deserialize, Serialize};

use super::{QMap, RatPolyhedron};
use crate::algebra::parse_rational;
use crate::error::{Error, Result};
use crate::geometry::{HalfSpaceRecord, Point, Polytope};
use crate::pwl::PwlRecord;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PieceRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h_rep: Option<Vec<HalfSpaceRecord>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolyhedronRecord {
    pub ambient_dim: usize,
    pub pieces: Vec<PieceRecord>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QMapRecord {
    pub domain: PolyhedronRecord,
    pub codomain: PolyhedronRecord,
    pub components: Vec<PwlRecord>,
}

fn sorted_vertices(p: &Polytope) -> Vec<Point> {
    let mut vs = p.vertices().to_vec();
    vs.sort();
    vs
}

impl From<&RatPolyhedron> for PolyhedronRecord {
    fn from(p: &RatPolyhedron) -> Self {
        PolyhedronRecord {
            ambient_dim: p.dim(),
            pieces: p
                .pieces()
                .iter()
                .map(|piece| PieceRecord {
                    h_rep: Some(
                        piece
                            .constraints()
                            .iter()
                            .map(HalfSpaceRecord::from)
                            .collect(),
                    ),
                    vertices: Some(
                        sorted_vertices(piece)
                            .iter()
                            .map(|v| v.iter().map(ToString::to_string).collect())
                            .collect(),
                    ),
                })
                .collect(),
        }
    }
}

impl PolyhedronRecord {
    pub fn to_polyhedron(&self) -> Result<RatPolyhedron> {
        let n = self.ambient_dim;
        let mut pieces = Vec::with_capacity(self.pieces.len());
        for rec in &self.pieces {
            let vertices = rec
                .vertices
                .as_ref()
                .map(|vs| {
                    vs.iter()
                        .map(|v| {
                            if v.len() != n {
                                return Err(Error::DimensionMismatch {
                                    expected: n,
                                    got: v.len(),
                                });
                            }
                            v.iter()
                                .map(|s| parse_rational(s))
                                .collect::<Result<Point>>()
                        })
                        .collect::<Result<Vec<Point>>>()
                })
                .transpose()?;
            let piece = match (&rec.h_rep, vertices) {
                (Some(h), given) => {
                    let h = h
                        .iter()
                        .map(|h| h.to_halfspace(n))
                        .collect::<Result<Vec<_>>>()?;
                    let p = Polytope::from_hrep(n, h)
                        .ok_or_else(|| Error::InvalidPolyhedron("empty piece".into()))?;
                    if let Some(mut given) = given {
                        given.sort();
                        given.dedup();
                        if given != sorted_vertices(&p) {
                            return Err(Error::InvalidPolyhedron(
                                "vertices do not match the H-rep".into(),
                            ));
                        }
                    }
                    p
                }
                (None, Some(vs)) => match RatPolyhedron::hull(n, &vs)?.pieces.pop() {
                    Some(p) => p,
                    None => return Err(Error::InvalidPolyhedron("piece without vertices".into())),
                },
                (None, None) => {
                    return Err(Error::InvalidPolyhedron(
                        "piece needs h_rep or vertices".into(),
                    ))
                }
            };
            pieces.push(piece);
        }
        RatPolyhedron::new(n, pieces)
    }
}

impl RatPolyhedron {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&PolyhedronRecord::from(self)).expect("records serialize")
    }

    pub fn from_json(text: &str) -> Result<RatPolyhedron> {
        serde_json::from_str::<PolyhedronRecord>(text)?.to_polyhedron()
    }
}

impl From<&QMap> for QMapRecord {
    fn from(m: &QMap) -> Self {
        QMapRecord {
            domain: m.domain().into(),
            codomain: m.codomain().into(),
            components: m.components().iter().map(PwlRecord::from).collect(),
        }
    }
}

impl QMapRecord {
    /// Rebuilds the map; the inclusion of the image in the codomain is verified.
    pub fn to_qmap(&self) -> Result<QMap> {
        let components = self
            .components
            .iter()
            .map(PwlRecord::to_pwl)
            .collect::<Result<Vec<_>>>()?;
        QMap::new(
            self.domain.to_polyhedron()?,
            self.codomain.to_polyhedron()?,
            components,
        )
    }
}

impl QMap {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&QMapRecord::from(self)).expect("records serialize")
    }

    pub fn from_json(text: &str) -> Result<QMap> {
        serde_json::from_str::<QMapRecord>(text)?.to_qmap()
    }
}
