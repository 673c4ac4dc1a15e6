//! JSON form of [`PwlFunc`]: rationals are `"p/q"` strings and each cell is
//! stored as its H-rep plus affine piece. Vertices are recomputed on load.

use serde::{Deserialize, Serialize};

use super::{AffinePiece, Cell, PwlFunc};
use crate::algebra::parse_rational;
use crate::error::{Error, Result};
use crate::geometry::{HalfSpaceRecord, Polytope};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PieceRecord {
    pub coeffs: Vec<String>,
    pub constant: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CellRecord {
    pub h_rep: Vec<HalfSpaceRecord>,
    pub piece: PieceRecord,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PwlRecord {
    pub dim: usize,
    pub cells: Vec<CellRecord>,
}

impl From<&PwlFunc> for PwlRecord {
    fn from(f: &PwlFunc) -> Self {
        PwlRecord {
            dim: f.dim,
            cells: f
                .cells
                .iter()
                .map(|c| CellRecord {
                    h_rep: c.h_rep().iter().map(HalfSpaceRecord::from).collect(),
                    piece: PieceRecord {
                        coeffs: c.piece.coeffs.iter().map(ToString::to_string).collect(),
                        constant: c.piece.constant.to_string(),
                    },
                })
                .collect(),
        }
    }
}

impl PwlRecord {
    /// Rebuilds the function and validates its invariants.
    pub fn to_pwl(&self) -> Result<PwlFunc> {
        let n = self.dim;
        let mut cells = Vec::with_capacity(self.cells.len());
        for c in &self.cells {
            let h_rep = c
                .h_rep
                .iter()
                .map(|h| h.to_halfspace(n))
                .collect::<Result<Vec<_>>>()?;
            let polytope =
                Polytope::from_hrep(n, h_rep).ok_or_else(|| Error::Format("empty cell".into()))?;
            if c.piece.coeffs.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: c.piece.coeffs.len(),
                });
            }
            let coeffs = c
                .piece
                .coeffs
                .iter()
                .map(|s| parse_rational(s))
                .collect::<Result<Vec<_>>>()?;
            let piece = AffinePiece::new(coeffs, parse_rational(&c.piece.constant)?);
            cells.push(Cell::new(polytope, piece));
        }
        let f = PwlFunc::from_cells(n, cells);
        f.check().map_err(Error::Format)?;
        Ok(f)
    }
}

impl PwlFunc {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&PwlRecord::from(self)).expect("records serialize")
    }

    pub fn from_json(text: &str) -> Result<PwlFunc> {
        serde_json::from_str::<PwlRecord>(text)?.to_pwl()
    }
}
