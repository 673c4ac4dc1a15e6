pub mod algebra;
pub mod decision;
pub mod duality;
pub mod error;
pub mod gen;
pub mod geometry;
mod linalg;
pub mod pwl;
pub mod semantics;
pub mod syntax;

pub use error::{Error, Result};
