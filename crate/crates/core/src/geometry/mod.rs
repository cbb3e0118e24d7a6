//! Exact rational polyhedral geometry: cells, complexes, face lattices,
//! normals, fibers, cones, volumes and elementary collapses.
//!
//! Cells are convex H-polyhedra with rational data. Non-convex regions are
//! modelled as complexes of convex cells. Outward normals are stored as
//! primitive integer vectors; all measures are lattice-normalized so that
//! every relation coefficient stays rational.

mod cell;
mod complex;
mod fiber;
mod volume;

pub use cell::{Cell, CellKey, FaceInfo, VRep};
pub use complex::lattice_outward_normal;
pub use complex::{fiber_dim, projected_dim, CellComplex, Cone, Incidence};
pub use fiber::{fiber_polytope, lattice_coordinates, Fiber};
pub use volume::{lattice_volume, volume, volume_by_facet_pyramids, volume_by_triangulation, Volume};

use crate::rational::{dot_zq, primitive_scaling, qz, Q, Z};
use num_traits::{Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("cells {0} and {1} intersect in a set that is not a face of both")]
    NonFaceIntersection(String, String),
    #[error("cell {0} is empty")]
    EmptyCell(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("cell {0} is not in the complex")]
    NotInComplex(String),
    #[error("cell {0} is zero-dimensional")]
    ZeroDimensionalCell(String),
    #[error("{0} is not a vertex of {1}")]
    NotAVertex(String, String),
    #[error("({0}, {1}) is not a free pair")]
    NotFreePair(String, String),
    #[error("polytope is unbounded")]
    Unbounded,
    #[error("constraint has a zero normal vector")]
    ZeroNormal,
    #[error("projection dimension {s} out of range for ambient dimension {m}")]
    BadProjection { s: usize, m: usize },
}

pub type Result<T> = std::result::Result<T, GeometryError>;

/// The inequality `<normal, x> <= offset` (or equality, when used as such)
/// with a primitive integer normal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfSpace {
    pub normal: Vec<Z>,
    pub offset: Q,
}

impl HalfSpace {
    /// Builds from rational coefficients, rescaling by a positive factor so the
    /// normal becomes primitive.
    pub fn from_rational(normal: &[Q], offset: Q) -> Result<Self> {
        if normal.iter().all(|x| x.is_zero()) {
            return Err(GeometryError::ZeroNormal);
        }
        let (prim, factor) = primitive_scaling(normal);
        Ok(HalfSpace {
            normal: prim,
            offset: offset * factor,
        })
    }

    /// Parses a row `[a_1, ..., a_m, b]`.
    pub fn from_row(row: &[Q]) -> Result<Self> {
        let (b, a) = row.split_last().ok_or(GeometryError::ZeroNormal)?;
        Self::from_rational(a, b.clone())
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    pub fn eval(&self, x: &[Q]) -> Q {
        dot_zq(&self.normal, x)
    }

    pub fn slack(&self, x: &[Q]) -> Q {
        &self.offset - self.eval(x)
    }

    pub fn contains(&self, x: &[Q]) -> bool {
        !self.slack(x).is_negative()
    }

    pub fn normal_q(&self) -> Vec<Q> {
        self.normal.iter().map(qz).collect()
    }

    /// Sign convention for equalities: first nonzero normal entry positive.
    pub fn as_equality(&self) -> Self {
        let first = self.normal.iter().find(|x| !x.is_zero());
        match first {
            Some(f) if f.is_negative() => HalfSpace {
                normal: self.normal.iter().map(|x| -x).collect(),
                offset: -self.offset.clone(),
            },
            _ => self.clone(),
        }
    }

    pub fn to_row(&self) -> Vec<Q> {
        let mut r = self.normal_q();
        r.push(self.offset.clone());
        r
    }
}
