//! Exact-formula primitives of the hyperbolic plane in the Poincaré disk model.
//!
//! Isometries are real 2×2 matrices acting on the upper half-plane, carried to the
//! disk by the Cayley transform `w ↦ (w - i)/(w + i)`. Orientation-reversing maps
//! `z ↦ M·z̄` have `det M = -1` and set [`Isometry::reversing`].

mod isometry;
mod point;
mod polygon;

pub use isometry::{apply, translation_length, Isometry, NORMALIZE_LIMIT};
pub use point::{dist, DiskPoint};
pub use polygon::{is_hyperbolic, polygon_spec, side_reflections, PolygonSpec};

/// Below this translation length an isometry is treated as elliptic or parabolic.
pub const HYPERBOLIC_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GeomError {
    #[error("point ({x}, {y}) is not inside the unit disk")]
    OutsideDisk { x: f64, y: f64 },
    #[error("invalid isometry: matrix entries must be finite with nonzero determinant")]
    InvalidIsometry,
    #[error("translation length is only defined for orientation-preserving isometries")]
    WrongIsometryClass,
    #[error("polygon needs n >= 3 and m >= 3, got (n, m) = ({n}, {m})")]
    TooFewSides { n: u32, m: u32 },
    #[error("(n, m) = ({n}, {m}) is not hyperbolic: m(n-2) > 2n fails ({lhs} <= {rhs})")]
    NotHyperbolic { n: u32, m: u32, lhs: u64, rhs: u64 },
}
