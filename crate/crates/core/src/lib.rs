//! Hyperbolic reflection groups, Fuchsian side-pairing groups and nearest-neighbour
//! random walks on them.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is a pure function of its
//! inputs; file formats, the command line and the parallel trial runner live in the
//! `hyperwalk` companion crate.
//!
//! * [`hypgeom`]: Poincaré disk points, isometries, distances and the regular polygon
//!   with `n` sides and interior angles `2π/m`.
//! * [`groups`]: the reflection group and the Fuchsian group generated by that polygon,
//!   word evaluation and ball censuses.
//! * [`criterion`]: the translation-length versus walk-weight criterion, the closed-form
//!   inequalities and parameter sweeps.
//! * [`walksim`]: Monte Carlo estimators for drift, entropy, first passage and
//!   boundary hitting angles.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod criterion;
pub mod groups;
pub mod hypgeom;
pub mod walksim;

pub use criterion::{CriterionError, CriterionReport, RegionTable, StepMeasure};
pub use groups::{BallCensus, Family, GroupError, GroupModel, Word};
pub use hypgeom::{dist, polygon_spec, translation_length, DiskPoint, GeomError, Isometry, PolygonSpec};
pub use walksim::{BoundarySample, WalkConfig, WalkError, WalkStats};
