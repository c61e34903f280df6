//! Exact enumeration of torus-fixed rank 2 torsion free sheaves on toric threefolds.
//!
//! The crate is organised in five layers:
//!
//! * [`algebra`]: Laurent polynomials, K-classes with line bundle tags, rational
//!   functions in the equivariant parameters, nilpotent cohomology of products of
//!   projective lines and truncated q-series.
//! * [`toric`]: toric data `(u, v, p)` of reflexive sheaves, threefold presets,
//!   Chern classes on projective space and slope stability.
//! * [`boxes`]: double square and double box configurations, moduli components,
//!   weights, sizes, leg corrections and generating functions.
//! * [`vertex`]: vertex and edge characters, Serre duality, sign bookkeeping and
//!   equivariant vertex measures by localization.
//! * [`global`]: gluing over compact threefolds, Euler characteristic generating
//!   functions and cross-checks of the closed formulas.

pub mod algebra;
pub mod boxes;
pub mod error;
pub mod global;
pub mod par;
pub mod toric;
pub mod vertex;

pub use error::{Error, Result};
