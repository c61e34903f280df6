//! Double square and double box configurations.
//!
//! Torus fixed subsheaves of a rank 2 reflexive sheaf on a chart are stored
//! through their characteristic function. This module enumerates them,
//! detects the projective lines of fixed points, computes renormalized sizes
//! and weights, and glues charts over a threefold to compute `χ` and `c_3`.

pub mod config;
pub mod enumerate;
pub mod glue;
pub mod io;
pub mod series;
pub mod square;

pub use config::{lift, proj, Component, DoubleBoxConfig, ModuliComponent};
pub use enumerate::{enumerate_boxes, enumerate_from, Enumerated};
pub use glue::{cell_at_beta, f_correction, g_correction, leg_at_beta, leg_corrections, GlobalConfig, GluedFactors};
pub use io::{parse, ConfigDoc, GlobalConfigDoc, LegDoc, Loaded};
pub use series::{comb_series, series_of};
pub use square::{enumerate_squares, Cell, DoubleSquareConfig, Partition2D};
