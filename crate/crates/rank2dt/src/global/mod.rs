//! Gluing over compact toric threefolds.
//!
//! Classified reflexive hulls on projective space, Euler characteristic
//! generating functions summed over hulls, legs and chart configurations, the
//! product formula for minimal `c_2`, and coefficientwise comparisons of
//! vertex measure series with Euler characteristic series.

pub mod conjecture;
pub mod hulls;
pub mod random;
pub mod series;

pub use conjecture::{
    compare_series, conifold_conjecture_check, conifold_hull, main_conjecture_c3, vertex_conjecture_check,
    CoefficientVerdict, ComparisonReport,
};
pub use hulls::{enumerate_hulls, Hull};
pub use random::{random_global_configs, RandomConfig};
pub use series::{
    component_series, edge_size, euler_series_global, leg_pairs, min_c2_formula, theorem_b_series, unit_legs,
};
