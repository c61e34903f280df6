//! Exact algebraic substrate: torus characters, K-theory classes with line
//! bundle tags, rational functions in the equivariant parameters, the
//! cohomology ring of a product of projective lines, and truncated q-series.

pub mod coh;
pub mod kclass;
pub mod laurent;
pub mod qseries;
pub mod rational;

pub use coh::{cy_integral, cy_integral_symbolic, euler_class, localization_integral, CohClass, Coeff};
pub use kclass::{is_t0_fixed, BundleTag, FracK, KClass};
pub use laurent::{exp_add, exp_neg, Exp3, LaurentPoly3};
pub use qseries::{boxed_partition_product, macmahon, macmahon_squared, QSeries};
pub use rational::{probe_points, MPoly, RationalFn};
