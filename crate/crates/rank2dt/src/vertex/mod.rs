//! Characters of the deformation-obstruction theory on fixed components.
//!
//! Quotient characters carry `O(1)` tags for every free component. The local
//! `Ext` traces of vertices and edges are redistributed into Laurent
//! polynomials `V_α` and `E_αβ` by exact division by `(1 - t_i)`, and weights
//! are localization integrals over products of projective lines specialized to
//! the Calabi-Yau locus.

pub mod character;
pub mod split;
pub mod weight;

pub use character::{
    edge_class, edge_quotient_character, edge_reflexive_character, g_class, g_plus_class, quotient_character,
    quotient_character_with, redistribute_edge, tangent_class, vertex_class, vertex_class_with, vertex_frac, ChartFactors,
    QuotCharacter,
};
pub use split::{
    canonical_split, e111, has_expected_obstructions, serre_dual, serre_dual_check, serre_dual_check_with, split_edge,
    split_vertex, v111, Split, KAPPA,
};
pub use weight::{
    as_integer, buddy_groups, class_weights, dt_conifold_weight, dt_global_weight, dt_vertex_weight, edge_sign_exponent,
    fingerprint, forget_tags, global_classes, global_sign_exponents, restrict_t0, w_series, weight_report, BuddyGroup, GlobalClasses,
    SignExponents, WeightReport, PROBES,
};
