//! Toric data of rank 2 reflexive sheaves and the threefolds they live on.
//!
//! Local coordinates on the chart of a cone `(ρ_1, ρ_2, ρ_3)` are the pairings
//! `k_j = <w, n_{ρ_j}>` of a character `w` with the ray generators, so global
//! characters coincide with local ones on any chart spanned by the standard basis.

mod data;
mod threefold;

pub use data::{
    chern_classes_p3, other_axes, reflexive_character, singularity_data, ChartToricData, Flag, GlobalToricData,
    P1Point, Sub,
};
pub use threefold::{edge_restriction_data, mu_stable, Edge, Mat3, ToricThreefold};
