//! Error type shared by every module of the crate.

use thiserror::Error;

/// Failures reported by the algebra, combinatorics and localization layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A K-class contains a factor with zero Euler class and negative multiplicity.
    #[error("ill-defined Euler class: {0}")]
    IllDefinedEuler(String),
    /// The Calabi-Yau specialization hits a genuine pole.
    #[error("pole on the Calabi-Yau locus")]
    PoleOnCYLocus,
    /// Random probes of a supposedly constant function disagree.
    #[error("specialized weight is not constant: {0}")]
    NotConstant(String),
    /// Formal denominators survived redistribution.
    #[error("character is not a Laurent polynomial: {0}")]
    NotPolynomial(String),
    /// An operation that needs the tetrahedron received another polyhedron.
    #[error("expected 4 faces, found {0}")]
    NotTetrahedron(usize),
    /// Two charts disagree on shared edge data.
    #[error("gluing mismatch: {0}")]
    GluingMismatch(String),
    /// A triple of partitions violates the exactly-two condition.
    #[error("not a double box configuration: {0}")]
    NotADoubleBox(String),
    /// The plus/minus splitting identity failed.
    #[error("duality violated: {0}")]
    DualityViolated(String),
    /// The requested preset is not shipped.
    #[error("unsupported preset: {0}")]
    UnsupportedPreset(String),
    /// Malformed user input.
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

/// Result alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;
