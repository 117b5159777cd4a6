//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by state constructors, basis constructors, and channel
/// validation.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Amplitudes do not form a unit vector.
    #[error("state is not normalized: squared norm is {0}")]
    NotNormalized(f64),
    /// A zero vector cannot be normalized.
    #[error("cannot normalize a (near-)zero vector")]
    ZeroVector,
    /// A matrix fails the density-operator invariants.
    #[error("not a valid density matrix: {0}")]
    InvalidDensity(&'static str),
    /// Bloch vector lies outside the unit ball.
    #[error("Bloch vector norm {0} exceeds 1")]
    BlochNormExceedsOne(f64),
    /// The two basis states coincide up to phase.
    #[error("degenerate basis: overlap {0} is too close to 1")]
    DegenerateBasis(f64),
    /// An operation required a non-orthogonal basis but got an orthogonal one.
    #[error("orthogonal basis: {0}")]
    OrthogonalBasis(&'static str),
    /// A probability parameter fell outside [0, 1].
    #[error("probability {0} outside [0, 1]")]
    ProbabilityOutOfRange(f64),
    /// A Bloch radius fell outside [0, 1].
    #[error("radius {0} outside [0, 1]")]
    RadiusOutOfRange(f64),
    /// Mixing weights must be non-negative and sum to 1.
    #[error("invalid mixing weights ({0}, {1})")]
    InvalidWeights(f64, f64),
    /// Kraus operators do not resolve the identity.
    #[error("Kraus set violates completeness: residual norm {0:.3e}")]
    IncompleteKraus(f64),
    /// Kraus operators of a selective branch must satisfy sum K'K <= I.
    #[error("selective Kraus set exceeds the identity: max eigenvalue {0}")]
    OverCompleteKraus(f64),
    /// Channel file could not be parsed.
    #[error("invalid channel file: {0}")]
    ChannelFile(String),
    /// Temperature must be strictly positive.
    #[error("temperature must be positive, got {0}")]
    NonPositiveTemperature(f64),
    /// Level spacing must be strictly positive.
    #[error("excited-level energy must be positive, got {0}")]
    NonPositiveEnergy(f64),
    /// Cyclic basis families need at least three vertices.
    #[error("cyclic family needs n >= 3, got {0}")]
    TooFewVertices(usize),
    /// A half-angle parameter fell outside its valid interval.
    #[error("half-angle {0} outside (0, pi/2]")]
    AngleOutOfRange(f64),
    /// A sweep was asked to run over an empty grid.
    #[error("empty parameter grid")]
    EmptyGrid,
    /// A sweep was asked to run with zero samples.
    #[error("sample count must be positive")]
    NoSamples,
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
