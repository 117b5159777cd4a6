//! Resource theory of quantum coherence over non-orthogonal qubit bases.
//!
//! A non-orthogonal basis is an ordered pair of normalized qubit states with
//! overlap `cos(alpha) < 1`. Its free ("incoherent") states are the mixtures
//! of the two basis projectors, which form a chord segment inside the Bloch
//! ball. This crate provides:
//!
//! - [`qstate`]: complex 2- and 4-dimensional linear algebra, entropies,
//!   distances, and seeded Haar/Hilbert-Schmidt sampling;
//! - [`nobasis`]: basis objects, the free-state segment, and exact
//!   nearest-free-state geometry;
//! - [`comeasure`]: trace- and relative-entropy coherence measures, extremal
//!   states at fixed purity, the purity threshold, and the
//!   coherence/mixedness complementarity gaps;
//! - [`channels`]: Kraus channels, basis-changing operations, free-operation
//!   membership checks, and the non-orthogonal phase flip;
//! - [`duality`]: the leaky double-slit simulator and the wave-particle
//!   sweep verifying `C + D <= 3/2`;
//! - [`multibasis`]: mutually orthogonal and cyclic basis families with
//!   Monte Carlo bound verification;
//! - [`thermo`]: thermal states, the basis family that makes them maximally
//!   coherent, and the linear energy cost of basis change.
//!
//! All randomized routines are driven by [`qstate::SeededRng`] and are
//! bit-reproducible for a fixed seed, independent of thread count.

// Index loops read better than iterator chains in 2x2/4x4 matrix kernels.
#![allow(clippy::needless_range_loop)]

pub mod channels;
pub mod comeasure;
pub mod duality;
mod error;
pub mod multibasis;
pub mod nobasis;
pub mod qstate;
pub mod thermo;

pub use error::{Error, Result};
pub use qstate::{
    haar_pure_qubit, random_mixed_qubit, relative_entropy, trace_distance, BlochVector,
    DensityMatrix, PureQubit, SeededRng, TwoQubitPure,
};

pub use comeasure::{c_rel, c_trace, CoherenceConvention};
pub use nobasis::NOBasis;
