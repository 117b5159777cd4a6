//! Non-orthogonal qubit bases and their free-state geometry.
//!
//! The free states of a basis `{|b1>, |b2>}` are the mixtures
//! `chi(p) = p |b1><b1| + (1-p) |b2><b2|`. In the Bloch ball they form the
//! chord segment between the two basis points, so nearest-free-state queries
//! reduce to exact point-to-segment projection.

use crate::error::{Error, Result};
use crate::qstate::{BlochVector, DensityMatrix, PureQubit};

/// Overlap at or above this makes a basis degenerate (linearly dependent).
pub const DEGENERACY_LIMIT: f64 = 1.0 - 1e-9;

/// Default membership tolerance for [`NOBasis::is_nois`].
pub const MEMBERSHIP_TOL: f64 = 1e-9;

/// An ordered pair of normalized pure states with overlap `cos(alpha) < 1`.
///
/// `half_angle` is alpha: half the Bloch-sphere angle subtended by the basis
/// points at the origin, so `|<b1|b2>| = cos(alpha)`.
#[derive(Debug, Clone, Copy)]
pub struct NOBasis {
    b1: PureQubit,
    b2: PureQubit,
    overlap: f64,
    half_angle: f64,
}

/// A free state of a basis together with its mixing weight `p` for `|b1>`.
#[derive(Debug, Clone, Copy)]
pub struct NoisPoint {
    pub weight: f64,
    pub state: DensityMatrix,
}

/// The Bloch chord segment spanned by a basis.
#[derive(Debug, Clone, Copy)]
pub struct ChordSegment {
    /// Bloch point of `|b1>` (weight p = 1).
    pub end_a: BlochVector,
    /// Bloch point of `|b2>` (weight p = 0).
    pub end_b: BlochVector,
    pub midpoint: BlochVector,
}

impl NOBasis {
    /// Builds a basis from two normalized states; errors if they coincide up
    /// to phase (overlap >= 1 - 1e-9).
    pub fn new(b1: PureQubit, b2: PureQubit) -> Result<NOBasis> {
        let overlap = b1.overlap(&b2);
        if overlap >= DEGENERACY_LIMIT {
            return Err(Error::DegenerateBasis(overlap));
        }
        let half_angle = overlap.clamp(0.0, 1.0).acos();
        Ok(NOBasis {
            b1,
            b2,
            overlap,
            half_angle,
        })
    }

    /// Symmetric pair `cos(t/2)|0> +/- e^{i phi} sin(t/2)|1>` where `t` is
    /// the common Bloch polar angle. The chord is horizontal at height
    /// `z = cos(t)` and the half-angle is `acos(|cos(t)|)`.
    pub fn symmetric_about_z(polar_angle: f64, phi: f64) -> Result<NOBasis> {
        let b1 = PureQubit::from_bloch_angles(polar_angle, phi);
        let b2 = PureQubit::from_bloch_angles(polar_angle, phi + std::f64::consts::PI);
        NOBasis::new(b1, b2)
    }

    pub fn computational() -> NOBasis {
        NOBasis::new(PureQubit::zero(), PureQubit::one()).expect("orthogonal pair")
    }

    pub fn b1(&self) -> &PureQubit {
        &self.b1
    }

    pub fn b2(&self) -> &PureQubit {
        &self.b2
    }

    /// `|<b1|b2>| = cos(alpha)`.
    pub fn overlap(&self) -> f64 {
        self.overlap
    }

    /// Alpha, in radians; `pi/2` for an orthogonal basis.
    pub fn half_angle(&self) -> f64 {
        self.half_angle
    }

    pub fn is_orthogonal(&self, tol: f64) -> bool {
        self.overlap <= tol
    }

    pub fn chord(&self) -> ChordSegment {
        let end_a = self.b1.bloch();
        let end_b = self.b2.bloch();
        ChordSegment {
            end_a,
            end_b,
            midpoint: end_a.add(&end_b).scale(0.5),
        }
    }

    /// Unit vector from the origin through the chord midpoint; errors for an
    /// orthogonal basis, whose chord passes through the origin.
    pub fn midpoint_direction(&self) -> Result<BlochVector> {
        self.chord()
            .midpoint
            .unit()
            .map_err(|_| Error::OrthogonalBasis("chord passes through the origin"))
    }

    /// The free state `chi(p) = p |b1><b1| + (1-p) |b2><b2|`.
    pub fn nois_state(&self, p: f64) -> Result<NoisPoint> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::ProbabilityOutOfRange(p));
        }
        let state = DensityMatrix::mix(p, &self.b1.density(), &self.b2.density())?;
        Ok(NoisPoint { weight: p, state })
    }

    /// Exact nearest free state: orthogonal projection of the Bloch point of
    /// `rho` onto the chord, with the projection parameter clamped to [0, 1].
    /// The returned distance is the full Euclidean Bloch distance.
    pub fn nearest_nois(&self, rho: &DensityMatrix) -> (NoisPoint, f64) {
        let x = rho.bloch();
        let chord = self.chord();
        // chi(p) = p*end_a + (1-p)*end_b, so the segment runs from end_b to end_a.
        let dir = chord.end_a.sub(&chord.end_b);
        let len_sq = dir.dot(&dir);
        let p = if len_sq <= 0.0 {
            0.0
        } else {
            (x.sub(&chord.end_b).dot(&dir) / len_sq).clamp(0.0, 1.0)
        };
        let point = self
            .nois_state(p)
            .expect("clamped projection parameter is a probability");
        let dist = x.dist(&point.state.bloch());
        (point, dist)
    }

    /// Membership test: `Some(p)` if the Bloch point of `rho` lies on the
    /// chord segment within Euclidean tolerance `tol`.
    pub fn is_nois(&self, rho: &DensityMatrix, tol: f64) -> Option<f64> {
        let (point, dist) = self.nearest_nois(rho);
        (dist <= tol).then_some(point.weight)
    }
}
