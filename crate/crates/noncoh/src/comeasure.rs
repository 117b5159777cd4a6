//! Coherence measures for non-orthogonal bases, extremal states at fixed
//! purity, the purity threshold, and coherence/mixedness complementarity.
//!
//! Two normalization conventions coexist for the trace measure: the defining
//! formula carries a factor 1/2, while every qubit closed form
//! (`1 + cos(alpha)`, `r + cos(alpha)`, the polygon bounds) matches the full
//! Euclidean Bloch distance. [`CoherenceConvention`] keeps both; `Euclidean`
//! is the default and is the one the closed forms pin.

use crate::error::{Error, Result};
use crate::nobasis::NOBasis;
use crate::qstate::{relative_entropy, DensityMatrix, PureQubit};

/// Normalization of the trace-distance coherence measure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CoherenceConvention {
    /// Full Euclidean Bloch distance to the free segment (twice the trace
    /// distance). Matches the closed-form values.
    #[default]
    Euclidean,
    /// Literal `min 1/2 tr|rho - chi|`; exactly half the Euclidean value.
    Half,
}

/// Trace-distance coherence: distance from `rho` to the free segment.
pub fn c_trace(rho: &DensityMatrix, basis: &NOBasis, conv: CoherenceConvention) -> f64 {
    let (_, dist) = basis.nearest_nois(rho);
    match conv {
        CoherenceConvention::Euclidean => dist,
        CoherenceConvention::Half => 0.5 * dist,
    }
}

/// Tolerance on the mixing weight in the golden-section minimization.
const C_REL_P_TOL: f64 = 1e-10;
const C_REL_MAX_ITER: usize = 200;
/// Interior proxy for endpoint evaluation when the exact endpoint state is
/// pure and the relative entropy there is infinite.
const ENDPOINT_PROXY: f64 = 1e-12;

/// Relative-entropy coherence in bits: `min_p S(rho || chi(p))`.
///
/// The objective is convex in `p` (relative entropy is jointly convex and
/// `chi(p)` is affine), so a golden-section search over the interior plus an
/// explicit check of both endpoints finds the minimum. Finite for every
/// state: interior mixtures of a linearly independent pair are full rank.
pub fn c_rel(rho: &DensityMatrix, basis: &NOBasis) -> f64 {
    let objective = |p: f64| {
        let chi = basis
            .nois_state(p)
            .expect("search keeps p within [0, 1]")
            .state;
        relative_entropy(rho, &chi)
    };
    let interior = |p: f64| objective(p.clamp(ENDPOINT_PROXY, 1.0 - ENDPOINT_PROXY));
    let (_, mut best) = golden_section_min(&interior, 0.0, 1.0, C_REL_P_TOL, C_REL_MAX_ITER);
    for endpoint in [objective(0.0), objective(1.0)] {
        if endpoint < best {
            best = endpoint;
        }
    }
    best.max(0.0)
}

/// Golden-section search for the minimum of a convex `f` on `[a, b]`.
/// Returns `(x_min, f_min)`.
fn golden_section_min(
    f: &impl Fn(f64) -> f64,
    mut a: f64,
    mut b: f64,
    xtol: f64,
    max_iter: usize,
) -> (f64, f64) {
    const INVPHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = b - INVPHI * (b - a);
    let mut x2 = a + INVPHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..max_iter {
        if (b - a).abs() <= xtol {
            break;
        }
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INVPHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INVPHI * (b - a);
            f2 = f(x2);
        }
    }
    if f1 < f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// The unique pure state maximizing the trace coherence: the Bloch point
/// antipodal to the chord-midpoint direction. Its Euclidean coherence is
/// `1 + cos(alpha)`.
///
/// Errors for an orthogonal basis, where the chord is a diameter and every
/// pole of its great circle attains the maximum.
pub fn max_coherent_state(basis: &NOBasis) -> Result<PureQubit> {
    let u = basis
        .midpoint_direction()
        .map_err(|_| Error::OrthogonalBasis("maximally coherent state is not unique"))?;
    u.scale(-1.0).to_pure()
}

/// The maximally coherent state of Bloch radius `r`: the point at distance
/// `r` opposite the chord midpoint, with coherence `r + cos(alpha)`.
pub fn nomcms(basis: &NOBasis, r: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::RadiusOutOfRange(r));
    }
    let u = basis
        .midpoint_direction()
        .map_err(|_| Error::OrthogonalBasis("maximally coherent shell state is not unique"))?;
    DensityMatrix::from_bloch(&u.scale(-r))
}

/// The minimally coherent state of Bloch radius `r`.
///
/// For `r <= cos(alpha)` this is the shell point in the chord-midpoint
/// direction, with coherence `cos(alpha) - r`. For larger `r` the shell
/// intersects the free segment and the minimum is zero; the returned state
/// is the intersection point with the smaller mixing weight.
pub fn nomincms(basis: &NOBasis, r: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::RadiusOutOfRange(r));
    }
    if r < 1e-15 {
        return Ok(DensityMatrix::maximally_mixed());
    }
    let c = basis.overlap();
    if r <= c {
        let u = basis.midpoint_direction()?;
        return DensityMatrix::from_bloch(&u.scale(r));
    }
    // |chi(p)|^2 = 1 - 4 p (1-p) sin^2(alpha); take the smaller root.
    let sin_sq = (1.0 - c * c).max(f64::MIN_POSITIVE);
    let disc = (1.0 - (1.0 - r * r) / sin_sq).max(0.0);
    let p = 0.5 * (1.0 - disc.sqrt());
    Ok(basis.nois_state(p)?.state)
}

/// Below purity `(1 + cos^2(alpha)) / 2` no state of the basis can be free;
/// the chord midpoint realizes the minimum.
pub fn purity_threshold(basis: &NOBasis) -> f64 {
    let c = basis.overlap();
    0.5 * (1.0 + c * c)
}

/// Slack in the two coherence/mixedness complementarity inequalities, using
/// the Euclidean convention and mixedness `M = 1 - r`.
#[derive(Debug, Clone, Copy)]
pub struct ComplementarityGaps {
    /// `1 + cos(alpha) - C - M`; non-negative, zero on the NOMCMS ray.
    pub upper: f64,
    /// `1 - cos(alpha) - (M - C)`; non-negative, zero on the NOMinCMS ray
    /// for `r <= cos(alpha)`.
    pub lower: f64,
}

pub fn complementarity_gaps(rho: &DensityMatrix, basis: &NOBasis) -> ComplementarityGaps {
    let c = c_trace(rho, basis, CoherenceConvention::Euclidean);
    let m = 1.0 - rho.bloch().norm();
    let cos_a = basis.overlap();
    ComplementarityGaps {
        upper: 1.0 + cos_a - c - m,
        lower: 1.0 - cos_a - (m - c),
    }
}

/// Mixedness bookkeeping for one state. `linear_mixedness` is `1 - r` (the
/// convention the complementarity relations use), kept alongside the purity
/// so the two notions are never conflated.
#[derive(Debug, Clone, Copy)]
pub struct MixednessReport {
    pub bloch_radius: f64,
    pub linear_mixedness: f64,
    pub entropy_bits: f64,
    pub purity: f64,
}

pub fn mixedness_report(rho: &DensityMatrix) -> MixednessReport {
    let r = rho.bloch().norm();
    MixednessReport {
        bloch_radius: r,
        linear_mixedness: 1.0 - r,
        entropy_bits: rho.von_neumann_entropy(),
        purity: rho.purity(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::{haar_pure_qubit, BlochVector, Mat2, SeededRng};
    use approx::assert_abs_diff_eq;
    use num_complex::Complex64;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, PI};

    fn basis_zero_plus() -> NOBasis {
        NOBasis::new(PureQubit::zero(), PureQubit::plus()).unwrap()
    }

    fn random_basis(rng: &mut SeededRng) -> NOBasis {
        loop {
            let b1 = haar_pure_qubit(rng);
            let b2 = haar_pure_qubit(rng);
            if let Ok(b) = NOBasis::new(b1, b2) {
                if b.overlap() > 1e-3 {
                    return b;
                }
            }
        }
    }

    #[test]
    fn c_trace_examples() {
        let b = basis_zero_plus();
        let chi = b.nois_state(0.42).unwrap().state;
        assert_abs_diff_eq!(
            c_trace(&chi, &b, CoherenceConvention::Euclidean),
            0.0,
            epsilon = 1e-12
        );
        let mm = DensityMatrix::maximally_mixed();
        assert_abs_diff_eq!(
            c_trace(&mm, &b, CoherenceConvention::Euclidean),
            FRAC_1_SQRT_2,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            c_trace(&mm, &b, CoherenceConvention::Half),
            0.5 * FRAC_1_SQRT_2,
            epsilon = 1e-12
        );
        let m = max_coherent_state(&b).unwrap().density();
        assert_abs_diff_eq!(
            c_trace(&m, &b, CoherenceConvention::Euclidean),
            1.0 + FRAC_1_SQRT_2,
            epsilon = 1e-12
        );
    }

    #[test]
    fn c_rel_examples() {
        let b = basis_zero_plus();
        let chi = b.nois_state(0.3).unwrap().state;
        assert!(c_rel(&chi, &b) < 1e-9);

        // Orthogonal basis reduces to the relative entropy of coherence.
        let ortho = NOBasis::computational();
        assert_abs_diff_eq!(
            c_rel(&PureQubit::plus().density(), &ortho),
            1.0,
            epsilon = 1e-9
        );
    }

    #[test]
    fn c_rel_matches_grid_scan() {
        let b = basis_zero_plus();
        let rho = PureQubit::one().density();
        let grid_n = 100_000;
        let mut grid_min = f64::INFINITY;
        for k in 1..grid_n {
            let p = k as f64 / grid_n as f64;
            let chi = b.nois_state(p).unwrap().state;
            grid_min = grid_min.min(relative_entropy(&rho, &chi));
        }
        assert_abs_diff_eq!(c_rel(&rho, &b), grid_min, epsilon = 1e-8);
    }

    #[test]
    fn max_coherent_examples() {
        let b = basis_zero_plus();
        let m = max_coherent_state(&b).unwrap();
        let v = m.bloch();
        assert_abs_diff_eq!(v.x, -FRAC_1_SQRT_2, epsilon = 1e-12);
        assert_abs_diff_eq!(v.y, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(v.z, -FRAC_1_SQRT_2, epsilon = 1e-12);

        assert!(max_coherent_state(&NOBasis::computational()).is_err());
    }

    #[test]
    fn max_coherent_matches_projector_closed_form() {
        // (1 + c)/c * I/2 - 1/(2c) (|b1><b1| + |b2><b2|).
        let mut rng = SeededRng::new(3);
        for _ in 0..20 {
            let b = random_basis(&mut rng);
            let c = b.overlap();
            let closed = Mat2::identity()
                .scale(Complex64::new((1.0 + c) / (2.0 * c), 0.0))
                .sub(
                    &b.b1()
                        .projector()
                        .add(&b.b2().projector())
                        .scale(Complex64::new(0.5 / c, 0.0)),
                );
            let m = max_coherent_state(&b).unwrap().density();
            assert!(m.matrix().dist(&closed) < 1e-9);
            assert_abs_diff_eq!(
                c_trace(&m, &b, CoherenceConvention::Euclidean),
                1.0 + c,
                epsilon = 1e-10
            );
        }
    }

    #[test]
    fn nomcms_examples() {
        let mut rng = SeededRng::new(4);
        let b = random_basis(&mut rng);
        let c = b.overlap();

        let top = nomcms(&b, 1.0).unwrap();
        assert!(top.approx_eq(&max_coherent_state(&b).unwrap().density(), 1e-10));

        let center = nomcms(&b, 0.0).unwrap();
        assert!(center.approx_eq(&DensityMatrix::maximally_mixed(), 1e-12));
        assert_abs_diff_eq!(
            c_trace(&center, &b, CoherenceConvention::Euclidean),
            c,
            epsilon = 1e-12
        );

        let b45 = NOBasis::symmetric_about_z(PI - FRAC_PI_4, 0.0).unwrap();
        assert_abs_diff_eq!(b45.half_angle(), FRAC_PI_4, epsilon = 1e-12);
        let rho = nomcms(&b45, 0.5).unwrap();
        assert_abs_diff_eq!(rho.bloch().norm(), 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(
            c_trace(&rho, &b45, CoherenceConvention::Euclidean),
            0.5 + FRAC_1_SQRT_2,
            epsilon = 1e-12
        );

        assert!(nomcms(&b, 1.5).is_err());
    }

    #[test]
    fn nomincms_examples() {
        let b45 = NOBasis::symmetric_about_z(PI - FRAC_PI_4, 0.0).unwrap();
        let c = b45.overlap();

        let center = nomincms(&b45, 0.0).unwrap();
        assert_abs_diff_eq!(
            c_trace(&center, &b45, CoherenceConvention::Euclidean),
            c,
            epsilon = 1e-12
        );

        let at_threshold = nomincms(&b45, c).unwrap();
        assert_abs_diff_eq!(
            c_trace(&at_threshold, &b45, CoherenceConvention::Euclidean),
            0.0,
            epsilon = 1e-9
        );

        let rho = nomincms(&b45, 0.3).unwrap();
        assert_abs_diff_eq!(rho.bloch().norm(), 0.3, epsilon = 1e-12);
        assert_abs_diff_eq!(
            c_trace(&rho, &b45, CoherenceConvention::Euclidean),
            c - 0.3,
            epsilon = 1e-12
        );

        // Above the threshold radius the shell meets the chord.
        let rho = nomincms(&b45, 0.9).unwrap();
        assert_abs_diff_eq!(rho.bloch().norm(), 0.9, epsilon = 1e-10);
        assert!(c_trace(&rho, &b45, CoherenceConvention::Euclidean) < 1e-9);

        // Orthogonal basis: the threshold is zero, so every shell meets the
        // chord (here the z-axis diameter).
        let ortho = NOBasis::computational();
        let rho = nomincms(&ortho, 0.5).unwrap();
        assert_abs_diff_eq!(rho.bloch().norm(), 0.5, epsilon = 1e-12);
        assert!(c_trace(&rho, &ortho, CoherenceConvention::Euclidean) < 1e-12);
    }

    #[test]
    fn purity_threshold_examples() {
        assert_abs_diff_eq!(
            purity_threshold(&NOBasis::computational()),
            0.5,
            epsilon = 1e-12
        );
        let b45 = NOBasis::symmetric_about_z(PI - FRAC_PI_4, 0.0).unwrap();
        assert_abs_diff_eq!(purity_threshold(&b45), 0.75, epsilon = 1e-12);

        // Minimum purity over gridded free states is the threshold.
        let b = basis_zero_plus();
        let mut min_purity = f64::INFINITY;
        for k in 0..=1000 {
            let p = k as f64 / 1000.0;
            min_purity = min_purity.min(b.nois_state(p).unwrap().state.purity());
        }
        assert_abs_diff_eq!(min_purity, purity_threshold(&b), epsilon = 1e-7);
    }

    #[test]
    fn complementarity_saturation() {
        let mut rng = SeededRng::new(8);
        for _ in 0..20 {
            let b = random_basis(&mut rng);
            let r = rng.uniform();
            let gaps = complementarity_gaps(&nomcms(&b, r).unwrap(), &b);
            assert_abs_diff_eq!(gaps.upper, 0.0, epsilon = 1e-12);
            assert!(gaps.lower >= -1e-9);

            let r_low = rng.uniform() * b.overlap();
            let gaps = complementarity_gaps(&nomincms(&b, r_low).unwrap(), &b);
            assert_abs_diff_eq!(gaps.lower, 0.0, epsilon = 1e-12);
            assert!(gaps.upper >= -1e-9);
        }
    }

    #[test]
    fn mixedness_report_fields() {
        let rho = DensityMatrix::from_bloch(&BlochVector::new(0.0, 0.0, 0.5)).unwrap();
        let rep = mixedness_report(&rho);
        assert_abs_diff_eq!(rep.bloch_radius, 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(rep.linear_mixedness, 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(rep.purity, 0.625, epsilon = 1e-12);
        assert_abs_diff_eq!(rep.entropy_bits, rho.von_neumann_entropy(), epsilon = 1e-12);
    }
}
