//! Leaky double-slit simulator: joint quanton-detector state construction,
//! normalized non-orthogonal coherence (the wave side), unambiguous
//! detector discrimination (the particle side), and Monte Carlo sweeps of
//! the duality bound `C + D <= 3/2`.
//!
//! The input `alpha|0> + beta|1>` passes a leak device that transmits the
//! upper beam with probability `pass_prob` and coherently diverts it into
//! the lower beam otherwise. The merged lower-path state `|psi>` and `|0>`
//! then form the non-orthogonal basis in which the quanton's coherence is
//! measured, while two probe states `d0`, `dpsi` record (partial) which-path
//! information.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use std::io::{self, Write};

use crate::comeasure::{c_trace, CoherenceConvention};
use crate::error::{Error, Result};
use crate::nobasis::{NOBasis, DEGENERACY_LIMIT};
use crate::qstate::{haar_pure_qubit, PureQubit, SeededRng, Subsystem, TwoQubitPure, TOL};

/// One point of the duality parameter space.
#[derive(Debug, Clone, Copy)]
pub struct SlitConfig {
    amp_alpha: Complex64,
    amp_beta: Complex64,
    pass_prob: f64,
    d0: PureQubit,
    dpsi: PureQubit,
}

impl SlitConfig {
    pub fn new(
        amp_alpha: Complex64,
        amp_beta: Complex64,
        pass_prob: f64,
        d0: PureQubit,
        dpsi: PureQubit,
    ) -> Result<SlitConfig> {
        let n = amp_alpha.norm_sqr() + amp_beta.norm_sqr();
        if (n - 1.0).abs() > TOL {
            return Err(Error::NotNormalized(n));
        }
        if !(0.0..=1.0).contains(&pass_prob) {
            return Err(Error::ProbabilityOutOfRange(pass_prob));
        }
        Ok(SlitConfig {
            amp_alpha,
            amp_beta,
            pass_prob,
            d0,
            dpsi,
        })
    }

    pub fn amp_alpha(&self) -> Complex64 {
        self.amp_alpha
    }

    pub fn amp_beta(&self) -> Complex64 {
        self.amp_beta
    }

    pub fn pass_prob(&self) -> f64 {
        self.pass_prob
    }

    pub fn d0(&self) -> &PureQubit {
        &self.d0
    }

    pub fn dpsi(&self) -> &PureQubit {
        &self.dpsi
    }
}

/// Derived quantities of one configuration.
#[derive(Debug, Clone, Copy)]
pub struct SlitDerived {
    /// The merged lower-path state `|psi>`.
    pub merged_state: PureQubit,
    /// `M = |beta|^2 + |alpha|^2 (1 - R)`: weight of the merged lower path.
    pub lower_weight: f64,
    /// `N = 1 + 2 |alpha|^2 sqrt(R (1 - R))`: squared norm of the
    /// unnormalized post-slit system state.
    pub merge_norm: f64,
    /// Squared norm of the unnormalized joint quanton-detector state,
    /// `1 + 2 |alpha|^2 sqrt(R (1 - R)) Re<d0|dpsi>`.
    pub joint_norm_sq: f64,
}

/// Wave and particle scores of one configuration.
#[derive(Debug, Clone, Copy)]
pub struct DualityPoint {
    pub c_tilde: f64,
    pub d_tilde: f64,
}

/// The normalized system state just after the leak device and beam merger,
/// together with the derived weights.
///
/// Errors with [`Error::ZeroVector`] in the corner `beta = 0, R = 1`, where
/// the lower path carries nothing and `|psi>` is undefined.
pub fn post_slit_state(cfg: &SlitConfig) -> Result<(PureQubit, SlitDerived)> {
    let r = cfg.pass_prob;
    let a2 = cfg.amp_alpha.norm_sqr();
    let lower_weight = cfg.amp_beta.norm_sqr() + a2 * (1.0 - r);
    let merged_state = PureQubit::normalized(cfg.amp_alpha * (1.0 - r).sqrt(), cfg.amp_beta)?;
    let cross = 2.0 * a2 * (r * (1.0 - r)).sqrt();
    let merge_norm = 1.0 + cross;
    let joint_norm_sq = 1.0 + cross * cfg.d0.inner(&cfg.dpsi).re;

    let m_sqrt = lower_weight.sqrt();
    let state = PureQubit::normalized(
        cfg.amp_alpha * r.sqrt() + m_sqrt * merged_state.amp0,
        m_sqrt * merged_state.amp1,
    )?;
    Ok((
        state,
        SlitDerived {
            merged_state,
            lower_weight,
            merge_norm,
            joint_norm_sq,
        },
    ))
}

/// The non-orthogonal basis `{|0>, |psi>}` the duality measures coherence
/// in; errors when `|psi>` is (nearly) parallel to `|0>`.
pub fn slit_basis(cfg: &SlitConfig) -> Result<NOBasis> {
    let (_, derived) = post_slit_state(cfg)?;
    NOBasis::new(PureQubit::zero(), derived.merged_state)
}

/// The post-selected joint quanton-detector state
/// `(alpha sqrt(R) |0>|d0> + sqrt(M) |psi>|dpsi>) / sqrt(joint_norm_sq)`.
pub fn joint_qd_state(cfg: &SlitConfig) -> Result<TwoQubitPure> {
    let (_, derived) = post_slit_state(cfg)?;
    let psi = derived.merged_state;
    if PureQubit::zero().overlap(&psi) >= DEGENERACY_LIMIT {
        return Err(Error::DegenerateBasis(PureQubit::zero().overlap(&psi)));
    }
    let upper = cfg.amp_alpha * cfg.pass_prob.sqrt();
    let lower = Complex64::new(derived.lower_weight.sqrt(), 0.0);
    let d0 = cfg.d0.amps();
    let dp = cfg.dpsi.amps();
    let mut amps = [Complex64::new(0.0, 0.0); 4];
    for a in 0..2 {
        // System |0> branch carries d0; |psi> spreads over both.
        amps[a] = upper * d0[a] + lower * psi.amp0 * dp[a];
        amps[2 + a] = lower * psi.amp1 * dp[a];
    }
    TwoQubitPure::normalized(amps)
}

/// Residual wave nature: the quanton's trace coherence in `{|0>, |psi>}`,
/// normalized by the maximum `1 + cos(alpha)`. In `[0, 1]`; errors on a
/// degenerate basis (sweeps discard such samples).
pub fn c_tilde(cfg: &SlitConfig) -> Result<f64> {
    let joint = joint_qd_state(cfg)?;
    let basis = slit_basis(cfg)?;
    let rho_q = joint.partial_trace(Subsystem::First);
    let denominator = 1.0 + basis.overlap();
    Ok(c_trace(&rho_q, &basis, CoherenceConvention::Euclidean) / denominator)
}

/// Extracted particle nature: the maximal unambiguous-discrimination
/// probability for detector states prepared with probabilities
/// `|alpha|^2 R` and `1 - |alpha|^2 R`:
/// `D = 1 - sqrt(p (1-p)) |<d0|dpsi>|`. Always in `[1/2, 1]`.
pub fn d_tilde(cfg: &SlitConfig) -> f64 {
    let p = cfg.amp_alpha.norm_sqr() * cfg.pass_prob;
    let spread = (p * (1.0 - p)).max(0.0).sqrt();
    1.0 - spread * cfg.d0.inner(&cfg.dpsi).norm()
}

/// Both scores for one configuration.
pub fn duality_point(cfg: &SlitConfig) -> Result<DualityPoint> {
    Ok(DualityPoint {
        c_tilde: c_tilde(cfg)?,
        d_tilde: d_tilde(cfg),
    })
}

// ---------------------------------------------------------------------------
// Monte Carlo sweep
// ---------------------------------------------------------------------------

/// Per-grid-point maxima of a duality sweep. `max_c_tilde`, `max_d_tilde`,
/// and `max_sum` are each maximized independently over the sampled
/// configurations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub pass_prob: f64,
    pub max_c_tilde: f64,
    pub max_d_tilde: f64,
    pub max_sum: f64,
    pub samples: u64,
    pub discarded: u64,
    pub seed: u64,
}

/// Result of [`sweep_duality`]. Sampling measure: input state and both
/// detector states drawn independently Haar on the pure-qubit manifold.
#[derive(Debug, Clone)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
    pub seed: u64,
    pub samples_per_point: u64,
}

impl SweepResult {
    /// Largest `max_sum` across the grid.
    pub fn worst_sum(&self) -> f64 {
        self.rows.iter().map(|r| r.max_sum).fold(0.0, f64::max)
    }

    /// Writes the sweep as CSV with the fixed column set
    /// `r,max_c_tilde,max_d_tilde,max_sum,samples,discarded,seed`.
    pub fn write_csv(&self, w: &mut impl Write) -> io::Result<()> {
        writeln!(
            w,
            "r,max_c_tilde,max_d_tilde,max_sum,samples,discarded,seed"
        )?;
        for row in &self.rows {
            writeln!(
                w,
                "{},{},{},{},{},{},{}",
                row.pass_prob,
                row.max_c_tilde,
                row.max_d_tilde,
                row.max_sum,
                row.samples,
                row.discarded,
                row.seed
            )?;
        }
        Ok(())
    }
}

/// Samples per parallel work unit. Fixing the block layout (rather than the
/// worker count) keeps results bit-identical for any thread pool size.
const SWEEP_BLOCK: u64 = 8192;

/// Deterministic boundary probes evaluated alongside the Haar samples at
/// each grid point. Haar sampling alone never lands exactly on the extremal
/// manifolds (they have measure zero): orthogonal detectors realize `D = 1`,
/// and phase-opposed detectors with a tuned input realize `C = 1` whenever
/// `R >= 1/2`, saturating `C + D = 3/2`. The probes make the per-point
/// maxima attain these boundary values instead of approaching them at the
/// Monte Carlo rate.
fn boundary_probes(r: f64) -> Vec<SlitConfig> {
    let mut probes = Vec::new();
    let c = |x: f64| Complex64::new(x, 0.0);
    let minus_zero =
        PureQubit::new(-Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)).expect("unit vector");

    // Orthogonal detectors: perfectly distinguishable, D = 1 exactly.
    if let Ok(cfg) = SlitConfig::new(
        c(std::f64::consts::FRAC_1_SQRT_2),
        c(std::f64::consts::FRAC_1_SQRT_2),
        r,
        PureQubit::zero(),
        PureQubit::one(),
    ) {
        probes.push(cfg);
    }

    // Phase-opposed identical detectors over an input-amplitude grid; the
    // conditioned system state is the phase-flipped superposition, which
    // maximizes the coherence side.
    let mut weights: Vec<f64> = (1..50).map(|k| k as f64 / 50.0).collect();
    if r >= 0.5 {
        // The exact saturating weight |alpha|^2 = 1/(2R).
        weights.push(1.0 / (2.0 * r));
    }
    for u in weights {
        if u >= 1.0 {
            continue;
        }
        if let Ok(cfg) = SlitConfig::new(
            c(u.sqrt()),
            c((1.0 - u).sqrt()),
            r,
            PureQubit::zero(),
            minus_zero,
        ) {
            probes.push(cfg);
        }
    }
    probes
}

#[derive(Clone, Copy)]
struct SweepAcc {
    max_c: f64,
    max_d: f64,
    max_sum: f64,
    discarded: u64,
}

impl SweepAcc {
    fn empty() -> SweepAcc {
        SweepAcc {
            max_c: 0.0,
            max_d: 0.0,
            max_sum: 0.0,
            discarded: 0,
        }
    }

    fn merge(self, o: SweepAcc) -> SweepAcc {
        SweepAcc {
            max_c: self.max_c.max(o.max_c),
            max_d: self.max_d.max(o.max_d),
            max_sum: self.max_sum.max(o.max_sum),
            discarded: self.discarded + o.discarded,
        }
    }
}

/// Haar Monte Carlo over the duality parameter space at each leak
/// probability in `r_grid`, augmented with the deterministic boundary
/// probes. Degenerate samples (merged state parallel to `|0>`) are
/// discarded and counted; `samples` in each row counts Haar draws only.
pub fn sweep_duality(r_grid: &[f64], samples_per_r: u64, seed: u64) -> Result<SweepResult> {
    if r_grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    if samples_per_r == 0 {
        return Err(Error::NoSamples);
    }
    let root = SeededRng::new(seed);
    let rows = r_grid
        .iter()
        .enumerate()
        .map(|(ri, &r)| {
            let point_rng = root.derive(ri as u64);
            let mut probe_acc = SweepAcc::empty();
            for cfg in boundary_probes(r) {
                if let Ok(c) = c_tilde(&cfg) {
                    let d = d_tilde(&cfg);
                    probe_acc.max_c = probe_acc.max_c.max(c);
                    probe_acc.max_d = probe_acc.max_d.max(d);
                    probe_acc.max_sum = probe_acc.max_sum.max(c + d);
                }
            }
            let n_blocks = samples_per_r.div_ceil(SWEEP_BLOCK);
            let acc = (0..n_blocks)
                .into_par_iter()
                .map(|block| {
                    let mut rng = point_rng.derive(block);
                    let count = SWEEP_BLOCK.min(samples_per_r - block * SWEEP_BLOCK);
                    let mut acc = SweepAcc::empty();
                    for _ in 0..count {
                        let input = haar_pure_qubit(&mut rng);
                        let d0 = haar_pure_qubit(&mut rng);
                        let dpsi = haar_pure_qubit(&mut rng);
                        let cfg = SlitConfig {
                            amp_alpha: input.amp0,
                            amp_beta: input.amp1,
                            pass_prob: r,
                            d0,
                            dpsi,
                        };
                        match c_tilde(&cfg) {
                            Ok(c) => {
                                let d = d_tilde(&cfg);
                                acc.max_c = acc.max_c.max(c);
                                acc.max_d = acc.max_d.max(d);
                                acc.max_sum = acc.max_sum.max(c + d);
                            }
                            Err(_) => acc.discarded += 1,
                        }
                    }
                    acc
                })
                .reduce(SweepAcc::empty, SweepAcc::merge)
                .merge(probe_acc);
            SweepRow {
                pass_prob: r,
                max_c_tilde: acc.max_c,
                max_d_tilde: acc.max_d,
                max_sum: acc.max_sum,
                samples: samples_per_r,
                discarded: acc.discarded,
                seed,
            }
        })
        .collect();
    Ok(SweepResult {
        rows,
        seed,
        samples_per_point: samples_per_r,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c64(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn simple_cfg(alpha: f64, beta: f64, r: f64, d0: PureQubit, dpsi: PureQubit) -> SlitConfig {
        SlitConfig::new(c64(alpha, 0.0), c64(beta, 0.0), r, d0, dpsi).unwrap()
    }

    #[test]
    fn post_slit_examples() {
        let h = FRAC_1_SQRT_2;
        // Transparent device: input unchanged.
        let cfg = simple_cfg(h, h, 1.0, PureQubit::zero(), PureQubit::one());
        let (state, derived) = post_slit_state(&cfg).unwrap();
        assert!(state.bloch().dist(&PureQubit::plus().bloch()) < 1e-12);
        assert_abs_diff_eq!(derived.lower_weight, 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(derived.merge_norm, 1.0, epsilon = 1e-12);

        // Nothing to leak.
        let cfg = simple_cfg(0.0, 1.0, 0.3, PureQubit::zero(), PureQubit::one());
        let (state, _) = post_slit_state(&cfg).unwrap();
        assert!(state.bloch().dist(&PureQubit::one().bloch()) < 1e-12);

        // Full diversion then merge reconstitutes the input.
        let cfg = simple_cfg(0.6, 0.8, 0.0, PureQubit::zero(), PureQubit::one());
        let (state, derived) = post_slit_state(&cfg).unwrap();
        assert_abs_diff_eq!(derived.lower_weight, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(derived.merge_norm, 1.0, epsilon = 1e-12);
        assert!((state.amp0 - c64(0.6, 0.0)).norm() < 1e-12);
        assert!((state.amp1 - c64(0.8, 0.0)).norm() < 1e-12);

        // The undefined corner.
        let cfg = simple_cfg(1.0, 0.0, 1.0, PureQubit::zero(), PureQubit::one());
        assert!(post_slit_state(&cfg).is_err());
    }

    #[test]
    fn joint_state_examples() {
        let h = FRAC_1_SQRT_2;
        // Orthogonal detectors, transparent device: a uniform Schmidt pair.
        let cfg = simple_cfg(h, h, 1.0, PureQubit::zero(), PureQubit::one());
        let joint = joint_qd_state(&cfg).unwrap();
        let (_, derived) = post_slit_state(&cfg).unwrap();
        assert_abs_diff_eq!(derived.joint_norm_sq, 1.0, epsilon = 1e-12);
        let rho_q = joint.partial_trace(Subsystem::First);
        let eig = rho_q.eigen();
        assert_abs_diff_eq!(eig[0].0, 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(eig[1].0, 0.5, epsilon = 1e-12);

        // Identical detectors: the joint state is a product and the system
        // factor is the post-slit state.
        let d = PureQubit::from_bloch_angles(1.0, 0.4);
        let cfg = simple_cfg(0.6, 0.8, 0.5, d, d);
        let joint = joint_qd_state(&cfg).unwrap();
        let (post, _) = post_slit_state(&cfg).unwrap();
        let rho_q = joint.partial_trace(Subsystem::First);
        assert!(rho_q.approx_eq(&post.density(), 1e-12));
        let rho_d = joint.partial_trace(Subsystem::Second);
        assert!(rho_d.approx_eq(&d.density(), 1e-12));
    }

    #[test]
    fn joint_norm_matches_brute_force() {
        let mut rng = SeededRng::new(99);
        for _ in 0..10_000 {
            let input = haar_pure_qubit(&mut rng);
            let cfg = SlitConfig {
                amp_alpha: input.amp0,
                amp_beta: input.amp1,
                pass_prob: rng.uniform(),
                d0: haar_pure_qubit(&mut rng),
                dpsi: haar_pure_qubit(&mut rng),
            };
            let Ok((_, derived)) = post_slit_state(&cfg) else {
                continue;
            };
            // Brute-force norm of the unnormalized joint vector.
            let upper = cfg.amp_alpha * cfg.pass_prob.sqrt();
            let lower = derived.lower_weight.sqrt();
            let psi = derived.merged_state;
            let d0 = cfg.d0.amps();
            let dp = cfg.dpsi.amps();
            let mut norm_sq = 0.0;
            for s in 0..2 {
                for a in 0..2 {
                    let sys = if s == 0 { psi.amp0 } else { psi.amp1 };
                    let mut amp = lower * sys * dp[a];
                    if s == 0 {
                        amp += upper * d0[a];
                    }
                    norm_sq += amp.norm_sqr();
                }
            }
            assert_abs_diff_eq!(norm_sq, derived.joint_norm_sq, epsilon = 1e-10);

            // The reduced quanton state stays a valid density matrix.
            if let Ok(joint) = joint_qd_state(&cfg) {
                let rho_q = joint.partial_trace(Subsystem::First);
                let trace = (rho_q.entry(0, 0) + rho_q.entry(1, 1)).re;
                assert_abs_diff_eq!(trace, 1.0, epsilon = 1e-10);
                assert!(rho_q.eigen()[1].0 >= -1e-10);
            }
        }
    }

    #[test]
    fn d_tilde_examples() {
        let h = FRAC_1_SQRT_2;
        // Orthogonal detectors are perfectly distinguishable.
        let cfg = simple_cfg(h, h, 0.7, PureQubit::zero(), PureQubit::one());
        assert_abs_diff_eq!(d_tilde(&cfg), 1.0, epsilon = 1e-12);

        // Deterministic source.
        let d = PureQubit::plus();
        let cfg = simple_cfg(0.0, 1.0, 0.7, d, d);
        assert_abs_diff_eq!(d_tilde(&cfg), 1.0, epsilon = 1e-12);

        // p = 1/2 with identical detectors.
        let cfg = simple_cfg(h, h, 1.0, d, d);
        assert_abs_diff_eq!(d_tilde(&cfg), 0.5, epsilon = 1e-12);
    }

    #[test]
    fn c_tilde_examples() {
        let h = FRAC_1_SQRT_2;
        // Full which-path correlation kills the normalized coherence.
        let cfg = simple_cfg(h, h, 1.0, PureQubit::zero(), PureQubit::one());
        assert!(c_tilde(&cfg).unwrap() < 1e-12);

        // Degenerate merged state is flagged for discarding.
        let cfg = simple_cfg(1.0, 0.0, 0.5, PureQubit::zero(), PureQubit::one());
        assert!(c_tilde(&cfg).is_err());
    }

    #[test]
    fn duality_bound_saturates_with_phase_opposed_detectors() {
        // alpha = 1/sqrt(2R), beta = sqrt((2R-1)/(2R)), dpsi = -d0: the
        // conditioned system state is the maximally coherent state, C = 1,
        // and |<d0|dpsi>| = 1 with |alpha|^2 R = 1/2 gives D = 1/2.
        let r: f64 = 0.8;
        let alpha = 1.0 / (2.0 * r).sqrt();
        let beta = ((2.0 * r - 1.0) / (2.0 * r)).sqrt();
        let d = PureQubit::from_bloch_angles(0.9, 0.2);
        let minus_d = PureQubit::new(-d.amp0, -d.amp1).unwrap();
        let cfg = simple_cfg(alpha, beta, r, d, minus_d);
        let pt = duality_point(&cfg).unwrap();
        assert_abs_diff_eq!(pt.c_tilde, 1.0, epsilon = 1e-10);
        assert_abs_diff_eq!(pt.d_tilde, 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(pt.c_tilde + pt.d_tilde, 1.5, epsilon = 1e-10);
    }

    #[test]
    fn sweep_is_deterministic_and_bounded() {
        let grid = [0.25, 0.5, 0.75, 1.0];
        let a = sweep_duality(&grid, 20_000, 31).unwrap();
        let b = sweep_duality(&grid, 20_000, 31).unwrap();
        assert_eq!(a.rows, b.rows);
        for row in &a.rows {
            assert!(row.max_sum <= 1.5 + 1e-9);
            assert!(row.max_c_tilde <= 1.0 + 1e-9);
            assert!(row.max_d_tilde <= 1.0 + 1e-12);
            // The orthogonal-detector probe realizes D = 1 exactly.
            assert!(row.max_d_tilde >= 1.0 - 1e-12);
        }
        // For R > 1/2 the tuned phase-opposed probe saturates C + D = 3/2.
        for row in &a.rows[2..] {
            assert!((row.max_sum - 1.5).abs() <= 1e-9, "R = {}", row.pass_prob);
        }
        assert!(sweep_duality(&[], 10, 1).is_err());
        assert!(sweep_duality(&grid, 0, 1).is_err());
    }
}
