//! Property tests over arbitrary inputs (not just seeded Monte Carlo).

use noncoh::nobasis::NOBasis;
use noncoh::qstate::{trace_distance, BlochVector, DensityMatrix, PureQubit};
use proptest::prelude::*;

fn ball_vector() -> impl Strategy<Value = BlochVector> {
    (-1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0).prop_filter_map(
        "inside the unit ball",
        |(x, y, z)| {
            let v = BlochVector::new(x, y, z);
            (v.norm() <= 1.0).then_some(v)
        },
    )
}

fn pure_state() -> impl Strategy<Value = PureQubit> {
    (0.0f64..std::f64::consts::PI, 0.0f64..std::f64::consts::TAU)
        .prop_map(|(theta, phi)| PureQubit::from_bloch_angles(theta, phi))
}

proptest! {
    #[test]
    fn bloch_round_trip(v in ball_vector()) {
        let rho = DensityMatrix::from_bloch(&v).unwrap();
        let w = rho.bloch();
        prop_assert!(v.dist(&w) <= 1e-12);
    }

    #[test]
    fn trace_distance_is_a_metric(a in ball_vector(), b in ball_vector(), c in ball_vector()) {
        let ra = DensityMatrix::from_bloch(&a).unwrap();
        let rb = DensityMatrix::from_bloch(&b).unwrap();
        let rc = DensityMatrix::from_bloch(&c).unwrap();
        let dab = trace_distance(&ra, &rb);
        prop_assert!((dab - trace_distance(&rb, &ra)).abs() <= 1e-14);
        prop_assert!(dab <= trace_distance(&ra, &rc) + trace_distance(&rc, &rb) + 1e-12);
        prop_assert!((dab - 0.5 * a.dist(&b)).abs() <= 1e-12);
    }

    #[test]
    fn nearest_free_state_is_the_segment_optimum(
        b1 in pure_state(),
        b2 in pure_state(),
        v in ball_vector(),
        p in 0.0f64..=1.0,
    ) {
        prop_assume!(b1.overlap(&b2) < 1.0 - 1e-6);
        let basis = NOBasis::new(b1, b2).unwrap();
        let rho = DensityMatrix::from_bloch(&v).unwrap();
        let (point, dist) = basis.nearest_nois(&rho);
        prop_assert!((0.0..=1.0).contains(&point.weight));
        // No explicit mixture beats the projection.
        let chi = basis.nois_state(p).unwrap().state;
        prop_assert!(dist <= v.dist(&chi.bloch()) + 1e-12);
    }

    #[test]
    fn purity_and_entropy_stay_in_range(v in ball_vector()) {
        let rho = DensityMatrix::from_bloch(&v).unwrap();
        let purity = rho.purity();
        prop_assert!((0.5..=1.0 + 1e-12).contains(&purity));
        prop_assert!(((1.0 + v.dot(&v)) / 2.0 - purity).abs() <= 1e-12);
        let s = rho.von_neumann_entropy();
        prop_assert!((-1e-12..=1.0 + 1e-12).contains(&s));
    }
}
