mod common;

use std::f64::consts::{PI, TAU};

use common::{max_abs_diff, random_profile, seeded};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::Rng;

use wbloch::fourier::{
    approx_intensity, bloch_period, intensity_via_integral, DEFAULT_QUADRATURE_NODES,
};
use wbloch::observables::{intensity, intensity_via_correlations};
use wbloch::splitter::{cascade_amplitudes, cascade_intensities, CascadeSpec};
use wbloch::twobeam::{two_beam_cross_correlation, two_beam_intensity, TwoBeamState};
use wbloch::{
    analytic_propagator, apply_phase_mask, gaussian_profile, intensity_coherent,
    intensity_incoherent, intensity_wstate, numeric_propagator, AmplitudeProfile, InputField,
    LatticeParams, OccupationList, ProfileKind,
};

fn cascade26() -> AmplitudeProfile {
    cascade_amplitudes(&CascadeSpec::new(0.5, 13).unwrap()).profile
}

fn l1(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn wstate_matches_coherent(seed in any::<u64>(), n in 2usize..24, alpha in 0.0f64..2.0, tau in 0.0f64..30.0) {
        let mut rng = seeded(seed);
        let c = random_profile(&mut rng, n);
        let params = LatticeParams::new(n, alpha).unwrap();
        for g in [analytic_propagator(&params, tau).unwrap(), numeric_propagator(&params, tau).unwrap()] {
            let w = intensity_wstate(&g, &c).unwrap();
            let coh = intensity_coherent(&g, &c.clone().with_kind(ProfileKind::Coherent).unwrap()).unwrap();
            prop_assert!(max_abs_diff(&w, &coh) <= 1e-15);
        }
    }

    #[test]
    fn numeric_group_property(n in 2usize..20, alpha in 0.0f64..1.5, t1 in 0.0f64..10.0, t2 in 0.0f64..10.0) {
        let params = LatticeParams::new(n, alpha).unwrap();
        let g1 = numeric_propagator(&params, t1).unwrap();
        let g2 = numeric_propagator(&params, t2).unwrap();
        let g12 = numeric_propagator(&params, t1 + t2).unwrap();
        let composed = g2.matrix() * g1.matrix();
        let err = (g12.matrix() - composed).camax();
        prop_assert!(err < 1e-9, "composition error {err:e}");
    }

    #[test]
    fn analytic_revival(alpha in 0.05f64..2.0, m in 1u32..4, seed in any::<u64>()) {
        let n = 15;
        let params = LatticeParams::new(n, alpha).unwrap();
        let tau = bloch_period(alpha).unwrap() * m as f64;
        let g = analytic_propagator(&params, tau).unwrap();
        let c = random_profile(&mut seeded(seed), n);
        let out = intensity_wstate(&g, &c).unwrap();
        prop_assert!(max_abs_diff(&out, &c.populations()) < 1e-12);
    }

    #[test]
    fn origin_shift_leaves_intensities(seed in any::<u64>(), shift in -40i64..40, alpha in 0.0f64..1.5, tau in 0.0f64..20.0) {
        let n = 12;
        let c = random_profile(&mut seeded(seed), n);
        let base = LatticeParams::new(n, alpha).unwrap();
        let moved = base.shifted(shift);
        let a0 = intensity_wstate(&analytic_propagator(&base, tau).unwrap(), &c).unwrap();
        let a1 = intensity_wstate(&analytic_propagator(&moved, tau).unwrap(), &c).unwrap();
        prop_assert!(max_abs_diff(&a0, &a1) < 1e-12);
        let n0 = intensity_wstate(&numeric_propagator(&base, tau).unwrap(), &c).unwrap();
        let n1 = intensity_wstate(&numeric_propagator(&moved, tau).unwrap(), &c).unwrap();
        prop_assert!(max_abs_diff(&n0, &n1) < 1e-9);
    }

    #[test]
    fn global_phase_is_invisible(seed in any::<u64>(), phi in 0.0f64..TAU, tau in 0.0f64..20.0) {
        let n = 10;
        let c = random_profile(&mut seeded(seed), n);
        let masked = apply_phase_mask(&c, &vec![phi; n]).unwrap();
        prop_assert!(max_abs_diff(&masked.populations(), &c.populations()) < 1e-15);
        let g = analytic_propagator(&LatticeParams::new(n, 0.5).unwrap(), tau).unwrap();
        let a = intensity_wstate(&g, &c).unwrap();
        let b = intensity_wstate(&g, &masked).unwrap();
        prop_assert!(max_abs_diff(&a, &b) < 1e-12);
    }

    #[test]
    fn phase_mask_keeps_populations(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let n = 9;
        let c = random_profile(&mut rng, n);
        let phases: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..TAU)).collect();
        let masked = apply_phase_mask(&c, &phases).unwrap();
        prop_assert!(max_abs_diff(&masked.populations(), &c.populations()) < 1e-15);
        prop_assert!((masked.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cascade_mirror_and_decay(t in 0.01f64..1.0, k in 1usize..16) {
        let spec = CascadeSpec::new(t, k).unwrap();
        let p = cascade_intensities(&spec);
        prop_assert_eq!(p.len(), 2 * k);
        for i in 0..k {
            prop_assert_eq!(p[i], p[2 * k - 1 - i]);
        }
        // Inner ports are brightest; each step outward costs a factor R.
        for i in 0..k - 1 {
            prop_assert!(p[k + i + 1] < p[k + i]);
            prop_assert!((p[k + i + 1] / p[k + i] - (1.0 - t)).abs() < 1e-12);
        }
        let total: f64 = p.iter().sum();
        prop_assert!((total - (1.0 - (1.0 - t).powi(k as i32))).abs() < 1e-14);
    }

    #[test]
    fn two_beam_structure(re1 in -2.0f64..2.0, im1 in -2.0f64..2.0, re2 in -2.0f64..2.0, im2 in -2.0f64..2.0, theta in 0.0f64..TAU) {
        let s = TwoBeamState::Coherent(Complex64::new(re1, im1), Complex64::new(re2, im2));
        let (n1, n2) = s.mean_occupations();
        let m = two_beam_cross_correlation(&s);
        let expected = 0.5 * (n1 + n2) + m.norm() * (theta + m.arg()).cos();
        let i = two_beam_intensity(&s, theta);
        prop_assert!((i - expected.max(0.0)).abs() < 1e-12);
        // Opposite output port carries the rest.
        let pair = i + two_beam_intensity(&s, theta + PI);
        prop_assert!((pair - (n1 + n2)).abs() < 1e-12);
    }

    #[test]
    fn three_way_agreement(seed in any::<u64>(), alpha in 0.2f64..2.0, tau in 0.0f64..15.0) {
        let n = 14;
        let c = random_profile(&mut seeded(seed), n);
        let params = LatticeParams::new(n, alpha).unwrap();
        let g = analytic_propagator(&params, tau).unwrap();
        let rank_one = intensity_wstate(&g, &c).unwrap();
        let bilinear = intensity_via_correlations(&g, &InputField::WState(c.clone())).unwrap();
        let integral = intensity_via_integral(&c, &params, tau, DEFAULT_QUADRATURE_NODES).unwrap();
        prop_assert!(max_abs_diff(&rank_one, &bilinear) < 1e-12);
        prop_assert!(max_abs_diff(&rank_one, &integral) < 1e-8);
    }

    #[test]
    fn photon_number_conserved(seed in any::<u64>(), n in 2usize..24, alpha in 0.0f64..2.0, tau in 0.0f64..30.0) {
        let mut rng = seeded(seed);
        let c = random_profile(&mut rng, n);
        let g = numeric_propagator(&LatticeParams::new(n, alpha).unwrap(), tau).unwrap();
        let total: f64 = intensity_wstate(&g, &c).unwrap().iter().sum();
        prop_assert!((total - 1.0).abs() < 1e-10);
        let occ: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..3.0)).collect();
        let sum_in: f64 = occ.iter().sum();
        let out: f64 = intensity_incoherent(&g, &OccupationList::new(occ).unwrap()).unwrap().iter().sum();
        prop_assert!((out - sum_in).abs() < 1e-10 * (1.0 + sum_in));
    }

    #[test]
    fn approximation_exact_at_period_multiples(seed in any::<u64>(), m in 0u32..3, alpha in 0.1f64..2.0) {
        let n = 12;
        let c = random_profile(&mut seeded(seed), n);
        let params = LatticeParams::new(n, alpha).unwrap();
        let tau = bloch_period(alpha).unwrap() * m as f64;
        let exact = intensity_wstate(&analytic_propagator(&params, tau).unwrap(), &c).unwrap();
        let approx = approx_intensity(&c, &params, tau).unwrap();
        prop_assert!(max_abs_diff(&exact, &approx) < 1e-12);
    }
}

#[test]
fn wider_gaussians_follow_the_drift_law_better() {
    let params = LatticeParams::new(26, 0.5).unwrap();
    let tau = bloch_period(0.5).unwrap() / 2.0;
    let g = analytic_propagator(&params, tau).unwrap();
    let errors: Vec<f64> = [1.8, 3.6, 7.2]
        .iter()
        .map(|&sigma| {
            let c = gaussian_profile(26, 13.0, sigma, ProfileKind::WState).unwrap();
            l1(
                &intensity_wstate(&g, &c).unwrap(),
                &approx_intensity(&c, &params, tau).unwrap(),
            )
        })
        .collect();
    assert!(errors[0] > errors[1] && errors[1] > errors[2], "{errors:?}");
}

#[test]
fn approximation_tracks_exact_over_two_periods() {
    let params = LatticeParams::new(26, 0.5).unwrap();
    let c = gaussian_profile(26, 13.0, 3.6, ProfileKind::WState).unwrap();
    let period = bloch_period(0.5).unwrap();
    for i in 0..=64 {
        let tau = 2.0 * period * i as f64 / 64.0;
        let exact = intensity_wstate(&analytic_propagator(&params, tau).unwrap(), &c).unwrap();
        let approx = approx_intensity(&c, &params, tau).unwrap();
        assert!(l1(&exact, &approx) < 0.15, "tau={tau}");
    }
}

#[test]
fn incoherent_input_loses_the_oscillation() {
    let c = cascade26();
    let occ = OccupationList::from_populations(&c);
    let params = LatticeParams::new(26, 0.5).unwrap();
    let g0 = numeric_propagator(&params, 0.0).unwrap();
    let w0 = intensity(&g0, &InputField::WState(c.clone())).unwrap();
    let i0 = intensity(&g0, &InputField::Incoherent(occ.clone())).unwrap();
    assert!(max_abs_diff(&w0, &i0) < 1e-12);
    let g = numeric_propagator(&params, TAU).unwrap();
    let w = intensity(&g, &InputField::WState(c)).unwrap();
    let inc = intensity(&g, &InputField::Incoherent(occ)).unwrap();
    assert!(max_abs_diff(&w, &inc) > 0.01);
}

#[test]
fn alternating_phase_mask_reverses_the_drift() {
    let c = cascade26();
    let phases: Vec<f64> = (1..=26).map(|p| p as f64 * PI).collect();
    let flipped = apply_phase_mask(&c, &phases).unwrap();
    let params = LatticeParams::new(26, 0.5).unwrap();
    let g = numeric_propagator(&params, TAU).unwrap();
    let a = intensity_wstate(&g, &c).unwrap();
    let b = intensity_wstate(&g, &flipped).unwrap();
    assert!(max_abs_diff(&a, &b) > 0.01);
    let centroid = |v: &[f64]| {
        v.iter()
            .enumerate()
            .map(|(i, x)| (i + 1) as f64 * x)
            .sum::<f64>()
    };
    assert!(centroid(&a) > 13.5 && centroid(&b) < 13.5);
}
