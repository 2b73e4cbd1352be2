use approx::assert_abs_diff_eq;
use catspin::cat::*;
use catspin::dynamics::{cat_time_scan, evolve, ScanSettings};
use catspin::hamiltonian::h_kerr;
use catspin::spin::{css_overlap, css_state, equatorial_overlap, CssParams};
use num_complex::Complex64;
use std::f64::consts::PI;

#[test]
fn one_component_target_is_a_single_css() {
    let target = CatTarget::new(1, 0.9, vec![0.0]).unwrap();
    let s = build_mcss(&target, 32).unwrap();
    let css = css_state(&CssParams::equatorial(0.9), 32).unwrap();
    assert_abs_diff_eq!(s.fidelity(&css).unwrap(), 1.0, epsilon = 1e-12);
}

#[test]
fn catalog_two_component_cat_matches_direct_superposition() {
    let target = phase_catalog(2, 1).unwrap();
    let n = 48;
    let s = build_mcss(&target, n).unwrap();

    let a = css_state(&CssParams::equatorial(0.0), n).unwrap();
    let b = css_state(&CssParams::equatorial(PI), n).unwrap();
    let w0 = Complex64::from_polar(1.0, -PI / 4.0);
    let w1 = Complex64::from_polar(1.0, PI / 4.0);
    let amps: Vec<Complex64> = a
        .amplitudes()
        .iter()
        .zip(b.amplitudes())
        .map(|(x, y)| w0 * x + w1 * y)
        .collect();
    let direct = catspin::spin::SpinState::from_amplitudes(n, amps).unwrap();
    assert_abs_diff_eq!(s.fidelity(&direct).unwrap(), 1.0, epsilon = 1e-12);
}

#[test]
fn component_overlap_correction_is_tiny_for_n48() {
    // pre-renormalization norm of (1/sqrt(m)) sum_k e^{i a_k}|k>:
    // 1 + (1/m) sum_{k != l} e^{i(a_l - a_k)} <k|l>
    for m in 2..=6usize {
        let variants = catalog_variants(m);
        for v in 1..=variants {
            let target = phase_catalog(m, v).unwrap();
            let mut norm_sqr = 0.0;
            for k in 0..m {
                for l in 0..m {
                    let g = equatorial_overlap(2.0 * PI * (k as f64 - l as f64) / m as f64, 48);
                    norm_sqr += (Complex64::from_polar(
                        1.0,
                        target.alphas[l] - target.alphas[k],
                    ) * g)
                        .re
                        / m as f64;
                }
            }
            assert!(
                (norm_sqr - 1.0).abs() < 1e-6,
                "m={m} v={v}: norm^2 = {norm_sqr}"
            );
        }
    }
}

#[test]
fn self_fidelity_is_one_and_phases_are_recovered() {
    let target = phase_catalog(4, 1).unwrap();
    let s = build_mcss(&target, 48).unwrap();
    let fit = optimal_phase_fidelity(&s, 4, target.phi0).unwrap();
    assert!((fit.fidelity - 1.0).abs() < 1e-10, "F = {}", fit.fidelity);
    // recovered phases match modulo a common offset
    let offset = fit.alphas[0] - target.alphas[0];
    for (got, want) in fit.alphas.iter().zip(&target.alphas) {
        let diff = (got - want - offset).rem_euclid(2.0 * PI);
        let diff = diff.min(2.0 * PI - diff);
        assert!(diff < 1e-6, "phase mismatch {diff}");
    }
}

#[test]
fn single_css_scores_half_against_two_components() {
    let s = css_state(&CssParams::equatorial(0.3), 48).unwrap();
    let fit = optimal_phase_fidelity(&s, 2, 0.3).unwrap();
    assert!((fit.fidelity - 0.5).abs() < 1e-6, "F = {}", fit.fidelity);
}

#[test]
fn analytic_phases_beat_random_phases() {
    let n = 48;
    let s = {
        let h = h_kerr(1.0, n).unwrap();
        let css = css_state(&CssParams::equatorial(0.0), n).unwrap();
        evolve(&css, &h, 0.37).unwrap()
    };
    let m = 3;
    let phi0 = 0.2;
    let best = optimal_phase_fidelity(&s, m, phi0).unwrap();

    // deterministic xorshift draws
    let mut state = 0x9e3779b97f4a7c15u64;
    let mut rand01 = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state >> 11) as f64 / (1u64 << 53) as f64
    };
    let r = {
        let mut v = Vec::new();
        for _ in 0..100 {
            v.push([rand01(), rand01(), rand01()]);
        }
        v
    };
    for draw in r {
        let alphas: Vec<f64> = draw.iter().map(|x| x * 2.0 * PI).collect();
        // fidelity with fixed phases: |<T|psi>|^2 / <T|T>
        let target = CatTarget::new(m, phi0, alphas.clone()).unwrap();
        let t_state = build_mcss(&target, n).unwrap();
        let f = t_state.fidelity(&s).unwrap();
        assert!(
            f <= best.fidelity + 1e-12,
            "random draw beat the analytic maximizer: {f} > {}",
            best.fidelity
        );
    }
}

#[test]
fn rotationally_symmetric_input_is_azimuth_independent() {
    // a single Dicke rung carries no azimuthal reference
    let n = 32;
    let mut amps = vec![Complex64::new(0.0, 0.0); n + 1];
    amps[n / 2] = Complex64::new(1.0, 0.0);
    let s = catspin::spin::SpinState::from_amplitudes(n, amps).unwrap();
    let f0 = optimal_phase_fidelity(&s, 2, 0.0).unwrap().fidelity;
    for k in 1..8 {
        let f = optimal_phase_fidelity(&s, 2, k as f64 * 0.11).unwrap().fidelity;
        assert!((f - f0).abs() < 1e-8);
    }
}

#[test]
fn global_phase_invariance() {
    let target = phase_catalog(3, 2).unwrap();
    let s = build_mcss(&target, 40).unwrap();
    let rotated = catspin::spin::SpinState::from_amplitudes(
        40,
        s.amplitudes()
            .iter()
            .map(|a| a * Complex64::from_polar(1.0, 1.234))
            .collect(),
    )
    .unwrap();
    let f1 = fidelity_optimize(&s, 3, 32).unwrap().fidelity;
    let f2 = fidelity_optimize(&rotated, 3, 32).unwrap().fidelity;
    assert!((f1 - f2).abs() < 1e-12);
}

#[test]
fn catalog_covers_the_documented_variants() {
    assert_eq!(catalog_variants(2), 1);
    assert_eq!(catalog_variants(3), 4);
    assert_eq!(catalog_variants(4), 1);
    assert_eq!(catalog_variants(5), 2);
    assert_eq!(catalog_variants(6), 1);
    assert!(phase_catalog(7, 1).is_err());
    assert!(phase_catalog(3, 5).is_err());

    let two = phase_catalog(2, 1).unwrap();
    assert_abs_diff_eq!(two.alphas[0], -PI / 4.0);
    assert_abs_diff_eq!(two.alphas[1], PI / 4.0);
    let six = phase_catalog(6, 1).unwrap();
    assert_abs_diff_eq!(six.alphas[1], -11.0 * PI / 6.0);
    assert_abs_diff_eq!(six.alphas[4], -8.0 * PI / 6.0);
}

#[test]
fn every_catalog_entry_is_self_consistent() {
    for m in 2..=6usize {
        for v in 1..=catalog_variants(m) {
            let target = phase_catalog(m, v).unwrap();
            let s = build_mcss(&target, 48).unwrap();
            let f = optimal_phase_fidelity(&s, m, target.phi0).unwrap().fidelity;
            // the analytic phase fit is exact only for orthogonal components;
            // at N = 48 the residual neighbor overlap reaches |cos(pi/6)|^48
            // for m = 6 and costs a few parts in 1e7
            assert!((f - 1.0).abs() < 1e-6, "m={m} v={v}: F={f}");
        }
    }
}

#[test]
fn kerr_revival_and_mixture_discrimination() {
    let n = 48;
    let chi = 1.0;
    let h = h_kerr(chi, n).unwrap();
    let css = css_state(&CssParams::equatorial(0.0), n).unwrap();

    let report = revival_test(&css, &h, (1.8 * PI / chi, 2.2 * PI / chi), 128, 0.999).unwrap();
    assert!(report.passed, "revival fidelity {}", report.fidelity);
    assert!((report.t_revival - 2.0 * PI / chi).abs() < 0.02 / chi);

    // a classical +-eta mixture never revives: its best single-CSS overlap
    // stays near 1/2
    let best_mixture_fidelity = (0..256)
        .map(|k| {
            let probe = CssParams::equatorial(2.0 * PI * k as f64 / 256.0);
            let fa = css_overlap(&probe, &CssParams::equatorial(0.0), n)
                .unwrap()
                .norm_sqr();
            let fb = css_overlap(&probe, &CssParams::equatorial(PI), n)
                .unwrap()
                .norm_sqr();
            0.5 * (fa + fb)
        })
        .fold(0.0, f64::max);
    assert!((best_mixture_fidelity - 0.5).abs() < 0.01);
}

#[test]
fn second_kerr_interval_turns_the_cat_back_into_a_css() {
    let n = 48;
    let chi = 1.0;
    let h = h_kerr(chi, n).unwrap();
    let css = css_state(&CssParams::equatorial(0.0), n).unwrap();
    let t2 = 0.5 * PI / chi; // two-component time of the literal Kerr map
    let cat = evolve(&css, &h, t2).unwrap();
    let f_cat = fidelity_optimize(&cat, 2, 64).unwrap().fidelity;
    assert!(f_cat > 0.999);
    let back = evolve(&cat, &h, t2).unwrap();
    let f_css = fidelity_optimize(&back, 1, 256).unwrap().fidelity;
    assert!(f_css > 0.999, "second interval fidelity {f_css}");
}

#[test]
fn scan_reports_a_monotone_safe_grid_maximum() {
    // the refined time can only improve on the best grid sample
    let n = 32;
    let h = h_kerr(1.0, n).unwrap();
    let s = css_state(&CssParams::equatorial(0.0), n).unwrap();
    let scan = cat_time_scan(&s, &h, 2, (0.3, 2.5), 64, ScanSettings::default()).unwrap();
    let grid_best = scan
        .fidelity_trace
        .iter()
        .map(|&(_, f)| f)
        .fold(f64::NEG_INFINITY, f64::max);
    assert!(scan.fidelity >= grid_best - 1e-12);
}
