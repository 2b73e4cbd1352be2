use approx::assert_abs_diff_eq;
use catspin::spin::*;
use num_complex::Complex64;
use std::f64::consts::PI;

fn brute_force_overlap(a: &CssParams, b: &CssParams, n: usize) -> Complex64 {
    let sa = css_state(a, n).unwrap();
    let sb = css_state(b, n).unwrap();
    sa.inner(&sb).unwrap()
}

#[test]
fn north_pole_css_is_all_ground() {
    let s = css_state(&CssParams::new(0.0, 0.0).unwrap(), 5).unwrap();
    assert_abs_diff_eq!(s.amplitudes()[0].re, 1.0, epsilon = 1e-15);
    for a in &s.amplitudes()[1..] {
        assert_eq!(a.norm(), 0.0);
    }
}

#[test]
fn equatorial_css_two_atoms() {
    let s = css_state(&CssParams::equatorial(0.0), 2).unwrap();
    let expected = [0.5, 1.0 / 2f64.sqrt(), 0.5];
    for (a, e) in s.amplitudes().iter().zip(expected) {
        assert_abs_diff_eq!(a.re, e, epsilon = 1e-14);
        assert_abs_diff_eq!(a.im, 0.0, epsilon = 1e-14);
    }
}

#[test]
fn css_norm_is_one_up_to_large_n() {
    for &n in &[1usize, 48, 1000, 2000] {
        for &(theta, phi) in &[(0.3, 1.1), (PI / 2.0, 0.0), (2.9, 4.2), (PI, 0.7)] {
            let s = css_state(&CssParams::new(theta, phi).unwrap(), n).unwrap();
            assert_abs_diff_eq!(s.norm_sqr(), 1.0, epsilon = 1e-12);
        }
    }
}

#[test]
fn south_pole_css_is_top_rung() {
    let s = css_state(&CssParams::new(PI, 1.3).unwrap(), 7).unwrap();
    assert_abs_diff_eq!(s.amplitudes()[7].norm(), 1.0, epsilon = 1e-14);
}

#[test]
fn self_overlap_is_one() {
    let p = CssParams::new(1.1, 2.3).unwrap();
    let ov = css_overlap(&p, &p, 37).unwrap();
    assert_abs_diff_eq!(ov.re, 1.0, epsilon = 1e-12);
    assert_abs_diff_eq!(ov.im, 0.0, epsilon = 1e-12);
}

#[test]
fn antipodal_equatorial_pair_is_orthogonal() {
    let a = CssParams::equatorial(0.0);
    let b = CssParams::equatorial(PI);
    let ov = css_overlap(&a, &b, 2).unwrap();
    assert!(ov.norm() < 1e-14);
}

#[test]
fn closed_form_overlap_matches_vectors() {
    let cases = [
        ((0.4, 0.9), (1.7, 5.1)),
        ((2.2, 3.3), (0.1, 0.2)),
        ((PI / 2.0, 1.0), (PI / 2.0, 2.0)),
        ((0.8, 6.0), (2.9, 0.05)),
    ];
    for n in [1usize, 8, 16, 33, 64] {
        for &((ta, pa), (tb, pb)) in &cases {
            let a = CssParams::new(ta, pa).unwrap();
            let b = CssParams::new(tb, pb).unwrap();
            let closed = css_overlap(&a, &b, n).unwrap();
            let brute = brute_force_overlap(&a, &b, n);
            assert!(
                (closed - brute).norm() < 1e-12,
                "N={n}: closed {closed} vs brute {brute}"
            );
        }
    }
}

#[test]
fn south_pole_overlap_matches_vectors() {
    let a = CssParams::new(PI, 0.0).unwrap();
    let b = CssParams::new(2.0, 1.5).unwrap();
    for n in [3usize, 10] {
        let closed = css_overlap(&a, &b, n).unwrap();
        let brute = brute_force_overlap(&a, &b, n);
        assert!((closed - brute).norm() < 1e-12);
        let closed_rev = css_overlap(&b, &a, n).unwrap();
        assert!((closed_rev - brute.conj()).norm() < 1e-12);
    }
}

#[test]
fn equatorial_quasi_orthogonality_sharpens_with_n() {
    let a = CssParams::equatorial(0.0);
    let b = CssParams::equatorial(2.0 * PI / 3.0);
    let mut prev = f64::INFINITY;
    for n in [4usize, 8, 16, 32, 64, 128] {
        let mag = css_overlap(&a, &b, n).unwrap().norm();
        assert!(mag < prev, "overlap must decrease with N");
        prev = mag;
    }
}

#[test]
fn equatorial_overlap_closed_form() {
    for n in [5usize, 20] {
        for delta in [0.3, 1.0, 2.5] {
            let a = CssParams::equatorial(delta);
            let b = CssParams::equatorial(0.0);
            let expected = css_overlap(&a, &b, n).unwrap();
            let got = equatorial_overlap(-delta, n);
            // ⟨φ_a|φ_b⟩ with δ = φ_a − φ_b
            assert!((got - expected.conj()).norm() < 1e-12 || (got - expected).norm() < 1e-12);
        }
    }
}

#[test]
fn expectation_moments_of_equator_css() {
    let s = css_state(&CssParams::equatorial(0.0), 1000).unwrap();
    let mean = expectation_ne(&s, 1);
    let second = expectation_ne(&s, 2);
    assert_abs_diff_eq!(mean, 500.0, epsilon = 1e-9);
    assert_abs_diff_eq!(second - mean * mean, 250.0, epsilon = 1e-6);

    let ground = css_state(&CssParams::new(0.0, 0.0).unwrap(), 10).unwrap();
    assert_eq!(expectation_ne(&ground, 3), 0.0);
}

#[test]
fn husimi_peaks_at_the_css_orientation() {
    let params = CssParams::new(1.2, 2.6).unwrap();
    let s = css_state(&params, 48).unwrap();
    let q = husimi_q(&s, 120, 240).unwrap();
    let (th, ph) = q.argmax();
    assert!((th - params.theta).abs() < PI / 120.0 + 1e-9);
    assert!((ph - params.phi).abs() < 2.0 * PI / 240.0 + 1e-9);
}

#[test]
fn husimi_integrates_to_one() {
    let s = css_state(&CssParams::equatorial(1.0), 48).unwrap();
    let q = husimi_q(&s, 200, 400).unwrap();
    assert_abs_diff_eq!(q.integral(), 1.0, epsilon = 1e-3);
}

#[test]
fn husimi_of_two_component_cat_shows_two_lobes() {
    let target = catspin::cat::phase_catalog(2, 1).unwrap();
    let s = catspin::cat::build_mcss(&target, 48).unwrap();
    let q = husimi_q(&s, 80, 160).unwrap();

    let sample = |phi: f64| {
        let i = ((PI / 2.0) / (PI / 80.0) - 0.5).round() as usize;
        let k = ((phi.rem_euclid(2.0 * PI)) / (2.0 * PI / 160.0) - 0.5).round() as usize % 160;
        q.values[i * 160 + k]
    };
    let lobe0 = sample(target.phi0);
    let lobe1 = sample(target.phi0 + PI);
    let trough = sample(target.phi0 + PI / 2.0);
    assert_abs_diff_eq!(lobe0, lobe1, epsilon = 1e-6 * lobe0.max(1.0));
    assert!(lobe0 > 10.0 * trough);
}
