use approx::assert_abs_diff_eq;
use catspin::hamiltonian::DriveParams;
use catspin::lindblad::*;
use num_complex::Complex64;

fn weak_pair(r: f64) -> OpenSystemSpec {
    // scaled units Δ = 1, R_b = 1
    OpenSystemSpec {
        n_atoms: 2,
        separation: r,
        drive: DriveParams::new(0.1, 1.0).unwrap(),
        c6: 1.0,
        gamma_r: 1e-3,
    }
}

fn mixing_pair() -> OpenSystemSpec {
    // strong decay and near-resonant drive so relaxation is fast
    OpenSystemSpec {
        n_atoms: 2,
        separation: 1.0,
        drive: DriveParams::new(1.0, 0.3).unwrap(),
        c6: 1.0,
        gamma_r: 0.6,
    }
}

#[test]
fn superoperator_dimensions() {
    let two = build_generator(&weak_pair(1.0)).unwrap();
    assert_eq!(two.dim, 4);
    assert_eq!(two.matrix.nrows(), 16);

    let mut spec = weak_pair(1.0);
    spec.n_atoms = 3;
    let three = build_generator(&spec).unwrap();
    assert_eq!(three.dim, 8);
    assert_eq!(three.matrix.nrows(), 64);

    spec.n_atoms = 4;
    assert!(build_generator(&spec).is_err());
}

#[test]
fn generator_annihilates_the_trace_functional() {
    for spec in [weak_pair(0.7), mixing_pair()] {
        let gen = build_generator(&spec).unwrap();
        let d = gen.dim;
        let scale = gen.matrix.iter().map(|z| z.norm()).fold(0.0, f64::max);
        for col in 0..d * d {
            let trace_action: Complex64 = (0..d).map(|i| gen.matrix[(i * d + i, col)]).sum();
            assert!(
                trace_action.norm() < 1e-12 * scale,
                "column {col}: trace action {trace_action}"
            );
        }
    }
}

#[test]
fn undriven_atoms_relax_to_all_e() {
    let spec = OpenSystemSpec {
        drive: DriveParams::new(0.0, 1.0).unwrap(),
        ..weak_pair(0.8)
    };
    let gen = build_generator(&spec).unwrap();
    let rho = steady_state(&gen).unwrap();
    assert_abs_diff_eq!(rho[(0, 0)].re, 1.0, epsilon = 1e-10);
    let off: f64 = rho.iter().map(|z| z.norm()).sum::<f64>() - rho[(0, 0)].norm();
    assert!(off < 1e-10);
}

#[test]
fn steady_state_is_a_valid_density_matrix_with_small_residual() {
    for spec in [weak_pair(0.3), weak_pair(1.5), mixing_pair()] {
        let gen = build_generator(&spec).unwrap();
        let rho = steady_state(&gen).unwrap();
        check_density_matrix(&rho).unwrap();
    }
    let mut three = weak_pair(0.5);
    three.n_atoms = 3;
    let gen = build_generator(&three).unwrap();
    check_density_matrix(&steady_state(&gen).unwrap()).unwrap();
}

#[test]
fn steady_state_matches_long_time_propagation() {
    let spec = mixing_pair();
    let gen = build_generator(&spec).unwrap();
    let rho_ss = steady_state(&gen).unwrap();

    let d = gen.dim;
    let mut rho0 = nalgebra::DMatrix::zeros(d, d);
    rho0[(0, 0)] = Complex64::new(1.0, 0.0);
    let rho_t = propagate(&gen, &rho0, 50.0 / spec.gamma_r).unwrap();
    check_density_matrix(&rho_t).unwrap();
    let dist = trace_distance(&rho_ss, &rho_t);
    assert!(dist < 1e-6, "trace distance {dist:.3e}");
}

#[test]
fn propagation_preserves_the_state_over_zero_time() {
    let gen = build_generator(&mixing_pair()).unwrap();
    let rho = steady_state(&gen).unwrap();
    let again = propagate(&gen, &rho, 0.0).unwrap();
    assert!(trace_distance(&rho, &again) < 1e-12);
}

#[test]
fn trace_distance_basics() {
    let d = 4;
    let mut a = nalgebra::DMatrix::zeros(d, d);
    a[(0, 0)] = Complex64::new(1.0, 0.0);
    let mut b = nalgebra::DMatrix::zeros(d, d);
    b[(1, 1)] = Complex64::new(1.0, 0.0);
    assert_abs_diff_eq!(trace_distance(&a, &b), 1.0, epsilon = 1e-12);
    assert_abs_diff_eq!(trace_distance(&a, &a), 0.0, epsilon = 1e-15);
}

#[test]
fn blockade_radius_formulas() {
    let drive = DriveParams::new(2.0, 1.0).unwrap();
    assert_abs_diff_eq!(
        blockade_radius(&drive, 1.0, DressingRegime::Weak).unwrap(),
        1.0,
        epsilon = 1e-15
    );
    assert_abs_diff_eq!(
        blockade_radius(&drive, 64.0, DressingRegime::Strong).unwrap(),
        2f64.powf(5.0 / 6.0),
        epsilon = 1e-12
    );
    // the two definitions agree when Ω = Δ
    let matched = DriveParams::new(3.0, 3.0).unwrap();
    assert_abs_diff_eq!(
        blockade_radius(&matched, 7.0, DressingRegime::Weak).unwrap(),
        blockade_radius(&matched, 7.0, DressingRegime::Strong).unwrap(),
        epsilon = 1e-15
    );
    assert!(blockade_radius(&DriveParams::new(0.0, 1.0).unwrap(), 1.0, DressingRegime::Strong).is_err());
}

#[test]
fn soft_core_accommodates_the_default_lattice() {
    // Δ/2π = 20 MHz and a realistic C₆ leave at least 4 lattice sites of
    // 532 nm inside R_b/2
    let drive = DriveParams::from_mhz(0.0, 20.0).unwrap();
    let c6 = 2.0 * std::f64::consts::PI * 140.0e9 * 1e-36; // rad/s · m⁶
    let rb = blockade_radius(&drive, c6, DressingRegime::Weak).unwrap();
    assert!(rb / 2.0 >= 4.0 * 532e-9, "R_b = {rb:.3e} m");
}

#[test]
fn blockaded_normalization_is_the_collective_shift_difference() {
    let drive = DriveParams::new(0.1, 1.0).unwrap();
    let u0 = u0_blockaded(&drive, 2).unwrap();
    let e = |n: f64| 0.5 * (1.0 - (1.0 + n * 0.01f64).sqrt());
    assert_abs_diff_eq!(u0, e(2.0) - 2.0 * e(1.0), epsilon = 1e-15);
    assert!(u0 > 0.0, "repulsive for red-detuned sign convention: {u0}");
}

#[test]
fn weak_profile_has_a_flat_core_and_a_van_der_waals_tail() {
    let spec = weak_pair(1.0);
    let r_ref = 100.0;
    let rs = [0.2, 0.3, 0.4, 0.5, 0.8, 1.0, 1.5, 2.0, 3.0, 5.0, 10.0];
    let curve = profile(&spec, &rs, r_ref, DressingRegime::Weak).unwrap();

    // flat inside R_b/2 (plateau level itself is reported, not pinned)
    let plateau = curve[0].1;
    println!("weak plateau U/U0 = {plateau:.4}");
    for &(x, u) in &curve[..4] {
        assert!((u - plateau).abs() < 0.05 * plateau.abs(), "r/Rb={x}: {u} vs {plateau}");
    }

    // monotone decrease beyond the core, no peak
    for w in curve.windows(2) {
        assert!(w[1].1 <= w[0].1 + 1e-9 * plateau.abs(), "no peak in the weak regime");
    }

    // log-log slope across the tail decade
    let (x1, u1) = curve[curve.len() - 3]; // r = 3
    let (x2, u2) = curve[curve.len() - 1]; // r = 10
    let slope = (u2 / u1).ln() / (x2 / x1).ln();
    assert!((slope + 6.0).abs() < 0.2, "tail slope {slope:.3}");
}

#[test]
fn strong_dressing_grows_an_interaction_peak() {
    // the peak lives on the facilitated side, where the van der Waals shift
    // can cancel the pair detuning; with the opposite sign the same sweep
    // shows a dip instead
    let spec = OpenSystemSpec {
        drive: DriveParams::new(10.0, -1.0).unwrap(),
        ..weak_pair(1.0)
    };
    let rb = blockade_radius(&spec.drive, spec.c6, DressingRegime::Strong).unwrap();
    let rs: Vec<f64> = (1..=30).map(|k| rb * (0.2 + 0.1 * k as f64)).collect();
    let curve = profile(&spec, &rs, 100.0 * rb, DressingRegime::Strong).unwrap();
    let core = curve[0].1;
    let peak = curve.iter().map(|&(_, u)| u).fold(f64::NEG_INFINITY, f64::max);
    let peak_pos = curve
        .iter()
        .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
        .unwrap()
        .0;
    assert!(peak > core, "peak {peak} must exceed the core {core}");
    assert!(peak_pos > 0.5 && peak_pos < 2.0, "peak sits near R_b, at {peak_pos}");
}

#[test]
fn triangle_core_exceeds_the_pair_core() {
    let pair = weak_pair(0.3);
    let mut triangle = pair;
    triangle.n_atoms = 3;
    let r_ref = 100.0;
    let u_pair = interaction_energy(&pair, r_ref).unwrap();
    let u_tri = interaction_energy(&triangle, r_ref).unwrap();
    assert!(
        u_tri.u > u_pair.u,
        "triangle {:.4e} vs pair {:.4e}",
        u_tri.u,
        u_pair.u
    );
}

#[test]
fn core_level_is_insensitive_to_the_decay_rate() {
    // the plateau sits away from 1 in units of U₀ and does not drift toward 1
    // as γ shrinks; values are printed for the record
    let mut levels = Vec::new();
    for gamma_over_omega in [1e-1, 1e-2, 1e-3] {
        let mut spec = weak_pair(0.3);
        spec.gamma_r = gamma_over_omega * spec.drive.rabi;
        let e = interaction_energy(&spec, 100.0).unwrap();
        println!("γ/Ω = {gamma_over_omega:.0e}: U/U0 = {:.6}", e.ratio);
        levels.push(e.ratio);
    }
    let spread = levels.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b))
        - levels.iter().fold(f64::INFINITY, |a, &b| a.min(b));
    assert!(spread < 0.05 * levels[1].abs(), "γ-independent core, spread {spread:.3e}");
}

#[test]
fn spec_validation_rejects_bad_inputs() {
    assert!(weak_pair(0.0).validate().is_err());
    let mut spec = weak_pair(1.0);
    spec.gamma_r = 0.0;
    assert!(spec.validate().is_err());
    spec = weak_pair(1.0);
    spec.c6 = -1.0;
    assert!(spec.validate().is_err());
}
