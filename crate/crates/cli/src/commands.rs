//! Subcommand implementations. Each one validates through the owning library
//! module, runs, and writes its artifact into the output directory.

use catspin::cat::single_css;
use catspin::decoherence::{
    depletion_loss, p_bbr_survival, rydberg_population, LossParams, Regime,
};
use catspin::dynamics::{cat_time_scan, default_window, evolve as evolve_state, ScanSettings};
use catspin::geometry::build_lattice;
use catspin::hamiltonian::{
    chi2_resonant, h_exact, h_kerr, h_resonant, h_resonant_expansion, DiagonalHamiltonian,
    DriveParams,
};
use catspin::lindblad::{blockade_radius, profile as lindblad_profile, OpenSystemSpec};
use catspin::manybody::perturbation_report;
use catspin::selftest;
use catspin::spin::husimi_q;

use crate::config::*;
use crate::output::OutputCtx;

#[derive(Debug)]
pub enum CmdError {
    Physics(catspin::Error),
    Io(std::io::Error),
    /// Acceptance failures from `selftest`; carries the failed count.
    Selftest(usize),
}

impl std::fmt::Display for CmdError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CmdError::Physics(e) => write!(f, "{e}"),
            CmdError::Io(e) => write!(f, "io: {e}"),
            CmdError::Selftest(n) => write!(f, "{n} acceptance criteria failed"),
        }
    }
}

impl From<catspin::Error> for CmdError {
    fn from(e: catspin::Error) -> Self {
        CmdError::Physics(e)
    }
}

impl From<std::io::Error> for CmdError {
    fn from(e: std::io::Error) -> Self {
        CmdError::Io(e)
    }
}

pub type CmdResult = Result<(), CmdError>;

/// Builds the selected ladder Hamiltonian plus its quadratic coefficient
/// (used to convert scaled times into absolute ones).
fn build_hamiltonian(
    kind: HamiltonianKind,
    n: usize,
    chi: f64,
    omega_mhz: f64,
    delta_mhz: f64,
) -> catspin::Result<(DiagonalHamiltonian, f64)> {
    match kind {
        HamiltonianKind::Kerr => Ok((h_kerr(chi, n)?, chi)),
        HamiltonianKind::Exact => {
            let drive = DriveParams::from_mhz(omega_mhz, delta_mhz)?;
            let chi2 = drive.rabi.powi(4) / (16.0 * drive.detuning.abs().powi(3));
            Ok((h_exact(&drive, n)?, chi2))
        }
        HamiltonianKind::Resonant => {
            let drive = DriveParams::from_mhz(omega_mhz, delta_mhz)?;
            Ok((h_resonant(drive.rabi, n)?, chi2_resonant(drive.rabi, n)))
        }
        HamiltonianKind::ResonantExpansion => {
            let drive = DriveParams::from_mhz(omega_mhz, delta_mhz)?;
            Ok((
                h_resonant_expansion(drive.rabi, n)?,
                chi2_resonant(drive.rabi, n),
            ))
        }
    }
}

pub fn cmd_evolve(p: &EvolveParams, out: &OutputCtx) -> CmdResult {
    let (h, chi2) = build_hamiltonian(p.hamiltonian, p.n_atoms, p.chi, p.omega_mhz, p.delta_mhz)?;
    let css = single_css(p.phi0, p.n_atoms)?;
    for (idx, &scaled) in p.scaled_times.iter().enumerate() {
        let t = scaled / chi2.abs();
        let state = evolve_state(&css, &h, t)?;
        let rows: Vec<Vec<f64>> = state
            .amplitudes()
            .iter()
            .enumerate()
            .map(|(ne, a)| vec![ne as f64, a.re, a.im, a.norm_sqr()])
            .collect();
        let path = out.write_table(
            &format!("state_{idx:02}"),
            &["n_e", "re", "im", "prob"],
            &rows,
        )?;
        println!("wrote {} (chi2*t = {scaled}, t = {t:.6e} s)", path.display());

        if p.husimi {
            let field = husimi_q(&state, p.theta_samples, p.phi_samples)?;
            let mut rows = Vec::with_capacity(p.theta_samples * p.phi_samples);
            for (i, &theta) in field.thetas.iter().enumerate() {
                for (j, &phi) in field.phis.iter().enumerate() {
                    rows.push(vec![theta, phi, field.values[i * field.n_phi + j]]);
                }
            }
            let path = out.write_table(
                &format!("husimi_{idx:02}"),
                &["theta", "phi", "q"],
                &rows,
            )?;
            println!("wrote {}", path.display());
        }
    }
    Ok(())
}

pub fn cmd_catscan(p: &CatscanParams, out: &OutputCtx) -> CmdResult {
    let (h, chi2) = build_hamiltonian(p.hamiltonian, p.n_atoms, p.chi, p.omega_mhz, p.delta_mhz)?;
    let css = single_css(0.0, p.n_atoms)?;
    let settings = ScanSettings {
        phi0_samples: p.phi0_samples,
        refine_rel_tol: p.refine_rel_tol,
    };
    let mut results = Vec::new();
    for &m in &p.m_list {
        let window = default_window(&h, m)?;
        let scan = cat_time_scan(&css, &h, m, window, p.samples, settings)?;
        println!(
            "m = {m:2}: chi2*t = {:.4}, F = {:.6}",
            chi2.abs() * scan.t_best,
            scan.fidelity
        );
        results.push(serde_json::json!({
            "m": m,
            "t_best": scan.t_best,
            "chi2_t": chi2.abs() * scan.t_best,
            "fidelity": scan.fidelity,
            "phi0": scan.phi0,
            "alphas": scan.alphas,
        }));
    }
    let path = out.write_json("catscan.json", &serde_json::json!({ "results": results }))?;
    println!("wrote {}", path.display());
    Ok(())
}

pub fn cmd_loss(p: &LossSweepParams, out: &OutputCtx) -> CmdResult {
    let delta = 2.0 * std::f64::consts::PI * p.delta_mhz * 1e6;
    let css = single_css(0.0, p.n_atoms)?;
    let settings = ScanSettings {
        phi0_samples: p.phi0_samples,
        refine_rel_tol: 1e-3,
    };
    let mut rows = Vec::new();
    for &ratio in &p.ratios {
        let drive = DriveParams::new(ratio * delta, delta)?;
        let h = h_exact(&drive, p.n_atoms)?;
        let window = default_window(&h, p.m)?;
        let scan = cat_time_scan(&css, &h, p.m, window, p.samples, settings)?;
        let params = LossParams::new(p.gamma_r, p.gamma_bbr, p.n_atoms, drive)?;
        let p_r = rydberg_population(Regime::Weak, &params, p.n_atoms as f64 / 2.0)?;
        let loss = depletion_loss(p_r, p.gamma_r, scan.t_best)?;
        let bbr = p_bbr_survival(p_r, p.gamma_bbr, scan.t_best)?;
        rows.push(vec![ratio, scan.t_best, scan.fidelity, p_r, loss, bbr.p0]);
    }
    let path = out.write_table(
        "loss",
        &["omega_over_delta", "t_best", "fidelity", "p_r", "loss", "p_bbr0"],
        &rows,
    )?;
    println!("wrote {}", path.display());
    Ok(())
}

pub fn cmd_profile(p: &ProfileParams, out: &OutputCtx) -> CmdResult {
    let drive = DriveParams::new(p.omega, p.delta)?;
    let spec = OpenSystemSpec {
        n_atoms: p.n_atoms,
        separation: 1.0,
        drive,
        c6: p.c6,
        gamma_r: p.gamma_r,
    };
    spec.validate()?;
    let rb = blockade_radius(&drive, p.c6, p.regime)?;
    if p.r_steps < 2 {
        return Err(catspin::Error::Validation("r_steps must be >= 2".into()).into());
    }
    let rs: Vec<f64> = (0..p.r_steps)
        .map(|i| {
            rb * (p.r_min_rb
                + (p.r_max_rb - p.r_min_rb) * i as f64 / (p.r_steps - 1) as f64)
        })
        .collect();
    let curve = lindblad_profile(&spec, &rs, p.r_ref_rb * rb, p.regime)?;
    let rows: Vec<Vec<f64>> = curve.iter().map(|&(x, u)| vec![x, u]).collect();
    let path = out.write_table("profile", &["r_over_rb", "u_over_u0"], &rows)?;
    println!("wrote {}", path.display());
    Ok(())
}

pub fn cmd_perturb(p: &PerturbParams, out: &OutputCtx) -> CmdResult {
    let geom = build_lattice(p.lattice, p.spacing, p.extent, p.c6)?;
    if geom.n_atoms() > 12 {
        return Err(catspin::Error::Validation(format!(
            "exact oracle limited to 12 atoms, lattice has {}",
            geom.n_atoms()
        ))
        .into());
    }
    let drive = DriveParams::new(p.omega, p.delta)?;
    let report = perturbation_report(&drive, &geom)?;
    let low = report.u2 + report.u4;
    let value = serde_json::json!({
        "n_atoms": geom.n_atoms(),
        "u2": report.u2,
        "u4": report.u4,
        "u6": report.u6,
        "oracle": report.oracle,
        "residual_u2_u4": (low - report.oracle).abs(),
        "residual_u2_u4_u6": (low + report.u6 - report.oracle).abs(),
    });
    let path = out.write_json("perturb.json", &value)?;
    println!("wrote {}", path.display());
    Ok(())
}

pub fn cmd_adiabatic(p: &AdiabaticParams, out: &OutputCtx) -> CmdResult {
    let ramp = catspin::adiabatic::RampProfile::shaped(
        p.shape,
        p.duration,
        (p.omega_start, p.omega_end),
        (p.delta_start, p.delta_end),
        p.n_e,
    )?;
    let result = catspin::adiabatic::integrate_dressed(&ramp, p.branch, p.steps)?;
    let rows: Vec<Vec<f64>> = result
        .trace
        .iter()
        .map(|&(t, lo, hi, diag)| vec![t, lo, hi, diag])
        .collect();
    let path = out.write_table(
        "adiabatic",
        &["t", "p_lower", "p_upper", "diagnostic"],
        &rows,
    )?;
    println!(
        "scattered {:.3e} (diagnostic bound {:.3e}); wrote {}",
        result.population_scattered,
        result.max_diagnostic,
        path.display()
    );
    Ok(())
}

pub fn cmd_selftest(only: &[usize]) -> CmdResult {
    let criteria: [fn() -> selftest::CriterionResult; 11] = [
        selftest::criterion_1,
        selftest::criterion_2,
        selftest::criterion_3,
        selftest::criterion_4,
        selftest::criterion_5,
        selftest::criterion_6,
        selftest::criterion_7,
        selftest::criterion_8,
        selftest::criterion_9,
        selftest::criterion_10,
        selftest::criterion_11,
    ];
    let mut failed = 0usize;
    for (i, criterion) in criteria.iter().enumerate() {
        if !only.is_empty() && !only.contains(&(i + 1)) {
            continue;
        }
        let result = criterion();
        println!("{} — {}", if result.passed { "PASS" } else { "FAIL" }, result.label);
        for line in &result.details {
            println!("    {line}");
        }
        if !result.passed {
            failed += 1;
        }
    }
    if failed > 0 {
        Err(CmdError::Selftest(failed))
    } else {
        Ok(())
    }
}
