//! Multi-component cat targets and fidelity optimization.
//!
//! An m-CSS target is an equal-weight superposition of m equatorial coherent
//! spin states spaced by 2π/m in azimuth, each carrying a component phase α_k.
//! For a fixed input state and base azimuth the optimal component phases have
//! the closed form α_k = -arg⟨ψ|CSS_k⟩; the base azimuth and the operation
//! time are found by scanning plus golden-section refinement.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{validate, Result};
use crate::optim::golden_section_max;
use crate::spin::{equatorial_overlap, ln_binomial, CssParams, SpinState};

use std::f64::consts::PI;

/// Target m-CSS: m components at azimuths φ_k = 2πk/m + φ₀ on the equator,
/// with component phases α_k.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CatTarget {
    pub m: usize,
    pub phi0: f64,
    pub alphas: Vec<f64>,
}

impl CatTarget {
    pub fn new(m: usize, phi0: f64, alphas: Vec<f64>) -> Result<Self> {
        validate(m >= 1, "m must be >= 1")?;
        validate(alphas.len() == m, "need exactly m component phases")?;
        Ok(Self { m, phi0, alphas })
    }

    pub fn component_azimuths(&self) -> Vec<f64> {
        (0..self.m)
            .map(|k| 2.0 * PI * k as f64 / self.m as f64 + self.phi0)
            .collect()
    }
}

/// Radial (azimuth-independent) amplitudes of an equatorial CSS.
pub(crate) fn equatorial_radial(n_atoms: usize) -> Vec<f64> {
    let half_n_ln2 = 0.5 * n_atoms as f64 * std::f64::consts::LN_2;
    (0..=n_atoms)
        .map(|ne| (0.5 * ln_binomial(n_atoms, ne) - half_n_ln2).exp())
        .collect()
}

/// Builds the normalized m-CSS state for the target.
pub fn build_mcss(target: &CatTarget, n_atoms: usize) -> Result<SpinState> {
    validate(target.m <= n_atoms, "m must not exceed the atom number")?;
    let r = equatorial_radial(n_atoms);
    let mut amps = vec![Complex64::new(0.0, 0.0); n_atoms + 1];
    for (k, &phi_k) in target.component_azimuths().iter().enumerate() {
        let w = Complex64::from_polar(1.0, target.alphas[k]);
        let step = Complex64::from_polar(1.0, -phi_k);
        let mut rot = Complex64::new(1.0, 0.0);
        for ne in 0..=n_atoms {
            amps[ne] += w * r[ne] * rot;
            rot *= step;
        }
    }
    // 1/sqrt(m) prefactor is absorbed by the exact renormalization
    SpinState::from_amplitudes(n_atoms, amps)
}

/// Result of a fixed-azimuth phase fit.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PhaseFit {
    pub fidelity: f64,
    pub alphas: Vec<f64>,
}

/// Best-phase fidelity of `state` against an m-CSS at base azimuth `phi0`.
///
/// Computes c_k = ⟨ψ|CSS_k⟩, takes the analytic maximizer α_k = -arg(c_k) of
/// the numerator, and evaluates F = |Σ|c_k||² / ⟨T|T⟩ with the exact Gram
/// normalization of the (non-orthogonal) component states.
pub fn optimal_phase_fidelity(state: &SpinState, m: usize, phi0: f64) -> Result<PhaseFit> {
    validate(m >= 1, "m must be >= 1")?;
    let n = state.n_atoms();
    let r = equatorial_radial(n);
    let amps = state.amplitudes();

    let mut c = Vec::with_capacity(m);
    for k in 0..m {
        let phi_k = 2.0 * PI * k as f64 / m as f64 + phi0;
        // c_k = Σ_n ψ_n* r_n e^{-i n φ_k}
        let step = Complex64::from_polar(1.0, -phi_k);
        let mut rot = Complex64::new(1.0, 0.0);
        let mut acc = Complex64::new(0.0, 0.0);
        for ne in 0..=n {
            acc += amps[ne].conj() * r[ne] * rot;
            rot *= step;
        }
        c.push(acc);
    }

    let alphas: Vec<f64> = c.iter().map(|ck| -ck.arg()).collect();
    let numerator: f64 = c.iter().map(|ck| ck.norm()).sum::<f64>();

    // ⟨T|T⟩ = Σ_kl e^{i(α_l - α_k)} ⟨CSS_k|CSS_l⟩
    let mut gram = 0.0;
    for k in 0..m {
        for l in 0..m {
            let delta = 2.0 * PI * (k as f64 - l as f64) / m as f64;
            let g = equatorial_overlap(delta, n);
            gram += (Complex64::from_polar(1.0, alphas[l] - alphas[k]) * g).re;
        }
    }

    Ok(PhaseFit {
        fidelity: numerator * numerator / gram,
        alphas,
    })
}

/// Phase fit with the base azimuth optimized as well.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AzimuthFit {
    pub fidelity: f64,
    pub phi0: f64,
    pub alphas: Vec<f64>,
}

/// Maximizes the best-phase fidelity over φ₀ ∈ [0, 2π/m) (the target is
/// m-fold symmetric in azimuth) by grid scan plus golden-section refinement.
pub fn fidelity_optimize(state: &SpinState, m: usize, phi0_samples: usize) -> Result<AzimuthFit> {
    validate(phi0_samples >= 1, "phi0_samples must be >= 1")?;
    let span = 2.0 * PI / m as f64;
    let dphi = span / phi0_samples as f64;

    let mut best_phi = 0.0;
    let mut best_f = f64::NEG_INFINITY;
    for s in 0..phi0_samples {
        let phi0 = s as f64 * dphi;
        let f = optimal_phase_fidelity(state, m, phi0)?.fidelity;
        if f > best_f {
            best_f = f;
            best_phi = phi0;
        }
    }

    let eval = |phi0: f64| {
        optimal_phase_fidelity(state, m, phi0)
            .map(|fit| fit.fidelity)
            .unwrap_or(f64::NEG_INFINITY)
    };
    let (phi0, _) = golden_section_max(eval, best_phi - dphi, best_phi + dphi, 1e-7 * span, 80);
    let phi0 = phi0.rem_euclid(2.0 * PI);
    let fit = optimal_phase_fidelity(state, m, phi0)?;
    Ok(AzimuthFit {
        fidelity: fit.fidelity,
        phi0,
        alphas: fit.alphas,
    })
}

/// Catalog of explicit m-CSS component phases. Variants are 1-based.
pub fn phase_catalog(m: usize, variant: usize) -> Result<CatTarget> {
    let phases: &[f64] = match (m, variant) {
        (2, 1) => &[-PI / 4.0, PI / 4.0],
        (3, 1) => &[-PI / 3.0, -5.0 * PI / 3.0, -5.0 * PI / 3.0],
        (3, 2) => &[-2.0 * PI / 3.0, -PI / 3.0, -PI / 3.0],
        (3, 3) => &[2.0 * PI / 3.0, -2.0 * PI / 3.0, -2.0 * PI / 3.0],
        (3, 4) => &[PI / 3.0, -PI, -PI],
        (4, 1) => &[-PI / 4.0, 0.0, -PI / 4.0, -PI],
        (5, 1) => &[
            -4.0 * PI / 5.0,
            -8.0 * PI / 5.0,
            -4.0 * PI / 5.0,
            -2.0 * PI / 5.0,
            -2.0 * PI / 5.0,
        ],
        (5, 2) => &[
            -8.0 * PI / 5.0,
            -2.0 * PI / 5.0,
            -8.0 * PI / 5.0,
            -6.0 * PI / 5.0,
            -6.0 * PI / 5.0,
        ],
        (6, 1) => &[
            0.0,
            -11.0 * PI / 6.0,
            0.0,
            -3.0 * PI / 6.0,
            -8.0 * PI / 6.0,
            -3.0 * PI / 6.0,
        ],
        _ => {
            return Err(crate::error::Error::Validation(format!(
                "no catalog entry for m = {m}, variant {variant}"
            )))
        }
    };
    CatTarget::new(m, 0.0, phases.to_vec())
}

/// Number of catalog variants for a given m (0 if absent).
pub fn catalog_variants(m: usize) -> usize {
    match m {
        2 | 4 | 6 => 1,
        3 => 4,
        5 => 2,
        _ => 0,
    }
}

/// Outcome of a single-CSS revival search.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RevivalReport {
    pub t_revival: f64,
    pub fidelity: f64,
    pub passed: bool,
}

/// Scans `[t_lo, t_hi]` for the maximum fidelity of the evolved state with the
/// best single equatorial CSS (azimuth optimized), then refines. `passed` is
/// `fidelity > threshold`.
pub fn revival_test(
    state0: &SpinState,
    h: &crate::hamiltonian::DiagonalHamiltonian,
    window: (f64, f64),
    samples: usize,
    threshold: f64,
) -> Result<RevivalReport> {
    let scan = crate::dynamics::cat_time_scan(
        state0,
        h,
        1,
        window,
        samples,
        crate::dynamics::ScanSettings::default(),
    )?;
    Ok(RevivalReport {
        t_revival: scan.t_best,
        fidelity: scan.fidelity,
        passed: scan.fidelity > threshold,
    })
}

/// Convenience: a single equatorial CSS as a `CatTarget` state.
pub fn single_css(phi0: f64, n_atoms: usize) -> Result<SpinState> {
    crate::spin::css_state(&CssParams::equatorial(phi0), n_atoms)
}
