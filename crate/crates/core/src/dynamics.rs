//! Time evolution under diagonal Hamiltonians and cat-time location.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cat::fidelity_optimize;
use crate::error::{validate, Error, Result};
use crate::hamiltonian::DiagonalHamiltonian;
use crate::optim::golden_section_max;
use crate::spin::SpinState;

/// Exact diagonal evolution: a'[n_e] = exp(-i E(n_e) t) a[n_e].
pub fn evolve(state: &SpinState, h: &DiagonalHamiltonian, time: f64) -> Result<SpinState> {
    validate(time.is_finite() && time >= 0.0, "time must be finite and >= 0")?;
    if state.n_atoms() != h.n_atoms() {
        return Err(Error::DimensionMismatch {
            state: state.n_atoms(),
            operator: h.n_atoms(),
        });
    }
    let amps = state
        .amplitudes()
        .iter()
        .zip(h.energies())
        .map(|(a, &e)| a * Complex64::from_polar(1.0, -e * time))
        .collect();
    SpinState::from_amplitudes(state.n_atoms(), amps)
}

/// Characteristic cat times for a quadratic nonlinearity χ.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct CharacteristicTimes {
    /// t_m = 2π/(m|χ|), the nominal m-component time.
    pub t_m: f64,
    /// t_min = 4π/(2 sqrt(N)|χ|), the shortest resolvable component spacing.
    pub t_min: f64,
    /// floor(sqrt(N)), the largest component count that still interferes.
    pub m_max: usize,
    /// Whether t_m >= t_min, i.e. m <= sqrt(N).
    pub forms: bool,
}

pub fn characteristic_times(chi: f64, n_atoms: usize, m: usize) -> Result<CharacteristicTimes> {
    validate(chi != 0.0 && chi.is_finite(), "chi must be nonzero")?;
    validate(m >= 1, "m must be >= 1")?;
    let sqrt_n = (n_atoms as f64).sqrt();
    let t_m = 2.0 * std::f64::consts::PI / (m as f64 * chi.abs());
    let t_min = 4.0 * std::f64::consts::PI / (2.0 * sqrt_n * chi.abs());
    Ok(CharacteristicTimes {
        t_m,
        t_min,
        m_max: sqrt_n.floor() as usize,
        forms: t_m >= t_min,
    })
}

/// Knobs for `cat_time_scan`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ScanSettings {
    /// Azimuth grid resolution passed to the fidelity optimizer.
    pub phi0_samples: usize,
    /// Relative time resolution of the golden-section refinement.
    pub refine_rel_tol: f64,
}

impl Default for ScanSettings {
    fn default() -> Self {
        Self {
            phi0_samples: 32,
            refine_rel_tol: 1e-4,
        }
    }
}

/// Result of a cat-time scan.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CatScan {
    pub t_best: f64,
    pub fidelity: f64,
    pub phi0: f64,
    pub alphas: Vec<f64>,
    /// (t, best fidelity at t) over the scan grid.
    pub fidelity_trace: Vec<(f64, f64)>,
}

/// Scans the window on a uniform grid for the best m-CSS fidelity, then
/// refines the global grid maximum by golden-section search.
pub fn cat_time_scan(
    state: &SpinState,
    h: &DiagonalHamiltonian,
    m: usize,
    window: (f64, f64),
    samples: usize,
    settings: ScanSettings,
) -> Result<CatScan> {
    let (t_lo, t_hi) = window;
    validate(
        t_lo.is_finite() && t_hi.is_finite() && t_hi > t_lo && t_lo >= 0.0,
        "scan window must be positive and non-empty",
    )?;
    validate(samples >= 2, "need at least 2 samples")?;

    let dt = (t_hi - t_lo) / (samples - 1) as f64;
    let eval = |t: f64| -> Result<f64> {
        let evolved = evolve(state, h, t)?;
        Ok(fidelity_optimize(&evolved, m, settings.phi0_samples)?.fidelity)
    };

    let trace: Vec<(f64, f64)> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let t = t_lo + i as f64 * dt;
            eval(t).map(|f| (t, f))
        })
        .collect::<Result<_>>()?;

    let (i_best, _) = trace
        .iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |acc, (i, &(_, f))| {
            if f > acc.1 {
                (i, f)
            } else {
                acc
            }
        });

    let lo = trace[i_best.saturating_sub(1)].0;
    let hi = trace[(i_best + 1).min(samples - 1)].0;
    let tol = settings.refine_rel_tol * trace[i_best].0.max(dt);
    let (t_best, _) = golden_section_max(
        |t| eval(t).unwrap_or(f64::NEG_INFINITY),
        lo,
        hi,
        tol,
        100,
    );

    let evolved = evolve(state, h, t_best)?;
    let fit = fidelity_optimize(&evolved, m, settings.phi0_samples)?;
    Ok(CatScan {
        t_best,
        fidelity: fit.fidelity,
        phi0: fit.phi0,
        alphas: fit.alphas,
        fidelity_trace: trace,
    })
}

/// Default scan window [0.2, 2.5]·t_center around t_center = 2π/(m|χ_eff|),
/// with χ_eff the local Kerr coefficient of `h` at half filling.
pub fn default_window(h: &DiagonalHamiltonian, m: usize) -> Result<(f64, f64)> {
    let chi = h.local_kerr(h.n_atoms() / 2);
    validate(
        chi != 0.0 && chi.is_finite(),
        "Hamiltonian has no quadratic nonlinearity at half filling",
    )?;
    let t_center = 2.0 * std::f64::consts::PI / (m as f64 * chi.abs());
    Ok((0.2 * t_center, 2.5 * t_center))
}
