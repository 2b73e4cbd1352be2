//! Diagonal collective Hamiltonians.
//!
//! Every dressing Hamiltonian used here is a function of the excitation number
//! operator alone, so it is stored as one real energy per Dicke rung
//! (angular frequency units, rad/s).

use serde::{Deserialize, Serialize};

use crate::error::{validate, Result};

/// Laser drive: Rabi frequency and detuning, both in rad/s.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DriveParams {
    pub rabi: f64,
    pub detuning: f64,
}

impl DriveParams {
    pub fn new(rabi: f64, detuning: f64) -> Result<Self> {
        validate(rabi.is_finite() && rabi >= 0.0, "rabi must be >= 0")?;
        validate(detuning.is_finite(), "detuning must be finite")?;
        Ok(Self { rabi, detuning })
    }

    /// Convenience constructor from ordinary frequencies in MHz (multiplies by 2π·1e6).
    pub fn from_mhz(rabi_mhz: f64, detuning_mhz: f64) -> Result<Self> {
        let f = 2.0 * std::f64::consts::PI * 1e6;
        Self::new(rabi_mhz * f, detuning_mhz * f)
    }
}

/// Energy per Dicke rung; `energies[n_e]` for n_e = 0..=N.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalHamiltonian {
    n_atoms: usize,
    energies: Vec<f64>,
}

impl DiagonalHamiltonian {
    pub fn new(n_atoms: usize, energies: Vec<f64>) -> Result<Self> {
        validate(n_atoms >= 1, "n_atoms must be >= 1")?;
        validate(
            energies.len() == n_atoms + 1,
            format!("expected {} energies, got {}", n_atoms + 1, energies.len()),
        )?;
        validate(energies.iter().all(|e| e.is_finite()), "energies must be finite")?;
        Ok(Self { n_atoms, energies })
    }

    pub fn n_atoms(&self) -> usize {
        self.n_atoms
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    pub fn energy(&self, n_e: usize) -> f64 {
        self.energies[n_e]
    }

    pub fn negated(&self) -> Self {
        Self {
            n_atoms: self.n_atoms,
            energies: self.energies.iter().map(|e| -e).collect(),
        }
    }

    /// Local Kerr coefficient at rung `n`: half the second difference of the
    /// spectrum, i.e. the coefficient of (n_e - n)² in a local quadratic fit.
    /// Used to center cat-time scan windows.
    pub fn local_kerr(&self, n: usize) -> f64 {
        let n = n.clamp(1, self.n_atoms - 1);
        0.5 * (self.energies[n + 1] - 2.0 * self.energies[n] + self.energies[n - 1])
    }
}

/// Exact ground-dressed collective light shift:
/// E(n_e) = (Δ/2)(1 - sqrt(1 + n_e Ω²/Δ²)).
pub fn h_exact(drive: &DriveParams, n_atoms: usize) -> Result<DiagonalHamiltonian> {
    validate(drive.detuning != 0.0, "h_exact requires nonzero detuning; use h_resonant")?;
    let x = (drive.rabi / drive.detuning).powi(2);
    let energies = (0..=n_atoms)
        .map(|ne| 0.5 * drive.detuning * (1.0 - (1.0 + ne as f64 * x).sqrt()))
        .collect();
    DiagonalHamiltonian::new(n_atoms, energies)
}

/// Weak-dressing Taylor coefficients of `h_exact` in powers of n_e, up to n_e⁴:
/// [-Ω²/4Δ, Ω⁴/16Δ³, -Ω⁶/32Δ⁵, 5Ω⁸/256Δ⁷].
pub fn weak_series_coefficients(drive: &DriveParams) -> [f64; 4] {
    let o2 = drive.rabi * drive.rabi;
    let d = drive.detuning;
    [
        -o2 / (4.0 * d),
        o2 * o2 / (16.0 * d.powi(3)),
        -o2.powi(3) / (32.0 * d.powi(5)),
        5.0 * o2.powi(4) / (256.0 * d.powi(7)),
    ]
}

/// Truncated weak-dressing expansion, keeping `max_order` powers of n_e (1..=4).
pub fn h_weak_series(
    drive: &DriveParams,
    n_atoms: usize,
    max_order: usize,
) -> Result<DiagonalHamiltonian> {
    validate(drive.detuning != 0.0, "h_weak_series requires nonzero detuning")?;
    validate((1..=4).contains(&max_order), "max_order must be in 1..=4")?;
    let coeffs = weak_series_coefficients(drive);
    let energies = (0..=n_atoms)
        .map(|ne| {
            let n = ne as f64;
            (0..max_order).map(|k| coeffs[k] * n.powi(k as i32 + 1)).sum()
        })
        .collect();
    DiagonalHamiltonian::new(n_atoms, energies)
}

/// Resonant collective interaction E(n_e) = sqrt(n_e) Ω, taken verbatim.
///
/// The Δ -> 0 limit of `h_exact` would give -sqrt(n_e)Ω/2; the overall sign
/// flips the rotation sense and the factor rescales time, neither of which
/// affects cat formation, so downstream routines are insensitive to both.
pub fn h_resonant(rabi: f64, n_atoms: usize) -> Result<DiagonalHamiltonian> {
    validate(rabi.is_finite() && rabi >= 0.0, "rabi must be >= 0")?;
    let energies = (0..=n_atoms).map(|ne| (ne as f64).sqrt() * rabi).collect();
    DiagonalHamiltonian::new(n_atoms, energies)
}

/// Cubic expansion of the resonant interaction around n̄_e = N/2:
/// E(n_e) = Ω [ (5/16)sqrt(N/2) + (15/16)sqrt(2/N) n_e
///              - (5/16)sqrt(8/N³) n_e² + (1/16)sqrt(32/N⁵) n_e³ ].
pub fn h_resonant_expansion(rabi: f64, n_atoms: usize) -> Result<DiagonalHamiltonian> {
    validate(rabi.is_finite() && rabi >= 0.0, "rabi must be >= 0")?;
    validate(n_atoms >= 4, "the expansion needs n_atoms >= 4")?;
    let nf = n_atoms as f64;
    let c0 = (5.0 / 16.0) * (nf / 2.0).sqrt();
    let c1 = (15.0 / 16.0) * (2.0 / nf).sqrt();
    let c2 = -(5.0 / 16.0) * (8.0 / nf.powi(3)).sqrt();
    let c3 = (1.0 / 16.0) * (32.0 / nf.powi(5)).sqrt();
    let energies = (0..=n_atoms)
        .map(|ne| {
            let n = ne as f64;
            rabi * (c0 + c1 * n + c2 * n * n + c3 * n * n * n)
        })
        .collect();
    DiagonalHamiltonian::new(n_atoms, energies)
}

/// Magnitude of the quadratic coefficient of `h_resonant_expansion`:
/// χ₂ = (5/16)(2/N)^(3/2) Ω. The resonant cat-time table is quoted in units
/// of its inverse.
pub fn chi2_resonant(rabi: f64, n_atoms: usize) -> f64 {
    (5.0 / 16.0) * (2.0 / n_atoms as f64).powf(1.5) * rabi
}

/// E(n_e) = Σ_k coeffs[k] n_e^k for arbitrary polynomial spectra.
pub fn h_polynomial(coeffs: &[f64], n_atoms: usize) -> Result<DiagonalHamiltonian> {
    validate(!coeffs.is_empty(), "at least one coefficient required")?;
    let energies = (0..=n_atoms)
        .map(|ne| {
            let n = ne as f64;
            // Horner evaluation
            coeffs.iter().rev().fold(0.0, |acc, &c| acc * n + c)
        })
        .collect();
    DiagonalHamiltonian::new(n_atoms, energies)
}

/// Pure Kerr spectrum χ n_e².
pub fn h_kerr(chi: f64, n_atoms: usize) -> Result<DiagonalHamiltonian> {
    h_polynomial(&[0.0, 0.0, chi], n_atoms)
}
