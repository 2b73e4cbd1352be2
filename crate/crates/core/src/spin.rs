//! Coherent spin states on the symmetric (Dicke) subspace of N two-level atoms.
//!
//! A state is stored as N+1 complex amplitudes indexed by the number of excited
//! atoms `n_e = 0..=N`. A coherent spin state (CSS) pointing along (θ, φ) on the
//! collective Bloch sphere has amplitudes
//!
//! ```text
//! a[n_e] = (1 + |η|²)^(-N/2) η^n_e sqrt(C(N, n_e)),   η = tan(θ/2) e^(-iφ)
//! ```
//!
//! assembled in log space so that N = 2000 is representable without overflow.

use num_complex::Complex64;
use rayon::prelude::*;
use statrs::function::gamma::ln_gamma;

use crate::error::{validate, Error, Result};

/// ln C(n, k) via log-gamma.
pub fn ln_binomial(n: usize, k: usize) -> f64 {
    ln_gamma(n as f64 + 1.0) - ln_gamma(k as f64 + 1.0) - ln_gamma((n - k) as f64 + 1.0)
}

/// Orientation of a coherent spin state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CssParams {
    /// Polar angle in [0, π].
    pub theta: f64,
    /// Azimuth in [0, 2π).
    pub phi: f64,
}

impl CssParams {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        validate(
            theta.is_finite() && (0.0..=std::f64::consts::PI).contains(&theta),
            format!("theta must lie in [0, pi], got {theta}"),
        )?;
        validate(phi.is_finite(), "phi must be finite")?;
        Ok(Self {
            theta,
            phi: phi.rem_euclid(2.0 * std::f64::consts::PI),
        })
    }

    /// Equatorial CSS at the given azimuth.
    pub fn equatorial(phi: f64) -> Self {
        Self::new(std::f64::consts::FRAC_PI_2, phi).expect("equator is always valid")
    }

    /// Stereographic parameter η = tan(θ/2) e^(-iφ). Infinite at the south pole.
    pub fn eta(&self) -> Complex64 {
        Complex64::from_polar((0.5 * self.theta).tan(), -self.phi)
    }

    fn is_south_pole(&self) -> bool {
        self.theta >= std::f64::consts::PI
    }
}

/// State vector over the Dicke ladder n_e = 0..=N.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinState {
    n_atoms: usize,
    amplitudes: Vec<Complex64>,
}

impl SpinState {
    /// Wraps raw amplitudes, normalizing them.
    pub fn from_amplitudes(n_atoms: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        validate(n_atoms >= 1, "n_atoms must be >= 1")?;
        validate(
            amplitudes.len() == n_atoms + 1,
            format!(
                "expected {} amplitudes for N = {}, got {}",
                n_atoms + 1,
                n_atoms,
                amplitudes.len()
            ),
        )?;
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        validate(norm.is_finite() && norm > 0.0, "amplitudes must have a finite nonzero norm")?;
        let amplitudes = amplitudes.into_iter().map(|a| a / norm).collect();
        Ok(Self { n_atoms, amplitudes })
    }

    pub fn n_atoms(&self) -> usize {
        self.n_atoms
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// ⟨self|other⟩.
    pub fn inner(&self, other: &SpinState) -> Result<Complex64> {
        if self.n_atoms != other.n_atoms {
            return Err(Error::DimensionMismatch {
                state: self.n_atoms,
                operator: other.n_atoms,
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// |⟨self|other⟩|².
    pub fn fidelity(&self, other: &SpinState) -> Result<f64> {
        Ok(self.inner(other)?.norm_sqr())
    }
}

/// Builds the CSS |θ, φ⟩ for N atoms.
pub fn css_state(params: &CssParams, n_atoms: usize) -> Result<SpinState> {
    validate(n_atoms >= 1, "n_atoms must be >= 1")?;
    let n = n_atoms;
    let mut amps = vec![Complex64::new(0.0, 0.0); n + 1];
    if params.is_south_pole() {
        amps[n] = Complex64::new(1.0, 0.0);
    } else if params.theta == 0.0 {
        amps[0] = Complex64::new(1.0, 0.0);
    } else {
        let t = (0.5 * params.theta).tan();
        let ln_t = t.ln();
        let ln_norm = 0.5 * (n as f64) * (1.0 + t * t).ln();
        for (ne, amp) in amps.iter_mut().enumerate() {
            let ln_mag = 0.5 * ln_binomial(n, ne) + ne as f64 * ln_t - ln_norm;
            *amp = Complex64::from_polar(ln_mag.exp(), -(ne as f64) * params.phi);
        }
    }
    SpinState::from_amplitudes(n, amps)
}

/// Closed-form overlap ⟨a|b⟩ = (1 + η_a* η_b)^N / ((1+|η_a|²)(1+|η_b|²))^(N/2).
///
/// Evaluated through the complex logarithm so large N stays finite; the poles
/// (θ = π) fall back to the fact that the south-pole CSS is the Dicke state
/// with all atoms excited.
pub fn css_overlap(a: &CssParams, b: &CssParams, n_atoms: usize) -> Result<Complex64> {
    validate(n_atoms >= 1, "n_atoms must be >= 1")?;
    let n = n_atoms as f64;
    // The south-pole CSS is the top Dicke rung with unit amplitude (css_state
    // drops the then-arbitrary azimuthal phase), so its overlaps reduce to the
    // other state's top-rung amplitude.
    if a.is_south_pole() && b.is_south_pole() {
        return Ok(Complex64::new(1.0, 0.0));
    }
    if a.is_south_pole() {
        let mag = (0.5 * b.theta).sin().powf(n);
        return Ok(Complex64::from_polar(mag, -n * b.phi));
    }
    if b.is_south_pole() {
        let mag = (0.5 * a.theta).sin().powf(n);
        return Ok(Complex64::from_polar(mag, n * a.phi));
    }
    let ea = a.eta();
    let eb = b.eta();
    let ln_num = (Complex64::new(1.0, 0.0) + ea.conj() * eb).ln() * n;
    let ln_den = 0.5 * n * ((1.0 + ea.norm_sqr()).ln() + (1.0 + eb.norm_sqr()).ln());
    Ok((ln_num - ln_den).exp())
}

/// Overlap of two equatorial CSS separated in azimuth by δ = φ_a - φ_b:
/// ⟨φ_a|φ_b⟩ = ((1 + e^{iδ}) / 2)^N.
pub fn equatorial_overlap(delta_phi: f64, n_atoms: usize) -> Complex64 {
    let z = (Complex64::new(1.0, 0.0) + Complex64::from_polar(1.0, delta_phi)) * 0.5;
    (z.ln() * n_atoms as f64).exp()
}

/// Σ n_e^power |a[n_e]|².
pub fn expectation_ne(state: &SpinState, power: u32) -> f64 {
    state
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(ne, a)| (ne as f64).powi(power as i32) * a.norm_sqr())
        .sum()
}

/// Husimi Q field sampled on a midpoint grid over the sphere.
#[derive(Debug, Clone)]
pub struct HusimiField {
    pub n_theta: usize,
    pub n_phi: usize,
    pub n_atoms: usize,
    /// Row-major, theta index major.
    pub values: Vec<f64>,
    pub thetas: Vec<f64>,
    pub phis: Vec<f64>,
}

impl HusimiField {
    /// Quadrature of Q over the sphere with midpoint weights sin(θ)ΔθΔφ.
    pub fn integral(&self) -> f64 {
        let dtheta = std::f64::consts::PI / self.n_theta as f64;
        let dphi = 2.0 * std::f64::consts::PI / self.n_phi as f64;
        self.thetas
            .iter()
            .enumerate()
            .map(|(i, &th)| {
                let row: f64 = self.values[i * self.n_phi..(i + 1) * self.n_phi].iter().sum();
                row * th.sin() * dtheta * dphi
            })
            .sum()
    }

    /// Grid point of the maximum value, as (theta, phi).
    pub fn argmax(&self) -> (f64, f64) {
        let (idx, _) = self
            .values
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |acc, (i, &v)| {
                if v > acc.1 {
                    (i, v)
                } else {
                    acc
                }
            });
        (self.thetas[idx / self.n_phi], self.phis[idx % self.n_phi])
    }
}

/// Q(θ, φ) = ((N+1)/4π) |⟨θ,φ|ψ⟩|², normalized so it integrates to one.
pub fn husimi_q(state: &SpinState, n_theta: usize, n_phi: usize) -> Result<HusimiField> {
    validate(n_theta >= 2 && n_phi >= 2, "Husimi grid must be at least 2x2")?;
    let n = state.n_atoms();
    let dtheta = std::f64::consts::PI / n_theta as f64;
    let dphi = 2.0 * std::f64::consts::PI / n_phi as f64;
    let thetas: Vec<f64> = (0..n_theta).map(|i| (i as f64 + 0.5) * dtheta).collect();
    let phis: Vec<f64> = (0..n_phi).map(|k| (k as f64 + 0.5) * dphi).collect();
    let prefactor = (n as f64 + 1.0) / (4.0 * std::f64::consts::PI);

    let values: Vec<f64> = thetas
        .par_iter()
        .flat_map_iter(|&theta| {
            // radial profile of the CSS at this latitude
            let t = (0.5 * theta).tan();
            let r: Vec<f64> = if theta >= std::f64::consts::PI {
                let mut v = vec![0.0; n + 1];
                v[n] = 1.0;
                v
            } else {
                let ln_t = if t > 0.0 { t.ln() } else { f64::NEG_INFINITY };
                let ln_norm = 0.5 * (n as f64) * (1.0 + t * t).ln();
                (0..=n)
                    .map(|ne| {
                        if t == 0.0 {
                            if ne == 0 {
                                1.0
                            } else {
                                0.0
                            }
                        } else {
                            (0.5 * ln_binomial(n, ne) + ne as f64 * ln_t - ln_norm).exp()
                        }
                    })
                    .collect()
            };
            let amps = state.amplitudes().to_vec();
            phis.iter()
                .map(|&phi| {
                    // ⟨θ,φ|ψ⟩ = Σ_n r_n ψ_n e^{i n φ}
                    let step = Complex64::from_polar(1.0, phi);
                    let mut rot = Complex64::new(1.0, 0.0);
                    let mut acc = Complex64::new(0.0, 0.0);
                    for (ne, &rn) in r.iter().enumerate() {
                        acc += amps[ne] * rn * rot;
                        rot *= step;
                    }
                    prefactor * acc.norm_sqr()
                })
                .collect::<Vec<f64>>()
        })
        .collect();

    Ok(HusimiField {
        n_theta,
        n_phi,
        n_atoms: n,
        values,
        thetas,
        phis,
    })
}
