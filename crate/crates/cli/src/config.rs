//! Run configuration: one nested TOML document per run, every field
//! overridable from the command line. Defaults mirror the library's headline
//! parameter sets (N = 48 with Δ/2π = 20 MHz on a 532 nm lattice; N = 1000
//! with Ω/2π = 70 MHz and Γ_r = 2400 1/s).

use catspin::adiabatic::{Branch, RampShape};
use catspin::geometry::LatticeKind;
use catspin::lindblad::DressingRegime;
use serde::{Deserialize, Serialize};

/// Diagonal ladder Hamiltonian selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HamiltonianKind {
    /// χ N̂² with an explicit coefficient.
    Kerr,
    /// Exact collective light shift, weak-to-strong dressing.
    Exact,
    /// Resonant collective drive Ω sqrt(N̂).
    Resonant,
    /// Cubic expansion of the resonant spectrum around half filling.
    ResonantExpansion,
}

impl std::str::FromStr for HamiltonianKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "kerr" => Ok(Self::Kerr),
            "exact" => Ok(Self::Exact),
            "resonant" => Ok(Self::Resonant),
            "resonant-expansion" => Ok(Self::ResonantExpansion),
            other => Err(format!(
                "unknown hamiltonian '{other}' (kerr | exact | resonant | resonant-expansion)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EvolveParams {
    pub n_atoms: usize,
    pub hamiltonian: HamiltonianKind,
    pub chi: f64,
    pub omega_mhz: f64,
    pub delta_mhz: f64,
    pub phi0: f64,
    /// Snapshot times in units of 1/χ₂ of the selected Hamiltonian.
    pub scaled_times: Vec<f64>,
    pub husimi: bool,
    pub theta_samples: usize,
    pub phi_samples: usize,
}

impl Default for EvolveParams {
    fn default() -> Self {
        Self {
            n_atoms: 1000,
            hamiltonian: HamiltonianKind::Resonant,
            chi: 1.0,
            omega_mhz: 70.0,
            delta_mhz: 20.0,
            phi0: 0.0,
            scaled_times: vec![0.236],
            husimi: false,
            theta_samples: 91,
            phi_samples: 182,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CatscanParams {
    pub n_atoms: usize,
    pub hamiltonian: HamiltonianKind,
    pub chi: f64,
    pub omega_mhz: f64,
    pub delta_mhz: f64,
    pub m_list: Vec<usize>,
    pub samples: usize,
    pub phi0_samples: usize,
    pub refine_rel_tol: f64,
}

impl Default for CatscanParams {
    fn default() -> Self {
        Self {
            n_atoms: 1000,
            hamiltonian: HamiltonianKind::Resonant,
            chi: 1.0,
            omega_mhz: 70.0,
            delta_mhz: 20.0,
            m_list: vec![33, 27, 21, 14, 7, 4, 3, 2],
            samples: 240,
            phi0_samples: 24,
            refine_rel_tol: 1e-5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LossSweepParams {
    pub n_atoms: usize,
    pub delta_mhz: f64,
    /// Ω/Δ sweep points for the weak-dressing loss budget.
    pub ratios: Vec<f64>,
    pub m: usize,
    pub gamma_r: f64,
    pub gamma_bbr: f64,
    pub samples: usize,
    pub phi0_samples: usize,
}

impl Default for LossSweepParams {
    fn default() -> Self {
        Self {
            n_atoms: 48,
            delta_mhz: 20.0,
            ratios: vec![0.05, 0.1, 0.2, 0.5, 1.0, 2.0],
            m: 2,
            gamma_r: 2400.0,
            gamma_bbr: 2400.0,
            samples: 192,
            phi0_samples: 16,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ProfileParams {
    pub n_atoms: usize,
    pub regime: DressingRegime,
    /// Scaled units: |Δ| = 1 in the weak regime.
    pub omega: f64,
    pub delta: f64,
    pub gamma_r: f64,
    pub c6: f64,
    pub r_min_rb: f64,
    pub r_max_rb: f64,
    pub r_steps: usize,
    pub r_ref_rb: f64,
}

impl Default for ProfileParams {
    fn default() -> Self {
        Self {
            n_atoms: 2,
            regime: DressingRegime::Weak,
            omega: 0.1,
            delta: 1.0,
            gamma_r: 1e-3,
            c6: 1.0,
            r_min_rb: 0.2,
            r_max_rb: 3.0,
            r_steps: 24,
            r_ref_rb: 20.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PerturbParams {
    pub lattice: LatticeKind,
    pub extent: usize,
    pub spacing: f64,
    pub omega: f64,
    pub delta: f64,
    pub c6: f64,
}

impl Default for PerturbParams {
    fn default() -> Self {
        Self {
            lattice: LatticeKind::Triangular,
            extent: 1,
            spacing: 1.0,
            omega: 0.05,
            delta: 1.0,
            c6: 0.7,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AdiabaticParams {
    pub shape: RampShape,
    pub duration: f64,
    pub omega_start: f64,
    pub omega_end: f64,
    pub delta_start: f64,
    pub delta_end: f64,
    pub n_e: f64,
    pub steps: usize,
    pub branch: Branch,
}

impl Default for AdiabaticParams {
    fn default() -> Self {
        Self {
            shape: RampShape::Cosine,
            duration: 0.5,
            omega_start: 4.0,
            omega_end: 0.0,
            delta_start: 0.0,
            delta_end: 0.0,
            n_e: 9.0,
            steps: 800,
            branch: Branch::Lower,
        }
    }
}

/// Whole-run configuration file, one section per subcommand.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FileConfig {
    pub evolve: EvolveParams,
    pub catscan: CatscanParams,
    pub loss: LossSweepParams,
    pub profile: ProfileParams,
    pub perturb: PerturbParams,
    pub adiabatic: AdiabaticParams,
}

/// Applies `src` over `dst` when present.
pub fn merge<T>(dst: &mut T, src: Option<T>) {
    if let Some(v) = src {
        *dst = v;
    }
}
