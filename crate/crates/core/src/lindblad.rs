//! Few-atom master equation and steady-state dressing interaction profiles.
//!
//! Two or three dressed atoms (per-atom basis {e, r}; the third level is
//! never coupled and is dropped), a van der Waals pair interaction, and a
//! spontaneous-emission channel c = sqrt(γ_r)|e⟩⟨r| per atom. The interaction
//! profile is U(r) = Tr[ρ_ss H] with the interaction-independent background
//! U(r_ref) subtracted, quoted in units of the closed-form blockaded shift U₀.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{validate, Error, Result};
use crate::hamiltonian::{h_exact, DriveParams};

type CMatrix = DMatrix<Complex64>;

/// Which frequency sets the blockade radius.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DressingRegime {
    /// R_b = (C₆/Δ)^(1/6)
    Weak,
    /// R_b = (C₆/Ω)^(1/6)
    Strong,
}

/// R_b = (C₆/Δ)^(1/6) or (C₆/Ω)^(1/6).
pub fn blockade_radius(drive: &DriveParams, c6: f64, regime: DressingRegime) -> Result<f64> {
    let freq = match regime {
        DressingRegime::Weak => drive.detuning.abs(),
        DressingRegime::Strong => drive.rabi,
    };
    validate(freq > 0.0, "blockade radius needs a nonzero frequency")?;
    validate(c6 > 0.0, "c6 must be > 0")?;
    Ok((c6 / freq).powf(1.0 / 6.0))
}

/// Open-system problem definition.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct OpenSystemSpec {
    /// 2 atoms (pair at distance r) or 3 (equilateral triangle with side r).
    pub n_atoms: usize,
    /// Pair distance / triangle side, meters.
    pub separation: f64,
    pub drive: DriveParams,
    pub c6: f64,
    /// Spontaneous rate, 1/s; must be > 0 so the steady state is unique.
    pub gamma_r: f64,
}

impl OpenSystemSpec {
    pub fn validate(&self) -> Result<()> {
        validate(
            self.n_atoms == 2 || self.n_atoms == 3,
            "open-system solver supports 2 or 3 atoms",
        )?;
        validate(self.separation > 0.0, "separation must be > 0")?;
        validate(self.gamma_r > 0.0, "gamma_r must be > 0")?;
        validate(self.c6 > 0.0, "c6 must be > 0")?;
        Ok(())
    }

    pub fn with_separation(mut self, r: f64) -> Self {
        self.separation = r;
        self
    }
}

/// Liouvillian superoperator plus the Hamiltonian it was built from.
#[derive(Debug, Clone)]
pub struct Liouvillian {
    pub dim: usize,
    pub matrix: CMatrix,
    pub hamiltonian: CMatrix,
}

fn kron_chain(ops: &[&CMatrix]) -> CMatrix {
    let mut out = CMatrix::identity(1, 1);
    for op in ops {
        out = out.kronecker(op);
    }
    out
}

fn embed(single: &CMatrix, site: usize, n: usize) -> CMatrix {
    let id = CMatrix::identity(2, 2);
    let ops: Vec<&CMatrix> = (0..n).map(|k| if k == site { single } else { &id }).collect();
    kron_chain(&ops)
}

/// Dressing Hamiltonian on the product space.
///
/// H = Σ_i [(Ω/2)(|e⟩⟨r| + |r⟩⟨e|) + Δ|r⟩⟨r|]_i + Σ_{i<j} V_ij n^r_i n^r_j,
/// with the detuning sign fixed so the blockaded soft core reproduces the
/// closed-form collective light shift.
pub fn hamiltonian(spec: &OpenSystemSpec) -> Result<CMatrix> {
    spec.validate()?;
    let n = spec.n_atoms;
    let one = Complex64::new(1.0, 0.0);
    let mut sx = CMatrix::zeros(2, 2);
    sx[(0, 1)] = one;
    sx[(1, 0)] = one;
    let mut nr = CMatrix::zeros(2, 2);
    nr[(1, 1)] = one;

    let dim = 1usize << n;
    let mut h = CMatrix::zeros(dim, dim);
    for i in 0..n {
        h += embed(&sx, i, n) * Complex64::new(0.5 * spec.drive.rabi, 0.0)
            + embed(&nr, i, n) * Complex64::new(spec.drive.detuning, 0.0);
    }
    let v = spec.c6 / spec.separation.powi(6);
    for i in 0..n {
        for j in i + 1..n {
            h += embed(&nr, i, n) * embed(&nr, j, n) * Complex64::new(v, 0.0);
        }
    }
    Ok(h)
}

/// Assembles the superoperator (column-stacked vec convention):
/// L = -i(I⊗H - Hᵀ⊗I) + Σ_i [ C̄_i⊗C_i - ½ I⊗C_i†C_i - ½ (C_i†C_i)ᵀ⊗I ].
pub fn build_generator(spec: &OpenSystemSpec) -> Result<Liouvillian> {
    let h = hamiltonian(spec)?;
    let n = spec.n_atoms;
    let dim = h.nrows();
    let id = CMatrix::identity(dim, dim);
    let i_unit = Complex64::new(0.0, 1.0);

    let mut l = (id.kronecker(&h) - h.transpose().kronecker(&id)) * (-i_unit);

    let mut c_single = CMatrix::zeros(2, 2);
    c_single[(0, 1)] = Complex64::new(spec.gamma_r.sqrt(), 0.0);
    for i in 0..n {
        let c = embed(&c_single, i, n);
        let cdc = c.adjoint() * &c;
        l += c.conjugate().kronecker(&c)
            - id.kronecker(&cdc) * Complex64::new(0.5, 0.0)
            - cdc.transpose().kronecker(&id) * Complex64::new(0.5, 0.0);
    }
    Ok(Liouvillian {
        dim,
        matrix: l,
        hamiltonian: h,
    })
}

fn unvec(v: &nalgebra::DVector<Complex64>, dim: usize) -> CMatrix {
    CMatrix::from_fn(dim, dim, |i, j| v[j * dim + i])
}

/// Steady state via the nullspace of the (row-equilibrated) generator.
///
/// Each row is normalized to unit length before the SVD; this leaves the
/// kernel unchanged but keeps the degeneracy and residual tolerances
/// meaningful when the interaction dwarfs the dissipative rates (deep inside
/// the blockade V/γ can exceed 1e9). Errors if the kernel is not
/// one-dimensional.
pub fn steady_state(generator: &Liouvillian) -> Result<CMatrix> {
    let dim = generator.dim;
    let mut scaled = generator.matrix.clone();
    let mut any_row = false;
    for mut row in scaled.row_iter_mut() {
        let norm = row.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 0.0 {
            row /= Complex64::new(norm, 0.0);
            any_row = true;
        }
    }
    validate(any_row, "generator is zero")?;

    let svd = scaled.clone().svd(false, true);
    let v_t = svd
        .v_t
        .as_ref()
        .ok_or_else(|| Error::Numerical("SVD did not return singular vectors".into()))?;
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| {
        svd.singular_values[a]
            .partial_cmp(&svd.singular_values[b])
            .unwrap()
    });
    let smallest = svd.singular_values[order[0]];
    let near_null = order
        .iter()
        .filter(|&&i| svd.singular_values[i] < 1e-8)
        .count();
    if near_null > 1 {
        return Err(Error::DegenerateKernel { dim: near_null });
    }
    if smallest > 1e-10 {
        return Err(Error::Numerical(format!(
            "no kernel vector found (smallest singular value {smallest:.3e})"
        )));
    }

    let kernel = nalgebra::DVector::from_iterator(
        dim * dim,
        v_t.row(order[0]).iter().map(|z| z.conj()),
    );
    let mut rho = unvec(&kernel, dim);
    // hermitize and normalize
    rho = (rho.clone() + rho.adjoint()) * Complex64::new(0.5, 0.0);
    let trace: Complex64 = (0..dim).map(|i| rho[(i, i)]).sum();
    validate(trace.norm() > 1e-12, "kernel vector has zero trace")?;
    rho /= trace;

    // residual in scaled units
    let res = (&scaled * vectorize(&rho)).norm();
    if res > 1e-10 {
        return Err(Error::Numerical(format!("steady-state residual {res:.3e}")));
    }
    Ok(rho)
}

fn vectorize(m: &CMatrix) -> nalgebra::DVector<Complex64> {
    let dim = m.nrows();
    nalgebra::DVector::from_fn(dim * dim, |k, _| m[(k % dim, k / dim)])
}

/// Density-matrix sanity: hermitian, unit trace, positive semidefinite.
pub fn check_density_matrix(rho: &CMatrix) -> Result<()> {
    let dim = rho.nrows();
    let herm_err = (rho - rho.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
    validate(herm_err < 1e-10, format!("not hermitian (deviation {herm_err:.3e})"))?;
    let trace: Complex64 = (0..dim).map(|i| rho[(i, i)]).sum();
    validate(
        (trace - Complex64::new(1.0, 0.0)).norm() < 1e-10,
        format!("trace is {trace}"),
    )?;
    let herm = (rho.clone() + rho.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = herm.symmetric_eigen();
    let min = eig.eigenvalues.iter().fold(f64::INFINITY, |a, &b| a.min(b));
    validate(min > -1e-8, format!("negative eigenvalue {min:.3e}"))?;
    Ok(())
}

/// exp(M) by scaling and squaring with a Taylor series.
fn expm(m: &CMatrix) -> CMatrix {
    let dim = m.nrows();
    // 1-norm (max column sum) controls the scaling depth
    let norm = (0..dim)
        .map(|j| m.column(j).iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
        .max(1e-300);
    let s = (norm.log2().ceil() as i32 + 1).clamp(0, 60);
    let scaled = m / Complex64::new(2f64.powi(s), 0.0);
    let mut term = CMatrix::identity(dim, dim);
    let mut sum = CMatrix::identity(dim, dim);
    for k in 1..=24 {
        term = (&term * &scaled) / Complex64::new(k as f64, 0.0);
        sum += &term;
    }
    for _ in 0..s {
        sum = &sum * &sum;
    }
    sum
}

/// Time propagation ρ(t) = exp(L t) ρ(0), used as the steady-state oracle.
pub fn propagate(generator: &Liouvillian, rho0: &CMatrix, t: f64) -> Result<CMatrix> {
    validate(t >= 0.0, "time must be >= 0")?;
    let lt = &generator.matrix * Complex64::new(t, 0.0);
    let prop = expm(&lt);
    let v = prop * vectorize(rho0);
    let mut rho = unvec(&v, generator.dim);
    rho = (rho.clone() + rho.adjoint()) * Complex64::new(0.5, 0.0);
    let trace: Complex64 = (0..generator.dim).map(|i| rho[(i, i)]).sum();
    rho /= trace;
    Ok(rho)
}

/// Trace distance (1/2)‖ρ - σ‖₁.
pub fn trace_distance(a: &CMatrix, b: &CMatrix) -> f64 {
    let diff = (a - b + (a - b).adjoint()) * Complex64::new(0.5, 0.0);
    let eig = diff.symmetric_eigen();
    0.5 * eig.eigenvalues.iter().map(|x| x.abs()).sum::<f64>()
}

/// Closed-form blockaded dressing interaction: the collective shift of
/// n totally blockaded atoms minus n single-atom shifts.
pub fn u0_blockaded(drive: &DriveParams, n_atoms: usize) -> Result<f64> {
    let h = h_exact(drive, n_atoms)?;
    Ok(h.energy(n_atoms) - n_atoms as f64 * h.energy(1))
}

/// One point of the interaction profile.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InteractionEnergy {
    /// Background-subtracted steady-state energy, rad/s.
    pub u: f64,
    /// Closed-form blockaded normalization, rad/s.
    pub u0: f64,
    pub ratio: f64,
}

/// U(r) - U(r_ref) from the steady state, in units of U₀.
pub fn interaction_energy(spec: &OpenSystemSpec, r_ref: f64) -> Result<InteractionEnergy> {
    spec.validate()?;
    validate(r_ref > 0.0, "r_ref must be > 0")?;
    let u_r = raw_energy(spec)?;
    let u_ref = raw_energy(&spec.with_separation(r_ref))?;
    let u0 = u0_blockaded(&spec.drive, spec.n_atoms)?;
    let u = u_r - u_ref;
    Ok(InteractionEnergy { u, u0, ratio: u / u0 })
}

/// Tr[ρ_ss H] without background subtraction.
pub fn raw_energy(spec: &OpenSystemSpec) -> Result<f64> {
    let gen = build_generator(spec)?;
    let rho = steady_state(&gen)?;
    let prod = &gen.hamiltonian * rho;
    let trace: Complex64 = (0..gen.dim).map(|i| prod[(i, i)]).sum();
    Ok(trace.re)
}

/// Profile sweep over separations, r and U both normalized.
pub fn profile(
    spec: &OpenSystemSpec,
    r_values: &[f64],
    r_ref: f64,
    regime: DressingRegime,
) -> Result<Vec<(f64, f64)>> {
    let rb = blockade_radius(&spec.drive, spec.c6, regime)?;
    let u_ref = raw_energy(&spec.with_separation(r_ref))?;
    let u0 = u0_blockaded(&spec.drive, spec.n_atoms)?;
    r_values
        .par_iter()
        .map(|&r| {
            let u = raw_energy(&spec.with_separation(r))?;
            Ok((r / rb, (u - u_ref) / u0))
        })
        .collect()
}
