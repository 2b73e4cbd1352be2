//! `catspin` command line: figure/table artifacts for collective-spin cat
//! generation under Rydberg dressing. Exit codes: 0 success, 2 validation
//! error, 1 runtime error.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use catspin::adiabatic::{Branch, RampShape};
use catspin::geometry::LatticeKind;
use catspin::lindblad::DressingRegime;
use clap::{Args, Parser, Subcommand};

use commands::{CmdError, CmdResult};
use config::*;
use output::{Format, OutputCtx};

fn parse_shape(s: &str) -> Result<RampShape, String> {
    match s {
        "linear" => Ok(RampShape::Linear),
        "cosine" => Ok(RampShape::Cosine),
        other => Err(format!("unknown shape '{other}' (linear | cosine)")),
    }
}

fn parse_branch(s: &str) -> Result<Branch, String> {
    match s {
        "lower" => Ok(Branch::Lower),
        "upper" => Ok(Branch::Upper),
        other => Err(format!("unknown branch '{other}' (lower | upper)")),
    }
}

fn parse_regime(s: &str) -> Result<DressingRegime, String> {
    match s {
        "weak" => Ok(DressingRegime::Weak),
        "strong" => Ok(DressingRegime::Strong),
        other => Err(format!("unknown regime '{other}' (weak | strong)")),
    }
}

fn parse_lattice(s: &str) -> Result<LatticeKind, String> {
    match s {
        "square" => Ok(LatticeKind::Square),
        "triangular" => Ok(LatticeKind::Triangular),
        "chain" => Ok(LatticeKind::Chain),
        other => Err(format!("unknown lattice '{other}' (square | triangular | chain)")),
    }
}

#[derive(Parser)]
#[command(name = "catspin", version, about = "Collective-spin cat state toolkit")]
struct Cli {
    /// TOML configuration file; command-line flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Directory for output artifacts.
    #[arg(long, short = 'o', global = true, default_value = ".")]
    output_dir: PathBuf,

    /// Table format: csv | json.
    #[arg(long, global = true, default_value = "csv")]
    format: Format,

    /// Omit the timestamp comment so CSV output is byte-reproducible.
    #[arg(long, global = true)]
    no_timestamp: bool,

    /// Worker threads for sweeps (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    /// Seed recorded for randomized property checks; the physics itself is
    /// deterministic and ignores it.
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evolve a coherent spin state and dump ladder snapshots (and optionally
    /// Husimi grids).
    Evolve(EvolveArgs),
    /// Locate fidelity-optimal cat times for a list of component counts.
    Catscan(CatscanArgs),
    /// Weak-dressing loss budget across a drive-strength sweep.
    Loss(LossArgs),
    /// Steady-state interaction profile U(r)/U0 versus r/R_b.
    Profile(ProfileArgs),
    /// Perturbative interaction orders against the exact oracle.
    Perturb(PerturbArgs),
    /// Dressed-state ramp integration and adiabaticity diagnostic.
    Adiabatic(AdiabaticArgs),
    /// Run the acceptance criteria; nonzero exit if any fail.
    Selftest(SelftestArgs),
}

#[derive(Args)]
struct EvolveArgs {
    #[arg(long)]
    n_atoms: Option<usize>,
    #[arg(long)]
    hamiltonian: Option<HamiltonianKind>,
    #[arg(long)]
    chi: Option<f64>,
    #[arg(long)]
    omega_mhz: Option<f64>,
    #[arg(long)]
    delta_mhz: Option<f64>,
    #[arg(long)]
    phi0: Option<f64>,
    /// Snapshot times in units of 1/chi2, comma separated.
    #[arg(long, value_delimiter = ',')]
    scaled_times: Option<Vec<f64>>,
    #[arg(long)]
    husimi: bool,
    #[arg(long)]
    theta_samples: Option<usize>,
    #[arg(long)]
    phi_samples: Option<usize>,
}

#[derive(Args)]
struct CatscanArgs {
    #[arg(long)]
    n_atoms: Option<usize>,
    #[arg(long)]
    hamiltonian: Option<HamiltonianKind>,
    #[arg(long)]
    chi: Option<f64>,
    #[arg(long)]
    omega_mhz: Option<f64>,
    #[arg(long)]
    delta_mhz: Option<f64>,
    #[arg(long, value_delimiter = ',')]
    m_list: Option<Vec<usize>>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    phi0_samples: Option<usize>,
    #[arg(long)]
    refine_rel_tol: Option<f64>,
}

#[derive(Args)]
struct LossArgs {
    #[arg(long)]
    n_atoms: Option<usize>,
    #[arg(long)]
    delta_mhz: Option<f64>,
    #[arg(long, value_delimiter = ',')]
    ratios: Option<Vec<f64>>,
    #[arg(long, short = 'm')]
    m: Option<usize>,
    #[arg(long)]
    gamma_r: Option<f64>,
    #[arg(long)]
    gamma_bbr: Option<f64>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    phi0_samples: Option<usize>,
}

#[derive(Args)]
struct ProfileArgs {
    #[arg(long)]
    n_atoms: Option<usize>,
    #[arg(long, value_parser = parse_regime)]
    regime: Option<DressingRegime>,
    #[arg(long)]
    omega: Option<f64>,
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long)]
    gamma_r: Option<f64>,
    #[arg(long)]
    c6: Option<f64>,
    #[arg(long)]
    r_min_rb: Option<f64>,
    #[arg(long)]
    r_max_rb: Option<f64>,
    #[arg(long)]
    r_steps: Option<usize>,
    #[arg(long)]
    r_ref_rb: Option<f64>,
}

#[derive(Args)]
struct PerturbArgs {
    #[arg(long, value_parser = parse_lattice)]
    lattice: Option<LatticeKind>,
    #[arg(long)]
    extent: Option<usize>,
    #[arg(long)]
    spacing: Option<f64>,
    #[arg(long)]
    omega: Option<f64>,
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long)]
    c6: Option<f64>,
}

#[derive(Args)]
struct AdiabaticArgs {
    #[arg(long, value_parser = parse_shape)]
    shape: Option<RampShape>,
    #[arg(long)]
    duration: Option<f64>,
    #[arg(long)]
    omega_start: Option<f64>,
    #[arg(long)]
    omega_end: Option<f64>,
    #[arg(long)]
    delta_start: Option<f64>,
    #[arg(long)]
    delta_end: Option<f64>,
    #[arg(long)]
    n_e: Option<f64>,
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long, value_parser = parse_branch)]
    branch: Option<Branch>,
}

#[derive(Args)]
struct SelftestArgs {
    /// Criteria numbers to run, comma separated; default all.
    #[arg(long, value_delimiter = ',')]
    only: Option<Vec<usize>>,
}

fn load_config(path: Option<&PathBuf>) -> Result<FileConfig, CmdError> {
    match path {
        None => Ok(FileConfig::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p)?;
            toml::from_str(&text).map_err(|e| {
                CmdError::Physics(catspin::Error::Validation(format!("config: {e}")))
            })
        }
    }
}

fn run(cli: Cli) -> CmdResult {
    if cli.threads > 0 {
        // a failure here just means a pool already exists
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global();
    }
    if let Some(seed) = cli.seed {
        println!("seed {seed} (recorded; the physics is deterministic)");
    }
    let mut cfg = load_config(cli.config.as_ref())?;
    let out = OutputCtx {
        dir: cli.output_dir.clone(),
        format: cli.format,
        timestamp: !cli.no_timestamp,
    };

    match cli.command {
        Command::Evolve(a) => {
            let p = &mut cfg.evolve;
            merge(&mut p.n_atoms, a.n_atoms);
            merge(&mut p.hamiltonian, a.hamiltonian);
            merge(&mut p.chi, a.chi);
            merge(&mut p.omega_mhz, a.omega_mhz);
            merge(&mut p.delta_mhz, a.delta_mhz);
            merge(&mut p.phi0, a.phi0);
            merge(&mut p.scaled_times, a.scaled_times);
            p.husimi |= a.husimi;
            merge(&mut p.theta_samples, a.theta_samples);
            merge(&mut p.phi_samples, a.phi_samples);
            commands::cmd_evolve(p, &out)
        }
        Command::Catscan(a) => {
            let p = &mut cfg.catscan;
            merge(&mut p.n_atoms, a.n_atoms);
            merge(&mut p.hamiltonian, a.hamiltonian);
            merge(&mut p.chi, a.chi);
            merge(&mut p.omega_mhz, a.omega_mhz);
            merge(&mut p.delta_mhz, a.delta_mhz);
            merge(&mut p.m_list, a.m_list);
            merge(&mut p.samples, a.samples);
            merge(&mut p.phi0_samples, a.phi0_samples);
            merge(&mut p.refine_rel_tol, a.refine_rel_tol);
            commands::cmd_catscan(p, &out)
        }
        Command::Loss(a) => {
            let p = &mut cfg.loss;
            merge(&mut p.n_atoms, a.n_atoms);
            merge(&mut p.delta_mhz, a.delta_mhz);
            merge(&mut p.ratios, a.ratios);
            merge(&mut p.m, a.m);
            merge(&mut p.gamma_r, a.gamma_r);
            merge(&mut p.gamma_bbr, a.gamma_bbr);
            merge(&mut p.samples, a.samples);
            merge(&mut p.phi0_samples, a.phi0_samples);
            commands::cmd_loss(p, &out)
        }
        Command::Profile(a) => {
            let p = &mut cfg.profile;
            merge(&mut p.n_atoms, a.n_atoms);
            merge(&mut p.regime, a.regime);
            merge(&mut p.omega, a.omega);
            merge(&mut p.delta, a.delta);
            merge(&mut p.gamma_r, a.gamma_r);
            merge(&mut p.c6, a.c6);
            merge(&mut p.r_min_rb, a.r_min_rb);
            merge(&mut p.r_max_rb, a.r_max_rb);
            merge(&mut p.r_steps, a.r_steps);
            merge(&mut p.r_ref_rb, a.r_ref_rb);
            commands::cmd_profile(p, &out)
        }
        Command::Perturb(a) => {
            let p = &mut cfg.perturb;
            merge(&mut p.lattice, a.lattice);
            merge(&mut p.extent, a.extent);
            merge(&mut p.spacing, a.spacing);
            merge(&mut p.omega, a.omega);
            merge(&mut p.delta, a.delta);
            merge(&mut p.c6, a.c6);
            commands::cmd_perturb(p, &out)
        }
        Command::Adiabatic(a) => {
            let p = &mut cfg.adiabatic;
            merge(&mut p.shape, a.shape);
            merge(&mut p.duration, a.duration);
            merge(&mut p.omega_start, a.omega_start);
            merge(&mut p.omega_end, a.omega_end);
            merge(&mut p.delta_start, a.delta_start);
            merge(&mut p.delta_end, a.delta_end);
            merge(&mut p.n_e, a.n_e);
            merge(&mut p.steps, a.steps);
            merge(&mut p.branch, a.branch);
            commands::cmd_adiabatic(p, &out)
        }
        Command::Selftest(a) => commands::cmd_selftest(&a.only.unwrap_or_default()),
    }
}

fn exit_code(err: &CmdError) -> u8 {
    match err {
        CmdError::Physics(catspin::Error::Validation(_))
        | CmdError::Physics(catspin::Error::DimensionMismatch { .. }) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}
