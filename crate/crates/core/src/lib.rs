//! Collective-spin Kerr dynamics and multi-component cat generation under
//! Rydberg dressing: symmetric-subspace states, diagonal dressing
//! Hamiltonians, cat-fidelity optimization, decoherence budgets, dressed
//! two-level adiabaticity, perturbative many-body interactions, and few-atom
//! steady-state interaction profiles.

pub mod adiabatic;
pub mod cat;
pub mod decoherence;
pub mod dynamics;
pub mod error;
pub mod geometry;
pub mod hamiltonian;
pub mod lindblad;
pub mod manybody;
pub mod optim;
pub mod selftest;
pub mod spin;

pub use error::{Error, Result};
