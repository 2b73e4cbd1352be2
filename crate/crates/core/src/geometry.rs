//! Atom arrangements and van der Waals pair potentials V_ij = C₆ / r_ij⁶.

use serde::{Deserialize, Serialize};

use crate::error::{validate, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LatticeKind {
    Square,
    Triangular,
    Chain,
}

/// Atom positions (meters) plus the C₆ coefficient (rad·m⁶/s).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LatticeGeometry {
    positions: Vec<[f64; 3]>,
    c6: f64,
}

impl LatticeGeometry {
    pub fn from_positions(positions: Vec<[f64; 3]>, c6: f64) -> Result<Self> {
        validate(!positions.is_empty(), "need at least one atom")?;
        validate(c6.is_finite(), "c6 must be finite")?;
        let geom = Self { positions, c6 };
        for i in 0..geom.n_atoms() {
            for j in i + 1..geom.n_atoms() {
                validate(
                    geom.distance(i, j) > 0.0,
                    format!("atoms {i} and {j} coincide"),
                )?;
            }
        }
        Ok(geom)
    }

    pub fn n_atoms(&self) -> usize {
        self.positions.len()
    }

    pub fn positions(&self) -> &[[f64; 3]] {
        &self.positions
    }

    pub fn c6(&self) -> f64 {
        self.c6
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        let a = self.positions[i];
        let b = self.positions[j];
        ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
    }

    /// Pair potential C₆ / r⁶.
    pub fn v(&self, i: usize, j: usize) -> f64 {
        self.c6 / self.distance(i, j).powi(6)
    }
}

/// Generates a standard arrangement.
///
/// Extent conventions: `square` gives an extent x extent patch, `chain` gives
/// `extent` atoms in a line, `triangular` gives a triangular cluster with
/// `extent` bonds per side ((e+1)(e+2)/2 atoms; extent 1 is the equilateral
/// triangle).
pub fn build_lattice(
    kind: LatticeKind,
    constant: f64,
    extent: usize,
    c6: f64,
) -> Result<LatticeGeometry> {
    validate(constant > 0.0, "lattice constant must be > 0")?;
    validate(extent >= 1, "extent must be >= 1")?;
    let positions = match kind {
        LatticeKind::Square => {
            let mut p = Vec::with_capacity(extent * extent);
            for ix in 0..extent {
                for iy in 0..extent {
                    p.push([ix as f64 * constant, iy as f64 * constant, 0.0]);
                }
            }
            p
        }
        LatticeKind::Chain => (0..extent)
            .map(|i| [i as f64 * constant, 0.0, 0.0])
            .collect(),
        LatticeKind::Triangular => {
            let mut p = Vec::new();
            for row in 0..=extent {
                for col in 0..=(extent - row) {
                    p.push([
                        (col as f64 + 0.5 * row as f64) * constant,
                        row as f64 * constant * 3f64.sqrt() / 2.0,
                        0.0,
                    ]);
                }
            }
            p
        }
    };
    LatticeGeometry::from_positions(positions, c6)
}
