//! Two-dimensional Fermi-Hubbard model and its Jordan-Wigner Pauli form.
//!
//! Mode ordering: all spin-up modes in row-major site order, then all
//! spin-down modes. Mode `m` is qubit `m`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::pauli::{Pauli, PauliDecomposition, PauliString};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    Periodic,
    Open,
}

/// Lattice geometry plus `(t, U, mu)` couplings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HubbardSpec {
    pub rows: usize,
    pub cols: usize,
    pub boundary: Boundary,
    pub t: f64,
    pub u: f64,
    pub mu: f64,
}

impl HubbardSpec {
    pub fn new(rows: usize, cols: usize, boundary: Boundary, t: f64, u: f64, mu: f64) -> Result<Self> {
        let spec = HubbardSpec {
            rows,
            cols,
            boundary,
            t,
            u,
            mu,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// The 8x8 periodic lattice at `(U, t, mu) = (8, 1, 3.75)`.
    pub fn reference_instance() -> Self {
        HubbardSpec {
            rows: 8,
            cols: 8,
            boundary: Boundary::Periodic,
            t: 1.0,
            u: 8.0,
            mu: 3.75,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.rows == 0 {
            return Err(Error::invalid("model.rows", "must be at least 1"));
        }
        if self.cols == 0 {
            return Err(Error::invalid("model.cols", "must be at least 1"));
        }
        for (name, v) in [("model.t", self.t), ("model.u", self.u), ("model.mu", self.mu)] {
            if !v.is_finite() {
                return Err(Error::invalid(name, "must be finite"));
            }
        }
        Ok(())
    }

    pub fn sites(&self) -> usize {
        self.rows * self.cols
    }

    pub fn qubits(&self) -> usize {
        2 * self.sites()
    }

    pub fn up_mode(&self, site: usize) -> usize {
        site
    }

    pub fn down_mode(&self, site: usize) -> usize {
        self.sites() + site
    }

    /// Distinct nearest-neighbour bonds `(i, j)` with `i < j`.
    ///
    /// A periodic wrap bond is added only along dimensions of length at
    /// least 3; shorter dimensions would duplicate a bond or form a self loop.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let site = |r: usize, c: usize| r * self.cols + c;
        let periodic = self.boundary == Boundary::Periodic;
        let mut bonds = BTreeSet::new();
        let mut push = |a: usize, b: usize| {
            bonds.insert((a.min(b), a.max(b)));
        };
        for r in 0..self.rows {
            for c in 0..self.cols {
                if c + 1 < self.cols {
                    push(site(r, c), site(r, c + 1));
                } else if periodic && self.cols >= 3 {
                    push(site(r, c), site(r, 0));
                }
                if r + 1 < self.rows {
                    push(site(r, c), site(r + 1, c));
                } else if periodic && self.rows >= 3 {
                    push(site(r, c), site(0, c));
                }
            }
        }
        bonds.into_iter().collect()
    }

    /// `U L / 4 - mu L`, the coefficient of the identity string.
    pub fn identity_coefficient_closed_form(&self) -> f64 {
        let l = self.sites() as f64;
        self.u * l / 4.0 - self.mu * l
    }

    /// `E t^2 + 2L (mu/2 - U/4)^2 + L (U/4)^2` with `E` the bond count.
    ///
    /// For periodic lattices with both sides at least 3, `E = 2L`.
    pub fn norm2_squared_closed_form(&self) -> f64 {
        let l = self.sites() as f64;
        let e = self.edges().len() as f64;
        let z = self.mu / 2.0 - self.u / 4.0;
        let zz = self.u / 4.0;
        e * self.t * self.t + 2.0 * l * z * z + l * zz * zz
    }
}

fn hopping_strings(n: usize, a: usize, b: usize) -> Result<[PauliString; 2]> {
    debug_assert!(a < b);
    let mut xx: Vec<(usize, Pauli)> = vec![(a, Pauli::X), (b, Pauli::X)];
    let mut yy: Vec<(usize, Pauli)> = vec![(a, Pauli::Y), (b, Pauli::Y)];
    for q in a + 1..b {
        xx.push((q, Pauli::Z));
        yy.push((q, Pauli::Z));
    }
    Ok([
        PauliString::with_letters(n, &xx)?,
        PauliString::with_letters(n, &yy)?,
    ])
}

/// Jordan-Wigner Pauli decomposition of the Hubbard Hamiltonian.
///
/// Each bond and spin contributes `-t/2 (X Z..Z X + Y Z..Z Y)`; each site a
/// `U/4 Z_up Z_down`; each mode a `(mu/2 - U/4) Z`.
pub fn build_hubbard_pauli(spec: &HubbardSpec) -> Result<PauliDecomposition> {
    spec.validate()?;
    let n = spec.qubits();
    let mut h = PauliDecomposition::new(n)?;

    for (i, j) in spec.edges() {
        for (a, b) in [(spec.up_mode(i), spec.up_mode(j)), (spec.down_mode(i), spec.down_mode(j))] {
            for s in hopping_strings(n, a, b)? {
                h.add_term(s, -spec.t / 2.0)?;
            }
        }
    }

    for site in 0..spec.sites() {
        let (up, down) = (spec.up_mode(site), spec.down_mode(site));
        h.add_term(
            PauliString::with_letters(n, &[(up, Pauli::Z), (down, Pauli::Z)])?,
            spec.u / 4.0,
        )?;
        for mode in [up, down] {
            h.add_term(
                PauliString::with_letters(n, &[(mode, Pauli::Z)])?,
                spec.mu / 2.0 - spec.u / 4.0,
            )?;
        }
    }

    h.add_identity(spec.identity_coefficient_closed_form())?;
    Ok(h)
}
