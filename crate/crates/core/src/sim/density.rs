//! Dense density matrices and the channel actions the simulator needs.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result, MAX_DENSE_QUBITS};
use crate::hamiltonian::{ground_state, HubbardSpec, PauliDecomposition, PauliMask};

/// `(1 - p) m + p Tr[m] I / d` on an arbitrary square matrix.
pub fn depolarize_matrix(m: &DMatrix<Complex64>, p: f64) -> DMatrix<Complex64> {
    let d = m.nrows();
    let shift = m.trace() * (p / d as f64);
    let mut out = m * Complex64::new(1.0 - p, 0.0);
    for k in 0..d {
        out[(k, k)] += shift;
    }
    out
}

/// `P m P^dagger` for the Pauli string encoded by `mask`.
pub fn conjugate_matrix(m: &DMatrix<Complex64>, mask: &PauliMask) -> DMatrix<Complex64> {
    let d = m.nrows();
    let images: Vec<(usize, Complex64)> = (0..d).map(|b| mask.apply(b)).collect();
    let mut out = DMatrix::<Complex64>::zeros(d, d);
    for c in 0..d {
        let (c2, pc) = images[c];
        for r in 0..d {
            let (r2, pr) = images[r];
            out[(r2, c2)] = pr * m[(r, c)] * pc.conj();
        }
    }
    out
}

/// `Tr[P m]` for the Pauli string encoded by `mask`.
pub fn pauli_trace(m: &DMatrix<Complex64>, mask: &PauliMask) -> Complex64 {
    (0..m.nrows())
        .map(|b| {
            let (image, phase) = mask.apply(b);
            phase * m[(b, image)]
        })
        .sum()
}

/// Unit-trace Hermitian positive semidefinite matrix on `n` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    n: usize,
    entries: DMatrix<Complex64>,
}

impl DensityMatrix {
    pub fn from_matrix(n: usize, entries: DMatrix<Complex64>) -> Result<Self> {
        if n > MAX_DENSE_QUBITS {
            return Err(Error::capacity(n));
        }
        let d = 1usize << n;
        if entries.nrows() != d || entries.ncols() != d {
            return Err(Error::invalid("density", format!("expected a {d}x{d} matrix")));
        }
        Ok(DensityMatrix { n, entries })
    }

    pub fn pure(n: usize, psi: &DVector<Complex64>) -> Result<Self> {
        let norm = psi.norm();
        if !(norm > 0.0) {
            return Err(Error::invalid("state", "zero vector"));
        }
        let psi = psi / Complex64::new(norm, 0.0);
        Self::from_matrix(n, &psi * psi.adjoint())
    }

    pub fn maximally_mixed(n: usize) -> Result<Self> {
        if n > MAX_DENSE_QUBITS {
            return Err(Error::capacity(n));
        }
        let d = 1usize << n;
        Self::from_matrix(n, DMatrix::identity(d, d) * Complex64::new(1.0 / d as f64, 0.0))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn trace(&self) -> f64 {
        self.entries.trace().re
    }

    pub fn purity(&self) -> f64 {
        (&self.entries * &self.entries).trace().re
    }

    pub fn depolarize(&self, p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::invalid("p", format!("must lie in [0, 1], got {p}")));
        }
        Ok(DensityMatrix {
            n: self.n,
            entries: depolarize_matrix(&self.entries, p),
        })
    }

    pub fn conjugate(&self, mask: &PauliMask) -> Self {
        DensityMatrix {
            n: self.n,
            entries: conjugate_matrix(&self.entries, mask),
        }
    }

    /// `Tr[P rho]`, real for a Hermitian `rho`.
    pub fn expectation(&self, mask: &PauliMask) -> f64 {
        pauli_trace(&self.entries, mask).re
    }

    /// `Tr[H rho]`.
    pub fn energy(&self, decomp: &PauliDecomposition) -> Result<f64> {
        if decomp.n() != self.n {
            return Err(Error::invalid("hamiltonian", "qubit count differs from the state"));
        }
        let mut e = decomp.identity_coefficient() * self.trace();
        for (s, c) in decomp.terms() {
            e += c * self.expectation(&s.mask()?);
        }
        Ok(e)
    }

    /// Largest deviation from Hermiticity, from unit trace, and the most
    /// negative eigenvalue.
    pub fn defects(&self) -> (f64, f64, f64) {
        let herm = (&self.entries - self.entries.adjoint())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        let trace = (self.entries.trace() - Complex64::new(1.0, 0.0)).norm();
        let hermitian_part = (&self.entries + self.entries.adjoint()) * Complex64::new(0.5, 0.0);
        let min_eig = hermitian_part
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min);
        (herm, trace, min_eig)
    }

    /// Trace within 1e-10, Hermitian within 1e-12, eigenvalues >= -1e-10.
    pub fn check(&self) -> Result<()> {
        let (herm, trace, min_eig) = self.defects();
        if herm > 1e-12 {
            return Err(Error::Domain(format!("density matrix not Hermitian (deviation {herm:e})")));
        }
        if trace > 1e-10 {
            return Err(Error::Domain(format!("density matrix trace off by {trace:e}")));
        }
        if min_eig < -1e-10 {
            return Err(Error::Domain(format!("density matrix has eigenvalue {min_eig:e}")));
        }
        Ok(())
    }
}

/// Pure state on the exact ground vector of a Hubbard instance.
pub fn prepare_ground_state(spec: &HubbardSpec) -> Result<DensityMatrix> {
    let (_, psi) = ground_state(spec)?;
    DensityMatrix::pure(spec.qubits(), &psi)
}
