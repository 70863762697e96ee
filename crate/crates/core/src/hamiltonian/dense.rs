//! Dense matrix oracles for small instances.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::hubbard::{build_hubbard_pauli, HubbardSpec};
use super::pauli::{PauliDecomposition, PauliMask};
use crate::error::{Error, Result, MAX_DENSE_QUBITS};

fn check_capacity(n: usize) -> Result<()> {
    if n > MAX_DENSE_QUBITS {
        Err(Error::capacity(n))
    } else {
        Ok(())
    }
}

fn masks(decomp: &PauliDecomposition) -> Result<Vec<(PauliMask, f64)>> {
    decomp.terms().map(|(s, c)| Ok((s.mask()?, c))).collect()
}

/// `sum_j a_j P_j + identity_coefficient * I` as a dense `2^n x 2^n` matrix.
pub fn reconstruct_matrix(decomp: &PauliDecomposition) -> Result<DMatrix<Complex64>> {
    check_capacity(decomp.n())?;
    let d = 1usize << decomp.n();
    let mut m = DMatrix::<Complex64>::zeros(d, d);
    let terms = masks(decomp)?;
    for col in 0..d {
        m[(col, col)] += decomp.identity_coefficient();
        for (mask, c) in &terms {
            let (row, phase) = mask.apply(col);
            m[(row, col)] += phase * *c;
        }
    }
    Ok(m)
}

/// Minimal eigenvalue of the full reconstructed matrix.
///
/// Diagonalises the whole `2^n x 2^n` matrix; prefer
/// [`exact_ground_energy`] for Hubbard instances.
pub fn dense_ground_energy(decomp: &PauliDecomposition) -> Result<f64> {
    let m = reconstruct_matrix(decomp)?;
    let eig = m.symmetric_eigen();
    Ok(eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min))
}

/// Basis states grouped by `(N_up, N_down)`, the particle numbers the
/// Hubbard Hamiltonian conserves. Sectors are ordered lexicographically.
fn particle_sectors(spec: &HubbardSpec) -> Vec<Vec<usize>> {
    let l = spec.sites();
    let up_mask = (1usize << l) - 1;
    let mut sectors = vec![Vec::new(); (l + 1) * (l + 1)];
    for b in 0..1usize << spec.qubits() {
        let n_up = (b & up_mask).count_ones() as usize;
        let n_down = (b >> l).count_ones() as usize;
        sectors[n_up * (l + 1) + n_down].push(b);
    }
    sectors
}

/// Lowest eigenpair of a Hubbard instance, found block by block.
///
/// The Hamiltonian is block diagonal in the particle-number sectors, so the
/// dense spectrum is the union of the block spectra. Among degenerate
/// minima the first sector in lexicographic order and the first eigenvector
/// of that block win. The returned vector has its largest component real
/// and positive.
pub fn ground_state(spec: &HubbardSpec) -> Result<(f64, DVector<Complex64>)> {
    spec.validate()?;
    check_capacity(spec.qubits())?;
    let decomp = build_hubbard_pauli(spec)?;
    let terms = masks(&decomp)?;
    let d = 1usize << spec.qubits();

    let mut position = vec![usize::MAX; d];
    let mut best: Option<(f64, DVector<Complex64>)> = None;
    for sector in particle_sectors(spec) {
        if sector.is_empty() {
            continue;
        }
        for (i, &b) in sector.iter().enumerate() {
            position[b] = i;
        }
        let k = sector.len();
        let mut block = DMatrix::<Complex64>::zeros(k, k);
        for (col, &b) in sector.iter().enumerate() {
            block[(col, col)] += decomp.identity_coefficient();
            // Single hopping strings leave the sector; only the XX + YY sum stays.
            let mut images: BTreeMap<usize, Complex64> = BTreeMap::new();
            for (mask, c) in &terms {
                let (image, phase) = mask.apply(b);
                *images.entry(image).or_default() += phase * *c;
            }
            for (image, amp) in images {
                let row = position[image];
                if row == usize::MAX {
                    debug_assert!(amp.norm() < 1e-12, "sector not conserved");
                    continue;
                }
                block[(row, col)] += amp;
            }
        }
        let eig = block.symmetric_eigen();
        let (idx, &value) = eig
            .eigenvalues
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .expect("non-empty block");
        // A small tolerance keeps the choice among degenerate sectors stable.
        let better = best.as_ref().is_none_or(|(e, _)| value < *e - 1e-12);
        if better {
            let mut full = DVector::<Complex64>::zeros(d);
            for (i, &b) in sector.iter().enumerate() {
                full[b] = eig.eigenvectors[(i, idx)];
            }
            best = Some((value, full));
        }
        for &b in &sector {
            position[b] = usize::MAX;
        }
    }

    let (energy, mut vector) = best.expect("at least one sector");
    let pivot = vector
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
        .map(|(i, _)| i)
        .expect("non-empty vector");
    let phase = vector[pivot] / vector[pivot].norm();
    vector.iter_mut().for_each(|z| *z /= phase);
    let norm = vector.norm();
    vector.iter_mut().for_each(|z| *z /= norm);
    Ok((energy, vector))
}

/// Ground-state energy of a Hubbard instance with at most 12 qubits.
pub fn exact_ground_energy(spec: &HubbardSpec) -> Result<f64> {
    ground_state(spec).map(|(e, _)| e)
}
