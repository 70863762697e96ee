//! Quasi-probability decomposition of the inverse global depolarizing channel.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::density::{conjugate_matrix, depolarize_matrix};
use crate::analytics::{gamma_layer, NoiseCircuitSpec};
use crate::error::{Error, Result, MAX_DENSE_QUBITS};
use crate::hamiltonian::PauliMask;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChannelOp {
    Identity,
    /// Conjugation by a uniformly drawn non-identity Pauli string.
    PauliTwirl,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuasiProbDecomposition {
    pub qubits: u32,
    pub operations: Vec<ChannelOp>,
    pub q: Vec<f64>,
    pub gamma: f64,
}

impl QuasiProbDecomposition {
    /// The decomposition of the identity map itself.
    pub fn trivial(qubits: u32) -> Self {
        QuasiProbDecomposition {
            qubits,
            operations: vec![ChannelOp::Identity, ChannelOp::PauliTwirl],
            q: vec![1.0, 0.0],
            gamma: 1.0,
        }
    }

    /// Probability of drawing branch `i`, `|q_i| / gamma`.
    pub fn probability(&self, i: usize) -> f64 {
        self.q[i].abs() / self.gamma
    }

    pub fn sign(&self, i: usize) -> f64 {
        if self.q[i] < 0.0 {
            -1.0
        } else {
            1.0
        }
    }
}

/// Inverse of a depolarizing layer with probability `p` on `qubits` qubits.
pub fn build_qpd_for(p: f64, qubits: u32) -> Result<QuasiProbDecomposition> {
    if p == 1.0 {
        return Err(Error::Domain("depolarizing probability 1 has no inverse".into()));
    }
    if !(0.0..1.0).contains(&p) {
        return Err(Error::invalid("noise.p", format!("must lie in [0, 1), got {p}")));
    }
    let inv_d2 = (-2.0 * qubits as f64).exp2();
    let q_id = (1.0 - p * inv_d2) / (1.0 - p);
    let q_twirl = -(p / (1.0 - p)) * (1.0 - inv_d2);
    Ok(QuasiProbDecomposition {
        qubits,
        operations: vec![ChannelOp::Identity, ChannelOp::PauliTwirl],
        q: vec![q_id, q_twirl],
        gamma: q_id.abs() + q_twirl.abs(),
    })
}

pub fn build_qpd(noise: &NoiseCircuitSpec) -> Result<QuasiProbDecomposition> {
    let qpd = build_qpd_for(noise.p_layer(), noise.qubits())?;
    debug_assert!((qpd.gamma / gamma_layer(noise)? - 1.0).abs() < 1e-12);
    Ok(qpd)
}

/// Average of `P m P` over every non-identity Pauli on `n` qubits.
pub fn twirl_matrix(m: &DMatrix<Complex64>, n: usize) -> DMatrix<Complex64> {
    let count = (1usize << (2 * n)) - 1;
    let mut acc = DMatrix::<Complex64>::zeros(m.nrows(), m.ncols());
    for k in 1..=count {
        acc += conjugate_matrix(m, &PauliMask::from_index(k, n));
    }
    acc / Complex64::new(count as f64, 0.0)
}

/// Matrix of a linear map on `d x d` matrices acting on column-stacked vectors.
pub fn superoperator(n: usize, map: impl Fn(&DMatrix<Complex64>) -> DMatrix<Complex64>) -> Result<DMatrix<Complex64>> {
    if n > MAX_DENSE_QUBITS / 2 {
        return Err(Error::capacity(n));
    }
    let d = 1usize << n;
    let mut s = DMatrix::<Complex64>::zeros(d * d, d * d);
    for col in 0..d {
        for row in 0..d {
            let mut basis = DMatrix::<Complex64>::zeros(d, d);
            basis[(row, col)] = Complex64::new(1.0, 0.0);
            let image = map(&basis);
            for (k, z) in image.iter().enumerate() {
                s[(k, col * d + row)] = *z;
            }
        }
    }
    Ok(s)
}

pub fn depolarizing_superoperator(n: usize, p: f64) -> Result<DMatrix<Complex64>> {
    superoperator(n, |m| depolarize_matrix(m, p))
}

/// `sum_i q_i F_i` as a superoperator.
pub fn qpd_superoperator(qpd: &QuasiProbDecomposition) -> Result<DMatrix<Complex64>> {
    let n = qpd.qubits as usize;
    superoperator(n, |m| {
        let mut out = DMatrix::<Complex64>::zeros(m.nrows(), m.ncols());
        for (op, &q) in qpd.operations.iter().zip(&qpd.q) {
            let image = match op {
                ChannelOp::Identity => m.clone(),
                ChannelOp::PauliTwirl => twirl_matrix(m, n),
            };
            out += image * Complex64::new(q, 0.0);
        }
        out
    })
}

/// Largest entry of `QPD . E - I` and `E . QPD - I` for a layer at `p`.
pub fn composition_defect(qpd: &QuasiProbDecomposition, p: f64) -> Result<f64> {
    let n = qpd.qubits as usize;
    let inv = qpd_superoperator(qpd)?;
    let e = depolarizing_superoperator(n, p)?;
    let id = DMatrix::<Complex64>::identity(inv.nrows(), inv.ncols());
    let left = (&inv * &e - &id).camax();
    let right = (&e * &inv - &id).camax();
    Ok(left.max(right))
}
