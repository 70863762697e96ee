//! Closed-form cost model for probabilistic error cancellation under layered
//! global depolarizing noise.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hamiltonian::PauliDecomposition;

/// Channel-dependent prefactor of the shot bound; 1 for depolarizing noise.
pub const BETA_DEPOLARIZING: f64 = 1.0;

/// `D` layers, each followed by global depolarizing noise of strength `P`, on `n` qubits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseCircuitSpec {
    layers: u32,
    p_layer: f64,
    qubits: u32,
    #[serde(default = "default_beta")]
    beta: f64,
}

fn default_beta() -> f64 {
    BETA_DEPOLARIZING
}

impl NoiseCircuitSpec {
    pub fn new(layers: u32, p_layer: f64, qubits: u32) -> Result<Self> {
        if layers == 0 {
            return Err(Error::invalid("circuit.layers", "must be at least 1"));
        }
        if qubits == 0 {
            return Err(Error::invalid("circuit.qubits", "must be at least 1"));
        }
        check_layer_probability(p_layer)?;
        Ok(NoiseCircuitSpec {
            layers,
            p_layer,
            qubits,
            beta: BETA_DEPOLARIZING,
        })
    }

    /// Same circuit at another noise level.
    pub fn with_p(&self, p_layer: f64) -> Result<Self> {
        check_layer_probability(p_layer)?;
        Ok(NoiseCircuitSpec { p_layer, ..*self })
    }

    pub fn layers(&self) -> u32 {
        self.layers
    }

    pub fn p_layer(&self) -> f64 {
        self.p_layer
    }

    pub fn qubits(&self) -> u32 {
        self.qubits
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// `2 / d^2` with `d = 2^n`; underflows to zero for large registers.
    pub fn two_over_d_squared(&self) -> f64 {
        2.0 * (-2.0 * self.qubits as f64).exp2()
    }

    /// Total depolarizing probability after all layers, `1 - (1-P)^D`.
    pub fn total_depolarizing(&self) -> f64 {
        1.0 - (1.0 - self.p_layer).powi(self.layers as i32)
    }
}

fn check_layer_probability(p: f64) -> Result<()> {
    if p == 1.0 {
        return Err(Error::Domain(
            "layer depolarizing probability 1 makes the inverse channel diverge".into(),
        ));
    }
    if !(0.0..1.0).contains(&p) {
        return Err(Error::invalid("noise.p", format!("must lie in [0, 1), got {p}")));
    }
    Ok(())
}

/// Which weight vector defines the norm entering the shot bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NormConvention {
    /// `sqrt(Tr[H^2]/d)`: all Pauli weights including the identity.
    #[default]
    Frobenius,
    /// Non-identity Pauli weights only.
    Traceless,
}

/// The three Hamiltonian numbers the analytic model needs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HamiltonianSummary {
    pub norm2: f64,
    pub trace_over_d: f64,
    pub e0_proxy: f64,
}

impl HamiltonianSummary {
    pub fn new(norm2: f64, trace_over_d: f64, e0_proxy: f64) -> Result<Self> {
        if !(norm2.is_finite() && norm2 > 0.0) {
            return Err(Error::invalid("hamiltonian.norm2", format!("must be positive, got {norm2}")));
        }
        if !trace_over_d.is_finite() {
            return Err(Error::invalid("hamiltonian.trace_over_d", "must be finite"));
        }
        if !e0_proxy.is_finite() {
            return Err(Error::invalid("hamiltonian.e0_proxy", "must be finite"));
        }
        Ok(HamiltonianSummary {
            norm2,
            trace_over_d,
            e0_proxy,
        })
    }

    pub fn from_decomposition(
        decomp: &PauliDecomposition,
        e0_proxy: f64,
        convention: NormConvention,
    ) -> Result<Self> {
        let squared = match convention {
            NormConvention::Frobenius => decomp.frobenius_squared(),
            NormConvention::Traceless => decomp.norm2_squared(),
        };
        HamiltonianSummary::new(squared.sqrt(), decomp.identity_coefficient(), e0_proxy)
    }

    pub fn with_e0(&self, e0_proxy: f64) -> Result<Self> {
        HamiltonianSummary::new(self.norm2, self.trace_over_d, e0_proxy)
    }
}

/// Optimal per-layer negativity `(1 + (1 - 2/d^2) P) / (1 - P)`.
pub fn gamma_layer(noise: &NoiseCircuitSpec) -> Result<f64> {
    let p = noise.p_layer();
    check_layer_probability(p)?;
    Ok((1.0 + (1.0 - noise.two_over_d_squared()) * p) / (1.0 - p))
}

/// `gamma_layer^D`; `+inf` once it leaves the floating range.
pub fn gamma_total(noise: &NoiseCircuitSpec) -> Result<f64> {
    let g = gamma_layer(noise)?;
    Ok(g.powf(noise.layers() as f64))
}

fn check_shots(n_shots: u64) -> Result<()> {
    if n_shots == 0 {
        Err(Error::invalid("shots", "need at least one shot"))
    } else {
        Ok(())
    }
}

/// Best-case PEC standard deviation `||H|| gamma_tot sqrt(beta / N)`.
pub fn pec_sigma(noise: &NoiseCircuitSpec, ham: &HamiltonianSummary, n_shots: u64) -> Result<f64> {
    check_shots(n_shots)?;
    let g = gamma_total(noise)?;
    Ok(ham.norm2 * g * (noise.beta() / n_shots as f64).sqrt())
}

/// Best-case unmitigated standard deviation `||H|| / sqrt(N)`.
pub fn raw_sigma(ham: &HamiltonianSummary, n_shots: u64) -> Result<f64> {
    check_shots(n_shots)?;
    Ok(ham.norm2 / (n_shots as f64).sqrt())
}

/// Mean energy after `D` depolarizing layers:
/// `(1-P)^D e0 + (1 - (1-P)^D) Tr[H]/d`.
pub fn noisy_mean(noise: &NoiseCircuitSpec, ham: &HamiltonianSummary) -> f64 {
    noisy_mean_from(noise, ham.e0_proxy, ham.trace_over_d)
}

pub fn noisy_mean_from(noise: &NoiseCircuitSpec, e0: f64, trace_over_d: f64) -> f64 {
    let survive = (1.0 - noise.p_layer()).powi(noise.layers() as i32);
    survive * e0 + (1.0 - survive) * trace_over_d
}

/// Layer noise at which the noisy mean reaches `e_plus`.
pub fn threshold_p(ham: &HamiltonianSummary, e_plus: f64, layers: u32) -> Result<f64> {
    if layers == 0 {
        return Err(Error::invalid("circuit.layers", "must be at least 1"));
    }
    let num = e_plus - ham.trace_over_d;
    let den = ham.e0_proxy - ham.trace_over_d;
    let ratio = num / den;
    if !(ratio.is_finite() && ratio > 0.0 && ratio <= 1.0) {
        return Err(Error::Domain(format!(
            "bound ratio (E+ - Tr[H]/d) / (E0 - Tr[H]/d) = {ratio} is outside (0, 1]"
        )));
    }
    Ok(1.0 - ratio.powf(1.0 / layers as f64))
}

/// Layer depolarizing probability from a two-qubit gate error: `1 - (1-p)^N`.
pub fn p_layer_from_gate_error(p_2q: f64, gates_per_layer: u32) -> Result<f64> {
    if !(0.0..1.0).contains(&p_2q) {
        return Err(Error::invalid("noise.p_2q", format!("must lie in [0, 1), got {p_2q}")));
    }
    Ok(1.0 - (1.0 - p_2q).powi(gates_per_layer as i32))
}

/// Result of inverting the shot bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ShotCount {
    Finite(u64),
    /// The requirement exceeds the representable range.
    Unbounded,
}

impl ShotCount {
    pub fn finite(self) -> Option<u64> {
        match self {
            ShotCount::Finite(n) => Some(n),
            ShotCount::Unbounded => None,
        }
    }
}

/// Smallest `N` with `||H||^2 beta gamma_tot^2 / N <= target_sigma^2`.
///
/// Values within `1e-12` relative of an integer are taken as that integer so
/// that inverting [`pec_sigma`] gives back the shot count it was built from.
pub fn shots_required(
    noise: &NoiseCircuitSpec,
    ham: &HamiltonianSummary,
    target_sigma: f64,
) -> Result<ShotCount> {
    if !(target_sigma.is_finite() && target_sigma > 0.0) {
        return Err(Error::invalid("target_sigma", "must be positive and finite"));
    }
    let g = gamma_total(noise)?;
    let exact = (ham.norm2 * g / target_sigma).powi(2) * noise.beta();
    if !exact.is_finite() || exact >= u64::MAX as f64 {
        return Ok(ShotCount::Unbounded);
    }
    let nearest = exact.round();
    let n = if (exact - nearest).abs() <= 1e-12 * nearest.max(1.0) {
        nearest
    } else {
        exact.ceil()
    };
    Ok(ShotCount::Finite((n as u64).max(1)))
}
