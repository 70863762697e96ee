//! Run configuration: a sectioned TOML file, or the same structure as JSON.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::advantage::{
    default_p_axis, default_shot_axis, log_axis, log_shot_axis, linear_axis, AdvantageProblem, DEFAULT_THRESHOLD,
};
use crate::analytics::{p_layer_from_gate_error, HamiltonianSummary, NoiseCircuitSpec, NormConvention};
use crate::centering::{default_shift_axis, default_width_axis};
use crate::error::{Error, Result};
use crate::hamiltonian::{build_hubbard_pauli, HubbardSpec, PauliDecomposition};

/// Explicit Hamiltonian numbers, used instead of or on top of `[model]`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HamiltonianSection {
    pub norm2: Option<f64>,
    pub trace_over_d: Option<f64>,
    pub sites: Option<usize>,
    pub norm_convention: Option<NormConvention>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundsSection {
    pub e_minus_per_site: Option<f64>,
    pub e_plus_per_site: Option<f64>,
    pub e_minus: Option<f64>,
    pub e_plus: Option<f64>,
    /// Mean of the noiseless estimator; defaults to the interval midpoint.
    pub e0: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircuitSection {
    pub layers: Option<u32>,
    pub qubits: Option<u32>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoiseSection {
    pub p: Option<f64>,
    pub p_2q: Option<f64>,
    pub gates_per_layer: Option<u32>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShotsSection {
    pub n: Option<u64>,
    pub min: Option<f64>,
    pub max: Option<f64>,
    pub points: Option<usize>,
    pub values: Option<Vec<u64>>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub p_min: Option<f64>,
    pub p_max: Option<f64>,
    pub p_points: Option<usize>,
    pub p_values: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CenteringSection {
    pub shift_min: Option<f64>,
    pub shift_max: Option<f64>,
    pub shift_points: Option<usize>,
    pub shift_values: Option<Vec<f64>>,
    pub width_min: Option<f64>,
    pub width_max: Option<f64>,
    pub width_points: Option<usize>,
    pub width_values: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulationSection {
    pub shots: Option<u64>,
    pub batch: Option<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub seed: Option<u64>,
    pub threshold: Option<f64>,
    pub model: Option<HubbardSpec>,
    pub hamiltonian: Option<HamiltonianSection>,
    pub bounds: Option<BoundsSection>,
    pub circuit: Option<CircuitSection>,
    pub noise: Option<NoiseSection>,
    pub shots: Option<ShotsSection>,
    pub sweep: Option<SweepSection>,
    pub centering: Option<CenteringSection>,
    pub simulation: Option<SimulationSection>,
}

/// Hamiltonian and problem data derived from a [`RunConfig`].
#[derive(Debug, Clone)]
pub struct Resolved {
    pub model: Option<HubbardSpec>,
    pub decomposition: Option<PauliDecomposition>,
    pub sites: Option<usize>,
    pub problem: AdvantageProblem,
}

fn both<T: Copy>(a: Option<T>, b: Option<T>) -> Option<(T, T)> {
    Some((a?, b?))
}

impl RunConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    /// Reads `.json` files as JSON and everything else as TOML.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        let parsed = if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json")) {
            Self::from_json_str(&text)
        } else {
            Self::from_toml_str(&text)
        };
        parsed.map_err(|e| match e {
            Error::Config(msg) => Error::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn to_toml_string(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// SHA-256 of the compact JSON form, so TOML and JSON spellings of the
    /// same configuration hash alike.
    pub fn hash(&self) -> String {
        let canonical = serde_json::to_vec(self).expect("config serializes");
        hex::encode(Sha256::digest(&canonical))
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(0)
    }

    /// The bundled 8x8 periodic instance with its published bounds.
    pub fn reference_instance() -> Self {
        RunConfig {
            seed: Some(0),
            threshold: Some(DEFAULT_THRESHOLD),
            model: Some(HubbardSpec::reference_instance()),
            bounds: Some(BoundsSection {
                e_minus_per_site: Some(-4.544),
                e_plus_per_site: Some(-3.8365),
                ..Default::default()
            }),
            ..Default::default()
        }
    }

    fn sites(&self) -> Option<usize> {
        self.model
            .map(|m| m.sites())
            .or_else(|| self.hamiltonian.as_ref().and_then(|h| h.sites))
    }

    fn bounds(&self, sites: Option<usize>) -> Result<(f64, f64, f64)> {
        let b = self.bounds.clone().unwrap_or_default();
        let per_site = both(b.e_minus_per_site, b.e_plus_per_site);
        let absolute = both(b.e_minus, b.e_plus);
        let partial = [b.e_minus_per_site, b.e_plus_per_site, b.e_minus, b.e_plus]
            .iter()
            .filter(|v| v.is_some())
            .count();
        let (lo, hi) = match (per_site, absolute) {
            (Some(_), Some(_)) => {
                return Err(Error::invalid("bounds", "give either per-site or absolute bounds, not both"))
            }
            (Some((lo, hi)), None) if partial == 2 => {
                let l = sites.ok_or_else(|| {
                    Error::invalid("bounds", "per-site bounds need [model] or hamiltonian.sites")
                })? as f64;
                (lo * l, hi * l)
            }
            (None, Some((lo, hi))) if partial == 2 => (lo, hi),
            _ => {
                return Err(Error::invalid(
                    "bounds",
                    "need e_minus_per_site and e_plus_per_site, or e_minus and e_plus",
                ))
            }
        };
        if lo >= hi {
            return Err(Error::invalid("bounds", format!("need E- < E+, got {lo} and {hi}")));
        }
        let e0 = b.e0.unwrap_or(0.5 * (lo + hi));
        Ok((lo, hi, e0))
    }

    /// Layer noise probability, or `None` if the config gives none.
    pub fn p_layer(&self) -> Result<Option<f64>> {
        let n = self.noise.clone().unwrap_or_default();
        match (n.p, n.p_2q, n.gates_per_layer) {
            (Some(_), Some(_), _) | (Some(_), _, Some(_)) => {
                Err(Error::invalid("noise", "give either p or (p_2q, gates_per_layer), not both"))
            }
            (Some(p), None, None) => Ok(Some(p)),
            (None, Some(p2), Some(g)) => p_layer_from_gate_error(p2, g).map(Some),
            (None, Some(_), None) => Err(Error::invalid("noise.gates_per_layer", "required with noise.p_2q")),
            (None, None, Some(_)) => Err(Error::invalid("noise.p_2q", "required with noise.gates_per_layer")),
            (None, None, None) => Ok(None),
        }
    }

    pub fn require_p_layer(&self) -> Result<f64> {
        self.p_layer()?
            .ok_or_else(|| Error::invalid("noise", "set noise.p or noise.p_2q with noise.gates_per_layer"))
    }

    /// Layers and qubits, defaulting to `D = L` and `n = 2L`.
    pub fn circuit(&self) -> Result<(u32, u32)> {
        let c = self.circuit.clone().unwrap_or_default();
        let sites = self.sites();
        let pick = |given: Option<u32>, factor: usize, field: &str| -> Result<u32> {
            match (given, sites) {
                (Some(v), _) => Ok(v),
                (None, Some(l)) => u32::try_from(l * factor).map_err(|_| Error::invalid(field, "too large")),
                (None, None) => Err(Error::invalid(field, "required without a [model] section")),
            }
        };
        let layers = pick(c.layers, 1, "circuit.layers")?;
        let qubits = pick(c.qubits, 2, "circuit.qubits")?;
        if qubits == 0 {
            return Err(Error::invalid("circuit.qubits", "must be at least 1"));
        }
        Ok((layers, qubits))
    }

    pub fn resolve(&self) -> Result<Resolved> {
        let threshold = self.threshold.unwrap_or(DEFAULT_THRESHOLD);
        let h = self.hamiltonian.clone().unwrap_or_default();
        let sites = self.sites();
        if let (Some(m), Some(s)) = (self.model, h.sites) {
            if m.sites() != s {
                return Err(Error::invalid("hamiltonian.sites", "disagrees with the [model] lattice"));
            }
        }
        let (e_minus, e_plus, e0) = self.bounds(sites)?;

        let decomposition = self.model.map(|m| build_hubbard_pauli(&m)).transpose()?;
        let summary = match (&decomposition, h.norm2, h.trace_over_d) {
            (_, Some(norm2), Some(trace)) => HamiltonianSummary::new(norm2, trace, e0)?,
            (Some(d), None, None) => {
                HamiltonianSummary::from_decomposition(d, e0, h.norm_convention.unwrap_or_default())?
            }
            (None, _, _) => {
                return Err(Error::invalid(
                    "hamiltonian",
                    "need a [model] section or both hamiltonian.norm2 and hamiltonian.trace_over_d",
                ))
            }
            _ => {
                return Err(Error::invalid(
                    "hamiltonian",
                    "give both norm2 and trace_over_d to override the model",
                ))
            }
        };

        let (layers, qubits) = self.circuit()?;
        let noise = NoiseCircuitSpec::new(layers, self.p_layer()?.unwrap_or(0.0), qubits)?;
        Ok(Resolved {
            model: self.model,
            decomposition,
            sites,
            problem: AdvantageProblem::new(e_minus, e_plus, summary, noise, threshold)?,
        })
    }

    pub fn p_axis(&self) -> Result<Vec<f64>> {
        let s = self.sweep.clone().unwrap_or_default();
        if let Some(v) = s.p_values {
            if s.p_min.is_some() || s.p_max.is_some() || s.p_points.is_some() {
                return Err(Error::invalid("sweep.p_values", "cannot be combined with p_min/p_max/p_points"));
            }
            return Ok(v);
        }
        match (s.p_min, s.p_max, s.p_points) {
            (None, None, None) => Ok(default_p_axis()),
            (min, max, points) => log_axis(min.unwrap_or(1e-5), max.unwrap_or(1e-1), points.unwrap_or(60))
                .map_err(|e| Error::invalid("sweep", e.to_string())),
        }
    }

    pub fn shot_axis(&self) -> Result<Vec<u64>> {
        let s = self.shots.clone().unwrap_or_default();
        if let Some(v) = s.values {
            return Ok(v);
        }
        match (s.min, s.max, s.points) {
            (None, None, None) => Ok(default_shot_axis()),
            (min, max, points) => log_shot_axis(min.unwrap_or(1.0), max.unwrap_or(1e6), points.unwrap_or(60))
                .map_err(|e| Error::invalid("shots", e.to_string())),
        }
    }

    pub fn shots(&self) -> Result<u64> {
        self.shots
            .as_ref()
            .and_then(|s| s.n)
            .ok_or_else(|| Error::invalid("shots.n", "required for a single-point evaluation"))
    }

    pub fn centering_axes(&self) -> Result<(Vec<f64>, Vec<f64>)> {
        let c = self.centering.clone().unwrap_or_default();
        let shift = match (c.shift_values, c.shift_min, c.shift_max, c.shift_points) {
            (Some(v), None, None, None) => v,
            (Some(_), ..) => return Err(Error::invalid("centering.shift_values", "cannot be combined with a range")),
            (None, None, None, None) => default_shift_axis(),
            (None, min, max, points) => linear_axis(min.unwrap_or(0.0), max.unwrap_or(0.99), points.unwrap_or(100))
                .map_err(|e| Error::invalid("centering.shift", e.to_string()))?,
        };
        let width = match (c.width_values, c.width_min, c.width_max, c.width_points) {
            (Some(v), None, None, None) => v,
            (Some(_), ..) => return Err(Error::invalid("centering.width_values", "cannot be combined with a range")),
            (None, None, None, None) => default_width_axis(),
            (None, min, max, points) => log_axis(min.unwrap_or(1e-3), max.unwrap_or(1.0), points.unwrap_or(100))
                .map_err(|e| Error::invalid("centering.width", e.to_string()))?,
        };
        Ok((shift, width))
    }

    pub fn simulation(&self) -> Result<(u64, usize)> {
        let s = self.simulation.clone().unwrap_or_default();
        let shots = s.shots.unwrap_or(200_000);
        let batch = s.batch.unwrap_or(500);
        if shots == 0 {
            return Err(Error::invalid("simulation.shots", "must be positive"));
        }
        if batch == 0 {
            return Err(Error::invalid("simulation.batch", "must be positive"));
        }
        Ok((shots, batch))
    }
}
