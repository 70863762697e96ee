//! Shot-by-shot Monte Carlo of the mitigated and raw energy estimators.
//!
//! One shot is a full Pauli-averaging round: every Hamiltonian term gets its
//! own circuit execution with freshly sampled inverse-noise branches and one
//! projective measurement of that term. The shot value is
//! `c_0 + sum_j a_j * sign_j * gamma_tot * s_j` with `s_j = +-1`.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::density::{prepare_ground_state, DensityMatrix};
use super::qpd::{build_qpd, QuasiProbDecomposition};
use crate::analytics::{noisy_mean_from, NoiseCircuitSpec};
use crate::error::{Error, Result, MAX_DENSE_QUBITS};
use crate::hamiltonian::{build_hubbard_pauli, HubbardSpec, PauliDecomposition, PauliMask};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EstimatorKind {
    Pec,
    Raw,
}

/// One circuit execution measuring a single Pauli term.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermExecution {
    pub term: usize,
    /// Per layer: 0 for the identity branch, otherwise the index of the
    /// conjugating Pauli string.
    pub sampled_ops: Vec<u32>,
    pub sign: i8,
    pub eigenvalue: i8,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShotRecord {
    pub executions: Vec<TermExecution>,
    pub outcome: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimatorRun {
    pub kind: EstimatorKind,
    pub n_shots: u64,
    pub seed: u64,
    pub mean: f64,
    /// Unbiased sample variance of the shot values.
    pub variance: f64,
    pub gamma_total: f64,
    /// `1 / mean(sign)` over all executions; `None` without Pauli terms.
    pub gamma_empirical: Option<f64>,
    pub shot_values: Vec<f64>,
    pub records: Option<Vec<ShotRecord>>,
}

impl EstimatorRun {
    pub fn standard_error(&self) -> f64 {
        (self.variance / self.n_shots as f64).sqrt()
    }
}

/// Runs `f` on a dedicated pool of `workers` threads.
pub fn with_workers<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Config(format!("cannot start {workers} workers: {e}")))?;
    Ok(pool.install(f))
}

/// Exact ground state, its Pauli decomposition and the noise model.
#[derive(Debug, Clone)]
pub struct Simulator {
    spec: HubbardSpec,
    noise: NoiseCircuitSpec,
    decomp: PauliDecomposition,
    terms: Vec<(PauliMask, f64)>,
    rho0: DensityMatrix,
    e0: f64,
}

struct ShotOutcome {
    value: f64,
    sign_sum: f64,
    record: Option<ShotRecord>,
}

type Cache = HashMap<Vec<u32>, Vec<f64>>;

impl Simulator {
    pub fn new(spec: &HubbardSpec, noise: &NoiseCircuitSpec) -> Result<Self> {
        spec.validate()?;
        if spec.qubits() > MAX_DENSE_QUBITS {
            return Err(Error::capacity(spec.qubits()));
        }
        if noise.qubits() as usize != spec.qubits() {
            return Err(Error::invalid(
                "circuit.qubits",
                format!("noise acts on {} qubits but the model has {}", noise.qubits(), spec.qubits()),
            ));
        }
        let decomp = build_hubbard_pauli(spec)?;
        let terms = decomp
            .terms()
            .map(|(s, c)| Ok((s.mask()?, c)))
            .collect::<Result<Vec<_>>>()?;
        let rho0 = prepare_ground_state(spec)?;
        let e0 = rho0.energy(&decomp)?;
        Ok(Simulator {
            spec: *spec,
            noise: *noise,
            decomp,
            terms,
            rho0,
            e0,
        })
    }

    pub fn spec(&self) -> &HubbardSpec {
        &self.spec
    }

    pub fn noise(&self) -> &NoiseCircuitSpec {
        &self.noise
    }

    pub fn decomposition(&self) -> &PauliDecomposition {
        &self.decomp
    }

    pub fn initial_state(&self) -> &DensityMatrix {
        &self.rho0
    }

    /// `Tr[rho_0 H]` of the prepared state.
    pub fn exact_energy(&self) -> f64 {
        self.e0
    }

    /// Expected raw estimate after all noise layers.
    pub fn noisy_energy(&self) -> f64 {
        noisy_mean_from(&self.noise, self.e0, self.decomp.identity_coefficient())
    }

    /// `gamma_tot^2 * ||H||_2^2`, the single-shot variance bound of the
    /// mitigated estimator; the raw bound is the `gamma = 1` case.
    pub fn variance_bound(&self, kind: EstimatorKind) -> Result<f64> {
        let g = match kind {
            EstimatorKind::Pec => self.qpd(kind)?.gamma.powi(self.noise.layers() as i32),
            EstimatorKind::Raw => 1.0,
        };
        Ok(g * g * self.decomp.norm2_squared())
    }

    fn qpd(&self, kind: EstimatorKind) -> Result<QuasiProbDecomposition> {
        match kind {
            EstimatorKind::Pec => build_qpd(&self.noise),
            EstimatorKind::Raw => Ok(QuasiProbDecomposition::trivial(self.noise.qubits())),
        }
    }

    /// State after each (noise, branch) layer, in order.
    pub fn trajectory(&self, branches: &[u32]) -> Result<Vec<DensityMatrix>> {
        if branches.len() != self.noise.layers() as usize {
            return Err(Error::invalid("branches", "need one branch per layer"));
        }
        let n = self.spec.qubits();
        let mut states = Vec::with_capacity(branches.len());
        let mut rho = self.rho0.clone();
        for &op in branches {
            rho = rho.depolarize(self.noise.p_layer())?;
            if op != 0 {
                rho = rho.conjugate(&PauliMask::from_index(op as usize, n));
            }
            states.push(rho.clone());
        }
        Ok(states)
    }

    pub fn evolve(&self, branches: &[u32]) -> Result<DensityMatrix> {
        Ok(self.trajectory(branches)?.pop().unwrap_or_else(|| self.rho0.clone()))
    }

    fn expectations(&self, branches: &[u32]) -> Vec<f64> {
        let rho = self.evolve(branches).expect("branch count matches layers");
        self.terms.iter().map(|(m, _)| rho.expectation(m).clamp(-1.0, 1.0)).collect()
    }

    fn shot(&self, qpd: &QuasiProbDecomposition, gamma_tot: f64, seed: u64, index: u64, keep: bool, cache: &mut Cache) -> ShotOutcome {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index);
        let layers = self.noise.layers() as usize;
        let paulis = 1u64 << (2 * self.spec.qubits());
        let p_identity = qpd.probability(0);

        let mut value = self.decomp.identity_coefficient();
        let mut sign_sum = 0.0;
        let mut executions = Vec::new();
        let mut ops = vec![0u32; layers];
        for (j, &(_, a)) in self.terms.iter().enumerate() {
            let mut sign = 1.0;
            for op in ops.iter_mut() {
                let u: f64 = rng.random();
                *op = if u < p_identity {
                    0
                } else {
                    sign *= qpd.sign(1);
                    rng.random_range(1..paulis) as u32
                };
            }
            let expectation = match cache.get(&ops) {
                Some(e) => e[j],
                None => {
                    let e = self.expectations(&ops);
                    let v = e[j];
                    cache.insert(ops.clone(), e);
                    v
                }
            };
            let u: f64 = rng.random();
            let s = if u < 0.5 * (1.0 + expectation) { 1.0 } else { -1.0 };
            value += a * sign * gamma_tot * s;
            sign_sum += sign;
            if keep {
                executions.push(TermExecution {
                    term: j,
                    sampled_ops: ops.clone(),
                    sign: sign as i8,
                    eigenvalue: s as i8,
                });
            }
        }
        ShotOutcome {
            value,
            sign_sum,
            record: keep.then_some(ShotRecord { executions, outcome: value }),
        }
    }

    /// Runs `n_shots` independent shots. Shot `i` draws from stream `i` of a
    /// ChaCha8 generator keyed by `seed`, so results do not depend on the
    /// number of worker threads.
    pub fn run(&self, kind: EstimatorKind, n_shots: u64, seed: u64, keep_records: bool) -> Result<EstimatorRun> {
        if n_shots == 0 {
            return Err(Error::invalid("shots", "need at least one shot"));
        }
        let qpd = self.qpd(kind)?;
        let gamma_tot = qpd.gamma.powi(self.noise.layers() as i32);

        let outcomes: Vec<ShotOutcome> = (0..n_shots)
            .into_par_iter()
            .map_init(Cache::new, |cache, i| self.shot(&qpd, gamma_tot, seed, i, keep_records, cache))
            .collect();

        let n = n_shots as f64;
        let mean = outcomes.iter().map(|o| o.value).sum::<f64>() / n;
        let variance = if n_shots > 1 {
            outcomes.iter().map(|o| (o.value - mean).powi(2)).sum::<f64>() / (n - 1.0)
        } else {
            0.0
        };
        let executions = n * self.terms.len() as f64;
        let gamma_empirical = (executions > 0.0).then(|| {
            let sign_mean = outcomes.iter().map(|o| o.sign_sum).sum::<f64>() / executions;
            1.0 / sign_mean
        });
        let shot_values = outcomes.iter().map(|o| o.value).collect();
        let records = keep_records.then(|| outcomes.into_iter().filter_map(|o| o.record).collect());

        Ok(EstimatorRun {
            kind,
            n_shots,
            seed,
            mean,
            variance,
            gamma_total: gamma_tot,
            gamma_empirical,
            shot_values,
            records,
        })
    }
}

/// Mitigated estimate of the ground energy, keeping every shot record.
pub fn run_pec_estimate(spec: &HubbardSpec, noise: &NoiseCircuitSpec, n_shots: u64, seed: u64) -> Result<EstimatorRun> {
    Simulator::new(spec, noise)?.run(EstimatorKind::Pec, n_shots, seed, true)
}

/// Unmitigated estimate; its mean targets the noisy energy.
pub fn run_raw_estimate(spec: &HubbardSpec, noise: &NoiseCircuitSpec, n_shots: u64, seed: u64) -> Result<EstimatorRun> {
    Simulator::new(spec, noise)?.run(EstimatorKind::Raw, n_shots, seed, false)
}
