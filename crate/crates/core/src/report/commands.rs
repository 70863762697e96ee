//! The five front-end commands as pure functions of a configuration.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::artifact::{centering_to_csv, fmt12, phase_to_csv, GridArtifact, Provenance, PHASE_HEADER};
use super::config::RunConfig;
use super::svg::{centering_svg, phase_svg};
use crate::advantage::{Classification, RegimeGrid};
use crate::analytics::{gamma_total, noisy_mean, threshold_p, NoiseCircuitSpec, NormConvention};
use crate::centering::{relative_error_map, CenteringMap};
use crate::error::{Error, Result};
use crate::hamiltonian::{build_hubbard_pauli, Boundary, HubbardSpec};
use crate::sim::{
    batch_means, build_qpd, composition_defect, normality_check, EstimatorKind, EstimatorRun, NormalityReport,
    Simulator, MIN_BATCHES, MIN_BATCH_SIZE,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Svg,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "svg" => Ok(Format::Svg),
            other => Err(Error::Config(format!("unknown format {other:?}; use csv, json or svg"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Norm,
    Success,
    PhaseDiagram,
    Centering,
    Simulate,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Norm => "norm",
            Command::Success => "success",
            Command::PhaseDiagram => "phase-diagram",
            Command::Centering => "centering",
            Command::Simulate => "simulate",
        }
    }

    /// Configuration used when none is given.
    pub fn default_config(self) -> RunConfig {
        match self {
            Command::Simulate => simulation_instance(),
            _ => RunConfig::reference_instance(),
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The 1x2 open chain at the reference couplings, `P = 0.05`, four layers.
pub fn simulation_instance() -> RunConfig {
    use super::config::{CircuitSection, NoiseSection, SimulationSection};
    RunConfig {
        seed: Some(2024),
        model: Some(HubbardSpec {
            rows: 1,
            cols: 2,
            boundary: Boundary::Open,
            t: 1.0,
            u: 8.0,
            mu: 3.75,
        }),
        circuit: Some(CircuitSection { layers: Some(4), qubits: None }),
        noise: Some(NoiseSection { p: Some(0.05), ..Default::default() }),
        simulation: Some(SimulationSection { shots: Some(200_000), batch: Some(500) }),
        ..Default::default()
    }
}

fn provenance(cfg: &RunConfig, command: Command) -> Provenance {
    Provenance::new(cfg.hash(), cfg.seed(), command.name())
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn no_svg(command: Command) -> Error {
    Error::Config(format!("svg output is only available for phase-diagram and centering, not {command}"))
}

fn key_value_csv(prov: &Provenance, rows: &[(&str, String)]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["quantity", "value"]).expect("in-memory write");
    for (k, v) in rows {
        w.write_record([*k, v.as_str()]).expect("in-memory write");
    }
    let body = String::from_utf8(w.into_inner().expect("flush")).expect("utf8");
    format!(
        "# config_hash: {}\n# version: {}\n# seed: {}\n# command: {}\n{body}",
        prov.config_hash, prov.version, prov.seed, prov.command
    )
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormReport {
    pub provenance: Provenance,
    pub qubits: usize,
    pub sites: usize,
    pub terms: usize,
    pub norm2_squared: f64,
    pub trace_over_d: f64,
    /// `Tr[H^2] / d`, including the identity weight.
    pub frobenius_squared: f64,
    pub norm_convention: NormConvention,
    /// Norm entering the shot bound under `norm_convention`.
    pub shot_bound_norm: f64,
}

pub fn norm_report(cfg: &RunConfig) -> Result<NormReport> {
    let model = cfg
        .model
        .ok_or_else(|| Error::invalid("model", "the norm command needs a [model] section"))?;
    let decomp = build_hubbard_pauli(&model)?;
    let convention = cfg
        .hamiltonian
        .as_ref()
        .and_then(|h| h.norm_convention)
        .unwrap_or_default();
    let shot_bound_norm = match convention {
        NormConvention::Frobenius => decomp.frobenius_squared().sqrt(),
        NormConvention::Traceless => decomp.norm2_squared().sqrt(),
    };
    Ok(NormReport {
        provenance: provenance(cfg, Command::Norm),
        qubits: decomp.n(),
        sites: model.sites(),
        terms: decomp.len(),
        norm2_squared: decomp.norm2_squared(),
        trace_over_d: decomp.identity_coefficient(),
        frobenius_squared: decomp.frobenius_squared(),
        norm_convention: convention,
        shot_bound_norm,
    })
}

pub fn cmd_norm(cfg: &RunConfig, format: Format) -> Result<String> {
    let r = norm_report(cfg)?;
    match format {
        Format::Json => Ok(json(&r)),
        Format::Csv => Ok(key_value_csv(
            &r.provenance,
            &[
                ("qubits", r.qubits.to_string()),
                ("sites", r.sites.to_string()),
                ("terms", r.terms.to_string()),
                ("norm2_squared", r.norm2_squared.to_string()),
                ("trace_over_d", r.trace_over_d.to_string()),
                ("frobenius_squared", r.frobenius_squared.to_string()),
                ("shot_bound_norm", r.shot_bound_norm.to_string()),
            ],
        )),
        Format::Svg => Err(no_svg(Command::Norm)),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuccessReport {
    pub provenance: Provenance,
    #[serde(flatten)]
    pub point: Classification,
    pub threshold: f64,
    pub e_minus: f64,
    pub e_plus: f64,
    pub gamma_total: f64,
    pub e_noisy: f64,
    /// Largest noise level at which the raw mean stays below `E+`.
    pub threshold_p: Option<f64>,
}

pub fn success_report(cfg: &RunConfig) -> Result<SuccessReport> {
    let resolved = cfg.resolve()?;
    let p = cfg.require_p_layer()?;
    let n = cfg.shots()?;
    let problem = resolved.problem;
    let point = problem.classify(p, n)?;
    let at = problem.at_p(p)?;
    Ok(SuccessReport {
        provenance: provenance(cfg, Command::Success),
        point,
        threshold: problem.threshold,
        e_minus: problem.e_minus,
        e_plus: problem.e_plus,
        gamma_total: gamma_total(&at.noise)?,
        e_noisy: noisy_mean(&at.noise, &at.ham),
        threshold_p: threshold_p(&problem.ham, problem.e_plus, problem.noise.layers()).ok(),
    })
}

pub fn cmd_success(cfg: &RunConfig, format: Format) -> Result<String> {
    let r = success_report(cfg)?;
    match format {
        Format::Json => Ok(json(&r)),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(PHASE_HEADER).expect("in-memory write");
            w.write_record([
                r.point.p.to_string(),
                r.point.n_shots.to_string(),
                fmt12(r.point.pec_success),
                fmt12(r.point.raw_success),
                r.point.label.to_string(),
            ])
            .expect("in-memory write");
            let body = String::from_utf8(w.into_inner().expect("flush")).expect("utf8");
            let p = &r.provenance;
            Ok(format!(
                "# config_hash: {}\n# version: {}\n# seed: {}\n# command: {}\n{body}",
                p.config_hash, p.version, p.seed, p.command
            ))
        }
        Format::Svg => Err(no_svg(Command::Success)),
    }
}

pub fn phase_diagram_artifact(cfg: &RunConfig) -> Result<GridArtifact<RegimeGrid>> {
    let problem = cfg.resolve()?.problem;
    let grid = problem.sweep(&cfg.p_axis()?, &cfg.shot_axis()?)?;
    Ok(GridArtifact {
        provenance: provenance(cfg, Command::PhaseDiagram),
        grid,
    })
}

pub fn cmd_phase_diagram(cfg: &RunConfig, format: Format) -> Result<String> {
    let a = phase_diagram_artifact(cfg)?;
    Ok(match format {
        Format::Json => a.to_json(),
        Format::Csv => phase_to_csv(&a),
        Format::Svg => phase_svg(&a),
    })
}

pub fn centering_artifact(cfg: &RunConfig) -> Result<GridArtifact<CenteringMap>> {
    let (shift, width) = cfg.centering_axes()?;
    Ok(GridArtifact {
        provenance: provenance(cfg, Command::Centering),
        grid: relative_error_map(&shift, &width)?,
    })
}

pub fn cmd_centering(cfg: &RunConfig, format: Format) -> Result<String> {
    let a = centering_artifact(cfg)?;
    Ok(match format {
        Format::Json => a.to_json(),
        Format::Csv => centering_to_csv(&a),
        Format::Svg => centering_svg(&a),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimatorSummary {
    pub mean: f64,
    pub variance: f64,
    pub standard_error: f64,
    pub variance_bound: f64,
    pub variance_ratio: f64,
    pub gamma_total: f64,
    pub gamma_empirical: Option<f64>,
}

impl EstimatorSummary {
    fn new(run: &EstimatorRun, bound: f64) -> Self {
        EstimatorSummary {
            mean: run.mean,
            variance: run.variance,
            standard_error: run.standard_error(),
            variance_bound: bound,
            variance_ratio: run.variance / bound,
            gamma_total: run.gamma_total,
            gamma_empirical: run.gamma_empirical,
        }
    }
}

/// Pass/fail flags of a simulation run. `None` marks a check that could not
/// be evaluated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationChecks {
    pub pec_unbiased: bool,
    pub raw_matches_noisy_energy: bool,
    pub pec_variance_within_bound: bool,
    pub raw_variance_within_bound: bool,
    pub gamma_within_2_percent: Option<bool>,
    pub normality_below_1_percent: Option<bool>,
    pub qpd_composes_to_identity: Option<bool>,
}

impl SimulationChecks {
    pub fn all_passed(&self) -> bool {
        [
            self.pec_unbiased,
            self.raw_matches_noisy_energy,
            self.pec_variance_within_bound,
            self.raw_variance_within_bound,
        ]
        .iter()
        .all(|&b| b)
            && [
                self.gamma_within_2_percent,
                self.normality_below_1_percent,
                self.qpd_composes_to_identity,
            ]
            .iter()
            .all(|b| b.unwrap_or(true))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulateReport {
    pub provenance: Provenance,
    pub instance: HubbardSpec,
    pub noise: NoiseCircuitSpec,
    pub shots: u64,
    pub batch: usize,
    pub seed: u64,
    pub exact_energy: f64,
    pub noisy_energy: f64,
    pub pec: EstimatorSummary,
    pub raw: EstimatorSummary,
    pub normality: Option<NormalityReport>,
    pub qpd_defect: Option<f64>,
    pub checks: SimulationChecks,
    pub all_passed: bool,
}

/// Largest register on which the QPD superoperator check is run.
pub const QPD_CHECK_MAX_QUBITS: usize = 4;

pub fn simulate_report(cfg: &RunConfig) -> Result<SimulateReport> {
    let model = cfg
        .model
        .ok_or_else(|| Error::invalid("model", "the simulate command needs a [model] section"))?;
    let (layers, qubits) = cfg.circuit()?;
    let p = cfg.require_p_layer()?;
    let (shots, batch) = cfg.simulation()?;
    let seed = cfg.seed();
    let noise = NoiseCircuitSpec::new(layers, p, qubits)?;
    let sim = Simulator::new(&model, &noise)?;

    let pec = sim.run(EstimatorKind::Pec, shots, seed, false)?;
    let raw = sim.run(EstimatorKind::Raw, shots, seed, false)?;
    let pec_bound = sim.variance_bound(EstimatorKind::Pec)?;
    let raw_bound = sim.variance_bound(EstimatorKind::Raw)?;

    let means = batch_means(&pec.shot_values, batch)?;
    let normality = if means.len() >= MIN_BATCHES && batch >= MIN_BATCH_SIZE {
        Some(normality_check(&means, batch)?)
    } else {
        None
    };
    let qpd_defect = if model.qubits() <= QPD_CHECK_MAX_QUBITS {
        Some(composition_defect(&build_qpd(&noise)?, p)?)
    } else {
        None
    };

    let e0 = sim.exact_energy();
    let e_noisy = sim.noisy_energy();
    let checks = SimulationChecks {
        pec_unbiased: (pec.mean - e0).abs() <= 3.0 * pec.standard_error() + 1e-12,
        raw_matches_noisy_energy: (raw.mean - e_noisy).abs() <= 3.0 * raw.standard_error() + 1e-12,
        pec_variance_within_bound: pec.variance <= 1.1 * pec_bound,
        raw_variance_within_bound: raw.variance <= 1.1 * raw_bound,
        gamma_within_2_percent: pec.gamma_empirical.map(|g| (g / pec.gamma_total - 1.0).abs() <= 0.02),
        normality_below_1_percent: normality.map(|n| n.passes_1()),
        qpd_composes_to_identity: qpd_defect.map(|d| d <= 1e-9),
    };
    Ok(SimulateReport {
        provenance: provenance(cfg, Command::Simulate),
        instance: model,
        noise,
        shots,
        batch,
        seed,
        exact_energy: e0,
        noisy_energy: e_noisy,
        pec: EstimatorSummary::new(&pec, pec_bound),
        raw: EstimatorSummary::new(&raw, raw_bound),
        normality,
        qpd_defect,
        all_passed: checks.all_passed(),
        checks,
    })
}

pub fn cmd_simulate(cfg: &RunConfig, format: Format) -> Result<String> {
    let r = simulate_report(cfg)?;
    match format {
        Format::Json => Ok(json(&r)),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record([
                "estimator",
                "mean",
                "variance",
                "standard_error",
                "variance_bound",
                "gamma_total",
                "gamma_empirical",
            ])
            .expect("in-memory write");
            for (name, s) in [("pec", &r.pec), ("raw", &r.raw)] {
                w.write_record([
                    name.to_string(),
                    fmt12(s.mean),
                    fmt12(s.variance),
                    fmt12(s.standard_error),
                    fmt12(s.variance_bound),
                    fmt12(s.gamma_total),
                    s.gamma_empirical.map(fmt12).unwrap_or_default(),
                ])
                .expect("in-memory write");
            }
            let body = String::from_utf8(w.into_inner().expect("flush")).expect("utf8");
            let p = &r.provenance;
            Ok(format!(
                "# config_hash: {}\n# version: {}\n# seed: {}\n# command: {}\n# exact_energy: {}\n# noisy_energy: {}\n# all_passed: {}\n{body}",
                p.config_hash,
                p.version,
                p.seed,
                p.command,
                fmt12(r.exact_energy),
                fmt12(r.noisy_energy),
                r.all_passed
            ))
        }
        Format::Svg => Err(no_svg(Command::Simulate)),
    }
}

/// Runs `command` and renders it in `format`.
pub fn run_command(command: Command, cfg: &RunConfig, format: Format) -> Result<String> {
    match command {
        Command::Norm => cmd_norm(cfg, format),
        Command::Success => cmd_success(cfg, format),
        Command::PhaseDiagram => cmd_phase_diagram(cfg, format),
        Command::Centering => cmd_centering(cfg, format),
        Command::Simulate => cmd_simulate(cfg, format),
    }
}
