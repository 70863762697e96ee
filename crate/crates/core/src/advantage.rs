//! Success probabilities of the mitigated and raw strategies, and the
//! winning-strategy map over noise level and shot budget.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analytics::{gamma_total, noisy_mean, HamiltonianSummary, NoiseCircuitSpec};
use crate::error::{Error, Result};
use crate::stats::{erf, interval_probability, NormalSpec};

pub const DEFAULT_THRESHOLD: f64 = 0.95;

/// Classical bounds plus the cost model of one benchmarking task.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdvantageProblem {
    pub e_minus: f64,
    pub e_plus: f64,
    pub ham: HamiltonianSummary,
    pub noise: NoiseCircuitSpec,
    pub threshold: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Strategy {
    #[serde(rename = "PEC")]
    Pec,
    #[serde(rename = "RAW")]
    Raw,
    #[serde(rename = "NONE")]
    None,
}

impl Strategy {
    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::Pec => "PEC",
            Strategy::Raw => "RAW",
            Strategy::None => "NONE",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "PEC" => Ok(Strategy::Pec),
            "RAW" => Ok(Strategy::Raw),
            "NONE" => Ok(Strategy::None),
            other => Err(Error::invalid("label", format!("unknown strategy {other:?}"))),
        }
    }
}

/// Both success probabilities at one `(P, N)` point and the resulting label.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub p: f64,
    pub n_shots: u64,
    pub pec_success: f64,
    pub raw_success: f64,
    pub label: Strategy,
}

fn round3(x: f64) -> f64 {
    (x * 1000.0).round() / 1000.0
}

/// Winner given both probabilities.
///
/// A strategy below the threshold never wins. When both clear it, the
/// probabilities are compared at three decimals and RAW takes ties.
pub fn decide(pec_success: f64, raw_success: f64, threshold: f64) -> Strategy {
    match (pec_success >= threshold, raw_success >= threshold) {
        (false, false) => Strategy::None,
        (true, false) => Strategy::Pec,
        (false, true) => Strategy::Raw,
        (true, true) => {
            if round3(raw_success) >= round3(pec_success) {
                Strategy::Raw
            } else {
                Strategy::Pec
            }
        }
    }
}

impl AdvantageProblem {
    pub fn new(
        e_minus: f64,
        e_plus: f64,
        ham: HamiltonianSummary,
        noise: NoiseCircuitSpec,
        threshold: f64,
    ) -> Result<Self> {
        if !(e_minus.is_finite() && e_plus.is_finite()) {
            return Err(Error::invalid("bounds", "energy bounds must be finite"));
        }
        if e_minus >= e_plus {
            return Err(Error::invalid(
                "bounds",
                format!("need E- < E+, got E- = {e_minus}, E+ = {e_plus}"),
            ));
        }
        if !(threshold > 0.0 && threshold < 1.0) {
            return Err(Error::invalid("threshold", format!("must lie in (0, 1), got {threshold}")));
        }
        Ok(AdvantageProblem {
            e_minus,
            e_plus,
            ham,
            noise,
            threshold,
        })
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.e_minus + self.e_plus)
    }

    pub fn width(&self) -> f64 {
        self.e_plus - self.e_minus
    }

    pub fn at_p(&self, p: f64) -> Result<Self> {
        Ok(AdvantageProblem {
            noise: self.noise.with_p(p)?,
            ..*self
        })
    }

    fn interval_mass(&self, mean: f64, sigma: f64) -> Result<f64> {
        if sigma == 0.0 {
            return Ok(if self.e_minus < mean && mean < self.e_plus { 1.0 } else { 0.0 });
        }
        if sigma.is_infinite() {
            return Ok(0.0);
        }
        interval_probability(&NormalSpec::new(mean, sigma)?, self.e_minus, self.e_plus)
    }

    /// Mass of `N(e0, sigma_PEC^2)` inside `(E-, E+)`.
    pub fn pec_success_exact(&self, e0: f64, n_shots: u64) -> Result<f64> {
        let sigma = crate::analytics::pec_sigma(&self.noise, &self.ham, n_shots)?;
        self.interval_mass(e0, sigma)
    }

    /// Centred proxy `erf((E+ - E-)/2 * sqrt(N/2) / (gamma_tot ||H||))`.
    pub fn pec_success_proxy(&self, n_shots: u64) -> Result<f64> {
        if n_shots == 0 {
            return Err(Error::invalid("shots", "need at least one shot"));
        }
        self.pec_success_proxy_continuous(n_shots as f64)
    }

    /// [`Self::pec_success_proxy`] for a real-valued shot budget.
    pub fn pec_success_proxy_continuous(&self, shots: f64) -> Result<f64> {
        if !(shots > 0.0) {
            return Err(Error::invalid("shots", "must be positive"));
        }
        let g = gamma_total(&self.noise)?;
        let spread = g * self.ham.norm2 * self.noise.beta().sqrt();
        if spread.is_infinite() {
            return Ok(0.0);
        }
        let arg = 0.5 * self.width() * (shots / 2.0).sqrt() / spread;
        Ok(erf(arg).clamp(0.0, 1.0))
    }

    /// Mass of `N(E_noisy, sigma_raw^2)` inside `(E-, E+)`, with `E_noisy`
    /// built from the summary's `e0_proxy`.
    pub fn raw_success(&self, n_shots: u64) -> Result<f64> {
        let sigma = crate::analytics::raw_sigma(&self.ham, n_shots)?;
        self.interval_mass(noisy_mean(&self.noise, &self.ham), sigma)
    }

    pub fn classify(&self, p: f64, n_shots: u64) -> Result<Classification> {
        let at = self.at_p(p)?;
        let pec_success = at.pec_success_proxy(n_shots)?;
        let raw_success = at.raw_success(n_shots)?;
        Ok(Classification {
            p,
            n_shots,
            pec_success,
            raw_success,
            label: decide(pec_success, raw_success, self.threshold),
        })
    }

    /// Real-valued shot budget at which the proxy reaches `level` for noise `p`.
    ///
    /// Bisection on `log N`, independent of any inverse error function.
    pub fn shots_for_proxy_success(&self, p: f64, level: f64) -> Result<f64> {
        if !(level > 0.0 && level < 1.0) {
            return Err(Error::invalid("level", "must lie in (0, 1)"));
        }
        let at = self.at_p(p)?;
        let f = |log_n: f64| at.pec_success_proxy_continuous(log_n.exp()).map(|s| s - level);
        let (mut lo, mut hi) = (-60.0f64, 60.0f64);
        if f(lo)? > 0.0 || f(hi)? < 0.0 {
            return Err(Error::Domain(format!("no shot budget in [e^-60, e^60] reaches {level}")));
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if f(mid)? < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo < 1e-15 {
                break;
            }
        }
        Ok((0.5 * (lo + hi)).exp())
    }

    /// Evaluates every `(P, N)` cell. Rows follow `p_axis`, columns `shot_axis`.
    ///
    /// Rows are computed in parallel; every cell is a pure function of its
    /// coordinates, so the grid does not depend on the worker count or on
    /// the order of the axes.
    pub fn sweep(&self, p_axis: &[f64], shot_axis: &[u64]) -> Result<RegimeGrid> {
        if p_axis.is_empty() {
            return Err(Error::invalid("sweep.p", "axis is empty"));
        }
        if shot_axis.is_empty() {
            return Err(Error::invalid("shots.axis", "axis is empty"));
        }
        if let Some(&bad) = shot_axis.iter().find(|&&n| n == 0) {
            return Err(Error::invalid("shots.axis", format!("shot counts must be positive, got {bad}")));
        }
        for &p in p_axis {
            self.noise.with_p(p).map_err(|_| {
                Error::invalid("sweep.p", format!("noise level {p} outside [0, 1)"))
            })?;
        }

        let rows: Vec<Vec<Classification>> = p_axis
            .par_iter()
            .map(|&p| shot_axis.iter().map(|&n| self.classify(p, n)).collect())
            .collect::<Result<_>>()?;

        Ok(RegimeGrid {
            p_values: p_axis.to_vec(),
            shot_values: shot_axis.to_vec(),
            pec_success: rows.iter().map(|r| r.iter().map(|c| c.pec_success).collect()).collect(),
            raw_success: rows.iter().map(|r| r.iter().map(|c| c.raw_success).collect()).collect(),
            label: rows.iter().map(|r| r.iter().map(|c| c.label).collect()).collect(),
        })
    }
}

/// Success probabilities and winning strategy on a `(P, N)` grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegimeGrid {
    pub p_values: Vec<f64>,
    pub shot_values: Vec<u64>,
    pub pec_success: Vec<Vec<f64>>,
    pub raw_success: Vec<Vec<f64>>,
    pub label: Vec<Vec<Strategy>>,
}

impl RegimeGrid {
    pub fn cell(&self, i: usize, j: usize) -> Classification {
        Classification {
            p: self.p_values[i],
            n_shots: self.shot_values[j],
            pec_success: self.pec_success[i][j],
            raw_success: self.raw_success[i][j],
            label: self.label[i][j],
        }
    }

    pub fn cells(&self) -> impl Iterator<Item = Classification> + '_ {
        (0..self.p_values.len())
            .flat_map(move |i| (0..self.shot_values.len()).map(move |j| self.cell(i, j)))
    }

    pub fn shape_is_consistent(&self) -> bool {
        let (r, c) = (self.p_values.len(), self.shot_values.len());
        [&self.pec_success, &self.raw_success]
            .iter()
            .all(|m| m.len() == r && m.iter().all(|row| row.len() == c))
            && self.label.len() == r
            && self.label.iter().all(|row| row.len() == c)
    }
}

/// `points` log-spaced values from `min` to `max` inclusive.
pub fn log_axis(min: f64, max: f64, points: usize) -> Result<Vec<f64>> {
    if !(min > 0.0 && max >= min && min.is_finite() && max.is_finite()) {
        return Err(Error::invalid("axis", format!("need 0 < min <= max, got [{min}, {max}]")));
    }
    if points == 0 {
        return Err(Error::invalid("axis", "needs at least one point"));
    }
    if points == 1 {
        return Ok(vec![min]);
    }
    let (a, b) = (min.log10(), max.log10());
    Ok((0..points)
        .map(|k| {
            if k == points - 1 {
                max
            } else {
                10f64.powf(a + (b - a) * k as f64 / (points - 1) as f64)
            }
        })
        .collect())
}

/// `points` evenly spaced values from `min` to `max` inclusive.
pub fn linear_axis(min: f64, max: f64, points: usize) -> Result<Vec<f64>> {
    if !(min.is_finite() && max.is_finite() && max >= min) {
        return Err(Error::invalid("axis", format!("need min <= max, got [{min}, {max}]")));
    }
    if points == 0 {
        return Err(Error::invalid("axis", "needs at least one point"));
    }
    if points == 1 {
        return Ok(vec![min]);
    }
    Ok((0..points)
        .map(|k| {
            if k == points - 1 {
                max
            } else {
                min + (max - min) * k as f64 / (points - 1) as f64
            }
        })
        .collect())
}

/// Log-spaced shot counts rounded to integers. A value that rounds onto its
/// predecessor is bumped by one, so the axis keeps `points` distinct entries.
pub fn log_shot_axis(min: f64, max: f64, points: usize) -> Result<Vec<u64>> {
    if min < 1.0 {
        return Err(Error::invalid("shots.axis", "minimum shot count is 1"));
    }
    let mut out: Vec<u64> = Vec::with_capacity(points);
    for x in log_axis(min, max, points)? {
        let n = (x.round() as u64).max(out.last().map_or(0, |&p| p + 1));
        out.push(n);
    }
    if out.last().is_some_and(|&n| n as f64 > max.round()) {
        return Err(Error::invalid(
            "shots.axis",
            format!("{points} distinct shot counts do not fit in [{min}, {max}]"),
        ));
    }
    Ok(out)
}

pub fn default_p_axis() -> Vec<f64> {
    log_axis(1e-5, 1e-1, 60).expect("static axis")
}

pub fn default_shot_axis() -> Vec<u64> {
    log_shot_axis(1.0, 1e6, 60).expect("static axis")
}
