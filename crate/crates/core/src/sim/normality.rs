//! Kolmogorov-Smirnov distance of batch means from a fitted normal.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::stats::NormalSpec;

pub const MIN_BATCHES: usize = 50;
pub const MIN_BATCH_SIZE: usize = 100;

/// Means of consecutive full batches; a trailing partial batch is dropped.
pub fn batch_means(values: &[f64], batch: usize) -> Result<Vec<f64>> {
    if batch == 0 {
        return Err(Error::invalid("batch", "must be positive"));
    }
    Ok(values
        .chunks_exact(batch)
        .map(|c| c.iter().sum::<f64>() / batch as f64)
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormalityReport {
    pub statistic: f64,
    pub batches: usize,
    pub batch: usize,
    /// Lilliefors critical values for estimated mean and variance.
    pub critical_5: f64,
    pub critical_1: f64,
}

impl NormalityReport {
    pub fn passes_5(&self) -> bool {
        self.statistic < self.critical_5
    }

    pub fn passes_1(&self) -> bool {
        self.statistic < self.critical_1
    }
}

/// Largest gap between the empirical CDF of `means` and the normal CDF
/// with the sample mean and standard deviation.
pub fn normality_check(means: &[f64], batch: usize) -> Result<NormalityReport> {
    if means.len() < MIN_BATCHES {
        return Err(Error::invalid("batches", format!("need at least {MIN_BATCHES}, got {}", means.len())));
    }
    if batch < MIN_BATCH_SIZE {
        return Err(Error::invalid("batch", format!("need at least {MIN_BATCH_SIZE} shots per batch, got {batch}")));
    }
    let n = means.len() as f64;
    let mean = means.iter().sum::<f64>() / n;
    let sd = (means.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt();
    let fitted = NormalSpec::new(mean, sd)
        .map_err(|_| Error::invalid("batches", "batch means have no spread"))?;

    let mut sorted = means.to_vec();
    sorted.sort_by(f64::total_cmp);
    let statistic = sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = fitted.cdf(x);
            ((i + 1) as f64 / n - f).max(f - i as f64 / n)
        })
        .fold(0.0, f64::max);

    Ok(NormalityReport {
        statistic,
        batches: means.len(),
        batch,
        critical_5: 0.886 / n.sqrt(),
        critical_1: 1.031 / n.sqrt(),
    })
}
