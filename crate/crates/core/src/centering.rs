//! How much the centred proxy overstates the success probability when the
//! true mean sits off the middle of the certification interval.
//!
//! Everything is expressed through two ratios: the shift of the mean over
//! half the interval width, and the spread over the full width.

use std::f64::consts::SQRT_2;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::advantage::{linear_axis, log_axis};
use crate::error::{Error, Result};
use crate::stats::erf;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CenteringPoint {
    rel_shift: f64,
    rel_width: f64,
}

impl CenteringPoint {
    pub fn new(rel_shift: f64, rel_width: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&rel_shift) {
            return Err(Error::invalid("centering.rel_shift", format!("must lie in [0, 1), got {rel_shift}")));
        }
        if !(rel_width > 0.0 && rel_width.is_finite()) {
            return Err(Error::invalid("centering.rel_width", format!("must be positive, got {rel_width}")));
        }
        Ok(CenteringPoint { rel_shift, rel_width })
    }

    pub fn rel_shift(&self) -> f64 {
        self.rel_shift
    }

    pub fn rel_width(&self) -> f64 {
        self.rel_width
    }
}

// Mass of N(shift * span / 2, (width * span)^2) on (-span/2, span/2).
fn interval_mass(shift: f64, width: f64, span: f64) -> f64 {
    let half = 0.5 * span;
    let mean = shift * half;
    let scale = width * span * SQRT_2;
    let upper = (half - mean) / scale;
    let lower = (half + mean) / scale;
    (0.5 * (erf(upper) + erf(lower))).clamp(0.0, 1.0)
}

/// Actual success probability for an off-centre mean.
pub fn true_success(point: CenteringPoint) -> f64 {
    interval_mass(point.rel_shift, point.rel_width, 1.0)
}

/// [`true_success`] evaluated on an interval of width `span` instead of 1.
pub fn true_success_with_span(point: CenteringPoint, span: f64) -> Result<f64> {
    if !(span > 0.0 && span.is_finite()) {
        return Err(Error::invalid("span", format!("must be positive, got {span}")));
    }
    Ok(interval_mass(point.rel_shift, point.rel_width, span))
}

/// Success probability assuming the mean sits at the centre.
pub fn proxy_success(rel_width: f64) -> Result<f64> {
    CenteringPoint::new(0.0, rel_width).map(true_success)
}

/// `0.9 * proxy_success(rel_width)`.
pub fn conservative_proxy(rel_width: f64) -> Result<f64> {
    proxy_success(rel_width).map(|p| 0.9 * p)
}

/// `(proxy - true) / true`, or `None` when the true probability underflows.
pub fn relative_error(point: CenteringPoint) -> Option<f64> {
    let truth = true_success(point);
    if truth < f64::MIN_POSITIVE {
        return None;
    }
    let proxy = interval_mass(0.0, point.rel_width, 1.0);
    Some((proxy - truth) / truth)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CenteringMap {
    pub shift_values: Vec<f64>,
    pub width_values: Vec<f64>,
    pub true_success: Vec<Vec<f64>>,
    pub proxy_success: Vec<Vec<f64>>,
    pub relative_error: Vec<Vec<Option<f64>>>,
}

/// Largest defined cell of a region and where it sits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegionMax {
    pub value: f64,
    pub rel_shift: f64,
    pub rel_width: f64,
}

impl CenteringMap {
    /// Maximum relative error over cells with `rel_width < width_below` and
    /// `rel_shift <= shift_at_most`.
    pub fn max_over(&self, width_below: f64, shift_at_most: f64) -> Option<RegionMax> {
        let mut best: Option<RegionMax> = None;
        for (i, &s) in self.shift_values.iter().enumerate() {
            if s > shift_at_most {
                continue;
            }
            for (j, &w) in self.width_values.iter().enumerate() {
                if w >= width_below {
                    continue;
                }
                if let Some(v) = self.relative_error[i][j] {
                    if best.is_none_or(|b| v > b.value) {
                        best = Some(RegionMax {
                            value: v,
                            rel_shift: s,
                            rel_width: w,
                        });
                    }
                }
            }
        }
        best
    }
}

/// Relative error of the proxy on every `(shift, width)` pair. Rows follow
/// `shift_axis`.
pub fn relative_error_map(shift_axis: &[f64], width_axis: &[f64]) -> Result<CenteringMap> {
    if shift_axis.is_empty() || width_axis.is_empty() {
        return Err(Error::invalid("centering", "axes must be non-empty"));
    }
    for &s in shift_axis {
        CenteringPoint::new(s, 1.0)?;
    }
    for &w in width_axis {
        CenteringPoint::new(0.0, w)?;
    }

    let rows: Vec<Vec<(f64, f64, Option<f64>)>> = shift_axis
        .par_iter()
        .map(|&s| {
            width_axis
                .iter()
                .map(|&w| {
                    let point = CenteringPoint { rel_shift: s, rel_width: w };
                    (true_success(point), interval_mass(0.0, w, 1.0), relative_error(point))
                })
                .collect()
        })
        .collect();

    Ok(CenteringMap {
        shift_values: shift_axis.to_vec(),
        width_values: width_axis.to_vec(),
        true_success: rows.iter().map(|r| r.iter().map(|c| c.0).collect()).collect(),
        proxy_success: rows.iter().map(|r| r.iter().map(|c| c.1).collect()).collect(),
        relative_error: rows.iter().map(|r| r.iter().map(|c| c.2).collect()).collect(),
    })
}

pub fn default_shift_axis() -> Vec<f64> {
    linear_axis(0.0, 0.99, 100).expect("static axis")
}

pub fn default_width_axis() -> Vec<f64> {
    log_axis(1e-3, 1.0, 100).expect("static axis")
}
