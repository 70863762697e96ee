//! Error function and normal-distribution interval probabilities.

#![allow(clippy::excessive_precision)]

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

// The rational approximations below are FreeBSD's s_erf.c, which carries:
//
// ====================================================
// Copyright (C) 1993 by Sun Microsystems, Inc. All rights reserved.
//
// Developed at SunPro, a Sun Microsystems, Inc. business.
// Permission to use, copy, modify, and distribute this
// software is freely granted, provided that this notice
// is preserved.
// ====================================================
//
// Ranges: |x| < 0.84375 uses x + x R(x^2); [0.84375, 1.25) expands around 1;
// [1.25, 1/0.35) and [1/0.35, 6) use exp(-x^2 - 0.5625 + R/S) / x for erfc.
// Each approximant is accurate to better than 2^-57 relative.

const ERX: f64 = 8.45062911510467529297e-01;
const EFX8: f64 = 1.02703333676410069053e+00;
const PP: [f64; 5] = [
    1.28379167095512558561e-01,
    -3.25042107247001499370e-01,
    -2.84817495755985104766e-02,
    -5.77027029648944159157e-03,
    -2.37630166566501626084e-05,
];
const QQ: [f64; 5] = [
    3.97917223959155352819e-01,
    6.50222499887672944485e-02,
    5.08130628187576562776e-03,
    1.32494738004321644526e-04,
    -3.96022827877536812320e-06,
];
const PA: [f64; 7] = [
    -2.36211856075265944077e-03,
    4.14856118683748331666e-01,
    -3.72207876035701323847e-01,
    3.18346619901161753674e-01,
    -1.10894694282396677476e-01,
    3.54783043256182359371e-02,
    -2.16637559486879084300e-03,
];
const QA: [f64; 6] = [
    1.06420880400844228286e-01,
    5.40397917702171048937e-01,
    7.18286544141962662868e-02,
    1.26171219808761642112e-01,
    1.36370839120290507362e-02,
    1.19844998467991074170e-02,
];
const RA: [f64; 8] = [
    -9.86494403484714822705e-03,
    -6.93858572707181764372e-01,
    -1.05586262253232909814e+01,
    -6.23753324503260060396e+01,
    -1.62396669462573470355e+02,
    -1.84605092906711035994e+02,
    -8.12874355063065934246e+01,
    -9.81432934416914548592e+00,
];
const SA: [f64; 8] = [
    1.96512716674392571292e+01,
    1.37657754143519042600e+02,
    4.34565877475229228821e+02,
    6.45387271733267880336e+02,
    4.29008140027567833386e+02,
    1.08635005541779435134e+02,
    6.57024977031928170135e+00,
    -6.04244152148580987438e-02,
];
const RB: [f64; 7] = [
    -9.86494292470009928597e-03,
    -7.99283237680523006574e-01,
    -1.77579549177547519889e+01,
    -1.60636384855821916062e+02,
    -6.37566443368389627722e+02,
    -1.02509513161107724954e+03,
    -4.83519191608651397019e+02,
];
const SB: [f64; 7] = [
    3.03380607434824582924e+01,
    3.25792512996573918826e+02,
    1.53672958608443695994e+03,
    3.19985821950859553908e+03,
    2.55305040643316442583e+03,
    4.74528541206955367215e+02,
    -2.24409524465858183362e+01,
];

/// Horner evaluation of `c[0] + s c[1] + s^2 c[2] + ...`.
fn poly(c: &[f64], s: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &k| acc * s + k)
}

/// `1 + s c[0] + s^2 c[1] + ...`.
fn poly1(c: &[f64], s: f64) -> f64 {
    1.0 + s * poly(c, s)
}

/// erfc for `x >= 0.84375`, valid up to the point where it underflows.
fn erfc_tail(x: f64) -> f64 {
    if x < 1.25 {
        let s = x - 1.0;
        return 1.0 - ERX - poly(&PA, s) / poly1(&QA, s);
    }
    let s = 1.0 / (x * x);
    let (r, big_s) = if x < 1.0 / 0.35 {
        (poly(&RA, s), poly1(&SA, s))
    } else {
        (poly(&RB, s), poly1(&SB, s))
    };
    // Split x so that z*z is exact and exp(-x*x) keeps full precision.
    let z = f64::from_bits(x.to_bits() & 0xffff_ffff_0000_0000);
    (-z * z - 0.5625).exp() * ((z - x) * (z + x) + r / big_s).exp() / x
}

/// Error function, accurate to about one ulp.
///
/// Computed on `|x|` with the sign applied last, so `erf(-x) == -erf(x)`
/// holds bit for bit.
pub fn erf(x: f64) -> f64 {
    if x.is_nan() {
        return x;
    }
    let a = x.abs();
    let y = if a < 0.84375 {
        if a < 2f64.powi(-28) {
            0.125 * (8.0 * a + EFX8 * a)
        } else {
            let z = a * a;
            a + a * (poly(&PP, z) / poly1(&QQ, z))
        }
    } else if a < 6.0 {
        1.0 - erfc_tail(a)
    } else {
        1.0
    };
    if x.is_sign_negative() {
        -y
    } else {
        y
    }
}

/// Complementary error function `1 - erf(x)` without cancellation for large `x`.
pub fn erfc(x: f64) -> f64 {
    if x.is_nan() {
        return x;
    }
    let a = x.abs();
    let upper = if a < 0.84375 {
        if x < 0.25 {
            return 1.0 - erf(x);
        }
        let z = a * a;
        let r = poly(&PP, z) / poly1(&QQ, z);
        return 0.5 - (x - 0.5 + x * r);
    } else if a < 28.0 {
        erfc_tail(a)
    } else {
        0.0
    };
    if x < 0.0 {
        2.0 - upper
    } else {
        upper
    }
}

fn clamp_probability(p: f64) -> f64 {
    p.clamp(0.0, 1.0)
}

/// Normal distribution `N(mean, sigma^2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormalSpec {
    mean: f64,
    sigma: f64,
}

impl NormalSpec {
    pub fn new(mean: f64, sigma: f64) -> Result<Self> {
        if !mean.is_finite() {
            return Err(Error::invalid("mean", "must be finite"));
        }
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(Error::invalid("sigma", format!("must be positive and finite, got {sigma}")));
        }
        Ok(NormalSpec { mean, sigma })
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    fn standardized(&self, x: f64) -> f64 {
        (x - self.mean) / (self.sigma * std::f64::consts::SQRT_2)
    }

    pub fn cdf(&self, x: f64) -> f64 {
        clamp_probability(0.5 * (1.0 + erf(self.standardized(x))))
    }
}

/// `P(X >= x_max)`.
pub fn tail_above(dist: &NormalSpec, x_max: f64) -> f64 {
    clamp_probability(0.5 * (1.0 - erf(dist.standardized(x_max))))
}

/// `P(X <= x_min)`.
pub fn tail_below(dist: &NormalSpec, x_min: f64) -> f64 {
    clamp_probability(0.5 * (1.0 + erf(dist.standardized(x_min))))
}

/// `P(lo <= X <= hi)`; infinite bounds are allowed.
pub fn interval_probability(dist: &NormalSpec, lo: f64, hi: f64) -> Result<f64> {
    if lo.is_nan() || hi.is_nan() {
        return Err(Error::invalid("interval", "bounds must not be NaN"));
    }
    if lo > hi {
        return Err(Error::invalid("interval", format!("lower bound {lo} exceeds upper bound {hi}")));
    }
    let p = 0.5 * (erf(dist.standardized(hi)) - erf(dist.standardized(lo)));
    Ok(clamp_probability(p))
}
