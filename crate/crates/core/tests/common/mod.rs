//! Independent reference implementations shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::f64::consts::PI;

use nalgebra::DMatrix;
use pec_advantage::hamiltonian::{Boundary, HubbardSpec};

/// erf by series for `|x| <= 3` and by continued fraction beyond.
///
/// `erf(x) = 2x/sqrt(pi) exp(-x^2) sum_n (2x^2)^n / (1*3*...*(2n+1))` has only
/// positive terms, so it loses nothing to cancellation.
pub fn erf_oracle(x: f64) -> f64 {
    if x < 0.0 {
        return -erf_oracle(-x);
    }
    if x <= 3.0 {
        let two_x2 = 2.0 * x * x;
        let (mut term, mut sum, mut comp) = (1.0f64, 1.0f64, 0.0f64);
        let mut n = 0.0;
        while term > 1e-20 * sum {
            n += 1.0;
            term *= two_x2 / (2.0 * n + 1.0);
            // Kahan summation
            let y = term - comp;
            let t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
        2.0 * x / PI.sqrt() * (-x * x).exp() * sum
    } else {
        1.0 - erfc_cf(x)
    }
}

/// `erfc(x) = exp(-x^2)/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))`
/// evaluated with the modified Lentz method.
pub fn erfc_cf(x: f64) -> f64 {
    let tiny = 1e-300;
    let mut f = x;
    let mut c = x;
    let mut d = 0.0;
    for k in 1..500 {
        let a = k as f64 / 2.0;
        d = x + a * d;
        if d.abs() < tiny {
            d = tiny;
        }
        c = x + a / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-17 {
            break;
        }
    }
    (-x * x).exp() / PI.sqrt() / f
}

/// Composite Gauss-Legendre (5 points per panel) integral of `f` on `[a, b]`.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    const NODES: [f64; 5] = [
        0.0,
        -0.538_469_310_105_683_1,
        0.538_469_310_105_683_1,
        -0.906_179_845_938_664,
        0.906_179_845_938_664,
    ];
    const WEIGHTS: [f64; 5] = [
        0.568_888_888_888_888_9,
        0.478_628_670_499_366_5,
        0.478_628_670_499_366_5,
        0.236_926_885_056_189_1,
        0.236_926_885_056_189_1,
    ];
    let h = (b - a) / panels as f64;
    (0..panels)
        .map(|k| {
            let mid = a + (k as f64 + 0.5) * h;
            NODES
                .iter()
                .zip(WEIGHTS)
                .map(|(x, w)| w * f(mid + 0.5 * h * x))
                .sum::<f64>()
                * 0.5
                * h
        })
        .sum()
}

/// Mass of `N(mean, sigma^2)` on `[lo, hi]` by direct quadrature of the density.
pub fn normal_mass_quadrature(mean: f64, sigma: f64, lo: f64, hi: f64) -> f64 {
    let lo = lo.max(mean - 40.0 * sigma);
    let hi = hi.min(mean + 40.0 * sigma);
    if lo >= hi {
        return 0.0;
    }
    let density = |x: f64| (-(x - mean).powi(2) / (2.0 * sigma * sigma)).exp() / (sigma * (2.0 * PI).sqrt());
    integrate(density, lo, hi, 4000)
}

/// Nearest-neighbour bonds, wrapping only along sides of length >= 3.
pub fn bonds(spec: &HubbardSpec) -> BTreeSet<(usize, usize)> {
    let mut out = BTreeSet::new();
    let (r, c) = (spec.rows, spec.cols);
    let periodic = spec.boundary == Boundary::Periodic;
    for i in 0..r {
        for j in 0..c {
            let s = i * c + j;
            let mut nbrs = Vec::new();
            if j + 1 < c {
                nbrs.push(i * c + j + 1);
            }
            if i + 1 < r {
                nbrs.push((i + 1) * c + j);
            }
            if periodic && c >= 3 && j == c - 1 {
                nbrs.push(i * c);
            }
            if periodic && r >= 3 && i == r - 1 {
                nbrs.push(j);
            }
            for t in nbrs {
                out.insert((s.min(t), s.max(t)));
            }
        }
    }
    out
}

/// Annihilation operator on mode `j` of an `n`-mode Fock space, with the
/// sign `(-1)^(occupied modes below j)`.
pub fn annihilator(n: usize, j: usize) -> DMatrix<f64> {
    let d = 1usize << n;
    let mut m = DMatrix::zeros(d, d);
    for b in 0..d {
        if b >> j & 1 == 1 {
            let sign = if (b & ((1 << j) - 1)).count_ones().is_multiple_of(2) { 1.0 } else { -1.0 };
            m[(b ^ (1 << j), b)] = sign;
        }
    }
    m
}

/// Hubbard Hamiltonian assembled from fermionic operators: hopping
/// `-t (c_i^+ c_j + h.c.)`, interaction `U n_up n_down` and `-mu n` per mode.
pub fn fermionic_hubbard(spec: &HubbardSpec) -> DMatrix<f64> {
    let l = spec.rows * spec.cols;
    let n = 2 * l;
    let d = 1usize << n;
    let c: Vec<DMatrix<f64>> = (0..n).map(|j| annihilator(n, j)).collect();
    let num: Vec<DMatrix<f64>> = c.iter().map(|a| a.transpose() * a).collect();
    let mut h = DMatrix::zeros(d, d);
    for (i, j) in bonds(spec) {
        for offset in [0, l] {
            let (a, b) = (i + offset, j + offset);
            let hop = c[a].transpose() * &c[b];
            h -= (&hop + hop.transpose()) * spec.t;
        }
    }
    for s in 0..l {
        h += &num[s] * &num[s + l] * spec.u;
        h -= (&num[s] + &num[s + l]) * spec.mu;
    }
    h
}

/// Every lattice with at most `max_sites` sites, both boundaries.
pub fn small_lattices(max_sites: usize) -> Vec<(usize, usize, Boundary)> {
    let mut out = Vec::new();
    for rows in 1..=max_sites {
        for cols in 1..=max_sites {
            if rows * cols <= max_sites {
                for b in [Boundary::Open, Boundary::Periodic] {
                    out.push((rows, cols, b));
                }
            }
        }
    }
    out
}
