//! Accumulated non-unitarity of long rotation products.
//!
//! For `Q = [[c, s], [-conj(s), c]]`, `Q^H Q = sigma^2 I`, so a product of
//! `M` computed 2x2 rotations has Frobenius norm `sqrt(2) prod(sigma_i)`.
//! Products are accumulated as `expm1(sum(ln1p(sigma_i - 1)))` in binary64.
//!
//! The 3x3 run embeds each rotation in the coordinate plane given by
//! [`schedule_3x3`] and accumulates `V_k = G_k V_{k-1}` in binary64,
//! starting from the identity.

use num_complex::Complex;
use rayon::prelude::*;

use super::stats::{ErrorStats, Histogram, Moments, HIST_BINS};
use super::{positive, Work, PRECISION, U};
use crate::error::{GivensError, Result};
use crate::givens::{ComplexAlgorithm, ComplexRotation};
use crate::metrics::{offdiag_avg, sigma_minus_one, Mat3};
use crate::rng_polar::{sample_pair, substream, ScenarioSpec};

/// Log-normal forecast of a product of `m` i.i.d. singular values.
/// Means are stored as their excess over 1; nothing here is scaled by `u`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AccumForecast {
    pub m: u64,
    pub mu_x_minus_1: f64,
    pub sigma_x: f64,
    pub mu_y_minus_1: f64,
    pub sigma_y: f64,
}

impl AccumForecast {
    pub fn mu_x(&self) -> f64 {
        1.0 + self.mu_x_minus_1
    }

    pub fn mu_y(&self) -> f64 {
        1.0 + self.mu_y_minus_1
    }
}

/// `mu_y = mu_x^m`, `sigma_y = mu_x^m sqrt(exp(m (sigma_x/mu_x)^2) - 1)`.
pub fn predict_lognormal(mu_x: f64, sigma_x: f64, m: u64) -> Result<AccumForecast> {
    if !(mu_x > 0.0) || !mu_x.is_finite() {
        return Err(GivensError::Domain {
            what: "mu_x",
            value: mu_x,
            domain: "(0, inf)",
        });
    }
    predict_lognormal_excess(mu_x - 1.0, sigma_x, m)
}

/// [`predict_lognormal`] taking `mu_x - 1`, which keeps full relative
/// accuracy when `mu_x` is within a few `u` of 1.
pub fn predict_lognormal_excess(mu_x_minus_1: f64, sigma_x: f64, m: u64) -> Result<AccumForecast> {
    if !(mu_x_minus_1 > -1.0) || !mu_x_minus_1.is_finite() {
        return Err(GivensError::Domain {
            what: "mu_x - 1",
            value: mu_x_minus_1,
            domain: "(-1, inf)",
        });
    }
    if !(sigma_x >= 0.0) || !sigma_x.is_finite() {
        return Err(GivensError::Domain {
            what: "sigma_x",
            value: sigma_x,
            domain: "[0, inf)",
        });
    }
    positive("M", m)?;
    let mf = m as f64;
    let log_mu = mu_x_minus_1.ln_1p();
    let mu_y_minus_1 = if m == 1 {
        mu_x_minus_1
    } else {
        (mf * log_mu).exp_m1()
    };
    let ratio = sigma_x / (1.0 + mu_x_minus_1);
    let sigma_y = (mf * log_mu).exp() * (mf * ratio * ratio).exp_m1().sqrt();
    Ok(AccumForecast {
        m,
        mu_x_minus_1,
        sigma_x,
        mu_y_minus_1,
        sigma_y,
    })
}

/// 2x2 accumulation: `n` independent products of `m` singular values.
#[derive(Debug, Clone)]
pub struct Accum2Result {
    pub algo: ComplexAlgorithm,
    pub m: u64,
    pub n: u64,
    /// `sigma_i - 1` over all `m n` rotations, units of `u`.
    pub single: ErrorStats,
    /// `prod(sigma_i) - 1` over the `n` repetitions, units of `u`.
    pub product: ErrorStats,
    /// Per-repetition `prod(sigma_i) - 1`, units of `u`.
    pub products: Vec<f64>,
    /// From the measured `single` statistics.
    pub forecast: AccumForecast,
}

/// Repetition `j` draws its `m` inputs from substream `j` of `seed`.
pub fn run_accum2(algo: ComplexAlgorithm, m: u64, n: u64, seed: u64) -> Result<Accum2Result> {
    positive("M", m)?;
    positive("N", n)?;
    let spec = ScenarioSpec::default_for(PRECISION, m, seed);
    let reps: Vec<(Moments, f64)> = (0..n)
        .into_par_iter()
        .map(|j| {
            let mut rng = substream(seed, j);
            let mut single = Moments::new();
            let mut log_sum = 0.0;
            for _ in 0..m {
                let (f, g) = sample_pair::<Work, _>(&spec, &mut rng);
                let e = sigma_minus_one(&algo.generate(f, g));
                single.push(e / U);
                log_sum += e.ln_1p();
            }
            (single, log_sum.exp_m1() / U)
        })
        .collect();
    let mut single = Moments::new();
    for (s, _) in &reps {
        single.merge(s);
    }
    let products: Vec<f64> = reps.iter().map(|r| r.1).collect();
    let single = single.finish().expect("m n >= 1");
    let forecast = predict_lognormal_excess(single.avg * U, single.std * U, m)?;
    Ok(Accum2Result {
        algo,
        m,
        n,
        single,
        product: products.iter().copied().collect::<Moments>().finish().expect("n >= 1"),
        products,
        forecast,
    })
}

/// Coordinate plane (1-based) of rotation `k >= 1`: `(1,2)`, `(2,3)`,
/// `(1,3)`, repeating.
pub fn schedule_3x3(k: u64) -> Result<(usize, usize)> {
    positive("rotation index", k)?;
    Ok(match k % 3 {
        1 => (1, 2),
        2 => (2, 3),
        _ => (1, 3),
    })
}

/// Rows `i` and `j` (0-based) of `v` become `c v_i + s v_j` and
/// `-conj(s) v_i + c v_j`.
pub fn apply_rotation(v: &mut Mat3, i: usize, j: usize, rot: &ComplexRotation<f64>) {
    let c = rot.c;
    let s = rot.s;
    for col in 0..3 {
        let a = v.0[i][col];
        let b = v.0[j][col];
        v.0[i][col] = a.scale(c) + s * b;
        v.0[j][col] = -s.conj() * a + b.scale(c);
    }
}

/// 3x3 accumulation statistics, all in units of `u`.
#[derive(Debug, Clone)]
pub struct Accum3Result {
    pub algo: ComplexAlgorithm,
    pub m: u64,
    pub n: u64,
    /// `prod(sigma_i) - 1`.
    pub prod_sigma: ErrorStats,
    /// `1.5 (||V_M||_F / sqrt(3) - 1)`.
    pub norm_proxy: ErrorStats,
    /// Mean off-diagonal modulus of `V_M^H V_M`.
    pub offdiag: ErrorStats,
    /// Per-repetition values in the order above.
    pub values: Vec<[f64; 3]>,
}

pub fn run_accum3(algo: ComplexAlgorithm, m: u64, n: u64, seed: u64) -> Result<Accum3Result> {
    positive("N", n)?;
    let spec = ScenarioSpec::default_for(PRECISION, m, seed);
    let values: Vec<[f64; 3]> = (0..n)
        .into_par_iter()
        .map(|j| {
            let mut rng = substream(seed, j);
            let mut v = Mat3::identity();
            let mut log_sum = 0.0;
            for k in 1..=m {
                let (f, g) = sample_pair::<Work, _>(&spec, &mut rng);
                let rot = algo.generate(f, g);
                log_sum += sigma_minus_one(&rot).ln_1p();
                let (i, jj) = schedule_3x3(k).expect("k >= 1");
                apply_rotation(&mut v, i - 1, jj - 1, &rot.to_f64());
            }
            [
                log_sum.exp_m1() / U,
                1.5 * (v.frobenius() / 3f64.sqrt() - 1.0) / U,
                offdiag_avg(&v) / U,
            ]
        })
        .collect();
    let stats = |k: usize| {
        values
            .iter()
            .map(|x| x[k])
            .collect::<Moments>()
            .finish()
            .expect("n >= 1")
    };
    Ok(Accum3Result {
        algo,
        m,
        n,
        prod_sigma: stats(0),
        norm_proxy: stats(1),
        offdiag: stats(2),
        values,
    })
}

/// One histogram per series over a range shared by all of them.
pub fn shared_histograms(series: &[&[f64]]) -> Vec<Histogram> {
    let proto = Histogram::covering(series.iter().flat_map(|s| s.iter().copied()), HIST_BINS);
    series
        .iter()
        .map(|s| {
            let mut h = proto.clone();
            s.iter().for_each(|&x| h.push(x));
            h
        })
        .collect()
}

/// Product of `rots` as 2x2 matrices in binary64, `Q_k ... Q_1`.
pub fn product_2x2(rots: &[ComplexRotation<Work>]) -> [[Complex<f64>; 2]; 2] {
    let one = Complex::new(1.0, 0.0);
    let zero = Complex::new(0.0, 0.0);
    let mut p = [[one, zero], [zero, one]];
    for rot in rots {
        let r = rot.to_f64();
        let q = [[Complex::new(r.c, 0.0), r.s], [-r.s.conj(), Complex::new(r.c, 0.0)]];
        let mut out = [[zero; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = q[i][0] * p[0][j] + q[i][1] * p[1][j];
            }
        }
        p = out;
    }
    p
}
