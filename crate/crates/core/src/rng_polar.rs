//! Random input pairs with uniform angles and log-uniform moduli.
//!
//! `|f| = 2^(rho_min + (rho_max - rho_min) U)` with `U` uniform, and the
//! phases of `f` and `g` are `theta` and `theta + phi` with `theta, phi`
//! uniform on `[0, 2 pi)`. Trigonometric functions and powers are evaluated
//! in binary64 and rounded to the working precision.
//!
//! # Streams
//!
//! Samples are generated in fixed-size chunks. Chunk `i` of a run with seed
//! `s` draws from ChaCha8 keyed by `s` on stream `i`, so the sample sequence
//! does not depend on how chunks are spread over threads.

use std::f64::consts::TAU;
use std::fmt;
use std::path::Path;

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{GivensError, Result};
use crate::precision::{Precision, Real};

/// Number of samples drawn from one substream.
pub const CHUNK: u64 = 1 << 14;

const DEFAULT_SCENARIOS: &str = include_str!("../data/bench_scenarios.csv");

/// Exponent ranges for `|f|` and `|g|`, a sample count and a seed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScenarioSpec {
    pub rho_f: (f64, f64),
    pub rho_g: (f64, f64),
    pub samples: u64,
    pub seed: u64,
}

impl ScenarioSpec {
    /// Default exponent range for both moduli.
    pub fn default_for(precision: Precision, samples: u64, seed: u64) -> Self {
        let rho = default_rho(precision);
        ScenarioSpec {
            rho_f: rho,
            rho_g: rho,
            samples,
            seed,
        }
    }

    pub fn validate(&self, precision: Precision) -> Result<()> {
        let (min_exp, max_exp, digits) = precision.exponent_limits();
        let lo = f64::from(min_exp) - f64::from(digits);
        let hi = f64::from(max_exp - 1);
        for (name, (a, b)) in [("rho_f", self.rho_f), ("rho_g", self.rho_g)] {
            if !(a.is_finite() && b.is_finite()) || a > b {
                return Err(GivensError::Scenario(format!(
                    "{name} = ({a}, {b}) must be finite with min <= max"
                )));
            }
            if a < lo || b > hi {
                return Err(GivensError::Scenario(format!(
                    "{name} = ({a}, {b}) leaves [{lo}, {hi}] for {precision}"
                )));
            }
        }
        Ok(())
    }

    /// Chunk indices covering `samples`, with their sample counts.
    pub fn chunks(&self) -> impl Iterator<Item = (u64, usize)> + '_ {
        let n = self.samples.div_ceil(CHUNK);
        (0..n).map(move |i| (i, (self.samples - i * CHUNK).min(CHUNK) as usize))
    }
}

impl fmt::Display for ScenarioSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}) x ({}, {})",
            self.rho_f.0, self.rho_f.1, self.rho_g.0, self.rho_g.1
        )
    }
}

/// `rho_max = (min(1 - min_exp, max_exp - 1) - digits + 1)/2 - 1`,
/// `rho_min = -rho_max`. Keeps squares and their sums clear of both
/// thresholds, so only the unscaled kernels are exercised.
pub fn default_rho(precision: Precision) -> (f64, f64) {
    let (min_exp, max_exp, digits) = precision.exponent_limits();
    let safmax_exp = (1 - min_exp).min(max_exp - 1);
    let rho_max = f64::from(safmax_exp - digits as i32 + 1) / 2.0 - 1.0;
    (-rho_max, rho_max)
}

/// The generator for chunk `chunk` of a run seeded with `seed`.
pub fn substream(seed: u64, chunk: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    rng
}

fn modulus<T: Real, R: Rng>(rho: (f64, f64), rng: &mut R) -> T {
    let u: f64 = rng.random();
    T::from_f64((rho.0 + (rho.1 - rho.0) * u).exp2())
}

/// One complex pair. Draw order: `theta`, `phi`, `|f|`, `|g|`.
pub fn sample_pair<T: Real, R: Rng>(
    spec: &ScenarioSpec,
    rng: &mut R,
) -> (Complex<T>, Complex<T>) {
    let theta = TAU * rng.random::<f64>();
    let phi = TAU * rng.random::<f64>();
    let r1 = modulus::<T, _>(spec.rho_f, rng);
    let r2 = modulus::<T, _>(spec.rho_g, rng);
    let t = T::from_f64;
    let f = Complex::new(r1 * t(theta.cos()), r1 * t(theta.sin()));
    let psi = theta + phi;
    let g = Complex::new(r2 * t(psi.cos()), r2 * t(psi.sin()));
    (f, g)
}

/// One real pair with independent random signs.
pub fn sample_real_pair<T: Real, R: Rng>(spec: &ScenarioSpec, rng: &mut R) -> (T, T) {
    let signs: u8 = rng.random();
    let mut f = modulus::<T, _>(spec.rho_f, rng);
    let mut g = modulus::<T, _>(spec.rho_g, rng);
    if signs & 1 != 0 {
        f = -f;
    }
    if signs & 2 != 0 {
        g = -g;
    }
    (f, g)
}

/// All pairs of `spec`, in sample order.
pub fn generate_pairs<T: Real>(spec: &ScenarioSpec) -> Vec<(Complex<T>, Complex<T>)> {
    let mut out = Vec::with_capacity(spec.samples as usize);
    for (chunk, n) in spec.chunks() {
        let mut rng = substream(spec.seed, chunk);
        out.extend((0..n).map(|_| sample_pair::<T, _>(spec, &mut rng)));
    }
    out
}

/// `(rho_f, rho_g)` exponent ranges of one timing scenario.
pub type Scenario = ((f64, f64), (f64, f64));

/// Parses `rho_f_min,rho_f_max,rho_g_min,rho_g_max` lines. Blank lines and
/// lines starting with `#` are skipped.
pub fn parse_scenarios(text: &str) -> Result<Vec<Scenario>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let bad = || GivensError::Scenario(format!("line {}: `{line}`", lineno + 1));
        if fields.len() != 4 {
            return Err(bad());
        }
        let mut v = [0.0; 4];
        for (slot, field) in v.iter_mut().zip(&fields) {
            *slot = field.parse().map_err(|_| bad())?;
        }
        out.push(((v[0], v[1]), (v[2], v[3])));
    }
    if out.is_empty() {
        return Err(GivensError::Scenario("no scenarios".into()));
    }
    Ok(out)
}

/// The seven timing scenarios shipped with the crate.
pub fn default_scenarios() -> Vec<Scenario> {
    parse_scenarios(DEFAULT_SCENARIOS).expect("bundled scenario file is valid")
}

pub fn read_scenarios(path: &Path) -> Result<Vec<Scenario>> {
    let text = std::fs::read_to_string(path).map_err(|source| GivensError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_scenarios(&text)
}
