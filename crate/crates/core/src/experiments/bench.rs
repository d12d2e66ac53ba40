//! Timing harness: average nanoseconds per generator call.
//!
//! Inputs are generated before timing. Each (kernel, scenario) pair gets one
//! untimed warm-up pass and three timed passes over the whole input vector;
//! the fastest pass is reported. Outputs are folded into a sink passed
//! through [`black_box`] so the calls cannot be elided. Runs on the calling
//! thread only.

use std::fmt;
use std::hint::black_box;
use std::time::Instant;

use num_complex::Complex;

use super::{positive, Work, PRECISION};
use crate::error::Result;
use crate::givens::{lartg_cplx_cast_of, ComplexAlgorithm, ComplexRotation};
use crate::rng_polar::{generate_pairs, Scenario, ScenarioSpec};

const TIMED_PASSES: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BenchKernel {
    /// The algorithm in working precision.
    Working(ComplexAlgorithm),
    /// The algorithm in binary64, outputs rounded to working precision.
    CastOf(ComplexAlgorithm),
    /// Copies its inputs; a floor for loop and memory overhead.
    Noop,
}

impl BenchKernel {
    /// Working and cast variants of the three distinct algorithms.
    pub const DEFAULT: [BenchKernel; 6] = [
        BenchKernel::Working(ComplexAlgorithm::Lapack39),
        BenchKernel::Working(ComplexAlgorithm::Lapack310),
        BenchKernel::Working(ComplexAlgorithm::New),
        BenchKernel::CastOf(ComplexAlgorithm::Lapack39),
        BenchKernel::CastOf(ComplexAlgorithm::Lapack310),
        BenchKernel::CastOf(ComplexAlgorithm::New),
    ];

    /// `Cast` is the cast of `New`.
    pub fn from_algorithm(algo: ComplexAlgorithm) -> Self {
        match algo {
            ComplexAlgorithm::Cast => BenchKernel::CastOf(ComplexAlgorithm::New),
            other => BenchKernel::Working(other),
        }
    }

    pub fn name(&self) -> String {
        match self {
            BenchKernel::Working(a) => a.name().to_owned(),
            BenchKernel::CastOf(ComplexAlgorithm::New | ComplexAlgorithm::Cast) => {
                ComplexAlgorithm::Cast.name().to_owned()
            }
            BenchKernel::CastOf(a) => format!("{}_cast", a.name()),
            BenchKernel::Noop => "noop".to_owned(),
        }
    }

    #[inline(always)]
    fn call(&self, f: Complex<Work>, g: Complex<Work>) -> ComplexRotation<Work> {
        match *self {
            BenchKernel::Working(a) => a.generate(f, g),
            BenchKernel::CastOf(a) => lartg_cplx_cast_of(a, f, g),
            BenchKernel::Noop => ComplexRotation { c: f.re, s: g, r: f },
        }
    }
}

impl fmt::Display for BenchKernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    /// 1-based scenario number.
    pub scenario: usize,
    pub kernel: BenchKernel,
    pub ns_per_call: f64,
}

fn time_pass(kernel: BenchKernel, inputs: &[(Complex<Work>, Complex<Work>)]) -> (f64, Work) {
    let start = Instant::now();
    let mut sink: Work = 0.0;
    for &(f, g) in inputs {
        let rot = kernel.call(black_box(f), black_box(g));
        sink += rot.c + rot.s.re + rot.r.im;
    }
    let elapsed = start.elapsed().as_secs_f64();
    (elapsed * 1e9 / inputs.len() as f64, black_box(sink))
}

/// Best-of-three ns per call for one kernel on one input set.
pub fn time_kernel(kernel: BenchKernel, inputs: &[(Complex<Work>, Complex<Work>)]) -> f64 {
    black_box(time_pass(kernel, inputs));
    (0..TIMED_PASSES)
        .map(|_| time_pass(kernel, inputs).0)
        .fold(f64::INFINITY, f64::min)
}

/// Scenario-major rows, `kernels` in the given order within a scenario.
pub fn run_bench(
    kernels: &[BenchKernel],
    scenarios: &[Scenario],
    samples: u64,
    seed: u64,
) -> Result<Vec<BenchRow>> {
    positive("samples", samples)?;
    let mut rows = Vec::with_capacity(kernels.len() * scenarios.len());
    for (idx, &(rho_f, rho_g)) in scenarios.iter().enumerate() {
        let spec = ScenarioSpec { rho_f, rho_g, samples, seed };
        spec.validate(PRECISION)?;
        let inputs = generate_pairs::<Work>(&spec);
        for &kernel in kernels {
            rows.push(BenchRow {
                scenario: idx + 1,
                kernel,
                ns_per_call: time_kernel(kernel, &inputs),
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng_polar::default_scenarios;

    #[test]
    fn names() {
        let names: Vec<String> = BenchKernel::DEFAULT.iter().map(|k| k.name()).collect();
        assert_eq!(
            names,
            ["cplx39", "cplx310", "cplx_new", "cplx39_cast", "cplx310_cast", "cplx_cast"]
        );
        assert_eq!(
            BenchKernel::from_algorithm(ComplexAlgorithm::Cast),
            BenchKernel::CastOf(ComplexAlgorithm::New)
        );
    }

    #[test]
    fn rows_per_scenario_and_kernel() {
        let rows = run_bench(&BenchKernel::DEFAULT, &default_scenarios(), 2000, 1).unwrap();
        assert_eq!(rows.len(), 42);
        for r in &rows {
            assert!(r.ns_per_call.is_finite() && r.ns_per_call > 0.0, "{r:?}");
        }
    }

    #[test]
    fn noop_is_a_floor() {
        let spec = ScenarioSpec::default_for(PRECISION, 200_000, 1);
        let inputs = generate_pairs::<Work>(&spec);
        let noop = time_kernel(BenchKernel::Noop, &inputs);
        let new = time_kernel(BenchKernel::Working(ComplexAlgorithm::New), &inputs);
        assert!(noop >= 0.0);
        assert!(noop < new, "noop {noop} ns, new {new} ns");
    }
}
