//! Accuracy, accumulation and timing experiments in binary32.
//!
//! Every sampled experiment splits its samples into fixed-size chunks, each
//! with its own random substream, evaluates chunks in parallel, and merges
//! the per-chunk results in chunk order. Results therefore depend on the
//! seed and the sample counts but not on the number of worker threads.

pub mod accum;
pub mod accuracy;
pub mod bench;
pub mod heatmap;
pub mod stats;

use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{GivensError, Result};
use crate::precision::{Precision, Real};
use crate::rng_polar::{substream, ScenarioSpec};

pub use accum::{
    predict_lognormal, predict_lognormal_excess, run_accum2, run_accum3, schedule_3x3,
    Accum2Result, Accum3Result, AccumForecast,
};
pub use accuracy::{
    run_component_errors, run_real_errors, run_single_accuracy, AccuracyResult,
    ComponentMaxima, RealMaxima,
};
pub use bench::{run_bench, BenchKernel, BenchRow};
pub use heatmap::{run_heatmap, HeatCell};
pub use stats::{ErrorStats, Histogram, Moments, HIST_BINS};

/// Working precision of every experiment.
pub type Work = f32;

pub const PRECISION: Precision = Precision::Binary32;

/// Unit roundoff of [`Work`]; experiment outputs are reported in this unit.
pub const U: f64 = <Work as Real>::UNIT_ROUNDOFF;

/// Runs `body` on every chunk of `spec` in parallel; results in chunk order.
fn par_chunks<A, F>(spec: &ScenarioSpec, body: F) -> Result<Vec<A>>
where
    A: Send,
    F: Fn(&mut ChaCha8Rng, usize) -> Result<A> + Sync,
{
    spec.validate(PRECISION)?;
    if spec.samples == 0 {
        return Err(GivensError::Scenario("sample count must be positive".into()));
    }
    let chunks: Vec<(u64, usize)> = spec.chunks().collect();
    chunks
        .into_par_iter()
        .map(|(i, n)| body(&mut substream(spec.seed, i), n))
        .collect()
}

fn positive(what: &'static str, n: u64) -> Result<()> {
    if n == 0 {
        return Err(GivensError::Domain {
            what,
            value: 0.0,
            domain: ">= 1",
        });
    }
    Ok(())
}
