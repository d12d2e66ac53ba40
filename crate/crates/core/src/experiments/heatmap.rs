//! Mean of `sigma - 1` over random phases on a grid of fixed moduli.

use rayon::prelude::*;

use super::{positive, Work, PRECISION, U};
use crate::error::{GivensError, Result};
use crate::givens::ComplexAlgorithm;
use crate::metrics::sigma_minus_one;
use crate::rng_polar::{sample_pair, substream, ScenarioSpec};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeatCell {
    pub log2_f: f64,
    pub log2_g: f64,
    /// Mean of `sigma - 1` in units of `u`.
    pub sigma_err_avg: f64,
}

/// `lo, lo + step, ...` up to and including `hi`.
pub fn grid(lo: f64, hi: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) || !(lo <= hi) {
        return Err(GivensError::Scenario(format!(
            "grid ({lo}, {hi}, step {step}) is empty"
        )));
    }
    let n = ((hi - lo) / step + 1e-9).floor() as usize + 1;
    Ok((0..n).map(|i| lo + step * i as f64).collect())
}

/// Cells are ordered with `log2_f` outermost. Cell `k` draws from
/// substream `k`. Within a cell, `log2|f|` and `log2|g|` are uniform on
/// intervals of length `width` centred on the grid point; `width = 0`
/// fixes the moduli and randomises only the phases.
pub fn run_heatmap(
    algo: ComplexAlgorithm,
    log2_f: &[f64],
    log2_g: &[f64],
    width: f64,
    samples_per_cell: u64,
    seed: u64,
) -> Result<Vec<HeatCell>> {
    positive("samples per cell", samples_per_cell)?;
    if !(width >= 0.0) || !width.is_finite() {
        return Err(GivensError::Domain {
            what: "cell width",
            value: width,
            domain: "[0, inf)",
        });
    }
    let h = width / 2.0;
    let cells: Vec<(u64, f64, f64)> = log2_f
        .iter()
        .flat_map(|&a| log2_g.iter().map(move |&b| (a, b)))
        .enumerate()
        .map(|(k, (a, b))| (k as u64, a, b))
        .collect();
    for &(_, a, b) in &cells {
        ScenarioSpec { rho_f: (a - h, a + h), rho_g: (b - h, b + h), samples: 1, seed }
            .validate(PRECISION)?;
    }
    Ok(cells
        .into_par_iter()
        .map(|(k, a, b)| {
            let spec = ScenarioSpec {
                rho_f: (a - h, a + h),
                rho_g: (b - h, b + h),
                samples: samples_per_cell,
                seed,
            };
            let mut rng = substream(seed, k);
            let mut sum = 0.0;
            for _ in 0..samples_per_cell {
                let (f, g) = sample_pair::<Work, _>(&spec, &mut rng);
                sum += sigma_minus_one(&algo.generate(f, g));
            }
            HeatCell {
                log2_f: a,
                log2_g: b,
                sigma_err_avg: sum / samples_per_cell as f64 / U,
            }
        })
        .collect())
}
