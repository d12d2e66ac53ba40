//! CSV files written by the command-line tool.
//!
//! Floats are written as `{:.16e}` (17 significant digits), so every value
//! round-trips exactly.

use std::fs::{self, File};
use std::path::{Path, PathBuf};

use crate::error::{GivensError, Result};
use crate::experiments::{ErrorStats, Histogram};

pub const BOUNDS_HEADER: &[&str] = &["n", "gamma_alpha_n", "gamma_half_n", "gamma_floor_half_plus1"];
pub const THRESHOLDS_HEADER: &[&str] = &["precision", "unit_roundoff", "first_failing_n"];
pub const STATS_HEADER: &[&str] = &["algo", "metric", "avg", "std", "avg_abs", "std_abs", "max_abs", "count"];
pub const HIST_HEADER: &[&str] = &["algo", "metric", "bin_left", "bin_right", "count"];
pub const HEATMAP_HEADER: &[&str] = &["log2_f", "log2_g", "sigma_err_avg"];
pub const BENCH_HEADER: &[&str] = &["scenario", "algo", "ns_per_call"];
pub const FORECAST_HEADER: &[&str] = &["algo", "M", "N", "mu_x_minus_1", "sigma_x", "mu_y_minus_1", "sigma_y"];

pub fn fmt_f(x: f64) -> String {
    format!("{x:.16e}")
}

/// Creates `dir` if needed and checks that none of `names` exists in it
/// unless `force` is set. Call before any computation.
pub fn prepare(dir: &Path, names: &[String], force: bool) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|source| GivensError::Io {
        path: dir.display().to_string(),
        source,
    })?;
    let paths: Vec<PathBuf> = names.iter().map(|n| dir.join(n)).collect();
    if !force {
        if let Some(p) = paths.iter().find(|p| p.exists()) {
            return Err(GivensError::Io {
                path: p.display().to_string(),
                source: std::io::Error::new(
                    std::io::ErrorKind::AlreadyExists,
                    "file exists; pass --force to overwrite",
                ),
            });
        }
    }
    Ok(paths)
}

pub struct CsvOut {
    path: String,
    inner: csv::Writer<File>,
}

impl CsvOut {
    pub fn create(path: &Path, header: &[&str]) -> Result<Self> {
        let display = path.display().to_string();
        let file = File::create(path).map_err(|source| GivensError::Io {
            path: display.clone(),
            source,
        })?;
        let mut out = CsvOut {
            path: display,
            inner: csv::Writer::from_writer(file),
        };
        out.row(header)?;
        Ok(out)
    }

    pub fn row<S: AsRef<[u8]>>(&mut self, fields: &[S]) -> Result<()> {
        self.inner.write_record(fields).map_err(|source| GivensError::Csv {
            path: self.path.clone(),
            source,
        })
    }

    pub fn stats(&mut self, algo: &str, metric: &str, s: &ErrorStats) -> Result<()> {
        self.row(&[
            algo.to_owned(),
            metric.to_owned(),
            fmt_f(s.avg),
            fmt_f(s.std),
            fmt_f(s.avg_abs),
            fmt_f(s.std_abs),
            fmt_f(s.max_abs),
            s.count.to_string(),
        ])
    }

    pub fn histogram(&mut self, algo: &str, metric: &str, h: &Histogram) -> Result<()> {
        for (l, r, c) in h.rows() {
            self.row(&[algo.to_owned(), metric.to_owned(), fmt_f(l), fmt_f(r), c.to_string()])?;
        }
        Ok(())
    }

    pub fn finish(mut self) -> Result<()> {
        self.inner.flush().map_err(|source| GivensError::Io {
            path: self.path.clone(),
            source,
        })
    }
}
