//! Streaming moments and fixed-bin histograms.

use std::fmt;

/// Summary of a sample of errors, in whatever unit the caller fed in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorStats {
    pub avg: f64,
    /// Population standard deviation.
    pub std: f64,
    pub avg_abs: f64,
    pub std_abs: f64,
    pub max_abs: f64,
    pub count: u64,
}

impl fmt::Display for ErrorStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "avg {:.3e}  std {:.3e}  avg|.| {:.3e}  std|.| {:.3e}  max|.| {:.3e}  (n = {})",
            self.avg, self.std, self.avg_abs, self.std_abs, self.max_abs, self.count
        )
    }
}

/// Welford accumulator for a value and its absolute value. Two
/// accumulators merge exactly as if their samples had been pushed into one
/// (up to rounding), so per-chunk results can be combined in order.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Moments {
    count: u64,
    mean: f64,
    m2: f64,
    mean_abs: f64,
    m2_abs: f64,
    max_abs: f64,
}

impl Moments {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let n = self.count as f64;
        let d = x - self.mean;
        self.mean += d / n;
        self.m2 += d * (x - self.mean);
        let a = x.abs();
        let da = a - self.mean_abs;
        self.mean_abs += da / n;
        self.m2_abs += da * (a - self.mean_abs);
        // NaN compares false and would otherwise vanish from the maximum
        if a > self.max_abs || a.is_nan() {
            self.max_abs = a;
        }
    }

    pub fn merge(&mut self, other: &Moments) {
        if other.count == 0 {
            return;
        }
        if self.count == 0 {
            *self = *other;
            return;
        }
        let (na, nb) = (self.count as f64, other.count as f64);
        let n = na + nb;
        let d = other.mean - self.mean;
        self.mean += d * nb / n;
        self.m2 += other.m2 + d * d * na * nb / n;
        let da = other.mean_abs - self.mean_abs;
        self.mean_abs += da * nb / n;
        self.m2_abs += other.m2_abs + da * da * na * nb / n;
        if other.max_abs > self.max_abs || other.max_abs.is_nan() {
            self.max_abs = other.max_abs;
        }
        self.count += other.count;
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// `None` for an empty sample.
    pub fn finish(&self) -> Option<ErrorStats> {
        if self.count == 0 {
            return None;
        }
        let n = self.count as f64;
        Some(ErrorStats {
            avg: self.mean,
            std: (self.m2 / n).max(0.0).sqrt(),
            avg_abs: self.mean_abs,
            std_abs: (self.m2_abs / n).max(0.0).sqrt(),
            max_abs: self.max_abs,
            count: self.count,
        })
    }
}

impl FromIterator<f64> for Moments {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut m = Moments::new();
        for x in iter {
            m.push(x);
        }
        m
    }
}

/// Histogram with equal-width bins on `[lo, hi)` plus under- and overflow
/// counts. NaN is counted as overflow.
#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    lo: f64,
    hi: f64,
    bins: Vec<u64>,
    underflow: u64,
    overflow: u64,
}

pub const HIST_BINS: usize = 101;

impl Histogram {
    pub fn new(lo: f64, hi: f64, bins: usize) -> Self {
        assert!(lo < hi && bins > 0, "empty histogram range");
        Histogram {
            lo,
            hi,
            bins: vec![0; bins],
            underflow: 0,
            overflow: 0,
        }
    }

    /// Range wide enough for every value in `values`, never degenerate.
    pub fn covering(values: impl IntoIterator<Item = f64>, bins: usize) -> Self {
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for v in values.into_iter().filter(|v| v.is_finite()) {
            lo = lo.min(v);
            hi = hi.max(v);
        }
        if lo > hi {
            (lo, hi) = (0.0, 1.0);
        }
        let pad = if hi > lo { (hi - lo) * 1e-9 } else { lo.abs().max(1.0) * 1e-9 };
        Histogram::new(lo, hi + pad, bins)
    }

    pub fn push(&mut self, x: f64) {
        if x < self.lo {
            self.underflow += 1;
        } else if x >= self.hi || x.is_nan() {
            self.overflow += 1;
        } else {
            let n = self.bins.len();
            let i = ((x - self.lo) / (self.hi - self.lo) * n as f64) as usize;
            self.bins[i.min(n - 1)] += 1;
        }
    }

    pub fn merge(&mut self, other: &Histogram) {
        assert_eq!(
            (self.lo, self.hi, self.bins.len()),
            (other.lo, other.hi, other.bins.len()),
            "histogram ranges differ"
        );
        for (a, b) in self.bins.iter_mut().zip(&other.bins) {
            *a += b;
        }
        self.underflow += other.underflow;
        self.overflow += other.overflow;
    }

    pub fn total(&self) -> u64 {
        self.bins.iter().sum::<u64>() + self.underflow + self.overflow
    }

    pub fn underflow(&self) -> u64 {
        self.underflow
    }

    pub fn overflow(&self) -> u64 {
        self.overflow
    }

    /// `(bin_left, bin_right, count)`, starting with the underflow bin
    /// `(-inf, lo)` and ending with the overflow bin `[hi, inf)`.
    pub fn rows(&self) -> Vec<(f64, f64, u64)> {
        let n = self.bins.len();
        let w = (self.hi - self.lo) / n as f64;
        let mut out = Vec::with_capacity(n + 2);
        out.push((f64::NEG_INFINITY, self.lo, self.underflow));
        for (i, &c) in self.bins.iter().enumerate() {
            let left = self.lo + w * i as f64;
            let right = if i + 1 == n { self.hi } else { self.lo + w * (i + 1) as f64 };
            out.push((left, right, c));
        }
        out.push((self.hi, f64::INFINITY, self.overflow));
        out
    }
}
