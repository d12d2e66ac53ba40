//! Single-rotation accuracy: non-unitarity, backward error and component
//! errors over random inputs.

use super::stats::{ErrorStats, Histogram, Moments, HIST_BINS};
use super::{par_chunks, Work, U};
use crate::error::Result;
use crate::givens::{lartg_real, ComplexAlgorithm, RealVariant};
use crate::metrics::{backward_error, component_rel_errors, sigma_minus_one};
use crate::rng_polar::{sample_pair, sample_real_pair, ScenarioSpec};

pub const SIGMA_HIST_RANGE: (f64, f64) = (-5.0, 5.0);
pub const BACKWARD_HIST_RANGE: (f64, f64) = (0.0, 10.0);

/// Statistics of `sigma - 1` and of the backward error, in units of `u`.
#[derive(Debug, Clone)]
pub struct AccuracyResult {
    pub algo: ComplexAlgorithm,
    pub sigma: ErrorStats,
    pub backward: ErrorStats,
    pub sigma_hist: Histogram,
    pub backward_hist: Histogram,
}

struct Partial {
    sigma: Moments,
    backward: Moments,
    sigma_hist: Histogram,
    backward_hist: Histogram,
}

pub fn run_single_accuracy(algo: ComplexAlgorithm, spec: &ScenarioSpec) -> Result<AccuracyResult> {
    let parts = par_chunks(spec, |rng, n| {
        let mut p = Partial {
            sigma: Moments::new(),
            backward: Moments::new(),
            sigma_hist: Histogram::new(SIGMA_HIST_RANGE.0, SIGMA_HIST_RANGE.1, HIST_BINS),
            backward_hist: Histogram::new(BACKWARD_HIST_RANGE.0, BACKWARD_HIST_RANGE.1, HIST_BINS),
        };
        for _ in 0..n {
            let (f, g) = sample_pair::<Work, _>(spec, rng);
            let rot = algo.generate(f, g);
            let s = sigma_minus_one(&rot) / U;
            let b = backward_error(f, g, &rot)? / U;
            p.sigma.push(s);
            p.sigma_hist.push(s);
            p.backward.push(b);
            p.backward_hist.push(b);
        }
        Ok(p)
    })?;
    let mut it = parts.into_iter();
    let mut acc = it.next().expect("at least one chunk");
    for p in it {
        acc.sigma.merge(&p.sigma);
        acc.backward.merge(&p.backward);
        acc.sigma_hist.merge(&p.sigma_hist);
        acc.backward_hist.merge(&p.backward_hist);
    }
    Ok(AccuracyResult {
        algo,
        sigma: acc.sigma.finish().expect("nonempty"),
        backward: acc.backward.finish().expect("nonempty"),
        sigma_hist: acc.sigma_hist,
        backward_hist: acc.backward_hist,
    })
}

/// Largest relative errors of `c`, `s`, `r` against the binary64 new
/// algorithm, and the largest backward error, all in units of `u`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ComponentMaxima {
    pub c: f64,
    pub s: f64,
    pub r: f64,
    pub backward: f64,
    pub count: u64,
}

impl ComponentMaxima {
    fn merge(&mut self, o: &ComponentMaxima) {
        self.c = self.c.max(o.c);
        self.s = self.s.max(o.s);
        self.r = self.r.max(o.r);
        self.backward = self.backward.max(o.backward);
        self.count += o.count;
    }
}

pub fn run_component_errors(algo: ComplexAlgorithm, spec: &ScenarioSpec) -> Result<ComponentMaxima> {
    let parts = par_chunks(spec, |rng, n| {
        let mut m = ComponentMaxima::default();
        for _ in 0..n {
            let (f, g) = sample_pair::<Work, _>(spec, rng);
            let rot = algo.generate(f, g);
            let e = component_rel_errors(f, g, &rot)?;
            m.merge(&ComponentMaxima {
                c: e.c,
                s: e.s,
                r: e.r,
                backward: backward_error(f, g, &rot)? / U,
                count: 1,
            });
        }
        Ok(m)
    })?;
    let mut acc = ComponentMaxima::default();
    parts.iter().for_each(|p| acc.merge(p));
    Ok(acc)
}

/// Largest relative component errors of a real variant against the same
/// variant evaluated in binary64, in units of `u`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RealMaxima {
    pub c: f64,
    pub s: f64,
    pub r: f64,
    pub count: u64,
}

pub fn run_real_errors(variant: RealVariant, spec: &ScenarioSpec) -> Result<RealMaxima> {
    let parts = par_chunks(spec, |rng, n| {
        let mut m = RealMaxima::default();
        for _ in 0..n {
            let (f, g) = sample_real_pair::<Work, _>(spec, rng);
            let got = lartg_real(variant, f, g);
            let want = lartg_real(variant, f64::from(f), f64::from(g));
            let rel = |a: Work, b: f64| (f64::from(a) - b).abs() / b.abs() / U;
            m.c = m.c.max(rel(got.c, want.c));
            m.s = m.s.max(rel(got.s, want.s));
            m.r = m.r.max(rel(got.r, want.r));
            m.count += 1;
        }
        Ok(m)
    })?;
    Ok(parts.iter().fold(RealMaxima::default(), |a, p| RealMaxima {
        c: a.c.max(p.c),
        s: a.s.max(p.s),
        r: a.r.max(p.r),
        count: a.count + p.count,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::givens::ComplexAlgorithm as A;
    use crate::precision::Precision;

    #[test]
    fn one_sample_has_zero_spread() {
        let spec = ScenarioSpec::default_for(Precision::Binary32, 1, 5);
        let res = run_single_accuracy(A::New, &spec).unwrap();
        assert_eq!(res.sigma.count, 1);
        assert_eq!(res.sigma.std, 0.0);
        assert_eq!(res.sigma.avg.abs(), res.sigma.avg_abs);
        assert_eq!(res.backward.avg, res.backward.max_abs);
        assert_eq!(res.sigma_hist.total(), 1);
    }

    #[test]
    fn zero_samples_rejected() {
        let spec = ScenarioSpec::default_for(Precision::Binary32, 0, 5);
        assert!(run_single_accuracy(A::New, &spec).is_err());
    }

    #[test]
    fn cast_is_most_accurate_on_a_small_run() {
        let spec = ScenarioSpec::default_for(Precision::Binary32, 50_000, 1);
        let cast = run_single_accuracy(A::Cast, &spec).unwrap();
        let new = run_single_accuracy(A::New, &spec).unwrap();
        assert!(cast.sigma.avg_abs < new.sigma.avg_abs);
        assert!(cast.backward.avg < new.backward.avg);
        // rounding c and s to nearest gives |sigma - 1| <= about u
        assert!(cast.sigma.max_abs < 1.5);
    }

    #[test]
    fn cast_components_are_correctly_rounded() {
        let spec = ScenarioSpec::default_for(Precision::Binary32, 50_000, 2);
        let m = run_component_errors(A::Cast, &spec).unwrap();
        assert!(m.c <= 1.0 + 1e-6 && m.s <= 1.0 + 1e-6 && m.r <= 1.0 + 1e-6, "{m:?}");
        assert_eq!(m.count, 50_000);
    }
}
