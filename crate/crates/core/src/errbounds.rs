//! Bounds on the square root of accumulated rounding errors.
//!
//! With `gamma(x) = x u / (1 - x u)`, a quantity `1 + theta_n` built from `n`
//! roundings satisfies `|theta_n| <= gamma(n)`. Taking a square root halves
//! the count, roughly: `sqrt(1 + gamma(x)) = 1 + gamma(alpha_bar x)` and
//! `sqrt(1 - gamma(x)) = 1 - gamma(alpha x)` with both factors in `(1/2, 1)`,
//! so `sqrt(1 + theta_n) = 1 + theta` with `|theta| <= gamma(alpha n)`.
//!
//! Everything here is evaluated in binary64 whatever `u` is passed. The
//! cancelling form `1 - sqrt(1 - w)` is always rewritten as
//! `w / (1 + sqrt(1 - w))`.

use crate::error::{GivensError, Result};

fn check_u(u: f64) -> Result<()> {
    if u > 0.0 && u < 1.0 {
        Ok(())
    } else {
        Err(GivensError::Domain {
            what: "u",
            value: u,
            domain: "(0, 1)",
        })
    }
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

/// `1 / (1 + sqrt(hi + lo))` to within about half an ulp. Near `w = 1/2` the
/// identities amplify relative error in the factor several times over, so
/// the plain evaluation (about one ulp) is not good enough.
fn recip_one_plus_sqrt(hi: f64, lo: f64) -> f64 {
    let r = hi.sqrt();
    let r_lo = ((-r).mul_add(r, hi) + lo) / (2.0 * r);
    let (d, d_lo) = two_sum(1.0, r);
    let d_lo = d_lo + r_lo;
    let q = 1.0 / d;
    // q (1 + e) with e = 1 - q d exactly up to the tail
    let e = (-q).mul_add(d, 1.0) - q * d_lo;
    q.mul_add(e, q)
}

/// `gamma_x = x u / (1 - x u)` for `x` in `[0, 1/u)`.
pub fn gamma(x: f64, u: f64) -> Result<f64> {
    check_u(u)?;
    let xu = x * u;
    if !(x >= 0.0 && xu < 1.0) {
        return Err(GivensError::Domain {
            what: "x",
            value: x,
            domain: "[0, 1/u)",
        });
    }
    Ok(xu / (1.0 - xu))
}

/// Factor with `sqrt(1 + gamma(x)) = 1 + gamma(alpha_bar(x) x)`, `x` in `(0, 1/u)`.
pub fn alpha_bar(x: f64, u: f64) -> Result<f64> {
    check_u(u)?;
    let w = x * u;
    if !(x > 0.0 && w < 1.0) {
        return Err(GivensError::Domain {
            what: "x",
            value: x,
            domain: "(0, 1/u)",
        });
    }
    // (1 - sqrt(1 - w)) / w
    let (p, p_lo) = two_sum(1.0, -w);
    Ok(recip_one_plus_sqrt(p, p_lo))
}

/// Factor with `sqrt(1 - gamma(x)) = 1 - gamma(alpha(x) x)`, `x` in `(0, 1/(2u))`.
pub fn alpha(x: f64, u: f64) -> Result<f64> {
    check_u(u)?;
    let w = x * u;
    if !(x > 0.0 && w < 0.5) {
        return Err(GivensError::Domain {
            what: "x",
            value: x,
            domain: "(0, 1/(2u))",
        });
    }
    // v = w (3 - 2w); 1 - v = (1 - w)(1 - 2w) avoids forming 1 - 3w + 2w^2.
    let (a, a_lo) = two_sum(1.0, -w);
    let (b, b_lo) = two_sum(1.0, -2.0 * w);
    let p = a * b;
    let p_lo = a.mul_add(b, -p) + (a * b_lo + a_lo * b);
    Ok(recip_one_plus_sqrt(p, p_lo))
}

/// Bound on `|theta|` where `1 + theta = sqrt(1 + theta_n)`, valid for `n u <= 1/2`.
pub fn sqrt_theta_bound(n: u64, u: f64) -> Result<f64> {
    check_u(u)?;
    let x = n as f64;
    if n == 0 {
        return Ok(0.0);
    }
    if x * u > 0.5 {
        return Err(GivensError::Domain {
            what: "n u",
            value: x * u,
            domain: "(0, 1/2]",
        });
    }
    if x * u == 0.5 {
        // alpha's closed form hits its removable endpoint: v = 1, alpha = 1.
        return gamma(x, u);
    }
    gamma(alpha(x, u)? * x, u)
}

/// Whether `sqrt(1 + theta_n)` may be written `1 + theta_{floor(n/2)+1}`:
/// `(3 - 2nu)(floor(n/2)+1)^2 u <= 2 + floor(n/2) - ceil(n/2)`.
///
/// The right-hand side is 2 for even `n` and 1 for odd `n`, so the
/// predicate is not monotone in `n`: even counts keep passing well beyond
/// the first odd failure. See [`first_failing_n`].
pub fn floor_half_criterion(n: u64, u: f64) -> bool {
    assert!(n >= 1, "floor_half_criterion needs n >= 1");
    let m = (n / 2 + 1) as f64;
    let rhs = if n.is_multiple_of(2) { 2.0 } else { 1.0 };
    let lhs = (3.0 - 2.0 * (n as f64) * u) * m * m * u;
    lhs <= rhs
}

/// Smallest `n` for which [`floor_half_criterion`] fails.
///
/// The first failure is always odd: an even `n` shares `floor(n/2)+1` with
/// `n + 1` but has the looser right-hand side. Restricted to odd `n` the
/// predicate is monotone, so a binary search over odd values is exact.
pub fn first_failing_n(u: f64) -> u64 {
    let fails = |k: u64| !floor_half_criterion(2 * k + 1, u);
    // odd n = 2k + 1; find the smallest k that fails
    let mut lo = 0u64;
    let mut hi = 1u64;
    while !fails(hi) {
        lo = hi;
        hi *= 2;
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if fails(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    if fails(lo) {
        2 * lo + 1
    } else {
        2 * hi + 1
    }
}

/// One row of the small-`n` comparison between `gamma(alpha n)`,
/// `gamma(n/2)` and `gamma(floor(n/2)+1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmallNRow {
    pub n: u64,
    pub gamma_alpha_n: f64,
    pub gamma_half_n: f64,
    pub gamma_floor_half_plus1: f64,
}

pub fn small_n_table(n_max: u64, u: f64) -> Result<Vec<SmallNRow>> {
    check_u(u)?;
    if (n_max as f64) * u > 0.5 {
        return Err(GivensError::Domain {
            what: "n_max u",
            value: n_max as f64 * u,
            domain: "(0, 1/2]",
        });
    }
    (1..=n_max)
        .map(|n| {
            Ok(SmallNRow {
                n,
                gamma_alpha_n: sqrt_theta_bound(n, u)?,
                gamma_half_n: gamma(n as f64 / 2.0, u)?,
                gamma_floor_half_plus1: gamma((n / 2 + 1) as f64, u)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    #![allow(clippy::excessive_precision)]

    use super::*;

    const U32: f64 = 5.960_464_477_539_063e-8;
    const U64: f64 = 1.110_223_024_625_156_5e-16;

    /// Double-double arithmetic, enough for ~30 digits. Independent of the
    /// closed forms above: it evaluates the textbook expressions directly,
    /// cancellation and all, and relies on the extra precision instead.
    mod dd {
        #[derive(Clone, Copy, Debug)]
        pub struct Dd(pub f64, pub f64);

        fn two_sum(a: f64, b: f64) -> Dd {
            let s = a + b;
            let bb = s - a;
            Dd(s, (a - (s - bb)) + (b - bb))
        }

        fn two_prod(a: f64, b: f64) -> Dd {
            let p = a * b;
            Dd(p, a.mul_add(b, -p))
        }

        impl Dd {
            pub fn from(x: f64) -> Dd {
                Dd(x, 0.0)
            }
            pub fn add(self, o: Dd) -> Dd {
                let s = two_sum(self.0, o.0);
                let t = two_sum(self.1, o.1);
                let Dd(h, l) = two_sum(s.0, s.1 + t.0);
                let Dd(h, l2) = two_sum(h, l + t.1);
                Dd(h, l2)
            }
            pub fn neg(self) -> Dd {
                Dd(-self.0, -self.1)
            }
            pub fn sub(self, o: Dd) -> Dd {
                self.add(o.neg())
            }
            pub fn mul(self, o: Dd) -> Dd {
                let p = two_prod(self.0, o.0);
                let l = p.1 + (self.0 * o.1 + self.1 * o.0);
                two_sum(p.0, l)
            }
            pub fn div(self, o: Dd) -> Dd {
                let q1 = self.0 / o.0;
                let r = self.sub(o.mul(Dd::from(q1)));
                let q2 = r.0 / o.0;
                let r = r.sub(o.mul(Dd::from(q2)));
                let q3 = r.0 / o.0;
                Dd::from(q1).add(Dd::from(q2)).add(Dd::from(q3))
            }
            pub fn sqrt(self) -> Dd {
                // one Newton step from the binary64 root
                let x = self.0.sqrt();
                let xx = Dd::from(x).mul(Dd::from(x));
                let corr = self.sub(xx).0 / (2.0 * x);
                two_sum(x, corr)
            }
            pub fn to_f64(self) -> f64 {
                self.0 + self.1
            }
        }
    }
    use dd::Dd;

    fn dd_gamma(x: Dd, u: f64) -> Dd {
        let xu = x.mul(Dd::from(u));
        xu.div(Dd::from(1.0).sub(xu))
    }

    fn dd_alpha_bar(x: f64, u: f64) -> Dd {
        let w = Dd::from(x).mul(Dd::from(u));
        Dd::from(1.0).sub(Dd::from(1.0).sub(w).sqrt()).div(w)
    }

    fn dd_alpha(x: f64, u: f64) -> Dd {
        let w = Dd::from(x).mul(Dd::from(u));
        let v = w.mul(Dd::from(3.0).sub(w.mul(Dd::from(2.0))));
        Dd::from(1.0).sub(Dd::from(1.0).sub(v).sqrt()).div(v)
    }

    fn ulps(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs() / U64
    }

    // Frozen values. The double-double oracle reproduced them and they agree
    // with a 50-digit evaluation to every printed digit.
    const GAMMA_3_U32: f64 = 1.788_139_663_006_007_016_8e-7;
    const ALPHA_BAR_4728_U32: f64 = 0.500_035_231_309_518_218_3;
    const ALPHA_10_U32: f64 = 0.500_000_223_517_528_930_1;
    const SQRT_THETA_BOUND_20_U32: f64 = 5.960_473_359_337_023_808_9e-7;

    #[test]
    fn oracle_reproduces_frozen_values() {
        assert!(ulps(dd_gamma(Dd::from(3.0), U32).to_f64(), GAMMA_3_U32) <= 1.0);
        assert!(ulps(dd_alpha_bar(4728.0, U32).to_f64(), ALPHA_BAR_4728_U32) <= 1.0);
        assert!(ulps(dd_alpha(10.0, U32).to_f64(), ALPHA_10_U32) <= 1.0);
        let a = dd_alpha(20.0, U32).mul(Dd::from(20.0));
        assert!(ulps(dd_gamma(a, U32).to_f64(), SQRT_THETA_BOUND_20_U32) <= 1.0);
    }

    #[test]
    fn gamma_values() {
        assert_eq!(gamma(0.0, U32).unwrap(), 0.0);
        assert!(ulps(gamma(3.0, U32).unwrap(), GAMMA_3_U32) <= 2.0);
        for u in [U32, U64] {
            let r = gamma(3.0, u).unwrap() / gamma(4.0, u).unwrap();
            assert!(r < 0.75, "gamma3/gamma4 = {r}");
        }
    }

    #[test]
    fn gamma_domain_errors() {
        assert!(gamma(-1.0, U32).is_err());
        assert!(gamma(1.0 / U32, U32).is_err());
        assert!(gamma(1.0, 0.0).is_err());
        assert!(alpha_bar(0.0, U32).is_err());
        assert!(alpha_bar(1.0 / U32, U32).is_err());
        assert!(alpha(0.5 / U32, U32).is_err());
        assert!(alpha(-2.0, U32).is_err());
        assert!(sqrt_theta_bound(1 << 24, U32).is_err());
    }

    #[test]
    fn alpha_bar_values() {
        assert!((alpha_bar(1.0, U64).unwrap() - 0.5).abs() <= 2f64.powi(-50));
        assert!(ulps(alpha_bar(4728.0, U32).unwrap(), ALPHA_BAR_4728_U32) <= 2.0);
        for x in [1.0, 2.0, 10.0, 100.0, 4728.0] {
            for u in [U32, U64] {
                let y = alpha_bar(x, u).unwrap() * x;
                let lhs = (1.0 + gamma(y, u).unwrap()).powi(2);
                let rhs = 1.0 + gamma(x, u).unwrap();
                assert!((lhs - rhs).abs() <= 4.0 * U64, "x={x}");
            }
        }
    }

    #[test]
    fn alpha_values() {
        assert!((alpha(1.0, U64).unwrap() - 0.5).abs() <= 2f64.powi(-50));
        assert!(ulps(alpha(10.0, U32).unwrap(), ALPHA_10_U32) <= 2.0);
        for x in [1.0, 2.0, 10.0, 100.0] {
            for u in [U32, U64] {
                let y = alpha(x, u).unwrap() * x;
                let lhs = (1.0 - gamma(y, u).unwrap()).powi(2);
                let rhs = 1.0 - gamma(x, u).unwrap();
                assert!((lhs - rhs).abs() <= 4.0 * U64, "x={x}");
            }
        }
    }

    #[test]
    fn closed_forms_track_the_oracle() {
        let mut x = 1.0;
        while x < 0.49 / U32 {
            assert!(ulps(alpha_bar(x, U32).unwrap(), dd_alpha_bar(x, U32).to_f64()) <= 1.0);
            assert!(ulps(alpha(x, U32).unwrap(), dd_alpha(x, U32).to_f64()) <= 1.0);
            x *= 1.7;
        }
    }

    #[test]
    fn sqrt_theta_bound_values() {
        for n in 1..=200u64 {
            assert!(sqrt_theta_bound(n, U32).unwrap() <= gamma(n as f64, U32).unwrap());
        }
        assert!(sqrt_theta_bound(6, U32).unwrap() <= gamma(4.0, U32).unwrap());
        assert!(ulps(sqrt_theta_bound(20, U32).unwrap(), SQRT_THETA_BOUND_20_U32) <= 4.0);
        assert_eq!(sqrt_theta_bound(0, U32).unwrap(), 0.0);
        // n u = 1/2 exactly
        assert!(sqrt_theta_bound(1 << 23, U32).is_ok());
    }

    #[test]
    fn criterion_boundaries() {
        assert!(floor_half_criterion(1, U32));
        assert!(floor_half_criterion(4728, U32));
        assert!(floor_half_criterion(109_588_316, U64));
        // The exact predicate first fails one odd step past the quoted 4728.
        assert!(floor_half_criterion(4729, U32));
        assert!(floor_half_criterion(4730, U32));
        assert!(!floor_half_criterion(4731, U32));
        assert!(!floor_half_criterion(109_588_317, U64));
        assert_eq!(first_failing_n(U32), 4731);
        assert_eq!(first_failing_n(U64), 109_588_317);
    }

    #[test]
    fn first_failure_matches_exhaustive_scan() {
        let scanned = (1..=10_000u64).find(|&n| !floor_half_criterion(n, U32)).unwrap();
        assert_eq!(scanned, first_failing_n(U32));
        // every n below the first failure passes
        assert!((1..scanned).all(|n| floor_half_criterion(n, U32)));
        // odd n are monotone past it; even n are not
        assert!((scanned..10_000).step_by(2).all(|n| !floor_half_criterion(n, U32)));
        assert!(floor_half_criterion(scanned + 1, U32));
    }

    #[test]
    fn small_n_table_rows() {
        let rows = small_n_table(20, U32).unwrap();
        assert_eq!(rows.len(), 20);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.n, i as u64 + 1);
            let rel = (row.gamma_alpha_n - row.gamma_half_n).abs() / row.gamma_half_n;
            assert!(rel < 16.0 * U32, "n={} rel={}", row.n, rel / U32);
            assert!(row.gamma_half_n <= row.gamma_alpha_n);
            assert!(row.gamma_alpha_n <= row.gamma_floor_half_plus1);
        }
        assert!(ulps(rows[19].gamma_alpha_n, SQRT_THETA_BOUND_20_U32) <= 4.0);
        assert!(small_n_table(1 << 24, U32).is_err());
    }
}
