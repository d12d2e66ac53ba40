//! Real-arithmetic generators.
//!
//! All three compute `c = p f / sqrt(f^2+g^2)`, `s = p g / sqrt(f^2+g^2)`,
//! `r = p sqrt(f^2+g^2)` and differ in the sign `p`:
//!
//! * 3.9: `p = -1` only when `|f| > |g|` and `f < 0`, so `p = +1` whenever
//!   `|g| >= |f|`.
//! * 3.10: `p = sign(f)`, which makes the real and complex generators
//!   approximate the same rotation. Also forms `p = 1/d` and multiplies,
//!   one operation more than dividing twice.
//! * Higham: `p = +1`, `r >= 0` always.

use super::RealRotation;
use crate::precision::{exponent_of, scale_pow2, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RealVariant {
    Lapack39,
    Lapack310,
    Higham,
}

impl RealVariant {
    pub const ALL: [RealVariant; 3] = [
        RealVariant::Lapack39,
        RealVariant::Lapack310,
        RealVariant::Higham,
    ];

    /// The sign `p` this variant applies for a pair `(f, g)`.
    pub fn sign<T: Real>(self, f: T, g: T) -> T {
        match self {
            RealVariant::Lapack39 => {
                if f.abs() > g.abs() && f < T::zero() {
                    -T::one()
                } else {
                    T::one()
                }
            }
            RealVariant::Lapack310 => T::one().copysign(f),
            RealVariant::Higham => T::one(),
        }
    }
}

/// Generates a real rotation, rescaling by a power of two when
/// `max(|f|, |g|)` lies outside `[rtmin, rtmax]`.
pub fn lartg_real<T: Real>(variant: RealVariant, f: T, g: T) -> RealRotation<T> {
    let k = T::constants();
    let zero = T::zero();
    let m = f.abs().max(g.abs());
    if f == zero || g == zero || !m.is_finite() || (m >= k.rtmin && m <= k.rtmax) {
        return unscaled(variant, f, g);
    }
    let e = -exponent_of(m.as_f64());
    let rot = unscaled(variant, scale_pow2(f, e), scale_pow2(g, e));
    RealRotation {
        r: scale_pow2(rot.r, -e),
        ..rot
    }
}

fn unscaled<T: Real>(variant: RealVariant, f: T, g: T) -> RealRotation<T> {
    let zero = T::zero();
    let one = T::one();
    match variant {
        RealVariant::Lapack39 => {
            if g == zero {
                return RealRotation { c: one, s: zero, r: f };
            }
            if f == zero {
                return RealRotation { c: zero, s: one, r: g };
            }
            let r = (f * f + g * g).sqrt();
            let c = f / r;
            let s = g / r;
            if f.abs() > g.abs() && c < zero {
                RealRotation { c: -c, s: -s, r: -r }
            } else {
                RealRotation { c, s, r }
            }
        }
        RealVariant::Lapack310 => {
            if g == zero {
                return RealRotation { c: one, s: zero, r: f };
            }
            if f == zero {
                return RealRotation {
                    c: zero,
                    s: one.copysign(g),
                    r: g.abs(),
                };
            }
            let d = (f * f + g * g).sqrt();
            let p = one / d;
            RealRotation {
                c: f.abs() * p,
                s: g * p.copysign(f),
                r: d.copysign(f),
            }
        }
        RealVariant::Higham => {
            if f == zero && g == zero {
                return RealRotation { c: one, s: zero, r: zero };
            }
            let r = (f * f + g * g).sqrt();
            RealRotation { c: f / r, s: g / r, r }
        }
    }
}
