//! Unscaled complex-arithmetic kernels.
//!
//! Each kernel assumes its inputs are already in the unscaled-safe range
//! (see [`super::scaling`]); `f = 0` and `g = 0` are answered by the shared
//! fast paths for any input.

use num_complex::Complex;

use super::{abs1, abssq, is_zero, Branch, ComplexRotation};
use crate::precision::{exponent_of, FpConstants, Real};

/// `g = 0` gives `(1, 0, f)`; `f = 0` gives `(0, conj(g)/|g|, |g|)`.
#[inline(always)]
fn zero_paths<T: Real>(
    f: Complex<T>,
    g: Complex<T>,
) -> Option<(ComplexRotation<T>, Branch)> {
    if is_zero(g) {
        return Some((
            ComplexRotation {
                c: T::one(),
                s: Complex::new(T::zero(), T::zero()),
                r: f,
            },
            Branch::GZero,
        ));
    }
    if is_zero(f) {
        let d = abssq(g).sqrt();
        return Some((
            ComplexRotation {
                c: T::zero(),
                s: g.conj().unscale(d),
                r: Complex::new(d, T::zero()),
            },
            Branch::FZero,
        ));
    }
    None
}

/// LAPACK 3.9 `clartg`, unscaled part.
///
/// `c = 1/sqrt(1 + g2/f2)`, `r = f sqrt(1 + g2/f2)`, `s = (r/h2) conj(g)`.
/// When `f2 <= max(g2, 1) safmin` the ratio `g2/f2` is unusable and
/// `c = |f|/|g|`, `s = (f/|f|) (conj(g)/|g|)`, `r = c f + s g` instead.
pub fn lartg_cplx_v39<T: Real>(f: Complex<T>, g: Complex<T>) -> ComplexRotation<T> {
    v39_kernel(&T::constants(), f, g).0
}

pub(crate) fn v39_kernel<T: Real>(
    k: &FpConstants<T>,
    f: Complex<T>,
    g: Complex<T>,
) -> (ComplexRotation<T>, Branch) {
    if let Some(z) = zero_paths(f, g) {
        return z;
    }
    let one = T::one();
    let f2 = abssq(f);
    let g2 = abssq(g);
    if f2 <= g2.max(one) * k.safmin {
        let f2s = f2.sqrt();
        let g2s = g2.sqrt();
        let c = f2s / g2s;
        // f/|f|, with the modulus taken on a rescaled copy when |f| is small
        let ff = if abs1(f) > one {
            let d = abssq(f).sqrt();
            f.unscale(d)
        } else {
            let safmx2 = v39_safmx2::<T>();
            let dr = safmx2 * f.re;
            let di = safmx2 * f.im;
            let d = (dr * dr + di * di).sqrt();
            Complex::new(dr / d, di / d)
        };
        let s = ff * Complex::new(g.re / g2s, -g.im / g2s);
        let r = f.scale(c) + s * g;
        return (ComplexRotation { c, s, r }, Branch::V39SmallF);
    }
    let f2s = (one + g2 / f2).sqrt();
    let r = f.scale(f2s);
    let c = one / f2s;
    let d = f2 + g2;
    let s = r.unscale(d) * g.conj();
    (ComplexRotation { c, s, r }, Branch::V39Common)
}

/// `1/safmn2` with `safmn2 = 2^trunc(log2(safmin/eps)/2)`, as 3.9 defines it.
fn v39_safmx2<T: Real>() -> T {
    let safmin_exp = exponent_of(T::min_positive_value().as_f64());
    let eps_exp = exponent_of(T::UNIT_ROUNDOFF);
    let e = (safmin_exp - eps_exp) / 2; // truncates toward zero
    T::from_f64(2f64.powi(-e))
}

/// LAPACK 3.10 `clartg`, unscaled part.
///
/// `p = 1/sqrt(f2 h2)`, `c = f2 p`, `r = f (h2 p)`, `s = conj(g) (f p)`.
/// Unless `f2 > rtmin` and `h2 < rtmax`, `p = 1/(sqrt(f2) sqrt(h2))`.
pub fn lartg_cplx_v310<T: Real>(f: Complex<T>, g: Complex<T>) -> ComplexRotation<T> {
    v310_kernel(&T::constants(), f, g).0
}

pub(crate) fn v310_kernel<T: Real>(
    k: &FpConstants<T>,
    f: Complex<T>,
    g: Complex<T>,
) -> (ComplexRotation<T>, Branch) {
    if let Some(z) = zero_paths(f, g) {
        return z;
    }
    let f2 = abssq(f);
    let g2 = abssq(g);
    let h2 = f2 + g2;
    let (d, branch) = if f2 > k.rtmin && h2 < k.rtmax {
        ((f2 * h2).sqrt(), Branch::V310Direct)
    } else {
        (f2.sqrt() * h2.sqrt(), Branch::V310Split)
    };
    let p = T::one() / d;
    let c = f2 * p;
    let s = g.conj() * f.scale(p);
    let r = f.scale(h2 * p);
    (ComplexRotation { c, s, r }, branch)
}

/// The proposed algorithm, unscaled part.
///
/// With `safmin h2 <= f2`: `c = sqrt(f2/h2)`, `r = f/c`, and
/// `s = conj(g) (f / sqrt(f2 h2))` when `f2 > rtmin` and `h2 < rtmax`,
/// otherwise `s = conj(g) (r / h2)`.
///
/// Otherwise `f2/h2` may be subnormal: `d = sqrt(f2 h2)`, `c = f2/d`,
/// `s = conj(g) (f/d)`, and `r = f/c` if `c > safmin`, else `r = f (h2/d)`.
pub fn lartg_cplx_new<T: Real>(f: Complex<T>, g: Complex<T>) -> ComplexRotation<T> {
    new_kernel(&T::constants(), f, g).0
}

pub(crate) fn new_kernel<T: Real>(
    k: &FpConstants<T>,
    f: Complex<T>,
    g: Complex<T>,
) -> (ComplexRotation<T>, Branch) {
    if let Some(z) = zero_paths(f, g) {
        return z;
    }
    let f2 = abssq(f);
    let g2 = abssq(g);
    let h2 = f2 + g2;
    if f2 >= h2 * k.safmin {
        let c = (f2 / h2).sqrt();
        let r = f.unscale(c);
        if f2 > k.rtmin && h2 < k.rtmax {
            let s = g.conj() * f.unscale((f2 * h2).sqrt());
            (ComplexRotation { c, s, r }, Branch::NewDirectS)
        } else {
            let s = g.conj() * r.unscale(h2);
            (ComplexRotation { c, s, r }, Branch::NewAltS)
        }
    } else {
        let d = (f2 * h2).sqrt();
        let c = f2 / d;
        let s = g.conj() * f.unscale(d);
        if c > k.safmin {
            (ComplexRotation { c, s, r: f.unscale(c) }, Branch::NewTinyRatioDivR)
        } else {
            (ComplexRotation { c, s, r: f.scale(h2 / d) }, Branch::NewTinyRatioMulR)
        }
    }
}
