//! Out-of-range handling and the reference-precision cast strategy.
//!
//! The wrapper rescales `(f, g)` by a common power of two `2^e` so that the
//! larger component magnitude lands in `[1, 2)`, runs the unscaled kernel,
//! and multiplies `r` by `2^-e`. Power-of-two scaling is exact, so `c` and
//! `s` are the kernel's own values and the kernel's error analysis carries
//! over unchanged. Inputs whose max component already lies in
//! `[rtmin, rtmax]` are passed through untouched.
//!
//! If `|f|` sits below `rtmin` after scaling, `f2` would be subnormal or
//! zero, and every kernel degrades. The ratio `|f|/|g|` is then below
//! `sqrt(safmin)`, where `c = |f|/|g|`, `s = sign(f) conj(g)/|g|` and
//! `r = sign(f) |g|` hold to working precision; those are evaluated
//! directly on separately normalised moduli.

use num_complex::Complex;

use super::{
    abs1, abssq, is_zero, Branch, ComplexAlgorithm, ComplexRotation, Trace, UnscaledKernel,
};
use crate::precision::{exponent_of, scale_pow2, FpConstants, Real};

/// Runs `inner` on `(f, g)` with exact power-of-two rescaling when needed.
pub fn scale_wrapper<T: Real>(
    inner: UnscaledKernel<T>,
    f: Complex<T>,
    g: Complex<T>,
) -> ComplexRotation<T> {
    scaled_traced(&T::constants(), inner, f, g).0
}

#[inline]
pub(crate) fn scaled_traced<T: Real>(
    k: &FpConstants<T>,
    inner: UnscaledKernel<T>,
    f: Complex<T>,
    g: Complex<T>,
) -> (ComplexRotation<T>, Trace) {
    let m = abs1(f).max(abs1(g));
    let in_range = m >= k.rtmin && m <= k.rtmax;
    if is_zero(g) || !m.is_finite() || (in_range && !(abs1(f) < k.rtmin && !is_zero(f))) {
        let (rot, branch) = inner(k, f, g);
        return (rot, Trace { branch, scaled: false });
    }
    let e = if in_range { 0 } else { -exponent_of(m.as_f64()) };
    let fs = scale_complex(f, e);
    let gs = scale_complex(g, e);
    let (rot, branch) = if !is_zero(f) && abs1(fs) < k.rtmin {
        (negligible_f(f, gs, e), Branch::NegligibleF)
    } else {
        inner(k, fs, gs)
    };
    let rot = ComplexRotation {
        r: scale_complex(rot.r, -e),
        ..rot
    };
    (rot, Trace { branch, scaled: e != 0 })
}

/// `|f| / |g| < sqrt(safmin)`: `gs = g 2^e` has its max component in range.
/// Returns `r` in the scaled units of `gs`.
fn negligible_f<T: Real>(f: Complex<T>, gs: Complex<T>, e: i32) -> ComplexRotation<T> {
    let a = -exponent_of(abs1(f).as_f64());
    let fn_ = scale_complex(f, a);
    let fa = abssq(fn_).sqrt();
    let sign = fn_.unscale(fa);
    let ga = abssq(gs).sqrt();
    // |f| / |g| = (fa 2^-a) / (ga 2^-e)
    let c = scale_pow2(fa / ga, e - a);
    ComplexRotation {
        c,
        s: sign * gs.conj().unscale(ga),
        r: sign.scale(ga),
    }
}

#[inline(always)]
fn scale_complex<T: Real>(z: Complex<T>, e: i32) -> Complex<T> {
    if e == 0 {
        z
    } else {
        Complex::new(scale_pow2(z.re, e), scale_pow2(z.im, e))
    }
}

/// The new algorithm evaluated in binary64 and rounded to `T`.
pub fn lartg_cplx_cast<T: Real>(f: Complex<T>, g: Complex<T>) -> ComplexRotation<T> {
    cast_traced(ComplexAlgorithm::New, f, g).0
}

/// Any algorithm evaluated in binary64 and rounded to `T`.
pub fn lartg_cplx_cast_of<T: Real>(
    algo: ComplexAlgorithm,
    f: Complex<T>,
    g: Complex<T>,
) -> ComplexRotation<T> {
    cast_traced(algo, f, g).0
}

#[inline]
pub(crate) fn cast_traced<T: Real>(
    algo: ComplexAlgorithm,
    f: Complex<T>,
    g: Complex<T>,
) -> (ComplexRotation<T>, Trace) {
    let f64_in = Complex::new(f.re.as_f64(), f.im.as_f64());
    let g64_in = Complex::new(g.re.as_f64(), g.im.as_f64());
    let (rot, trace) = scaled_traced(
        &FpConstants::<f64>::standard(),
        algo.kernel::<f64>(),
        f64_in,
        g64_in,
    );
    (ComplexRotation::round_from(rot), trace)
}
