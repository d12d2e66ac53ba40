//! Test-only reference arithmetic.
//!
//! `Dd` is unevaluated-sum double-double arithmetic (about 106 bits). It is
//! used to evaluate the defining formulas of a rotation directly, with no
//! branch structure and no code shared with the library.

#![allow(dead_code)]

use num_complex::Complex;

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
        two_sum(h, l + t.1)
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
        let x = self.0.sqrt();
        let xx = Dd::from(x).mul(Dd::from(x));
        let corr = self.sub(xx).0 / (2.0 * x);
        two_sum(x, corr)
    }

    pub fn to_f64(self) -> f64 {
        self.0 + self.1
    }
}

/// `(c, s, r)` of the rotation with real nonnegative `c`, evaluated from
/// `c = |f| / h`, `s = conj(g) f / (|f| h)`, `r = f h / |f|` with
/// `h = sqrt(|f|^2 + |g|^2)`. Requires `f != 0`; inputs are binary32 values
/// promoted exactly, well inside the binary64 exponent range.
pub fn exact_rotation(f: Complex<f32>, g: Complex<f32>) -> (f64, Complex<f64>, Complex<f64>) {
    let (fr, fi) = (Dd::from(f.re as f64), Dd::from(f.im as f64));
    let (gr, gi) = (Dd::from(g.re as f64), Dd::from(g.im as f64));
    let f2 = fr.mul(fr).add(fi.mul(fi));
    let g2 = gr.mul(gr).add(gi.mul(gi));
    let h = f2.add(g2).sqrt();
    let fa = f2.sqrt();
    let c = fa.div(h);
    // conj(g) f = (gr fr + gi fi) + i (gr fi - gi fr)
    let den = fa.mul(h);
    let s_re = gr.mul(fr).add(gi.mul(fi)).div(den);
    let s_im = gr.mul(fi).sub(gi.mul(fr)).div(den);
    let scale = h.div(fa);
    (
        c.to_f64(),
        Complex::new(s_re.to_f64(), s_im.to_f64()),
        Complex::new(fr.mul(scale).to_f64(), fi.mul(scale).to_f64()),
    )
}

/// `(|f| / h, g / h, h)` for real inputs, before any sign convention.
pub fn exact_real(f: f32, g: f32) -> (f64, f64, f64) {
    let (fd, gd) = (Dd::from(f as f64), Dd::from(g as f64));
    let h = fd.mul(fd).add(gd.mul(gd)).sqrt();
    (fd.div(h).to_f64(), gd.div(h).to_f64(), h.to_f64())
}

/// Whether the kernel sees `(f, g)` without any component square
/// underflowing or overflowing. When the wrapper rescaled, the kernel saw
/// the pair with its largest component moved into `[1, 2)`.
pub fn squares_safe(f: Complex<f32>, g: Complex<f32>, scaled: bool) -> bool {
    let m = f.re.abs().max(f.im.abs()).max(g.re.abs()).max(g.im.abs()) as f64;
    let e = if scaled { ((m.to_bits() >> 52) as i32) - 1023 } else { 0 };
    let s = 2f64.powi(-e);
    [f.re, f.im, g.re, g.im].iter().all(|&x| {
        let y = (x as f64 * s) as f32;
        y == 0.0 || (y * y).is_normal()
    })
}

/// `z 2^k` if the shift is exact and leaves each component normal or not as before.
pub fn shift(z: Complex<f32>, k: i32) -> Option<Complex<f32>> {
    let s = 2f32.powi(k);
    let w = Complex::new(z.re * s, z.im * s);
    // exact only if nothing underflowed or overflowed
    (w.re / s == z.re && w.im / s == z.im && w.re.is_normal() == z.re.is_normal() && w.im.is_normal() == z.im.is_normal())
        .then_some(w)
}

pub fn gamma(n: f64, u: f64) -> f64 {
    n * u / (1.0 - n * u)
}

pub const U32: f64 = 5.960_464_477_539_063e-8;
pub const U64: f64 = 1.110_223_024_625_156_5e-16;
