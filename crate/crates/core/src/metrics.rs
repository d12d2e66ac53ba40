//! Accuracy measures for generated rotations.
//!
//! Everything is evaluated in binary64 on the working-precision outputs, so
//! for binary32 inputs the measurement error is negligible next to `u`.

use num_complex::Complex;

use crate::error::{GivensError, Result};
use crate::givens::{lartg_cplx_new, ComplexRotation};
use crate::precision::Real;

/// `sqrt(c^2 + |s|^2)`; 1 for an exactly unitary rotation.
pub fn sigma<T: Real>(rot: &ComplexRotation<T>) -> f64 {
    let r = rot.to_f64();
    (r.c * r.c + r.s.norm_sqr()).sqrt()
}

/// `sigma - 1`, computed without cancellation.
pub fn sigma_minus_one<T: Real>(rot: &ComplexRotation<T>) -> f64 {
    let r = rot.to_f64();
    let q = r.c * r.c + r.s.norm_sqr();
    // sqrt(q) - 1 = (q - 1) / (sqrt(q) + 1)
    (q - 1.0) / (q.sqrt() + 1.0)
}

/// `||(c r - f, conj(s) r - g)|| / ||(f, g)||`.
pub fn backward_error<T: Real>(
    f: Complex<T>,
    g: Complex<T>,
    rot: &ComplexRotation<T>,
) -> Result<f64> {
    let f = to64(f);
    let g = to64(g);
    let denom = (f.norm_sqr() + g.norm_sqr()).sqrt();
    if denom == 0.0 {
        return Err(GivensError::ZeroReference("backward error of (0, 0)"));
    }
    let r = rot.to_f64();
    let ef = r.r.scale(r.c) - f;
    let eg = r.s.conj() * r.r - g;
    Ok((ef.norm_sqr() + eg.norm_sqr()).sqrt() / denom)
}

/// Relative component errors, in units of `u`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComponentErrors {
    pub c: f64,
    pub s: f64,
    pub r: f64,
}

/// Errors of `rot` relative to the binary64 new algorithm on the same
/// inputs, divided by the unit roundoff of `T`.
pub fn component_rel_errors<T: Real>(
    f: Complex<T>,
    g: Complex<T>,
    rot: &ComplexRotation<T>,
) -> Result<ComponentErrors> {
    let reference = lartg_cplx_new(to64(f), to64(g));
    let got = rot.to_f64();
    let u = T::UNIT_ROUNDOFF;
    let rel = |got: f64, want: f64, what: &'static str| -> Result<f64> {
        if want == 0.0 {
            return Err(GivensError::ZeroReference(what));
        }
        Ok((got - want).abs() / want.abs() / u)
    };
    let sn = reference.s.norm();
    let rn = reference.r.norm();
    if sn == 0.0 {
        return Err(GivensError::ZeroReference("s"));
    }
    if rn == 0.0 {
        return Err(GivensError::ZeroReference("r"));
    }
    Ok(ComponentErrors {
        c: rel(got.c, reference.c, "c")?,
        s: (got.s - reference.s).norm() / sn / u,
        r: (got.r - reference.r).norm() / rn / u,
    })
}

/// A 3x3 complex matrix in binary64, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat3(pub [[Complex<f64>; 3]; 3]);

impl Mat3 {
    pub fn identity() -> Self {
        let z = Complex::new(0.0, 0.0);
        let o = Complex::new(1.0, 0.0);
        Mat3([[o, z, z], [z, o, z], [z, z, o]])
    }

    /// Frobenius norm.
    pub fn frobenius(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// `V^H V`.
    pub fn gram(&self) -> Mat3 {
        let mut out = [[Complex::new(0.0, 0.0); 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = (0..3).map(|k| self.0[k][i].conj() * self.0[k][j]).sum();
            }
        }
        Mat3(out)
    }
}

/// Mean modulus of the six off-diagonal entries of `V^H V`.
pub fn offdiag_avg(v: &Mat3) -> f64 {
    let s = v.gram();
    let mut sum = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                sum += s.0[i][j].norm();
            }
        }
    }
    sum / 6.0
}

fn to64<T: Real>(z: Complex<T>) -> Complex<f64> {
    Complex::new(z.re.as_f64(), z.im.as_f64())
}
