//! Givens rotation generators.
//!
//! A rotation for the pair `(f, g)` is `Q = [[c, s], [-conj(s), c]]` with
//! `Q (f, g)^T = (r, 0)^T`. In complex arithmetic `c` is real and
//! nonnegative; `s` and `r` are complex.
//!
//! The complex kernels in [`complex`] implement only the unscaled part of
//! each algorithm, as analysed operation by operation. [`scaling`] wraps
//! them with an exact power-of-two rescaling for inputs whose squares
//! would leave the safe range, plus the reference-precision cast strategy.
//! Kernels never fuse multiply-adds: every `*` and `+` rounds separately.

pub mod complex;
pub mod real;
pub mod scaling;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;

use crate::error::GivensError;
use crate::precision::{FpConstants, Real};

pub use complex::{lartg_cplx_new, lartg_cplx_v310, lartg_cplx_v39};
pub use real::{lartg_real, RealVariant};
pub use scaling::{lartg_cplx_cast, lartg_cplx_cast_of, scale_wrapper};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealRotation<T> {
    pub c: T,
    pub s: T,
    pub r: T,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexRotation<T> {
    pub c: T,
    pub s: Complex<T>,
    pub r: Complex<T>,
}

impl<T: Real> ComplexRotation<T> {
    pub fn to_f64(self) -> ComplexRotation<f64> {
        ComplexRotation {
            c: self.c.as_f64(),
            s: Complex::new(self.s.re.as_f64(), self.s.im.as_f64()),
            r: Complex::new(self.r.re.as_f64(), self.r.im.as_f64()),
        }
    }

    pub(crate) fn round_from(rot: ComplexRotation<f64>) -> Self {
        ComplexRotation {
            c: T::from_f64(rot.c),
            s: Complex::new(T::from_f64(rot.s.re), T::from_f64(rot.s.im)),
            r: Complex::new(T::from_f64(rot.r.re), T::from_f64(rot.r.im)),
        }
    }

    pub fn is_finite(&self) -> bool {
        [self.c, self.s.re, self.s.im, self.r.re, self.r.im]
            .iter()
            .all(|x| x.is_finite())
    }
}

/// Which internal path produced a rotation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    /// `g = 0`: identity-like rotation `(1, 0, f)`.
    GZero,
    /// `f = 0`: `(0, conj(g)/|g|, |g|)`.
    FZero,
    /// 3.9 common case: `c = 1/sqrt(1 + g2/f2)`.
    V39Common,
    /// 3.9 rare case, `f2 <= max(g2, 1) safmin`.
    V39SmallF,
    /// 3.10 with `d = sqrt(f2 h2)`.
    V310Direct,
    /// 3.10 fallback `d = sqrt(f2) sqrt(h2)`.
    V310Split,
    /// New algorithm, `safmin h2 <= f2`, `s = conj(g) (f / sqrt(f2 h2))`.
    NewDirectS,
    /// New algorithm, `safmin h2 <= f2`, `s = conj(g) (r / h2)`.
    NewAltS,
    /// New algorithm, `safmin h2 > f2`, `r = f / c`.
    NewTinyRatioDivR,
    /// New algorithm, `safmin h2 > f2`, `r = f (h2 / d)`.
    NewTinyRatioMulR,
    /// `|f|/|g|` below the square-root range; asymptotic formulas used.
    NegligibleF,
}

/// Branch plus whether the power-of-two rescaling was engaged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Trace {
    pub branch: Branch,
    pub scaled: bool,
}

/// An unscaled complex kernel: zero fast paths plus the algorithm body.
pub type UnscaledKernel<T> =
    fn(&FpConstants<T>, Complex<T>, Complex<T>) -> (ComplexRotation<T>, Branch);

/// The complex-arithmetic algorithms under study.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ComplexAlgorithm {
    Lapack39,
    Lapack310,
    New,
    /// The new algorithm run in binary64, outputs rounded to working precision.
    Cast,
}

impl ComplexAlgorithm {
    pub const ALL: [ComplexAlgorithm; 4] = [
        ComplexAlgorithm::Lapack39,
        ComplexAlgorithm::Lapack310,
        ComplexAlgorithm::New,
        ComplexAlgorithm::Cast,
    ];

    pub fn id(self) -> AlgorithmId {
        match self {
            ComplexAlgorithm::Lapack39 => AlgorithmId::Cplx39,
            ComplexAlgorithm::Lapack310 => AlgorithmId::Cplx310,
            ComplexAlgorithm::New => AlgorithmId::CplxNew,
            ComplexAlgorithm::Cast => AlgorithmId::CplxCast,
        }
    }

    pub fn name(self) -> &'static str {
        self.id().name()
    }

    /// The unscaled kernel at precision `T`; `Cast` maps to the new kernel.
    pub fn kernel<T: Real>(self) -> UnscaledKernel<T> {
        match self {
            ComplexAlgorithm::Lapack39 => complex::v39_kernel::<T>,
            ComplexAlgorithm::Lapack310 => complex::v310_kernel::<T>,
            ComplexAlgorithm::New | ComplexAlgorithm::Cast => complex::new_kernel::<T>,
        }
    }

    /// Full generator: zero fast paths, rescaling, and the algorithm body.
    #[inline]
    pub fn generate<T: Real>(self, f: Complex<T>, g: Complex<T>) -> ComplexRotation<T> {
        self.generate_traced(f, g).0
    }

    pub fn generate_traced<T: Real>(
        self,
        f: Complex<T>,
        g: Complex<T>,
    ) -> (ComplexRotation<T>, Trace) {
        match self {
            ComplexAlgorithm::Cast => scaling::cast_traced(ComplexAlgorithm::New, f, g),
            _ => scaling::scaled_traced(&T::constants(), self.kernel::<T>(), f, g),
        }
    }
}

impl fmt::Display for ComplexAlgorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Every generator in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlgorithmId {
    Real39,
    Real310,
    RealHigham,
    Cplx39,
    Cplx310,
    CplxNew,
    CplxCast,
}

impl AlgorithmId {
    pub const ALL: [AlgorithmId; 7] = [
        AlgorithmId::Real39,
        AlgorithmId::Real310,
        AlgorithmId::RealHigham,
        AlgorithmId::Cplx39,
        AlgorithmId::Cplx310,
        AlgorithmId::CplxNew,
        AlgorithmId::CplxCast,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AlgorithmId::Real39 => "real39",
            AlgorithmId::Real310 => "real310",
            AlgorithmId::RealHigham => "real_higham",
            AlgorithmId::Cplx39 => "cplx39",
            AlgorithmId::Cplx310 => "cplx310",
            AlgorithmId::CplxNew => "cplx_new",
            AlgorithmId::CplxCast => "cplx_cast",
        }
    }

    pub fn as_complex(self) -> Option<ComplexAlgorithm> {
        match self {
            AlgorithmId::Cplx39 => Some(ComplexAlgorithm::Lapack39),
            AlgorithmId::Cplx310 => Some(ComplexAlgorithm::Lapack310),
            AlgorithmId::CplxNew => Some(ComplexAlgorithm::New),
            AlgorithmId::CplxCast => Some(ComplexAlgorithm::Cast),
            _ => None,
        }
    }

    pub fn as_real(self) -> Option<RealVariant> {
        match self {
            AlgorithmId::Real39 => Some(RealVariant::Lapack39),
            AlgorithmId::Real310 => Some(RealVariant::Lapack310),
            AlgorithmId::RealHigham => Some(RealVariant::Higham),
            _ => None,
        }
    }

    pub fn complex(self) -> Result<ComplexAlgorithm, GivensError> {
        self.as_complex().ok_or(GivensError::NotComplex(self))
    }
}

impl fmt::Display for AlgorithmId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AlgorithmId {
    type Err = GivensError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AlgorithmId::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| GivensError::UnknownName {
                kind: "algorithm",
                name: s.to_owned(),
            })
    }
}

#[inline(always)]
pub(crate) fn abssq<T: Real>(z: Complex<T>) -> T {
    z.re * z.re + z.im * z.im
}

#[inline(always)]
pub(crate) fn abs1<T: Real>(z: Complex<T>) -> T {
    z.re.abs().max(z.im.abs())
}

#[inline(always)]
pub(crate) fn is_zero<T: Real>(z: Complex<T>) -> bool {
    z.re == T::zero() && z.im == T::zero()
}
