//! Floating-point formats the kernels are generic over.
//!
//! Every kernel is written once against [`Real`] and instantiated for the
//! working precision (`f32`, IEEE-754 binary32) and the reference precision
//! (`f64`, IEEE-754 binary64).

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_traits::Float;

use crate::error::GivensError;

/// A binary floating-point format usable by the rotation kernels.
pub trait Real: Float + Debug + Display + Default + Send + Sync + 'static {
    /// Unit roundoff: half the spacing of representable numbers at 1.
    const UNIT_ROUNDOFF: f64;
    /// `std::numeric_limits<T>::min_exponent`.
    const MIN_EXP: i32;
    /// `std::numeric_limits<T>::max_exponent`.
    const MAX_EXP: i32;
    /// Significand digits, including the implicit bit.
    const DIGITS: u32;
    const PRECISION: Precision;

    fn from_f64(x: f64) -> Self;
    fn as_f64(self) -> f64;

    /// Threshold constants for this format.
    fn constants() -> FpConstants<Self> {
        FpConstants::standard()
    }
}

impl Real for f32 {
    const UNIT_ROUNDOFF: f64 = 5.960_464_477_539_063e-8; // 2^-24
    const MIN_EXP: i32 = f32::MIN_EXP;
    const MAX_EXP: i32 = f32::MAX_EXP;
    const DIGITS: u32 = f32::MANTISSA_DIGITS;
    const PRECISION: Precision = Precision::Binary32;

    #[inline(always)]
    fn from_f64(x: f64) -> Self {
        x as f32
    }

    #[inline(always)]
    fn as_f64(self) -> f64 {
        self as f64
    }
}

impl Real for f64 {
    const UNIT_ROUNDOFF: f64 = 1.110_223_024_625_156_5e-16; // 2^-53
    const MIN_EXP: i32 = f64::MIN_EXP;
    const MAX_EXP: i32 = f64::MAX_EXP;
    const DIGITS: u32 = f64::MANTISSA_DIGITS;
    const PRECISION: Precision = Precision::Binary64;

    #[inline(always)]
    fn from_f64(x: f64) -> Self {
        x
    }

    #[inline(always)]
    fn as_f64(self) -> f64 {
        self
    }
}

/// Runtime tag for a [`Real`] format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Precision {
    Binary32,
    Binary64,
}

impl Precision {
    pub fn unit_roundoff(self) -> f64 {
        match self {
            Precision::Binary32 => f32::UNIT_ROUNDOFF,
            Precision::Binary64 => f64::UNIT_ROUNDOFF,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Precision::Binary32 => "binary32",
            Precision::Binary64 => "binary64",
        }
    }

    /// `(min_exponent, max_exponent, digits)` as in C++ `numeric_limits`.
    pub fn exponent_limits(self) -> (i32, i32, u32) {
        match self {
            Precision::Binary32 => (f32::MIN_EXP, f32::MAX_EXP, f32::MANTISSA_DIGITS),
            Precision::Binary64 => (f64::MIN_EXP, f64::MAX_EXP, f64::MANTISSA_DIGITS),
        }
    }
}

impl Display for Precision {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Precision {
    type Err = GivensError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "binary32" | "single" | "f32" => Ok(Precision::Binary32),
            "binary64" | "double" | "f64" => Ok(Precision::Binary64),
            other => Err(GivensError::UnknownName {
                kind: "precision",
                name: other.to_owned(),
            }),
        }
    }
}

/// Over/underflow thresholds used by the generators.
///
/// `safmin` is the smallest positive normal number and `safmax = 1/safmin`.
/// `rtmin = sqrt(safmin)` and `rtmax = sqrt(safmax/2)`; the halving keeps
/// `f2 + g2` finite when both squares sit at the upper boundary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FpConstants<T> {
    pub u: T,
    pub safmin: T,
    pub safmax: T,
    pub rtmin: T,
    pub rtmax: T,
}

impl<T: Real> FpConstants<T> {
    pub fn standard() -> Self {
        let safmin = T::min_positive_value();
        let safmax = T::one() / safmin;
        let two = T::one() + T::one();
        FpConstants {
            u: T::from_f64(T::UNIT_ROUNDOFF),
            safmin,
            safmax,
            rtmin: safmin.sqrt(),
            rtmax: (safmax / two).sqrt(),
        }
    }
}

/// Unbiased binary exponent `e` with `2^e <= |x| < 2^(e+1)`, for finite
/// nonzero `x` of either format (binary32 subnormals are normal in binary64).
pub(crate) fn exponent_of(x: f64) -> i32 {
    let bits = x.abs().to_bits();
    let biased = ((bits >> 52) & 0x7ff) as i32;
    if biased == 0 {
        // binary64 subnormal
        let lz = (bits << 12).leading_zeros() as i32;
        -1023 - lz
    } else {
        biased - 1023
    }
}

/// Multiplies `x` by `2^k` in steps that keep every factor representable.
pub(crate) fn scale_pow2<T: Real>(x: T, k: i32) -> T {
    const STEP: i32 = 60;
    let two = T::one() + T::one();
    let mut x = x;
    let mut k = k;
    while k > STEP {
        x = x * two.powi(STEP);
        k -= STEP;
    }
    while k < -STEP {
        x = x * two.powi(-STEP);
        k += STEP;
    }
    x * two.powi(k)
}
