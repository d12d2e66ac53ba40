//! Accurate complex Givens rotation generators and the experiments that
//! compare them.

// Range checks are written `!(x > 0.0)` on purpose so that NaN fails them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod errbounds;
pub mod experiments;
pub mod error;
pub mod givens;
pub mod metrics;
pub mod output;
pub mod precision;
pub mod rng_polar;

pub use error::{GivensError, Result};
