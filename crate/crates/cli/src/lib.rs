//! Command-line front end for `cjw-core`: polynomial generation, verification suites, spectra,
//! admissibility constants, wavelet transforms and fractional calculus on sampled data.

// negated comparisons reject NaN on purpose
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop, clippy::manual_is_multiple_of)]

pub mod commands;
pub mod report;
pub mod spline;
pub mod suites;

pub use commands::{run, Cli};
pub use report::{Check, Report};
