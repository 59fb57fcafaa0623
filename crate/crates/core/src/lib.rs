// `!(a < b)` is used throughout to reject NaN along with out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod config;
pub mod constants;
pub mod dd;
pub mod error;
pub mod means;
pub mod quadrature;
pub mod real;
pub mod report;
pub mod series;
pub mod ulp;
pub mod verifier;

pub use bounds::{BoundExpr, Kernel};
pub use config::{Mode, PrecisionConfig};
pub use dd::DoubleDouble;
pub use error::{Error, Result};
pub use real::Real;
