//! Exact scalar arithmetic and the graded exterior algebra over a fixed
//! basis.
//!
//! Everything here is immutable and pure: values can be shared across
//! threads freely and operations never mutate their inputs. Coefficients
//! are exact rationals; no floating point enters this module.

mod form;
mod scalar;

pub use form::{IndexTuple, KForm};
pub use scalar::Scalar;
