//! Exact symbolic calculus for the exceptional linearly compact Lie
//! superalgebras E(5,10), E(4,4), E(1,6) and K(1,6).
//!
//! Everything is computed over the field Q(i, sqrt2) with arbitrary-precision
//! rationals; formal power series are handled at finite truncation with
//! explicit certificates, so every identity this crate checks is exact.

pub mod e16k16;
pub mod embeddings;
pub mod error;
pub mod formcalc;
pub mod grassmann;
pub mod linalg;
pub mod repn;
pub mod scalar;
pub mod vfalgebras;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::Scalar;
