//! Distance bounds between bosonic Gaussian states from their first and second
//! moments, and an exact truncated-Fock-space oracle to check them against.
//!
//! Quadratures are ordered `(q₁, p₁, …, q_s, p_s)` with `ħ = 1`, so the vacuum
//! covariance is `I/2` and the uncertainty relation reads `α + (i/2)Δ ⪰ 0`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod document;
pub mod error;
pub mod fock;
pub mod gaussian;
pub mod hat;
pub mod inequality;
pub mod linalg;
pub mod sampling;
pub mod tolerance;

pub use error::{Error, Result};
