//! Exact construction and verification of covariants of binary forms over
//! the rationals and prime fields.

pub mod brackets;
pub mod linalg;
pub mod poly;
#[doc(hidden)]
pub mod roundtrip;
pub mod scalar;
pub mod covariant;
pub mod fixtures;
pub mod transfer;
pub mod membership;
pub mod symring;
