//! A desk-scale laboratory for minimal subshifts.
//!
//! The crate builds substitution subshifts (Thue–Morse, Fibonacci, period-doubling) from
//! their factor languages and computes on them: sliding block codes and automorphism
//! groups, asymptotic and proximal pairs, the dyadic odometer factor, and finite
//! approximations of joint orbit closures. Every infinite-horizon notion is reported
//! together with the finite horizon at which it was observed.

pub mod codes;
pub mod error;
pub mod factors;
pub mod joins;
pub mod pairs;
pub mod points;
pub mod report;
pub mod words;

pub use error::{Error, Result};
