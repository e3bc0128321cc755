//! Counting solutions of the self-power congruence `x^x = a (mod p)`.
//!
//! The crate is split into four layers:
//!
//! - [`arith`]: 64-bit modular arithmetic, primality, factorization,
//!   primitive roots, orders and discrete logarithms.
//! - [`congruence`]: the counting objects `N(p;a)`, `M(p)`, order-class
//!   sums and their gcd-class decomposition, the `Z_d` identity, fixed
//!   points, distinct values and the explicit lifted solution.
//! - [`additive`]: sumsets and product sets in `Z_p`, the sum-product
//!   report and exact sparse-polynomial root counts.
//! - [`harness`]: prime ranges, parallel CSV scans and the identity suite
//!   behind the `selfpow` binary.

pub mod additive;
pub mod arith;
pub mod congruence;
mod error;
pub mod harness;

pub use error::{Error, Result};
