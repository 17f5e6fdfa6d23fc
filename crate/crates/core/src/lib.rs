//! Sets of positive integers whose subsets all have distinct products.
//!
//! The crate has five areas:
//!
//! - [`arithmetic`]: prime sieve, the small/medium/large prime classification,
//!   exact factorization, and valuation projections.
//! - [`verifier`]: decides whether a set has distinct subset products, either
//!   by brute force or through a certificate ladder built on the {-1,0,+1}
//!   exponent-matrix kernel; emits machine-checkable collision certificates.
//! - [`constructions`]: five explicit families of sets with distinct subset
//!   products, with exact size formulas.
//! - [`factor_graph`]: the prime factorization graph of a set, short-cycle
//!   detection, and the cycle-removal pipeline with its audit report.
//! - [`extremal`]: exact values of the extremal functions f, h and g at
//!   small parameters, by exhaustive search.

pub mod arithmetic;
pub mod constructions;
pub mod error;
pub mod extremal;
pub mod factor_graph;
pub mod verifier;

pub use error::Error;
