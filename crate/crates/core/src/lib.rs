//! Exact-arithmetic toolkit for elliptic curves over Q with square
//! discriminant and the rational isogenies between them.
//!
//! The layers, bottom up:
//!
//! * [`arith`], [`factor`]: rationals, square classes, power-free parts.
//! * [`poly`], [`ratfunc`], [`expr`]: dense univariate algebra over Q.
//! * [`weierstrass`]: models, invariants, coordinate changes and twists.
//! * [`classify`]: the square-discriminant criterion and CM analysis.
//! * [`families`]: the catalog of isogeny families and its verifiers.
//! * [`search`]: genus and bounded-height point search on C_N and X_N.
//! * [`isogeny`]: Velu steps, isogeny chains and modular polynomials.
//! * [`report`], [`suites`]: deterministic verification reports.

pub mod arith;
pub mod classify;
pub mod error;
pub mod expr;
pub mod factor;
pub mod families;
pub mod isogeny;
pub mod poly;
pub mod ratfunc;
pub mod report;
pub mod sample;
pub mod search;
pub mod suites;
pub mod weierstrass;

pub use arith::Rational;
pub use error::{Error, Result};
