//! Escaping dynamics of entire functions of bounded type in logarithmic
//! coordinates.
//!
//! The crate models functions `F: 𝒯 → H` on a 2πi-periodic union of tracts
//! mapping conformally onto a half-plane, and provides:
//!
//! - [`tower`]: level-index interval arithmetic for iterated-exponential
//!   magnitudes, with outward rounding;
//! - [`tube`]: tube domains and two-sided hyperbolic length/distance
//!   estimates from the standard density bounds;
//! - [`models`]: the exponential and cosine families, compositions,
//!   linearizers of quadratic polynomials, escape classification, and a
//!   synthetic tube surrogate for probing the geometry verifiers;
//! - [`rays`]: external addresses, dynamic-ray tracing by iterated pullback
//!   with rigorous error bounds, the speed ordering, and sampling verifiers
//!   for head-start, bounded slope and bounded wiggling;
//! - [`wiggle`]: construction and tower-interval certification of a tract
//!   whose escaping set folds any would-be curve to ∞ at least 2^k times at
//!   every scale;
//! - [`realize`]: numerical realization of prescribed tracts by Cauchy
//!   integrals, with jump, entirety, boundedness and tract-geometry checks;
//! - [`render`]: deterministic escape-time images with ray overlays;
//! - [`cli`]: the `tracts` command-line front end.
//!
//! Start with the runnable examples (`cargo run --example …`), one per major
//! capability.

// Validation code deliberately writes `!(x > y)` so that NaN operands count
// as failures rather than silently passing.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod config;
pub mod error;
pub mod models;
pub mod rays;
pub mod realize;
pub mod render;
pub mod tower;
pub mod tube;
pub mod wiggle;

pub use error::{Error, Result};
