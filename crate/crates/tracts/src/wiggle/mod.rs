//! Construction and certification of the nested wiggle tract.
//!
//! The tract is a chain of unit-thickness tubes that run out to real part
//! `sep ξ_k`, double back to `ξ_k`, and run out again, with the scales growing
//! by iterated exponentials:
//!
//! ```text
//!   sep ξ_0 = ξ_0^(12M²),   ξ_(k+1) = exp(sep ξ_k / M),
//!   sep ξ_(k+1) = exp(12·M·sep ξ_k).
//! ```
//!
//! Certification never computes the Riemann map of the tract at true scale
//! (its proportions overflow every float format); instead the two-sided
//! hyperbolic estimates for the radii ρ_k, sep ρ_k, sepp ρ_k are evaluated in
//! outward-rounded tower-interval arithmetic, each supporting "⋆" inequality
//! is checked rather than assumed, and the geometric folding argument is
//! replayed symbolically on top of the certified conditions.

mod bounds;
mod conditions;
mod corridor;
mod folding;
mod forms;
mod sequences;

pub use bounds::{rho_bounds, RhoBounds, StarredCheck};
pub use conditions::{
    certify, find_min_xi0, growth_exponent_check, verify_conditions, CertificationReport,
    ConditionCheck, GrowthReport,
};
pub use corridor::corridor_geometry;
pub use folding::{folding_lower_bound, FoldingCertificate, FoldingStep};
pub use sequences::{build_sequences, WiggleSpec};

/// Fixed corridor parameters: turn-back box length h' and tube-stack height H.
pub const H_PRIME: f64 = 2.0;
pub const STACK_HEIGHT: f64 = 5.0;
