use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("non-finite value encountered: {0}")]
    NonFinite(String),

    #[error("tower arithmetic: {0}")]
    Tower(String),

    #[error("point lies outside the domain: {0}")]
    OutsideDomain(String),

    #[error("path touches or exits the domain: {0}")]
    PathEscapes(String),

    #[error("target not reachable inside the domain: {0}")]
    Unreachable(String),

    #[error("tube is not embedded: {0}")]
    NotEmbedded(String),

    #[error("inverse branch failed for tract {tract}: {reason}")]
    InverseBranch { tract: String, reason: String },

    #[error("Newton iteration did not converge after {iters} steps (residual {residual:.3e})")]
    NewtonDiverged { iters: usize, residual: f64 },

    #[error("expansivity could not be certified: min sampled |F'| = {min_abs_deriv:.6} < 2")]
    NotExpansive { min_abs_deriv: f64 },

    #[error("composition offset too small at stage {stage}: {reason}")]
    CompositionOffset { stage: usize, reason: String },

    #[error("orbit left the prescribed tract sequence at step {step}")]
    LeftAddress { step: usize },

    #[error("ray pullback failed at depth {depth}: {reason}")]
    RayPullback { depth: usize, reason: String },

    #[error("tube well-formedness fails at k = {k}: {inequality}")]
    WellFormedness { k: usize, inequality: String },

    #[error("starred inequality fails at k = {k}: {inequality}")]
    StarredInequality { k: usize, inequality: String },

    #[error("no passing xi0 found below cap {cap}")]
    NoPassingXi0 { cap: f64 },

    #[error("condition {name} is not certified at k = {k}; cannot replay induction")]
    NotCertified { name: String, k: usize },

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    #[error("point too close to the contour (distance {dist:.3e}, need > {clearance:.3e})")]
    NearContour { dist: f64, clearance: f64 },

    #[error("argument left the principal branch's safe sector: {0}")]
    BranchCut(String),

    #[error("malformed surrogate ordering: {0}")]
    SurrogateOrdering(String),

    #[error("fixed point is not repelling: |multiplier| = {multiplier_abs:.6}")]
    NotRepelling { multiplier_abs: f64 },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("{0}")]
    Other(String),
}

pub type Result<T> = std::result::Result<T, Error>;
