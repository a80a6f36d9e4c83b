//! Function models in logarithmic coordinates.
//!
//! A [`BlogModel`] is a map `F : 𝒯 → H` where `𝒯` is a 2πi-periodic union of
//! tracts and `H` a right half-plane `{Re ζ > offset}`. Each tract maps
//! conformally onto `H` and carries an inverse branch. Models are immutable
//! and all evaluation is pure, so they can be shared freely across threads.
//!
//! Supported families: the exponential family `λ·e^z`, the cosine family
//! `a·e^z + b·e^(−z)`, compositions of normalized models, and a synthetic
//! tube surrogate used to probe the geometry verifiers on wiggling tracts.

pub mod compose;
mod cosine;
mod entire;
mod exp;
mod tube_model;

pub use compose::{compose, min_shift, CompositeModel};
pub use cosine::CosineModel;
pub use entire::{escape_classify, poincare_eval, poincare_fixed_point, EntireModel, EscapeResult};
pub use exp::ExpModel;
pub use tube_model::TubeModel;

use crate::error::{Error, Result};
use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;

pub const TWO_PI: f64 = 2.0 * PI;

/// Identifier for one tract: a base family index together with its
/// 2πi-translate index, or a chain of constituent ids for compositions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TractId {
    Base { family: i32, translate: i64 },
    Chain(Vec<TractId>),
}

impl TractId {
    pub fn base(family: i32, translate: i64) -> Self {
        TractId::Base { family, translate }
    }

    pub fn translate(n: i64) -> Self {
        TractId::base(0, n)
    }

    /// The 2πi-translate index that moves with the whole tract (for chains,
    /// the innermost stage's translate).
    pub fn translate_index(&self) -> i64 {
        match self {
            TractId::Base { translate, .. } => *translate,
            TractId::Chain(ids) => ids.first().map_or(0, |t| t.translate_index()),
        }
    }

    pub fn translated_by(&self, n: i64) -> Self {
        match self {
            TractId::Base { family, translate } => TractId::Base {
                family: *family,
                translate: translate + n,
            },
            TractId::Chain(ids) => {
                let mut ids = ids.clone();
                if let Some(first) = ids.first_mut() {
                    *first = first.translated_by(n);
                }
                TractId::Chain(ids)
            }
        }
    }
}

impl fmt::Display for TractId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TractId::Base {
                family: 0,
                translate,
            } => write!(f, "{translate}"),
            TractId::Base { family, translate } => write!(f, "{family}:{translate}"),
            TractId::Chain(ids) => {
                write!(f, "(")?;
                for (i, id) in ids.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{id}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Parse a tract id: `N` (family 0), `F:N`, or `(id id …)` for chains.
pub fn parse_tract_id(s: &str) -> Result<TractId> {
    let s = s.trim();
    if let Some(inner) = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        let ids = inner
            .split_whitespace()
            .map(parse_tract_id)
            .collect::<Result<Vec<_>>>()?;
        if ids.is_empty() {
            return Err(Error::InvalidParameter("empty tract chain".into()));
        }
        return Ok(TractId::Chain(ids));
    }
    if let Some((fam, tr)) = s.split_once(':') {
        let family = fam
            .parse::<i32>()
            .map_err(|_| Error::InvalidParameter(format!("bad family {fam:?}")))?;
        let translate = tr
            .parse::<i64>()
            .map_err(|_| Error::InvalidParameter(format!("bad translate {tr:?}")))?;
        return Ok(TractId::Base { family, translate });
    }
    let translate = s
        .parse::<i64>()
        .map_err(|_| Error::InvalidParameter(format!("bad tract id {s:?}")))?;
    Ok(TractId::translate(translate))
}

/// A function of class B_log: tract inventory, forward evaluation, per-tract
/// inverse branches, and the 2πi periodicity data.
#[derive(Clone, Debug)]
pub enum BlogModel {
    Exp(ExpModel),
    Cosine(CosineModel),
    Tube(TubeModel),
    Composite(CompositeModel),
}

impl BlogModel {
    /// Evaluate F on the given tract. Errors on overflow or points far
    /// outside the tract's safe evaluation region.
    pub fn eval(&self, tract: &TractId, w: Complex64) -> Result<Complex64> {
        match self {
            BlogModel::Exp(m) => m.eval(tract, w),
            BlogModel::Cosine(m) => m.eval(tract, w),
            BlogModel::Tube(m) => m.eval(tract, w),
            BlogModel::Composite(m) => m.eval(tract, w),
        }
    }

    /// Re F(w) in extended arithmetic: ±∞ when the value overflows f64.
    pub fn re_eval_extended(&self, tract: &TractId, w: Complex64) -> f64 {
        match self {
            BlogModel::Exp(m) => m.re_eval_extended(tract, w),
            _ => match self.eval(tract, w) {
                Ok(v) => v.re,
                Err(_) => f64::NAN,
            },
        }
    }

    /// The inverse branch of `F : tract → H` applied to `zeta ∈ H`.
    pub fn inverse(&self, tract: &TractId, zeta: Complex64) -> Result<Complex64> {
        match self {
            BlogModel::Exp(m) => m.inverse(tract, zeta),
            BlogModel::Cosine(m) => m.inverse(tract, zeta),
            BlogModel::Tube(m) => m.inverse(tract, zeta),
            BlogModel::Composite(m) => m.inverse(tract, zeta),
        }
    }

    /// F'(w) on the given tract.
    pub fn derivative(&self, tract: &TractId, w: Complex64) -> Result<Complex64> {
        match self {
            BlogModel::Exp(m) => m.derivative(tract, w),
            BlogModel::Cosine(m) => m.derivative(tract, w),
            BlogModel::Tube(m) => m.derivative(tract, w),
            BlogModel::Composite(m) => m.derivative(tract, w),
        }
    }

    /// Closure membership test with absolute slack `slack ≥ 0`.
    pub fn contains(&self, tract: &TractId, w: Complex64, slack: f64) -> bool {
        match self {
            BlogModel::Exp(m) => m.contains(tract, w, slack),
            BlogModel::Cosine(m) => m.contains(tract, w, slack),
            BlogModel::Tube(m) => m.contains(tract, w, slack),
            BlogModel::Composite(m) => m.contains(tract, w, slack),
        }
    }

    /// The tract whose closure contains `w`, if any.
    pub fn tract_of(&self, w: Complex64, slack: f64) -> Option<TractId> {
        match self {
            BlogModel::Exp(m) => m.tract_of(w, slack),
            BlogModel::Cosine(m) => m.tract_of(w, slack),
            BlogModel::Tube(m) => m.tract_of(w, slack),
            BlogModel::Composite(m) => m.tract_of(w, slack),
        }
    }

    /// Left edge of the half-plane H = {Re ζ > offset}.
    pub fn half_plane_offset(&self) -> f64 {
        match self {
            BlogModel::Exp(m) => m.half_plane_offset(),
            BlogModel::Cosine(m) => m.half_plane_offset(),
            BlogModel::Tube(m) => m.half_plane_offset(),
            BlogModel::Composite(m) => m.half_plane_offset(),
        }
    }

    /// Whether H is the right half-plane and |F'| ≥ 2 throughout the tracts.
    pub fn is_normalized(&self) -> bool {
        match self {
            BlogModel::Exp(m) => m.is_normalized(),
            BlogModel::Cosine(m) => m.is_normalized(),
            BlogModel::Tube(_) => true,
            BlogModel::Composite(_) => true,
        }
    }

    /// A point on the tract's horizontal reference line at the given real
    /// part, used to seed ray pullbacks.
    pub fn seed_point(&self, tract: &TractId, re: f64) -> Result<Complex64> {
        match self {
            BlogModel::Exp(m) => m.seed_point(tract, re),
            BlogModel::Cosine(m) => m.seed_point(tract, re),
            BlogModel::Tube(m) => m.seed_point(tract, re),
            BlogModel::Composite(m) => m.seed_point(tract, re),
        }
    }

    /// Draw a point of the tract: real part log-uniform over
    /// `[re_lo, re_hi]`, uniform over the available cross-section.
    pub fn sample_point<R: Rng>(
        &self,
        tract: &TractId,
        rng: &mut R,
        re_lo: f64,
        re_hi: f64,
    ) -> Result<Complex64> {
        match self {
            BlogModel::Exp(m) => m.sample_point(tract, rng, re_lo, re_hi),
            BlogModel::Cosine(m) => m.sample_point(tract, rng, re_lo, re_hi),
            BlogModel::Tube(m) => m.sample_point(tract, rng, re_lo, re_hi),
            BlogModel::Composite(m) => m.sample_point(tract, rng, re_lo, re_hi),
        }
    }

    /// Smallest `a ≥ 0` such that the inverse branches map `H_a` into
    /// `H_target` (used to chain compositions).
    pub fn min_offset_for_inverse_into(&self, target_re: f64) -> Result<f64> {
        match self {
            BlogModel::Exp(m) => Ok(m.min_offset_for_inverse_into(target_re)),
            BlogModel::Cosine(m) => Ok(m.min_offset_for_inverse_into(target_re)),
            BlogModel::Composite(m) => m.min_offset_for_inverse_into(target_re),
            BlogModel::Tube(_) => Err(Error::InvalidParameter(
                "tube surrogates cannot be composed".into(),
            )),
        }
    }
}

/// Pass to the normalized form: H becomes the right half-plane and |F'| ≥ 2
/// on the restricted tracts. The restriction level R₀ starts from the
/// family's analytic bound and is verified by sampling |F'| at `n_samples`
/// tract points, escalating on failure up to a cap.
pub fn normalize(model: &BlogModel, n_samples: usize, seed: u64) -> Result<BlogModel> {
    if model.is_normalized() {
        return Ok(model.clone());
    }
    match model {
        BlogModel::Exp(m) => m.normalize(n_samples, seed).map(BlogModel::Exp),
        BlogModel::Cosine(m) => m.normalize(n_samples, seed).map(BlogModel::Cosine),
        BlogModel::Tube(_) | BlogModel::Composite(_) => Ok(model.clone()),
    }
}

/// Sample min |F'(w)| over tract points with Re F(w) ≥ re_floor.
pub fn min_sampled_derivative(
    model: &BlogModel,
    tract: &TractId,
    n_samples: usize,
    re_floor: f64,
    seed: u64,
) -> Result<f64> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut min_abs = f64::INFINITY;
    let mut found = 0usize;
    let mut attempts = 0usize;
    while found < n_samples && attempts < 50 * n_samples {
        attempts += 1;
        let w = model.sample_point(tract, &mut rng, 0.05, 500.0)?;
        let f = match model.eval(tract, w) {
            Ok(f) => f,
            Err(_) => continue,
        };
        if f.re < re_floor {
            continue;
        }
        let d = model.derivative(tract, w)?.norm();
        min_abs = min_abs.min(d);
        found += 1;
    }
    if found == 0 {
        return Err(Error::Other("no sample points found".into()));
    }
    Ok(min_abs)
}

/// Disjoint-type test by boundary sampling: the closures of all tracts lie
/// inside H when the sampled tract boundary stays right of the offset.
pub fn is_disjoint_type(model: &BlogModel, n_samples: usize) -> Result<bool> {
    let offset = model.half_plane_offset();
    let boundary = match model {
        BlogModel::Exp(m) => m.boundary_samples(n_samples),
        BlogModel::Cosine(m) => m.boundary_samples(n_samples)?,
        BlogModel::Tube(m) => m.boundary_samples(n_samples),
        BlogModel::Composite(_) => {
            return Err(Error::InvalidParameter(
                "disjoint-type sampling is defined for base families".into(),
            ))
        }
    };
    Ok(boundary.into_iter().all(|w| w.re > offset))
}

/// Sample a point of the strip-form tract
/// `{w : e^(Re w)·cos(Im w − center) > cutoff, |Im w − center| < π/2}`
/// with Re log-uniform in `[re_lo, re_hi]`.
pub(crate) fn strip_sample<R: Rng>(
    rng: &mut R,
    cutoff: f64,
    center: f64,
    re_lo: f64,
    re_hi: f64,
) -> Result<Complex64> {
    let lo = re_lo.max(cutoff.ln() + 1e-3).max(1e-3);
    let hi = re_hi.max(lo * (1.0 + 1e-9));
    if !(lo < hi) {
        return Err(Error::InvalidParameter(format!(
            "empty sampling range [{re_lo}, {re_hi}] for cutoff {cutoff}"
        )));
    }
    let x = (rng.gen_range(lo.ln()..hi.ln())).exp();
    // Available half-angle: e^x cos y > cutoff.
    let ratio = cutoff * (-x).exp();
    let y_max = if ratio >= 1.0 {
        return Err(Error::Other("cross-section empty".into()));
    } else {
        ratio.max(0.0).acos()
    };
    let y = rng.gen_range(-0.999 * y_max..0.999 * y_max);
    Ok(Complex64::new(x, center + y))
}

/// Membership in the strip-form tract, in overflow-safe log form.
pub(crate) fn strip_contains(w: Complex64, cutoff: f64, center: f64, slack: f64) -> bool {
    let y = w.im - center;
    if y.abs() >= PI / 2.0 + slack.min(0.4) {
        return false;
    }
    // e^(Re w)·cos(y) ≥ cutoff − slack ⇔ Re w ≥ ln((cutoff − slack)/cos y)
    let c = (cutoff - slack).max(1e-300);
    let cos_y = y.abs().min(PI / 2.0 - 1e-12).cos();
    w.re >= (c / cos_y).ln()
}
