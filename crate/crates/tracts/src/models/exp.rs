//! Logarithmic transform of the exponential family `f(z) = λ·e^z`.
//!
//! With `D` the disk of radius R′ around 0 (which must contain the singular
//! value 0 and f(0) = λ), the preimage of its complement is the half-plane
//! `{Re z > ln(R′/|λ|)}`. In logarithmic coordinates this lifts to tracts
//!
//! ```text
//!   T_n = {w : Re e^w > cutoff, |Im w − 2πn| < π/2},   F(w) = e^w + κ,
//! ```
//!
//! where κ = Log λ (minus the normalization shift) and F maps each T_n
//! conformally onto `{Re ζ > Re κ + cutoff}`.

use super::{strip_contains, strip_sample, TractId, TWO_PI};
use crate::error::{Error, Result};
use num_complex::Complex64;
use rand::Rng;
use std::f64::consts::PI;

#[derive(Clone, Debug)]
pub struct ExpModel {
    lambda: Complex64,
    /// κ effective: Log λ − shift.
    kappa: Complex64,
    /// Tract condition Re e^w > cutoff.
    cutoff: f64,
    r_prime: f64,
    normalized: bool,
}

impl ExpModel {
    /// Build the logarithmic transform with disk radius `r_prime`.
    ///
    /// Requires λ ≠ 0 and `r_prime > |λ|`, so that the disk D contains the
    /// singular value 0 and f(0) = λ, and the tract strips stay disjoint
    /// (cutoff > 0).
    pub fn new(lambda: Complex64, r_prime: f64) -> Result<Self> {
        if lambda.norm() == 0.0 || !lambda.is_finite() {
            return Err(Error::InvalidParameter(
                "λ must be nonzero and finite".into(),
            ));
        }
        if !(r_prime > lambda.norm() * (1.0 + 1e-9)) || !r_prime.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "r_prime = {r_prime} must exceed |λ| = {}",
                lambda.norm()
            )));
        }
        let kappa = lambda.ln(); // principal Log λ
        let cutoff = (r_prime / lambda.norm()).ln();
        Ok(ExpModel {
            lambda,
            kappa,
            cutoff,
            r_prime,
            normalized: false,
        })
    }

    pub fn lambda(&self) -> Complex64 {
        self.lambda
    }

    pub fn kappa(&self) -> Complex64 {
        self.kappa
    }

    pub fn cutoff(&self) -> f64 {
        self.cutoff
    }

    pub fn half_plane_offset(&self) -> f64 {
        self.kappa.re + self.cutoff
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    fn strip_center(&self, tract: &TractId) -> Result<f64> {
        match tract {
            TractId::Base {
                family: 0,
                translate,
            } => Ok(TWO_PI * *translate as f64),
            _ => Err(Error::InvalidParameter(format!(
                "exponential model has no tract {tract}"
            ))),
        }
    }

    pub fn eval(&self, tract: &TractId, w: Complex64) -> Result<Complex64> {
        self.strip_center(tract)?;
        if w.re > 709.0 {
            return Err(Error::NonFinite(format!(
                "e^w overflows at Re w = {}",
                w.re
            )));
        }
        Ok(w.exp() + self.kappa)
    }

    /// Re F(w) with overflow mapped to ±∞ by the sign of cos(Im w).
    pub fn re_eval_extended(&self, tract: &TractId, w: Complex64) -> f64 {
        if self.strip_center(tract).is_err() {
            return f64::NAN;
        }
        if w.re > 709.0 {
            let c = w.im.cos();
            return if c > 0.0 {
                f64::INFINITY
            } else if c < 0.0 {
                f64::NEG_INFINITY
            } else {
                0.0
            };
        }
        w.re.exp() * w.im.cos() + self.kappa.re
    }

    pub fn inverse(&self, tract: &TractId, zeta: Complex64) -> Result<Complex64> {
        let center = self.strip_center(tract)?;
        if zeta.re <= self.half_plane_offset() {
            return Err(Error::InverseBranch {
                tract: tract.to_string(),
                reason: format!("ζ = {zeta} outside H (Re ≤ {})", self.half_plane_offset()),
            });
        }
        let u = zeta - self.kappa;
        Ok(u.ln() + Complex64::new(0.0, center))
    }

    pub fn derivative(&self, tract: &TractId, w: Complex64) -> Result<Complex64> {
        self.strip_center(tract)?;
        if w.re > 709.0 {
            return Err(Error::NonFinite("F' overflows".into()));
        }
        Ok(w.exp())
    }

    pub fn contains(&self, tract: &TractId, w: Complex64, slack: f64) -> bool {
        match self.strip_center(tract) {
            Ok(center) => strip_contains(w, self.cutoff, center, slack),
            Err(_) => false,
        }
    }

    pub fn tract_of(&self, w: Complex64, slack: f64) -> Option<TractId> {
        let n = (w.im / TWO_PI).round() as i64;
        let id = TractId::translate(n);
        self.contains(&id, w, slack).then_some(id)
    }

    pub fn seed_point(&self, tract: &TractId, re: f64) -> Result<Complex64> {
        let center = self.strip_center(tract)?;
        Ok(Complex64::new(re, center))
    }

    pub fn sample_point<R: Rng>(
        &self,
        tract: &TractId,
        rng: &mut R,
        re_lo: f64,
        re_hi: f64,
    ) -> Result<Complex64> {
        let center = self.strip_center(tract)?;
        strip_sample(rng, self.cutoff, center, re_lo, re_hi)
    }

    /// Points along the tract boundary `{Re e^w = cutoff}` of the base tract.
    pub fn boundary_samples(&self, n: usize) -> Vec<Complex64> {
        (0..n)
            .map(|i| {
                let y = -PI / 2.0 + (i as f64 + 0.5) * PI / n as f64;
                let x = (self.cutoff / y.cos().max(1e-12)).ln();
                Complex64::new(x.min(700.0), y)
            })
            .collect()
    }

    /// Normalized form: restrict to F⁻¹(H_R₀) and shift by R₀, where
    /// R₀ = max(2 + |κ| + 1, offset + 1) guarantees |F'| ≥ 2 analytically
    /// (|F'(w)| = |e^w| ≥ Re e^w > R₀ − Re κ ≥ 2). The guarantee is then
    /// confirmed by sampling, escalating R₀ if the sample ever dips below 2.
    pub fn normalize(&self, n_samples: usize, seed: u64) -> Result<ExpModel> {
        if self.normalized {
            return Ok(self.clone());
        }
        let kappa0 = self.lambda.ln();
        let mut r0 = (2.0 + kappa0.norm() + 1.0).max(self.half_plane_offset() + 1.0);
        for _ in 0..8 {
            let candidate = ExpModel {
                lambda: self.lambda,
                kappa: kappa0 - r0,
                cutoff: r0 - kappa0.re,
                r_prime: self.r_prime,
                normalized: true,
            };
            let model = super::BlogModel::Exp(candidate.clone());
            let min_d = super::min_sampled_derivative(
                &model,
                &TractId::translate(0),
                n_samples,
                0.0,
                seed,
            )?;
            if min_d >= 2.0 {
                return Ok(candidate);
            }
            r0 *= 1.5;
        }
        Err(Error::NotExpansive { min_abs_deriv: 0.0 })
    }

    /// Smallest a ≥ 0 with inverse(H_a) ⊂ H_target: Re Log(ζ−κ) =
    /// ln|ζ−κ| ≥ ln(Re ζ − Re κ), so a = exp(target) + Re κ suffices.
    pub fn min_offset_for_inverse_into(&self, target_re: f64) -> f64 {
        (target_re.exp() + self.kappa.re).max(0.0)
    }
}
