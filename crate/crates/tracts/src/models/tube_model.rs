//! Synthetic tract model over an embedded tube.
//!
//! The conformal map of a long unit-thickness tube onto a half-plane behaves,
//! up to bounded distortion, like `exp(π·(s + i·d)/(2h))` in the arclength /
//! transverse coordinates (s, d) of the tube. This surrogate realizes exactly
//! that map. It is not holomorphic, but the geometry verifiers only consume
//! real parts, membership and inverse branches, for which the surrogate is
//! faithful enough to exhibit folds, spirals and head-start violations that
//! the closed-form families cannot produce.

use super::TractId;
use crate::error::{Error, Result};
use crate::tube::TubeDomain;
use num_complex::Complex64;
use rand::Rng;
use std::f64::consts::PI;

#[derive(Clone, Debug)]
pub struct TubeModel {
    tube: TubeDomain,
}

impl TubeModel {
    /// The tube's own translates by 2πi play the role of the other tracts;
    /// tubes taller than 2π (minus the thickness) would overlap their
    /// translates and only make sense for single-tract verifier probes.
    pub fn new(tube: TubeDomain) -> Result<Self> {
        tube.check_embedded()?;
        Ok(TubeModel { tube })
    }

    pub fn tube(&self) -> &TubeDomain {
        &self.tube
    }

    fn offset_for(&self, tract: &TractId) -> Result<f64> {
        match tract {
            TractId::Base {
                family: 0,
                translate,
            } => Ok(super::TWO_PI * *translate as f64),
            _ => Err(Error::InvalidParameter(format!(
                "tube model has no tract {tract}"
            ))),
        }
    }

    fn coords(&self, tract: &TractId, w: Complex64) -> Result<(f64, f64)> {
        let off = self.offset_for(tract)?;
        let z = Complex64::new(w.re, w.im - off);
        if !self.tube.contains(z) {
            return Err(Error::OutsideDomain(format!("w = {w} not in tube tract")));
        }
        Ok(self.tube.project(z))
    }

    pub fn eval(&self, tract: &TractId, w: Complex64) -> Result<Complex64> {
        let (s, d) = self.coords(tract, w)?;
        let h = self.tube.halfwidth();
        let exponent = Complex64::new(s, d) * (PI / (2.0 * h));
        if exponent.re > 709.0 {
            return Err(Error::NonFinite("tube image overflow".into()));
        }
        Ok(exponent.exp())
    }

    pub fn derivative(&self, tract: &TractId, w: Complex64) -> Result<Complex64> {
        // d/dw of exp(π(s+id)/2h) along the tube axis; |F'| = π|F|/(2h).
        let f = self.eval(tract, w)?;
        Ok(f * (PI / (2.0 * self.tube.halfwidth())))
    }

    pub fn inverse(&self, tract: &TractId, zeta: Complex64) -> Result<Complex64> {
        let off = self.offset_for(tract)?;
        if zeta.re <= 0.0 {
            return Err(Error::InverseBranch {
                tract: tract.to_string(),
                reason: format!("ζ = {zeta} outside the right half-plane"),
            });
        }
        let h = self.tube.halfwidth();
        let log = zeta.ln() * (2.0 * h / PI);
        let (s, d) = (log.re, log.im);
        if s < 0.0 || d.abs() >= h {
            return Err(Error::InverseBranch {
                tract: tract.to_string(),
                reason: format!("image coordinates (s, d) = ({s:.3}, {d:.3}) leave the tube"),
            });
        }
        let z = self.tube.point_at(s, d)?;
        Ok(z + Complex64::new(0.0, off))
    }

    pub fn contains(&self, tract: &TractId, w: Complex64, slack: f64) -> bool {
        match self.offset_for(tract) {
            Ok(off) => {
                let z = Complex64::new(w.re, w.im - off);
                self.tube.dist_to_centerline(z) < self.tube.halfwidth() + slack
            }
            Err(_) => false,
        }
    }

    pub fn tract_of(&self, w: Complex64, slack: f64) -> Option<TractId> {
        for n in -2..=2 {
            let id = TractId::translate(n);
            if self.contains(&id, w, slack) {
                return Some(id);
            }
        }
        None
    }

    pub fn half_plane_offset(&self) -> f64 {
        0.0
    }

    pub fn seed_point(&self, tract: &TractId, re: f64) -> Result<Complex64> {
        let off = self.offset_for(tract)?;
        // Closest centerline vertex by real part.
        let z = self
            .tube
            .centerline()
            .iter()
            .min_by(|a, b| (a.re - re).abs().partial_cmp(&(b.re - re).abs()).unwrap())
            .copied()
            .unwrap();
        Ok(z + Complex64::new(0.0, off))
    }

    pub fn sample_point<R: Rng>(
        &self,
        tract: &TractId,
        rng: &mut R,
        _re_lo: f64,
        _re_hi: f64,
    ) -> Result<Complex64> {
        // Uniform over (arclength, transverse) coordinates; the tube's own
        // extent bounds the real parts, so the range arguments do not apply.
        let off = self.offset_for(tract)?;
        let s = rng.gen_range(0.0..self.tube.total_length());
        let d = rng.gen_range(-0.95..0.95) * self.tube.halfwidth();
        let z = self.tube.point_at(s, d)?;
        Ok(z + Complex64::new(0.0, off))
    }

    pub fn boundary_samples(&self, n: usize) -> Vec<Complex64> {
        let total = self.tube.total_length();
        let h = self.tube.halfwidth();
        (0..n)
            .filter_map(|i| {
                let s = (i as f64 + 0.5) * total / n as f64;
                let side = if i % 2 == 0 { 1.0 } else { -1.0 };
                self.tube.point_at(s, side * h).ok()
            })
            .collect()
    }
}
