//! Logarithmic transform of the cosine family `f(z) = a·e^z + b·e^(−z)`.
//!
//! Two base tract families: family 0 sits over the right logarithmic
//! singularity (`e^w` near the positive real axis, where `f ≈ a·e^(e^w)`)
//! and family 1 over the left one (strips around `(2n+1)πi`, where
//! `f ≈ b·e^(−e^w)`). The global log branch is ambiguous, so the branch is
//! pinned by continuity from the asymptotic form:
//!
//! ```text
//!   right: F(w) = e^w + log a + log1p((b/a)·e^(−2e^w))
//!   left:  F(w) = −e^w + log b + log1p((a/b)·e^(+2e^w))
//! ```
//!
//! valid while the correction term stays below 1/2 in modulus (the tract's
//! safe region). Inverse branches run damped Newton from the asymptotic
//! inverse seed.

use super::{strip_contains, strip_sample, TractId, TWO_PI};
use crate::error::{Error, Result};
use num_complex::Complex64;
use rand::Rng;
use std::f64::consts::PI;

#[derive(Clone, Debug)]
pub struct CosineModel {
    a: Complex64,
    b: Complex64,
    log_a: Complex64,
    log_b: Complex64,
    r_prime: f64,
    /// Normalization shift applied to F (0 when unnormalized).
    shift: f64,
    /// Safe-region condition ±Re e^w > cutoff per family.
    cutoff: f64,
    normalized: bool,
}

impl CosineModel {
    pub fn new(a: Complex64, b: Complex64, r_prime: f64) -> Result<Self> {
        if a.norm() == 0.0 || b.norm() == 0.0 || !a.is_finite() || !b.is_finite() {
            return Err(Error::InvalidParameter("a and b must be nonzero".into()));
        }
        if !(r_prime > 0.0) || !r_prime.is_finite() {
            return Err(Error::InvalidParameter("r_prime must be positive".into()));
        }
        let log_a = a.ln();
        let log_b = b.ln();
        // Safe region: correction |(b/a)e^(∓2t)| ≤ 1/2 and |f| > R′.
        let ratio = (b.norm() / a.norm()).ln().abs() / 2.0;
        let cutoff = (ratio + 1.0)
            .max((2.0 * r_prime / a.norm()).ln())
            .max((2.0 * r_prime / b.norm()).ln())
            .max(1.0);
        Ok(CosineModel {
            a,
            b,
            log_a,
            log_b,
            r_prime,
            shift: 0.0,
            cutoff,
            normalized: false,
        })
    }

    pub fn half_plane_offset(&self) -> f64 {
        if self.normalized {
            0.0
        } else {
            self.r_prime.ln()
        }
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    fn family_data(&self, tract: &TractId) -> Result<(i32, f64)> {
        match tract {
            TractId::Base {
                family: 0,
                translate,
            } => Ok((0, TWO_PI * *translate as f64)),
            TractId::Base {
                family: 1,
                translate,
            } => Ok((1, PI + TWO_PI * *translate as f64)),
            _ => Err(Error::InvalidParameter(format!(
                "cosine model has no tract {tract}"
            ))),
        }
    }

    /// F before the normalization shift. Errors when w leaves the branch's
    /// safe region or the evaluation overflows.
    fn eval_unshifted(&self, family: i32, w: Complex64) -> Result<Complex64> {
        if w.re > 709.0 {
            return Err(Error::NonFinite(format!(
                "e^w overflows at Re w = {}",
                w.re
            )));
        }
        let t = w.exp();
        let (lead, log_lead, corr) = if family == 0 {
            (t, self.log_a, (self.b / self.a) * (-2.0 * t).exp())
        } else {
            (-t, self.log_b, (self.a / self.b) * (2.0 * t).exp())
        };
        if !corr.is_finite() || corr.norm() > 0.5 {
            return Err(Error::BranchCut(format!(
                "correction term {:.3e} outside safe region at w = {w}",
                corr.norm()
            )));
        }
        Ok(lead + log_lead + (Complex64::new(1.0, 0.0) + corr).ln())
    }

    pub fn eval(&self, tract: &TractId, w: Complex64) -> Result<Complex64> {
        let (family, _) = self.family_data(tract)?;
        Ok(self.eval_unshifted(family, w)? - self.shift)
    }

    pub fn derivative(&self, tract: &TractId, w: Complex64) -> Result<Complex64> {
        let (family, _) = self.family_data(tract)?;
        if w.re > 709.0 {
            return Err(Error::NonFinite("F' overflows".into()));
        }
        let t = w.exp();
        // F'(w) = t·f'(t)/f(t) = ±t·(1 − ε)/(1 + ε) with ε the correction.
        let corr = if family == 0 {
            (self.b / self.a) * (-2.0 * t).exp()
        } else {
            (self.a / self.b) * (2.0 * t).exp()
        };
        if !corr.is_finite() || corr.norm() > 0.5 {
            return Err(Error::BranchCut("derivative outside safe region".into()));
        }
        let one = Complex64::new(1.0, 0.0);
        let sign = if family == 0 { 1.0 } else { -1.0 };
        Ok(t * sign * (one - corr) / (one + corr))
    }

    pub fn inverse(&self, tract: &TractId, zeta: Complex64) -> Result<Complex64> {
        let (family, center) = self.family_data(tract)?;
        if zeta.re <= self.half_plane_offset() {
            return Err(Error::InverseBranch {
                tract: tract.to_string(),
                reason: format!("ζ = {zeta} outside H"),
            });
        }
        let target = zeta + self.shift;
        // Asymptotic inverse seed.
        let mut w = if family == 0 {
            (target - self.log_a).ln() + Complex64::new(0.0, center)
        } else {
            // e^w = −(target − log b): principal log plus the iπ of this strip.
            (target - self.log_b).ln() + Complex64::new(0.0, center)
        };
        let tol = 1e-12 * (1.0 + target.norm());
        for _ in 0..60 {
            let fv = self
                .eval_unshifted(family, w)
                .map_err(|e| Error::InverseBranch {
                    tract: tract.to_string(),
                    reason: format!("left safe region during Newton: {e}"),
                })?;
            let resid = fv - target;
            if resid.norm() < tol {
                return Ok(w);
            }
            let d = self.derivative(tract, w)?;
            if d.norm() == 0.0 {
                return Err(Error::InverseBranch {
                    tract: tract.to_string(),
                    reason: "vanishing derivative".into(),
                });
            }
            let mut step = resid / d;
            if step.norm() > 1.0 {
                step /= step.norm(); // damping
            }
            w -= step;
        }
        let fv = self.eval_unshifted(family, w)?;
        Err(Error::NewtonDiverged {
            iters: 60,
            residual: (fv - target).norm(),
        })
    }

    pub fn contains(&self, tract: &TractId, w: Complex64, slack: f64) -> bool {
        let Ok((family, center)) = self.family_data(tract) else {
            return false;
        };
        // e^(Re w)·cos(Im w − center) equals Re(±e^w) for the two families.
        if !strip_contains(w, self.cutoff, center, slack) {
            return false;
        }
        match self.eval_unshifted(family, w) {
            Ok(f) => f.re - self.shift > self.half_plane_offset() - slack,
            Err(_) => false,
        }
    }

    pub fn tract_of(&self, w: Complex64, slack: f64) -> Option<TractId> {
        let k = (w.im / PI).round() as i64;
        let (family, translate) = if k.rem_euclid(2) == 0 {
            (0, k / 2)
        } else {
            (1, (k - 1) / 2)
        };
        let id = TractId::base(family, translate);
        self.contains(&id, w, slack).then_some(id)
    }

    pub fn seed_point(&self, tract: &TractId, re: f64) -> Result<Complex64> {
        let (_, center) = self.family_data(tract)?;
        Ok(Complex64::new(re, center))
    }

    pub fn sample_point<R: Rng>(
        &self,
        tract: &TractId,
        rng: &mut R,
        re_lo: f64,
        re_hi: f64,
    ) -> Result<Complex64> {
        let (_, center) = self.family_data(tract)?;
        for _ in 0..200 {
            let w = strip_sample(rng, self.cutoff, center, re_lo, re_hi)?;
            if self.contains(tract, w, 0.0) {
                return Ok(w);
            }
        }
        Err(Error::Other("cosine tract sampling failed".into()))
    }

    pub fn boundary_samples(&self, n: usize) -> Result<Vec<Complex64>> {
        // Sample the level curve Re F = offset of the base right tract by
        // bisection in Re w along horizontal lines.
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let y = -PI / 2.0 * 0.95 + (i as f64 + 0.5) * (PI * 0.95) / n as f64;
            let mut lo = self.cutoff.max(0.1);
            let mut hi = 700.0;
            let f = |x: f64| -> f64 {
                match self.eval_unshifted(0, Complex64::new(x, y)) {
                    Ok(v) => v.re - self.shift - self.half_plane_offset(),
                    Err(_) => -1.0,
                }
            };
            if f(lo) > 0.0 {
                out.push(Complex64::new(lo, y));
                continue;
            }
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                if f(mid) > 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            out.push(Complex64::new(hi, y));
        }
        Ok(out)
    }

    /// Normalized form by restriction to F⁻¹(H_R₀) and shifting.
    ///
    /// Analytic seed: |F'(w)| = |e^w|·|1−ε|/|1+ε| ≥ Re(±e^w)/3, so forcing
    /// Re(±e^w) ≥ 6 inside the restriction gives |F'| ≥ 2; this holds once
    /// R₀ ≥ 6 + max(|log a|, |log b|) + 1. Verified by sampling afterwards.
    pub fn normalize(&self, n_samples: usize, seed: u64) -> Result<CosineModel> {
        if self.normalized {
            return Ok(self.clone());
        }
        let base = self.log_a.norm().max(self.log_b.norm());
        let mut r0 = (6.0 + base + 1.0).max(self.half_plane_offset() + 1.0);
        for _ in 0..8 {
            let mut candidate = self.clone();
            candidate.shift = r0;
            candidate.normalized = true;
            candidate.cutoff = self.cutoff.max(r0 - base - 0.7);
            let model = super::BlogModel::Cosine(candidate.clone());
            let mut ok = true;
            for fam in [0, 1] {
                let min_d = super::min_sampled_derivative(
                    &model,
                    &TractId::base(fam, 0),
                    n_samples / 2,
                    0.0,
                    seed + fam as u64,
                )?;
                if min_d < 2.0 {
                    ok = false;
                }
            }
            if ok {
                return Ok(candidate);
            }
            r0 *= 1.4;
        }
        Err(Error::NotExpansive { min_abs_deriv: 0.0 })
    }

    pub fn min_offset_for_inverse_into(&self, target_re: f64) -> f64 {
        // Inverse seeds have Re ≈ ln|ζ ∓ log(a/b)|; require
        // ln(Re ζ − base) ≥ target_re + 1 margin for Newton's basin.
        let base = self.log_a.norm().max(self.log_b.norm()) + self.shift;
        ((target_re + 1.0).exp() + base).max(0.0)
    }
}
