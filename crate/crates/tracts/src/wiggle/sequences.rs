//! The ξ / sep ξ scale sequences in tower-interval arithmetic.

use super::{H_PRIME, STACK_HEIGHT};
use crate::error::{Error, Result};
use crate::tower::{certainly_less, TowerInterval, Verdict};

/// Scale data of the wiggle tract: enclosures of ξ_k and sep ξ_k together
/// with the fixed corridor parameters.
#[derive(Clone, Debug)]
pub struct WiggleSpec {
    pub m: f64,
    pub xi0: f64,
    pub k_max: usize,
    pub h_prime: f64,
    pub stack_height: f64,
    pub xi: Vec<TowerInterval>,
    pub sep_xi: Vec<TowerInterval>,
}

impl WiggleSpec {
    pub fn exponent(&self) -> f64 {
        12.0 * self.m * self.m
    }

    /// ξ_(k_max+1), needed by checks that look one stage ahead.
    pub fn xi_next(&self) -> Result<TowerInterval> {
        self.sep_xi[self.k_max].scale(1.0 / self.m)?.exp()
    }

    /// Robustness variant: every stored enclosure widened by `rel` of its own
    /// width plus one ulp. Downstream bounds recomputed from the widened
    /// sequences must reproduce identical verdicts.
    pub fn widened(&self, rel: f64) -> Result<WiggleSpec> {
        let widen = |v: &[TowerInterval]| -> Result<Vec<TowerInterval>> {
            v.iter().map(|t| t.widen_relative(rel)).collect()
        };
        Ok(WiggleSpec {
            m: self.m,
            xi0: self.xi0,
            k_max: self.k_max,
            h_prime: self.h_prime,
            stack_height: self.stack_height,
            xi: widen(&self.xi)?,
            sep_xi: widen(&self.sep_xi)?,
        })
    }
}

/// Build the sequences `sep ξ_0 = ξ_0^(12M²)`, `ξ_(k+1) = exp(sep ξ_k/M)`,
/// `sep ξ_(k+1) = exp(12M·sep ξ_k)` and check tube well-formedness
/// `ξ_k < sep ξ_k < ξ_(k+1) − 4 − 2h'` at every stage.
pub fn build_sequences(m: f64, xi0: f64, k_max: usize) -> Result<WiggleSpec> {
    if !(m > 1.0 && m < 1.75) {
        return Err(Error::InvalidParameter(format!(
            "M = {m} must lie in (1, 1.75)"
        )));
    }
    if !(xi0 > 2.0) || !xi0.is_finite() {
        return Err(Error::InvalidParameter(format!("ξ₀ = {xi0} must exceed 2")));
    }
    let exponent = 12.0 * m * m;
    let mut xi = vec![TowerInterval::point(xi0)?];
    let mut sep_xi = vec![xi[0].pow(exponent)?];
    for k in 0..k_max {
        xi.push(sep_xi[k].scale(1.0 / m)?.exp()?);
        sep_xi.push(sep_xi[k].scale(12.0 * m)?.exp()?);
    }
    let spec = WiggleSpec {
        m,
        xi0,
        k_max,
        h_prime: H_PRIME,
        stack_height: STACK_HEIGHT,
        xi,
        sep_xi,
    };
    check_well_formed(&spec)?;
    Ok(spec)
}

fn check_well_formed(spec: &WiggleSpec) -> Result<()> {
    use super::forms::{exp_form_less, exp_gt};
    for k in 0..=spec.k_max {
        // ξ_k < sep ξ_k: direct at stage 0 (plain f64 scale), structurally
        // over the shared scale sep ξ_(k−1) afterwards (stored towers
        // collapse the coefficient gap 1/M vs 12M at deep stages).
        let v = if k == 0 {
            certainly_less(&spec.xi[0], &spec.sep_xi[0])
        } else {
            exp_form_less(
                &spec.sep_xi[k - 1],
                1.0,
                1.0 / spec.m,
                0.0,
                1.0,
                12.0 * spec.m,
            )
        };
        if v != Verdict::True {
            return Err(Error::WellFormedness {
                k,
                inequality: format!("ξ_{k} < sep ξ_{k}"),
            });
        }
        // sep ξ_k + 4 + 2h' < ξ_(k+1) = exp(sep ξ_k / M):
        // exponential dominance over X = sep ξ_k.
        let v = exp_gt(
            &spec.sep_xi[k],
            1.0,
            1.0 / spec.m,
            1.0,
            1.0,
            4.0 + 2.0 * spec.h_prime,
        );
        if v != Verdict::True {
            return Err(Error::WellFormedness {
                k,
                inequality: format!("sep ξ_{k} + 4 + 2h' < ξ_{}", k + 1),
            });
        }
    }
    Ok(())
}
