//! Composition of normalized models: `G = τ_a ∘ F_n ∘ … ∘ F_1` with
//! composite tracts indexed by chains of constituent tract ids.

use super::{BlogModel, TractId};
use crate::error::{Error, Result};
use num_complex::Complex64;
use rand::Rng;

#[derive(Clone, Debug)]
pub struct CompositeModel {
    stages: Vec<BlogModel>,
    shift: f64,
}

/// Compose normalized models with right shift `a`: the first list entry is
/// applied first. `a` must be at least the cascade of offsets that lets every
/// pullback half-plane embed in the previous stage's domain.
pub fn compose(models: Vec<BlogModel>, shift: f64) -> Result<BlogModel> {
    if models.is_empty() {
        return Err(Error::InvalidParameter("empty composition".into()));
    }
    for (i, m) in models.iter().enumerate() {
        if !m.is_normalized() {
            return Err(Error::CompositionOffset {
                stage: i,
                reason: "stage is not normalized".into(),
            });
        }
    }
    if !(shift >= 0.0) {
        return Err(Error::InvalidParameter("shift must be ≥ 0".into()));
    }
    let required = min_shift(&models)?;
    if shift < required {
        return Err(Error::CompositionOffset {
            stage: models.len() - 1,
            reason: format!("shift {shift} below the required cascade value {required}"),
        });
    }
    if models.len() == 1 && shift == 0.0 {
        // Identity composition.
        return Ok(models.into_iter().next().unwrap());
    }
    Ok(BlogModel::Composite(CompositeModel {
        stages: models,
        shift,
    }))
}

/// The cascade of offsets a₂ … a_n from the composition construction: each
/// stage's inverse must map the running half-plane into the previous one.
pub fn min_shift(models: &[BlogModel]) -> Result<f64> {
    let mut req = 0.0;
    for m in models.iter().skip(1) {
        req = m.min_offset_for_inverse_into(req)?;
    }
    Ok(req)
}

impl CompositeModel {
    pub fn stages(&self) -> &[BlogModel] {
        &self.stages
    }

    pub fn shift(&self) -> f64 {
        self.shift
    }

    fn chain<'a>(&self, tract: &'a TractId) -> Result<&'a [TractId]> {
        match tract {
            TractId::Chain(ids) if ids.len() == self.stages.len() => Ok(ids),
            _ => Err(Error::InvalidParameter(format!(
                "composite of {} stages needs a chain id of that length, got {tract}",
                self.stages.len()
            ))),
        }
    }

    pub fn eval(&self, tract: &TractId, w: Complex64) -> Result<Complex64> {
        let ids = self.chain(tract)?;
        let mut v = w;
        for (stage, (m, id)) in self.stages.iter().zip(ids).enumerate() {
            v = m.eval(id, v).map_err(|e| Error::CompositionOffset {
                stage,
                reason: e.to_string(),
            })?;
        }
        Ok(v - self.shift)
    }

    pub fn inverse(&self, tract: &TractId, zeta: Complex64) -> Result<Complex64> {
        let ids = self.chain(tract)?;
        let mut v = zeta + self.shift;
        for (stage, (m, id)) in self.stages.iter().zip(ids).enumerate().rev() {
            if v.re <= m.half_plane_offset() {
                return Err(Error::CompositionOffset {
                    stage,
                    reason: format!("pullback left the domain at Re = {}", v.re),
                });
            }
            v = m.inverse(id, v)?;
        }
        Ok(v)
    }

    pub fn derivative(&self, tract: &TractId, w: Complex64) -> Result<Complex64> {
        let ids = self.chain(tract)?;
        let mut v = w;
        let mut d = Complex64::new(1.0, 0.0);
        for (m, id) in self.stages.iter().zip(ids) {
            d *= m.derivative(id, v)?;
            v = m.eval(id, v)?;
        }
        Ok(d)
    }

    pub fn contains(&self, tract: &TractId, w: Complex64, slack: f64) -> bool {
        let Ok(ids) = self.chain(tract) else {
            return false;
        };
        let mut v = w;
        for (m, id) in self.stages.iter().zip(ids) {
            if !m.contains(id, v, slack) {
                return false;
            }
            match m.eval(id, v) {
                Ok(next) => v = next,
                Err(_) => return false,
            }
        }
        v.re - self.shift > -slack
    }

    pub fn tract_of(&self, w: Complex64, slack: f64) -> Option<TractId> {
        let mut ids = Vec::with_capacity(self.stages.len());
        let mut v = w;
        for m in &self.stages {
            let id = m.tract_of(v, slack)?;
            v = m.eval(&id, v).ok()?;
            ids.push(id);
        }
        (v.re - self.shift > -slack).then_some(TractId::Chain(ids))
    }

    pub fn half_plane_offset(&self) -> f64 {
        0.0
    }

    pub fn seed_point(&self, tract: &TractId, re: f64) -> Result<Complex64> {
        // Seed on the innermost stage's reference line; the chain only
        // constrains deeper images.
        let ids = self.chain(tract)?;
        self.stages[0].seed_point(&ids[0], re)
    }

    pub fn sample_point<R: Rng>(
        &self,
        tract: &TractId,
        rng: &mut R,
        re_lo: f64,
        re_hi: f64,
    ) -> Result<Complex64> {
        // Pull a sample of the final half-plane back through the chain;
        // this lands in the composite tract by construction.
        let ids = self.chain(tract)?;
        for _ in 0..100 {
            let re = {
                let lo = re_lo.max(1e-3);
                (rng.gen_range(lo.ln()..re_hi.max(lo * 2.0).ln())).exp()
            };
            let zeta = Complex64::new(re + self.shift, rng.gen_range(-1.0..1.0));
            let mut v = zeta;
            let mut ok = true;
            for (m, id) in self.stages.iter().zip(ids).rev() {
                match m.inverse(id, v) {
                    Ok(next) => v = next,
                    Err(_) => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                return Ok(v);
            }
        }
        Err(Error::Other("composite sampling failed".into()))
    }

    pub fn min_offset_for_inverse_into(&self, target_re: f64) -> Result<f64> {
        let mut req = target_re;
        for m in &self.stages {
            req = m.min_offset_for_inverse_into(req)?;
        }
        Ok((req - self.shift).max(0.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::ExpModel;
    use rand::SeedableRng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn norm_exp(lambda: f64) -> BlogModel {
        BlogModel::Exp(
            ExpModel::new(c(lambda, 0.0), 3.0 * lambda.max(1.0))
                .unwrap()
                .normalize(500, 7)
                .unwrap(),
        )
    }

    #[test]
    fn single_model_identity() {
        let m = norm_exp(1.0);
        let g = compose(vec![m.clone()], 0.0).unwrap();
        let t = TractId::translate(0);
        let w = c(2.0, 0.1);
        assert_eq!(g.eval(&t, w).unwrap(), m.eval(&t, w).unwrap());
    }

    #[test]
    fn two_exp_stages_match_direct_chaining() {
        let m1 = norm_exp(1.0);
        let m2 = norm_exp(2.0);
        let a = super::min_shift(&[m1.clone(), m2.clone()]).unwrap();
        let g = compose(vec![m1.clone(), m2.clone()], a).unwrap();
        let chain = TractId::Chain(vec![TractId::translate(0), TractId::translate(0)]);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(20);
        for _ in 0..100 {
            let w = c(rng.gen_range(1.4..2.2), rng.gen_range(-0.05..0.05));
            if !g.contains(&chain, w, 0.0) {
                continue;
            }
            let direct = m2
                .eval(
                    &TractId::translate(0),
                    m1.eval(&TractId::translate(0), w).unwrap(),
                )
                .unwrap()
                - a;
            let via = g.eval(&chain, w).unwrap();
            assert!((via - direct).norm() < 1e-12 * (1.0 + direct.norm()));
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let m1 = norm_exp(1.0);
        let m2 = norm_exp(1.0);
        let a = super::min_shift(&[m1.clone(), m2.clone()]).unwrap();
        let g = compose(vec![m1, m2], a).unwrap();
        let chain = TractId::Chain(vec![TractId::translate(1), TractId::translate(0)]);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
        for _ in 0..100 {
            let zeta = c(rng.gen_range(0.5..100.0), rng.gen_range(-20.0..20.0));
            let w = g.inverse(&chain, zeta).unwrap();
            assert!(g.contains(&chain, w, 1e-8));
            let back = g.eval(&chain, w).unwrap();
            assert!((back - zeta).norm() < 1e-10 * (1.0 + zeta.norm()));
        }
    }

    #[test]
    fn too_small_shift_names_the_stage() {
        let m1 = norm_exp(1.0);
        // A stage needing a genuinely positive offset: widen κ so the
        // inverse can dip left of the half-plane.
        let m2 = BlogModel::Exp(
            ExpModel::new(c(30.0, 0.0), 90.0)
                .unwrap()
                .normalize(500, 8)
                .unwrap(),
        );
        let needed = super::min_shift(&[m1.clone(), m2.clone()]).unwrap();
        if needed > 0.0 {
            match compose(vec![m1, m2], 0.0) {
                Err(Error::CompositionOffset { .. }) => {}
                other => panic!("expected offset error, got {other:?}"),
            }
        }
    }
}
