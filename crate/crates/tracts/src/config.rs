//! JSON-serializable model and render configurations.

use crate::error::{Error, Result};
use crate::models::{compose, normalize, BlogModel, CosineModel, EntireModel, ExpModel};
use crate::render::RenderSpec;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

fn c(v: [f64; 2]) -> Complex64 {
    Complex64::new(v[0], v[1])
}

/// Model descriptor: `{"family": "exp", "lambda": [re, im], …}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum ModelConfig {
    Exp {
        lambda: [f64; 2],
        #[serde(default, alias = "R_prime")]
        r_prime: Option<f64>,
    },
    Cosine {
        a: [f64; 2],
        b: [f64; 2],
        #[serde(default, alias = "R_prime")]
        r_prime: Option<f64>,
    },
    Poincare {
        c: [f64; 2],
    },
    Compose {
        parts: Vec<ModelConfig>,
        #[serde(default)]
        shift: Option<f64>,
    },
}

impl ModelConfig {
    /// Build the normalized logarithmic-coordinate model.
    pub fn build_blog(&self, seed: u64) -> Result<BlogModel> {
        match self {
            ModelConfig::Exp { lambda, r_prime } => {
                let lambda = c(*lambda);
                let rp = r_prime.unwrap_or_else(|| (std::f64::consts::E * lambda.norm()).max(3.0));
                let m = BlogModel::Exp(ExpModel::new(lambda, rp)?);
                normalize(&m, 2000, seed)
            }
            ModelConfig::Cosine { a, b, r_prime } => {
                let rp = r_prime.unwrap_or(4.0);
                let m = BlogModel::Cosine(CosineModel::new(c(*a), c(*b), rp)?);
                normalize(&m, 2000, seed)
            }
            ModelConfig::Poincare { .. } => Err(Error::InvalidParameter(
                "the linearizer family has no closed-form logarithmic transform; \
                 use it for rendering only"
                    .into(),
            )),
            ModelConfig::Compose { parts, shift } => {
                let stages = parts
                    .iter()
                    .map(|p| p.build_blog(seed))
                    .collect::<Result<Vec<_>>>()?;
                let a = match shift {
                    Some(a) => *a,
                    None => crate::models::compose::min_shift(&stages)?,
                };
                compose(stages, a)
            }
        }
    }

    /// Build the entire-function model for iteration and rendering.
    pub fn build_entire(&self) -> Result<EntireModel> {
        match self {
            ModelConfig::Exp { lambda, .. } => EntireModel::exp(c(*lambda)),
            ModelConfig::Cosine { a, b, .. } => EntireModel::cosine(c(*a), c(*b)),
            ModelConfig::Poincare { c: cc } => EntireModel::poincare(c(*cc)),
            ModelConfig::Compose { .. } => Err(Error::InvalidParameter(
                "compositions are evaluated in logarithmic coordinates only".into(),
            )),
        }
    }
}

/// Render run configuration: window, grid, escape data and the model.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RenderConfig {
    pub window: [f64; 4],
    pub width: usize,
    pub height: usize,
    pub escape_radius: f64,
    pub maxiter: u32,
    pub model: ModelConfig,
    #[serde(default = "default_palette")]
    pub palette: String,
}

fn default_palette() -> String {
    "grayscale".to_string()
}

impl RenderConfig {
    pub fn spec(&self) -> RenderSpec {
        RenderSpec {
            window: self.window,
            width: self.width,
            height: self.height,
            escape_radius: self.escape_radius,
            maxiter: self.maxiter,
        }
    }
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &std::path::Path) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

pub fn write_json<T: Serialize>(path: &std::path::Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    std::fs::write(path, text)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn model_config_roundtrip() {
        let cfg = ModelConfig::Exp {
            lambda: [0.2, 0.0],
            r_prime: Some(1.0),
        };
        let json = serde_json::to_string(&cfg).unwrap();
        assert!(json.contains("\"family\":\"exp\""));
        let back: ModelConfig = serde_json::from_str(&json).unwrap();
        assert_eq!(back, cfg);
        assert!(back.build_blog(1).is_ok());
        assert!(back.build_entire().is_ok());
    }

    #[test]
    fn render_config_roundtrip_produces_identical_runs() {
        let cfg = RenderConfig {
            window: [-2.0, 2.0, -2.0, 2.0],
            width: 32,
            height: 32,
            escape_radius: 50.0,
            maxiter: 20,
            model: ModelConfig::Exp {
                lambda: [0.2, 0.0],
                r_prime: None,
            },
            palette: default_palette(),
        };
        let json = serde_json::to_string(&cfg).unwrap();
        let back: RenderConfig = serde_json::from_str(&json).unwrap();
        let m1 = cfg.model.build_entire().unwrap();
        let m2 = back.model.build_entire().unwrap();
        let a = crate::render::render_julia(&cfg.spec(), &m1).unwrap();
        let b = crate::render::render_julia(&back.spec(), &m2).unwrap();
        assert_eq!(a, b);
    }
}
