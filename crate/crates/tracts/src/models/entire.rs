//! Entire function models for escape-time classification and rendering.

use crate::error::{Error, Result};
use num_complex::Complex64;

/// The repelling fixed point of `w² + c` with the larger multiplier, and the
/// multiplier itself (μ = 2α). Errors if neither fixed point is repelling.
pub fn poincare_fixed_point(c: Complex64) -> Result<(Complex64, Complex64)> {
    let disc = (Complex64::new(1.0, 0.0) - 4.0 * c).sqrt();
    let w1 = (Complex64::new(1.0, 0.0) + disc) / 2.0;
    let w2 = (Complex64::new(1.0, 0.0) - disc) / 2.0;
    let alpha = if w1.norm() >= w2.norm() { w1 } else { w2 };
    let mu = 2.0 * alpha;
    if mu.norm() <= 1.0 + 1e-9 {
        return Err(Error::NotRepelling {
            multiplier_abs: mu.norm(),
        });
    }
    Ok((alpha, mu))
}

/// Linearizer of `p(w) = w² + c` at its repelling fixed point α:
/// `ψ(z) ≈ p^∘n(α + z/μ^n)`, normalized so ψ(0) = α and ψ'(0) = 1.
///
/// With `depth = None` the depth is chosen minimal with |z|/|μ|^n < 1e-8,
/// which puts the linearization error at the 1e-16 scale before iteration.
pub fn poincare_eval(c: Complex64, z: Complex64, depth: Option<u32>) -> Result<Complex64> {
    let (alpha, mu) = poincare_fixed_point(c)?;
    if !z.is_finite() {
        return Err(Error::NonFinite("poincare argument".into()));
    }
    let n = match depth {
        Some(n) => n,
        None => {
            if z.norm() == 0.0 {
                0
            } else {
                ((z.norm().ln() + 8.0 * std::f64::consts::LN_10) / mu.norm().ln()).ceil() as u32
            }
        }
    };
    let mut w = alpha + z / mu.powu(n);
    for _ in 0..n {
        w = w * w + c;
        if !w.is_finite() {
            return Err(Error::NonFinite("poincare orbit overflow".into()));
        }
    }
    Ok(w)
}

/// An entire function with a bounded set of singular values.
#[derive(Clone, Debug)]
pub enum EntireModel {
    /// `λ·e^z`; singular values: {0}.
    Exp { lambda: Complex64 },
    /// `a·e^z + b·e^(−z)`; singular values: the critical values ±2√(ab).
    Cosine { a: Complex64, b: Complex64 },
    /// Linearizer ψ of `w² + c` at its repelling fixed point; singular
    /// values: the postcritical set of the polynomial.
    Poincare {
        c: Complex64,
        alpha: Complex64,
        mu: Complex64,
        singular_bound: f64,
    },
}

impl EntireModel {
    pub fn exp(lambda: Complex64) -> Result<Self> {
        if lambda.norm() == 0.0 {
            return Err(Error::InvalidParameter("λ must be nonzero".into()));
        }
        Ok(EntireModel::Exp { lambda })
    }

    pub fn cosine(a: Complex64, b: Complex64) -> Result<Self> {
        if a.norm() == 0.0 || b.norm() == 0.0 {
            return Err(Error::InvalidParameter("a, b must be nonzero".into()));
        }
        Ok(EntireModel::Cosine { a, b })
    }

    /// Requires the critical orbit of `w² + c` to stay bounded (connected
    /// Julia set), so that ψ has a bounded singular set.
    pub fn poincare(c: Complex64) -> Result<Self> {
        let (alpha, mu) = poincare_fixed_point(c)?;
        let mut v = Complex64::new(0.0, 0.0);
        let mut bound: f64 = 0.0;
        for _ in 0..500 {
            v = v * v + c;
            bound = bound.max(v.norm());
            if v.norm() > 1e6 {
                return Err(Error::InvalidParameter(
                    "critical orbit escapes: ψ has unbounded singular set".into(),
                ));
            }
        }
        Ok(EntireModel::Poincare {
            c,
            alpha,
            mu,
            singular_bound: bound,
        })
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        match self {
            EntireModel::Exp { lambda } => {
                if z.re > 709.0 {
                    return Err(Error::NonFinite("e^z overflow".into()));
                }
                Ok(lambda * z.exp())
            }
            EntireModel::Cosine { a, b } => {
                if z.re.abs() > 709.0 {
                    return Err(Error::NonFinite("e^±z overflow".into()));
                }
                Ok(a * z.exp() + b * (-z).exp())
            }
            EntireModel::Poincare { c, .. } => poincare_eval(*c, z, None),
        }
    }

    /// A radius bounding the set of finite singular values.
    pub fn singular_bound(&self) -> f64 {
        match self {
            EntireModel::Exp { .. } => 0.0,
            EntireModel::Cosine { a, b } => 2.0 * (a * b).sqrt().norm(),
            EntireModel::Poincare { singular_bound, .. } => *singular_bound,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EscapeResult {
    pub escaped: bool,
    /// First index n with |f^∘n(z)| > R (0 = the starting point itself).
    pub first_exit: Option<u32>,
}

/// Finite-horizon escape classification: iterate until |iterate| > R or
/// `maxiter` steps pass. Overflow counts as escape.
pub fn escape_classify(
    f: &EntireModel,
    z: Complex64,
    escape_radius: f64,
    maxiter: u32,
) -> Result<EscapeResult> {
    if !z.is_finite() {
        return Err(Error::NonFinite("escape_classify input".into()));
    }
    if !(escape_radius > f.singular_bound()) {
        return Err(Error::InvalidParameter(format!(
            "escape radius {escape_radius} must exceed the singular bound {}",
            f.singular_bound()
        )));
    }
    let mut w = z;
    for n in 0..=maxiter {
        if !w.is_finite() || w.norm() > escape_radius {
            return Ok(EscapeResult {
                escaped: true,
                first_exit: Some(n),
            });
        }
        if n == maxiter {
            break;
        }
        w = match f.eval(w) {
            Ok(v) => v,
            Err(Error::NonFinite(_)) => Complex64::new(f64::INFINITY, 0.0),
            Err(e) => return Err(e),
        };
    }
    Ok(EscapeResult {
        escaped: false,
        first_exit: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn poincare_basics() {
        // c = −1: α = (1+√5)/2, μ = 1+√5.
        let (alpha, mu) = poincare_fixed_point(c(-1.0, 0.0)).unwrap();
        assert!((alpha.re - 1.618033988749895).abs() < 1e-12);
        assert!((mu.re - 3.23606797749979).abs() < 1e-12);

        // ψ(0) = α at any depth.
        let v = poincare_eval(c(-1.0, 0.0), c(0.0, 0.0), Some(17)).unwrap();
        assert!((v - alpha).norm() < 1e-12);

        // ψ'(0) = 1 by finite differences.
        let h = 1e-6;
        let v = poincare_eval(c(-1.0, 0.0), c(h, 0.0), None).unwrap();
        assert!(((v - alpha).norm() / h - 1.0).abs() < 1e-4);
    }

    #[test]
    fn poincare_functional_equation() {
        use rand::{Rng, SeedableRng};
        let cc = c(-1.0, 0.0);
        let (_, mu) = poincare_fixed_point(cc).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for _ in 0..100 {
            let z = c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            let lhs = poincare_eval(cc, mu * z, None).unwrap();
            let psi = poincare_eval(cc, z, None).unwrap();
            let rhs = psi * psi + cc;
            assert!(
                (lhs - rhs).norm() < 1e-6 * (1.0 + lhs.norm()),
                "functional equation fails at z = {z}"
            );
        }
    }

    #[test]
    fn parabolic_rejected() {
        // c = 1/4: the only fixed point is parabolic (μ = 1).
        assert!(poincare_fixed_point(c(0.25, 0.0)).is_err());
    }

    #[test]
    fn escape_examples() {
        let f = EntireModel::exp(c(1.0, 0.0)).unwrap();
        let r = escape_classify(&f, c(100.0, 0.0), 50.0, 10).unwrap();
        assert!(r.escaped && r.first_exit == Some(0));

        // λ = 0.2: z = 0 is attracted to the fixed point 0.2591711018190737…
        let f = EntireModel::exp(c(0.2, 0.0)).unwrap();
        let r = escape_classify(&f, c(0.0, 0.0), 100.0, 100).unwrap();
        assert!(!r.escaped);
        let mut w = c(0.0, 0.0);
        for _ in 0..200 {
            w = f.eval(w).unwrap();
        }
        assert!((w - c(0.2591711018190737, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn escape_monotone_in_maxiter() {
        use rand::{Rng, SeedableRng};
        let f = EntireModel::exp(c(1.0, 0.0)).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        for _ in 0..300 {
            let z = c(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
            let a = escape_classify(&f, z, 50.0, 20).unwrap();
            let b = escape_classify(&f, z, 50.0, 40).unwrap();
            if a.escaped {
                assert!(b.escaped);
                assert_eq!(a.first_exit, b.first_exit);
            }
        }
    }

    #[test]
    fn non_finite_input_rejected() {
        let f = EntireModel::exp(c(1.0, 0.0)).unwrap();
        assert!(escape_classify(&f, c(f64::NAN, 0.0), 50.0, 5).is_err());
    }
}
