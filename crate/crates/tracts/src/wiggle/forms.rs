//! Certified comparisons of exponential expressions over a shared scale.
//!
//! At stage k the interesting logarithms are linear combinations
//! `coeff·X + lower-order` of the shared scale X = sep ξ_(k−1). Once X
//! carries a level ≥ 1 tower mantissa (stage 2 onwards), constant factors
//! fall below one ulp of the mantissa and stored tower values for, say,
//! e^(12X) and e^(12MX) collapse to the same float. Comparisons between
//! same-stage quantities are therefore certified structurally: exact scalar
//! coefficient arithmetic plus a lower bound for X, which is sound at every
//! stage because X only enters through products with coefficient gaps.

use crate::tower::{TowerInterval, Verdict};

/// A scalar lower bound for the enclosure, capped so products stay finite.
pub(crate) fn floor_f64(x: &TowerInterval) -> f64 {
    match x.lo().to_f64() {
        Some(v) if v.is_finite() => v.min(1e300),
        _ => 1e300, // level ≥ 2, or level 1 beyond f64 range
    }
}

/// Certify `B·e^(bX) > L·X^p + α` for every X ≥ floor(x).
///
/// Uses the bound ln(L·X^p + α⁺) ≤ ln 2 + max(ln L + p·ln X, ln α⁺) at the
/// floor, plus growth dominance b·X ≥ p beyond it. Returns `Indeterminate`
/// rather than `False` when the certificate does not apply.
pub(crate) fn exp_gt(
    x: &TowerInterval,
    b_coeff: f64,
    b_exp: f64,
    l: f64,
    p: f64,
    alpha: f64,
) -> Verdict {
    let x0 = floor_f64(x);
    if !(b_coeff > 0.0 && b_exp > 0.0 && l >= 0.0 && p >= 0.0 && x0 > 0.0) {
        return Verdict::Indeterminate;
    }
    // Growth dominance: d/dX (bX) ≥ d/dX (p·ln X) for X ≥ x0.
    if b_exp * x0 < p {
        return Verdict::Indeterminate;
    }
    let lhs_log = b_exp * x0 + b_coeff.ln();
    let power_log = if l > 0.0 {
        l.ln() + p * x0.ln()
    } else {
        f64::NEG_INFINITY
    };
    let alpha_log = if alpha > 0.0 {
        alpha.ln()
    } else {
        f64::NEG_INFINITY
    };
    let rhs_log = power_log.max(alpha_log) + 2.0 * std::f64::consts::LN_2;
    if lhs_log > rhs_log + 1e-9 || rhs_log == f64::NEG_INFINITY {
        Verdict::True
    } else {
        Verdict::Indeterminate
    }
}

/// Certify `A·e^(aX) + α < B·e^(bX)` for every X ≥ floor(x)
/// (requires a ≤ b; the additive term is absorbed into the lower-exponent
/// coefficient at the floor).
pub(crate) fn exp_form_less(
    x: &TowerInterval,
    a_coeff: f64,
    a_exp: f64,
    add_a: f64,
    b_coeff: f64,
    b_exp: f64,
) -> Verdict {
    let x0 = floor_f64(x);
    if !(a_coeff > 0.0 && b_coeff > 0.0 && a_exp >= 0.0 && x0 > 0.0) {
        return Verdict::Indeterminate;
    }
    if a_exp > b_exp {
        return Verdict::Indeterminate;
    }
    // A e^(aX) + α ≤ A' e^(aX) for X ≥ x0 with A' = A + α⁺·e^(−a·x0),
    // rounded conservatively upward.
    let absorbed = if add_a > 0.0 {
        let damp = (-a_exp * x0).exp();
        add_a * damp * (1.0 + 1e-12) + 1e-300
    } else {
        0.0
    };
    let a_eff = a_coeff + absorbed;
    if a_exp == b_exp {
        return if a_eff < b_coeff * (1.0 - 1e-12) {
            Verdict::True
        } else {
            Verdict::Indeterminate
        };
    }
    // Need (b − a)·X > ln(A'/B) for all X ≥ x0.
    if (b_exp - a_exp) * x0 > (a_eff / b_coeff).ln() + 1e-9 {
        Verdict::True
    } else {
        Verdict::Indeterminate
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(x: f64) -> TowerInterval {
        TowerInterval::point(x).unwrap()
    }

    fn deep() -> TowerInterval {
        // A level-2 scale: floor saturates at 1e300.
        TowerInterval::point(800.0)
            .unwrap()
            .exp()
            .unwrap()
            .exp()
            .unwrap()
    }

    #[test]
    fn exp_gt_basics() {
        // e^X > X + 4 for X ≥ 3.
        assert_eq!(exp_gt(&iv(3.0), 1.0, 1.0, 1.0, 1.0, 4.0), Verdict::True);
        // but not certifiable from X ≥ 0.1.
        assert_eq!(
            exp_gt(&iv(0.1), 1.0, 1.0, 1.0, 1.0, 4.0),
            Verdict::Indeterminate
        );
        // Saturated deep scale.
        assert_eq!(exp_gt(&deep(), 0.047, 18.0, 3.0, 1.0, 0.0), Verdict::True);
        // Power variant: e^X/2 > X^(2/3) + 5 for X ≥ 10.
        assert_eq!(
            exp_gt(&iv(10.0), 0.5, 1.0, 1.0, 2.0 / 3.0, 5.0),
            Verdict::True
        );
    }

    #[test]
    fn exp_form_less_basics() {
        // e^(12X) + 5 < e^(18X) from X ≥ 2.
        assert_eq!(
            exp_form_less(&iv(2.0), 1.0, 12.0, 5.0, 1.0, 18.0),
            Verdict::True
        );
        // Reversed exponents cannot be certified.
        assert_eq!(
            exp_form_less(&iv(2.0), 1.0, 18.0, 0.0, 1.0, 12.0),
            Verdict::Indeterminate
        );
        // Same exponent: coefficient comparison with absorption.
        assert_eq!(
            exp_form_less(&iv(5.0), 1.0, 12.0, 9.0, 28.5, 12.0),
            Verdict::True
        );
        assert_eq!(
            exp_form_less(&iv(5.0), 28.5, 12.0, 0.0, 1.0, 12.0),
            Verdict::Indeterminate
        );
        // Deep scale.
        assert_eq!(
            exp_form_less(&deep(), 0.5, 4.19, 0.0, 1.0, 18.0),
            Verdict::True
        );
    }
}
