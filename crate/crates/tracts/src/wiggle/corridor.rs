//! Desk-scale corridor geometry: the explicit segment-and-arc centerline of
//! the wiggle tract at surrogate ξ values, for rendering and for
//! cross-checks against the hyperbolic estimators.

use crate::error::{Error, Result};
use crate::tube::TubeDomain;
use num_complex::Complex64;
use std::f64::consts::PI;

const ARC_SEGMENTS_PER_QUARTER: usize = 12;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Append an arc of radius 1 around `center` from angle `from` to `to`
/// (either direction), skipping the starting point.
fn push_arc(points: &mut Vec<Complex64>, center: Complex64, from: f64, to: f64) {
    let n = (ARC_SEGMENTS_PER_QUARTER as f64 * (to - from).abs() / (PI / 2.0)).ceil() as usize;
    for i in 1..=n.max(1) {
        let th = from + (to - from) * i as f64 / n as f64;
        points.push(center + c(th.cos(), th.sin()));
    }
}

/// Build the corridor centerline for surrogate scales
/// `[ξ₀, sep ξ₀, ξ₁, sep ξ₁, …]` (alternating; a trailing ξ ends the tube on
/// the outgoing run). The tube starts at P = 1, runs out to P_k = sep ξ_k + h'
/// on the Im = 0 line, turns back to ξ_k on the Im = −2 line, bypasses on the
/// Im = −4 line, and rises again. Halfwidth is 1/2 throughout.
pub fn corridor_geometry(surrogate_xi: &[f64], h_prime: f64) -> Result<TubeDomain> {
    if surrogate_xi.len() < 2 {
        return Err(Error::SurrogateOrdering(
            "need at least ξ₀ and sep ξ₀".into(),
        ));
    }
    if !(h_prime >= 0.5) {
        return Err(Error::SurrogateOrdering(format!(
            "h' = {h_prime} too small for the turn boxes"
        )));
    }
    let hp = h_prime;
    let stages: Vec<(f64, f64)> = surrogate_xi
        .chunks(2)
        .filter(|ch| ch.len() == 2)
        .map(|ch| (ch[0], ch[1]))
        .collect();
    let trailing_xi = if surrogate_xi.len() % 2 == 1 {
        Some(*surrogate_xi.last().unwrap())
    } else {
        None
    };
    // Ordering: 2 < ξ_0, ξ_k < sep ξ_k, sep ξ_k + 4 + 2h' < ξ_(k+1).
    let mut prev_sep: Option<f64> = None;
    for (i, (xi, sep)) in stages.iter().enumerate() {
        if let Some(ps) = prev_sep {
            if !(ps + 4.0 + 2.0 * hp < *xi) {
                return Err(Error::SurrogateOrdering(format!(
                    "sep ξ_{} + 4 + 2h' ≥ ξ_{i}",
                    i - 1
                )));
            }
        } else if !(*xi > 2.0) {
            return Err(Error::SurrogateOrdering("ξ₀ must exceed 2".into()));
        }
        if !(*xi < *sep) {
            return Err(Error::SurrogateOrdering(format!("ξ_{i} ≥ sep ξ_{i}")));
        }
        prev_sep = Some(*sep);
    }
    if let (Some(t), Some(ps)) = (trailing_xi, prev_sep) {
        if !(ps + 4.0 + 2.0 * hp < t) {
            return Err(Error::SurrogateOrdering(
                "trailing ξ must clear the last wiggle".into(),
            ));
        }
    }

    let mut pts = vec![c(1.0, 0.0)];
    for (k, (xi, sep)) in stages.iter().enumerate() {
        let p_k = sep + hp;
        // Outgoing run on Im = 0 ends at P_k + h' = sep + 2h'.
        pts.push(c(p_k, 0.0));
        pts.push(c(sep + 2.0 * hp, 0.0));
        // Right U-turn down to Im = −2.
        push_arc(&mut pts, c(sep + 2.0 * hp, -1.0), PI / 2.0, -PI / 2.0);
        // Return run to the turn at ξ_k.
        pts.push(c(*xi, -2.0));
        // Left U-turn down to Im = −4.
        push_arc(&mut pts, c(*xi, -3.0), PI / 2.0, 3.0 * PI / 2.0);
        // Bypass run under the turn boxes to sep P_k = P_k − 4i.
        pts.push(c(p_k, -4.0));

        let next_stop = stages.get(k + 1).map(|(_, s2)| s2 + hp).or(trailing_xi);
        if let Some(stop) = next_stop {
            // Riser: quarter up, vertical, quarter right, then out on Im = 0.
            pts.push(c(sep + 2.0 * hp + 2.0, -4.0));
            push_arc(&mut pts, c(sep + 2.0 * hp + 2.0, -3.0), -PI / 2.0, 0.0);
            pts.push(c(sep + 2.0 * hp + 3.0, -1.0));
            push_arc(&mut pts, c(sep + 2.0 * hp + 4.0, -1.0), PI, PI / 2.0);
            pts.push(c(stop, 0.0));
        }
    }
    let tube = TubeDomain::new(pts, 0.5)?;
    tube.check_embedded()?;
    Ok(tube)
}
