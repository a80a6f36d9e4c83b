//! Tube domains (thickened polylines) and two-sided hyperbolic estimates.
//!
//! A [`TubeDomain`] is the set of points within `halfwidth` of a polyline
//! centerline. For a simply connected domain the hyperbolic density λ
//! satisfies `1/(2·dist(z,∂V)) ≤ λ(z) ≤ 2/dist(z,∂V)`; the estimators here
//! integrate the two sides of that bound. They require the tube to be
//! embedded (no self-overlap), which is checked, not assumed.

use crate::error::{Error, Result};
use num_complex::Complex64;

#[derive(Clone, Debug)]
pub struct TubeDomain {
    centerline: Vec<Complex64>,
    halfwidth: f64,
    cumlen: Vec<f64>,
}

/// Target set for [`TubeDomain::hyp_dist_lower`].
#[derive(Clone, Debug)]
pub enum Target {
    /// A sub-polyline of the domain.
    Polyline(Vec<Complex64>),
    /// The vertical segment `{re + i·t : t ∈ [im_lo, im_hi]}`.
    VerticalLine { re: f64, im_lo: f64, im_hi: f64 },
}

fn dist_point_segment(z: Complex64, a: Complex64, b: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (z - a).norm();
    }
    let t = ((z - a).re * ab.re + (z - a).im * ab.im) / len2;
    let t = t.clamp(0.0, 1.0);
    (z - (a + ab * t)).norm()
}

fn dist_segment_segment(a0: Complex64, a1: Complex64, b0: Complex64, b1: Complex64) -> f64 {
    if segments_intersect(a0, a1, b0, b1) {
        return 0.0;
    }
    dist_point_segment(a0, b0, b1)
        .min(dist_point_segment(a1, b0, b1))
        .min(dist_point_segment(b0, a0, a1))
        .min(dist_point_segment(b1, a0, a1))
}

fn orient(a: Complex64, b: Complex64, c: Complex64) -> f64 {
    (b.re - a.re) * (c.im - a.im) - (b.im - a.im) * (c.re - a.re)
}

fn segments_intersect(a0: Complex64, a1: Complex64, b0: Complex64, b1: Complex64) -> bool {
    let d1 = orient(b0, b1, a0);
    let d2 = orient(b0, b1, a1);
    let d3 = orient(a0, a1, b0);
    let d4 = orient(a0, a1, b1);
    ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
}

impl TubeDomain {
    pub fn new(centerline: Vec<Complex64>, halfwidth: f64) -> Result<Self> {
        if centerline.is_empty() {
            return Err(Error::InvalidParameter("empty centerline".into()));
        }
        if !(halfwidth > 0.0) || !halfwidth.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "halfwidth {halfwidth} must be positive"
            )));
        }
        for w in centerline.windows(2) {
            if (w[1] - w[0]).norm() == 0.0 {
                return Err(Error::InvalidParameter(
                    "consecutive centerline points must be distinct".into(),
                ));
            }
        }
        let mut cumlen = Vec::with_capacity(centerline.len());
        let mut s = 0.0;
        cumlen.push(0.0);
        for w in centerline.windows(2) {
            s += (w[1] - w[0]).norm();
            cumlen.push(s);
        }
        Ok(TubeDomain {
            centerline,
            halfwidth,
            cumlen,
        })
    }

    pub fn halfwidth(&self) -> f64 {
        self.halfwidth
    }

    pub fn centerline(&self) -> &[Complex64] {
        &self.centerline
    }

    pub fn total_length(&self) -> f64 {
        *self.cumlen.last().unwrap()
    }

    /// Distance from `z` to the centerline polyline.
    pub fn dist_to_centerline(&self, z: Complex64) -> f64 {
        let mut best = f64::INFINITY;
        for w in self.centerline.windows(2) {
            best = best.min(dist_point_segment(z, w[0], w[1]));
        }
        best
    }

    /// Distance from an interior point to the tube boundary.
    pub fn clearance(&self, z: Complex64) -> f64 {
        self.halfwidth - self.dist_to_centerline(z)
    }

    pub fn contains(&self, z: Complex64) -> bool {
        self.dist_to_centerline(z) < self.halfwidth
    }

    /// Arclength coordinate and signed transverse offset of the nearest
    /// centerline point. The final segment is treated as extending to
    /// infinity so that unbounded tubes can be modelled by a finite polyline.
    pub fn project(&self, z: Complex64) -> (f64, f64) {
        let mut best = (f64::INFINITY, 0.0, 0.0);
        let nseg = self.centerline.len() - 1;
        for (i, w) in self.centerline.windows(2).enumerate() {
            let (a, b) = (w[0], w[1]);
            let ab = b - a;
            let len = ab.norm();
            let t_raw = ((z - a).re * ab.re + (z - a).im * ab.im) / (len * len);
            let t = if i + 1 == nseg {
                t_raw.max(0.0) // last segment extends forward
            } else {
                t_raw.clamp(0.0, 1.0)
            };
            let p = a + ab * t;
            let d = (z - p).norm();
            if d < best.0 {
                let cross = ab.re * (z - p).im - ab.im * (z - p).re;
                let signed = if cross >= 0.0 { d } else { -d };
                best = (d, self.cumlen[i] + t * len, signed);
            }
        }
        (best.1, best.2)
    }

    /// Point at arclength `s` offset by `d` along the left normal. `s` past
    /// the end continues along the final segment's direction.
    pub fn point_at(&self, s: f64, d: f64) -> Result<Complex64> {
        if s < 0.0 {
            return Err(Error::OutsideDomain(format!("arclength {s} < 0")));
        }
        let nseg = self.centerline.len() - 1;
        let mut i = match self.cumlen.binary_search_by(|c| c.partial_cmp(&s).unwrap()) {
            Ok(j) => j.min(nseg - 1),
            Err(j) => j.saturating_sub(1).min(nseg - 1),
        };
        if s >= self.total_length() {
            i = nseg - 1;
        }
        let a = self.centerline[i];
        let b = self.centerline[i + 1];
        let dir = (b - a) / (b - a).norm();
        let normal = Complex64::new(-dir.im, dir.re);
        Ok(a + dir * (s - self.cumlen[i]) + normal * d)
    }

    /// Check that non-adjacent parts of the tube do not overlap: every pair
    /// of centerline segments whose arclength gap exceeds the local turning
    /// scale must be at least `2·halfwidth` apart. Pairs closer along the
    /// curve than 2.2·halfwidth are the legitimate near-passes of a turn of
    /// curvature radius ≥ halfwidth and are skipped, so hairpins tighter
    /// than that scale are not detectable by this check.
    pub fn check_embedded(&self) -> Result<()> {
        let n = self.centerline.len() - 1;
        let gap_threshold = 2.2 * self.halfwidth;
        for i in 0..n {
            for j in (i + 1)..n {
                let gap = self.cumlen[j] - self.cumlen[i + 1];
                if gap <= gap_threshold {
                    continue;
                }
                let d = dist_segment_segment(
                    self.centerline[i],
                    self.centerline[i + 1],
                    self.centerline[j],
                    self.centerline[j + 1],
                );
                if d < 2.0 * self.halfwidth {
                    return Err(Error::NotEmbedded(format!(
                        "segments {i} and {j} are {d:.4} apart (need ≥ {})",
                        2.0 * self.halfwidth
                    )));
                }
            }
        }
        Ok(())
    }

    /// Upper bound for the hyperbolic length of `path` inside the tube:
    /// the integral of `2/dist(z, ∂T)` by adaptive segment subdivision.
    ///
    /// Each piece is bounded using the Lipschitz estimate
    /// `max dist-to-centerline ≤ (d0 + d1 + L)/2` and accepted once the
    /// implied clearance is within 0.5% of the endpoint clearance, so the
    /// returned value exceeds the true integral by well under one percent
    /// (and converges from above under further subdivision).
    pub fn hyp_length_upper(&self, path: &[Complex64]) -> Result<f64> {
        self.check_embedded()?;
        if path.len() < 2 {
            return Ok(0.0);
        }
        let mut total = 0.0;
        for w in path.windows(2) {
            total += self.hyp_length_piece(w[0], w[1], 0)?;
        }
        Ok(total)
    }

    fn hyp_length_piece(&self, p: Complex64, q: Complex64, depth: u32) -> Result<f64> {
        let d0 = self.dist_to_centerline(p);
        let d1 = self.dist_to_centerline(q);
        let h = self.halfwidth;
        if d0 >= h || d1 >= h {
            return Err(Error::PathEscapes(format!(
                "path point at distance {:.4} ≥ halfwidth {h}",
                d0.max(d1)
            )));
        }
        let len = (q - p).norm();
        if len == 0.0 {
            return Ok(0.0);
        }
        let slack = (d0 + d1 + len) / 2.0;
        let clearance_bound = h - slack;
        let clearance_end = h - d0.max(d1);
        let resolved = clearance_bound > 0.0 && clearance_bound >= 0.995 * clearance_end;
        if resolved || depth >= 48 {
            if clearance_bound <= 0.0 {
                return Err(Error::PathEscapes(
                    "could not separate path from the boundary".into(),
                ));
            }
            return Ok(2.0 * len / clearance_bound);
        }
        let mid = (p + q) / 2.0;
        Ok(self.hyp_length_piece(p, mid, depth + 1)? + self.hyp_length_piece(mid, q, depth + 1)?)
    }

    /// Lower bound for the hyperbolic distance from `z0` to `target`:
    /// straight-line Euclidean distance times the density floor
    /// `1/(2·halfwidth)`. For halfwidth ≤ 1/2 this dominates the Euclidean
    /// distance itself.
    pub fn hyp_dist_lower(&self, z0: Complex64, target: &Target) -> Result<f64> {
        self.check_embedded()?;
        if !self.contains(z0) {
            return Err(Error::OutsideDomain(format!("z0 = {z0} not in tube")));
        }
        let pts: Vec<(Complex64, Complex64)> = match target {
            Target::Polyline(p) => {
                if p.is_empty() {
                    return Err(Error::InvalidParameter("empty target".into()));
                }
                if p.len() == 1 {
                    vec![(p[0], p[0])]
                } else {
                    p.windows(2).map(|w| (w[0], w[1])).collect()
                }
            }
            Target::VerticalLine { re, im_lo, im_hi } => {
                if im_lo > im_hi {
                    return Err(Error::InvalidParameter("im_lo > im_hi".into()));
                }
                vec![(Complex64::new(*re, *im_lo), Complex64::new(*re, *im_hi))]
            }
        };
        // The target must meet the tube to be reachable inside it.
        let reachable = pts.iter().any(|(a, b)| {
            (0..=20).any(|i| {
                let t = i as f64 / 20.0;
                self.contains(a + (b - a) * t)
            })
        });
        if !reachable {
            return Err(Error::Unreachable("target does not meet the tube".into()));
        }
        let mut d = f64::INFINITY;
        for (a, b) in &pts {
            d = d.min(dist_point_segment(z0, *a, *b));
        }
        Ok(d / (2.0 * self.halfwidth))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn straight_tube(len: f64, halfwidth: f64) -> TubeDomain {
        TubeDomain::new(vec![c(0.0, 0.0), c(len, 0.0)], halfwidth).unwrap()
    }

    #[test]
    fn centerline_segment_bound_is_four_l() {
        // Along the centerline of a halfwidth-1/2 tube, dist to ∂T = 1/2 so the
        // density bound is 4; the adaptive bound converges to 4L from above.
        let tube = straight_tube(10.0, 0.5);
        let l = 6.0;
        let got = tube
            .hyp_length_upper(&[c(2.0, 0.0), c(2.0 + l, 0.0)])
            .unwrap();
        assert!(got >= 4.0 * l);
        assert!(got <= 4.0 * l * 1.02, "got {got}");
    }

    #[test]
    fn offset_segment_doubles_the_bound() {
        // Clearance 1/4 ⇒ density bound 8.
        let tube = straight_tube(10.0, 0.5);
        let l = 5.0;
        let got = tube
            .hyp_length_upper(&[c(2.0, 0.25), c(2.0 + l, 0.25)])
            .unwrap();
        assert!(got >= 8.0 * l);
        assert!(got <= 8.0 * l * 1.02, "got {got}");
    }

    #[test]
    fn l_shaped_path_matches_reference_quadrature() {
        // Independent oracle: Richardson-extrapolated trapezoid quadrature of
        // ∫ 2/dist(z,∂T) over the same path, sampled densely.
        let tube = TubeDomain::new(vec![c(0.0, 0.0), c(10.0, 0.0), c(10.0, 8.0)], 0.5).unwrap();
        let path = vec![c(1.0, 0.1), c(9.9, 0.1), c(9.9, 7.0)];
        let quad = |n: usize| -> f64 {
            let mut total = 0.0;
            for w in path.windows(2) {
                let mut acc = 0.0;
                for i in 0..n {
                    let t0 = i as f64 / n as f64;
                    let t1 = (i + 1) as f64 / n as f64;
                    let z0 = w[0] + (w[1] - w[0]) * t0;
                    let z1 = w[0] + (w[1] - w[0]) * t1;
                    let f0 = 2.0 / tube.clearance(z0);
                    let f1 = 2.0 / tube.clearance(z1);
                    acc += 0.5 * (f0 + f1) * (z1 - z0).norm();
                }
                total += acc;
            }
            total
        };
        let (a, b) = (quad(4000), quad(8000));
        let reference = b + (b - a) / 3.0;
        let got = tube.hyp_length_upper(&path).unwrap();
        assert!(got >= reference * 0.999, "upper bound below reference");
        assert!(
            (got - reference).abs() <= 0.01 * reference,
            "got {got}, reference {reference}"
        );
    }

    #[test]
    fn path_touching_boundary_errors() {
        let tube = straight_tube(10.0, 0.5);
        assert!(tube.hyp_length_upper(&[c(1.0, 0.0), c(2.0, 0.5)]).is_err());
    }

    #[test]
    fn dist_lower_examples() {
        let tube = straight_tube(20.0, 0.5);
        let z0 = c(1.0, 0.0);
        // Target at Euclidean distance D along the tube: bound ≥ D.
        let d = 12.0;
        let got = tube
            .hyp_dist_lower(
                z0,
                &Target::VerticalLine {
                    re: 1.0 + d,
                    im_lo: -0.4,
                    im_hi: 0.4,
                },
            )
            .unwrap();
        assert!(got >= d && got <= d * 1.001, "got {got}");

        // z0 on the target → 0.
        let got = tube
            .hyp_dist_lower(
                z0,
                &Target::VerticalLine {
                    re: 1.0,
                    im_lo: -0.4,
                    im_hi: 0.4,
                },
            )
            .unwrap();
        assert_eq!(got, 0.0);
    }

    #[test]
    fn unreachable_target_errors() {
        let tube = straight_tube(10.0, 0.5);
        let r = tube.hyp_dist_lower(
            c(1.0, 0.0),
            &Target::VerticalLine {
                re: 50.0,
                im_lo: -0.1,
                im_hi: 0.1,
            },
        );
        assert!(r.is_err());
    }

    #[test]
    fn lower_bound_below_upper_bound_on_random_tubes() {
        // Staircase tubes are embedded by construction; the centerline path
        // from z0 to the target is admissible.
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let mut pts = vec![c(0.0, 0.0)];
            let mut x = 0.0;
            let mut y = 0.0;
            for i in 0..4 {
                if i % 2 == 0 {
                    x += rng.gen_range(3.0..10.0);
                } else {
                    y += rng.gen_range(3.0..10.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
                }
                pts.push(c(x, y));
            }
            let h = rng.gen_range(0.2..0.5);
            let tube = TubeDomain::new(pts.clone(), h).unwrap();
            if tube.check_embedded().is_err() {
                continue;
            }
            let z0 = pts[0] + c(0.5, 0.0);
            let target = Target::Polyline(vec![*pts.last().unwrap()]);
            let lower = match tube.hyp_dist_lower(z0, &target) {
                Ok(v) => v,
                Err(_) => continue,
            };
            let mut path = pts.clone();
            path[0] = z0;
            let upper = tube.hyp_length_upper(&path).unwrap();
            assert!(
                lower <= upper * (1.0 + 1e-9),
                "lower {lower} > upper {upper}"
            );
        }
    }

    #[test]
    fn halfwidth_monotonicity() {
        let path = vec![c(1.0, 0.05), c(6.0, -0.05), c(9.0, 0.1)];
        let mk = |h: f64| straight_tube(10.0, h).hyp_length_upper(&path).unwrap();
        let mut prev = mk(0.3);
        for h in [0.35, 0.4, 0.5, 0.7, 1.0] {
            let cur = mk(h);
            // Monotone within the adaptive scheme's convergence tolerance.
            assert!(cur <= prev * (1.0 + 1e-5), "h={h}: {cur} > {prev}");
            prev = cur;
        }
    }

    #[test]
    fn self_intersecting_tube_rejected() {
        // Crossing segments.
        let tube = TubeDomain::new(
            vec![c(0.0, 0.0), c(10.0, 0.0), c(5.0, 5.0), c(5.0, -5.0)],
            0.5,
        )
        .unwrap();
        assert!(tube.check_embedded().is_err());
        assert!(tube.hyp_length_upper(&[c(1.0, 0.0), c(2.0, 0.0)]).is_err());
        // Parallel runs closer than the tube width, joined by a detour.
        let tube = TubeDomain::new(
            vec![
                c(0.0, 0.0),
                c(10.0, 0.0),
                c(12.0, 0.45),
                c(10.0, 0.9),
                c(0.0, 0.9),
            ],
            0.5,
        )
        .unwrap();
        assert!(tube.check_embedded().is_err());
    }
}
