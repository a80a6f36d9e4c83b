//! Symbolic dynamics and ray construction: external addresses, pullback
//! tracing of ray tails with rigorous error bounds, the speed ordering, and
//! sampling verifiers for the head-start, bounded-slope and bounded-wiggling
//! conditions.

use crate::error::{Error, Result};
use crate::models::{BlogModel, TractId};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Membership slack used when tracking orbits along tract closures.
const MEMBER_SLACK: f64 = 1e-6;

/// Eventually periodic sequence of tract ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExternalAddress {
    preperiod: Vec<TractId>,
    period: Vec<TractId>,
}

impl ExternalAddress {
    pub fn new(preperiod: Vec<TractId>, period: Vec<TractId>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::InvalidParameter(
                "address period must be nonempty".into(),
            ));
        }
        Ok(ExternalAddress { preperiod, period })
    }

    /// The constant address `id id id …`.
    pub fn constant(id: TractId) -> Self {
        ExternalAddress {
            preperiod: Vec::new(),
            period: vec![id],
        }
    }

    pub fn tract_at(&self, k: usize) -> &TractId {
        if k < self.preperiod.len() {
            &self.preperiod[k]
        } else {
            &self.period[(k - self.preperiod.len()) % self.period.len()]
        }
    }

    /// One-sided shift σ: drop the first entry.
    pub fn shifted(&self) -> Self {
        if self.preperiod.is_empty() {
            let mut period = self.period.clone();
            period.rotate_left(1);
            ExternalAddress {
                preperiod: Vec::new(),
                period,
            }
        } else {
            ExternalAddress {
                preperiod: self.preperiod[1..].to_vec(),
                period: self.period.clone(),
            }
        }
    }

    /// Parse `"pre0,pre1|p0,p1"` or `"p0,p1"` (purely periodic); entries are
    /// tract ids in the format of [`crate::models::parse_tract_id`].
    pub fn parse(s: &str) -> Result<Self> {
        let (pre, per) = match s.split_once('|') {
            Some((a, b)) => (a, b),
            None => ("", s),
        };
        let parse_list = |part: &str| -> Result<Vec<TractId>> {
            part.split(',')
                .map(str::trim)
                .filter(|p| !p.is_empty())
                .map(crate::models::parse_tract_id)
                .collect()
        };
        ExternalAddress::new(parse_list(pre)?, parse_list(per)?)
    }
}

impl std::fmt::Display for ExternalAddress {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let list = |ids: &[TractId]| {
            ids.iter()
                .map(|t| t.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        if self.preperiod.is_empty() {
            write!(f, "{}", list(&self.period))
        } else {
            write!(f, "{}|{}", list(&self.preperiod), list(&self.period))
        }
    }
}

/// Linear head-start profile φ(t) = K·t⁺ + M.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct HeadStartParams {
    pub k: f64,
    pub m: f64,
}

impl HeadStartParams {
    pub fn new(k: f64, m: f64) -> Result<Self> {
        if !(k > 1.0) || !(m > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "head-start constants need K > 1 (got {k}) and M > 0 (got {m})"
            )));
        }
        Ok(HeadStartParams { k, m })
    }

    pub fn phi(&self, t: f64) -> f64 {
        self.k * t.max(0.0) + self.m
    }
}

/// Bounded-slope constants: |Im z − Im w| ≤ α·max(Re z, Re w, 0) + β.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct SlopeParams {
    pub alpha: f64,
    pub beta: f64,
}

impl SlopeParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > 0.0) || !(beta > 0.0) {
            return Err(Error::InvalidParameter(
                "slope constants must be positive".into(),
            ));
        }
        Ok(SlopeParams { alpha, beta })
    }
}

/// Finite list of ray points with a rigorous geometric error bound:
/// refining the depth by any amount moves each point by less than
/// `error_bound = seed_diameter · 2^(−depth)`.
#[derive(Clone, Debug)]
pub struct RayApproximation {
    pub address: ExternalAddress,
    /// (potential, point), strictly increasing in potential.
    pub points: Vec<(f64, Complex64)>,
    pub depth: usize,
    pub seed_diameter: f64,
    pub error_bound: f64,
}

impl RayApproximation {
    /// CSV rows `potential,re,im,depth,error_bound` with header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("potential,re,im,depth,error_bound\n");
        for (t, z) in &self.points {
            out.push_str(&format!(
                "{t},{},{},{},{}\n",
                z.re, z.im, self.depth, self.error_bound
            ));
        }
        out
    }
}

/// Parse the point list of a ray CSV (inverse of [`RayApproximation::to_csv`]).
pub fn parse_ray_csv(text: &str) -> Result<Vec<(f64, Complex64)>> {
    let mut pts = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if i == 0 || line.trim().is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() < 3 {
            return Err(Error::InvalidParameter(format!(
                "bad ray CSV line: {line:?}"
            )));
        }
        let t: f64 = cols[0]
            .trim()
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("bad potential in ray CSV: {line:?}")))?;
        let re: f64 = cols[1]
            .trim()
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("bad re in ray CSV: {line:?}")))?;
        let im: f64 = cols[2]
            .trim()
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("bad im in ray CSV: {line:?}")))?;
        pts.push((t, Complex64::new(re, im)));
    }
    Ok(pts)
}

/// Trace the ray tail with the given address by iterated pullback.
///
/// For each potential t, the seed `seed_re + t` is placed on the reference
/// line of the depth-N tract and pulled back through the inverse branches of
/// the first N address entries. Since every inverse branch contracts by at
/// least 1/2 on H, the depth-N result is within
/// `seed_diameter·2^(−N)` of every deeper refinement.
pub fn trace_ray(
    model: &BlogModel,
    address: &ExternalAddress,
    depth: usize,
    seed_re: f64,
    potentials: &[f64],
) -> Result<RayApproximation> {
    if !model.is_normalized() {
        return Err(Error::InvalidParameter(
            "trace_ray requires a normalized model".into(),
        ));
    }
    if depth == 0 {
        return Err(Error::InvalidParameter("depth must be ≥ 1".into()));
    }
    if potentials.is_empty() {
        return Err(Error::InvalidParameter(
            "potentials must be nonempty".into(),
        ));
    }
    for pair in potentials.windows(2) {
        if !(pair[0] < pair[1]) {
            return Err(Error::InvalidParameter(
                "potentials must be strictly increasing".into(),
            ));
        }
    }
    if potentials[0] < 0.0 {
        return Err(Error::InvalidParameter("potentials must be ≥ 0".into()));
    }
    if !(seed_re > model.half_plane_offset() + 1.0) {
        return Err(Error::InvalidParameter(format!(
            "seed_re = {seed_re} too small for the model's half-plane"
        )));
    }

    let seed_tract = address.tract_at(depth);
    let mut points = Vec::with_capacity(potentials.len());
    for &t in potentials {
        let mut z = model.seed_point(seed_tract, seed_re + t)?;
        for k in (0..depth).rev() {
            let tract = address.tract_at(k);
            z = model.inverse(tract, z).map_err(|e| Error::RayPullback {
                depth: k,
                reason: e.to_string(),
            })?;
            if !model.contains(tract, z, MEMBER_SLACK) {
                return Err(Error::RayPullback {
                    depth: k,
                    reason: format!("pullback {z} left tract {tract}: address not realized"),
                });
            }
        }
        points.push((t, z));
    }
    let seed_diameter = seed_re + potentials.last().unwrap() + PI;
    let error_bound = seed_diameter * 0.5f64.powi(depth as i32);
    Ok(RayApproximation {
        address: address.clone(),
        points,
        depth,
        seed_diameter,
        error_bound,
    })
}

/// Outcome of a speed comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpeedOrdering {
    /// z is eventually ahead: Re F^∘k(z) > φ(Re F^∘k(w)) at some k.
    Greater,
    Less,
    Undecided,
}

#[derive(Clone, Copy, Debug)]
enum OrbitState {
    At(Complex64),
    /// Real part ran beyond f64 range towards +∞; stays there.
    Escaped,
}

/// Compare escape speeds of two points following the same address.
///
/// Returns `Greater` at the first k ≤ maxiter with
/// Re F^∘k(z) > φ(Re F^∘k(w)), `Less` symmetrically, `Undecided` when the
/// horizon is exhausted (or both orbits overflow f64 undecided). Leaving the
/// tract sequence is an error: the comparison is undefined off the address.
pub fn speed_compare(
    model: &BlogModel,
    z: Complex64,
    w: Complex64,
    address: &ExternalAddress,
    phi: &HeadStartParams,
    maxiter: usize,
) -> Result<SpeedOrdering> {
    let mut a = OrbitState::At(z);
    let mut b = OrbitState::At(w);
    for k in 0..=maxiter {
        let ra = orbit_re(&a);
        let rb = orbit_re(&b);
        match (ra.is_infinite(), rb.is_infinite()) {
            (true, true) => return Ok(SpeedOrdering::Undecided),
            _ => {
                if ra > phi.phi(rb) {
                    return Ok(SpeedOrdering::Greater);
                }
                if rb > phi.phi(ra) {
                    return Ok(SpeedOrdering::Less);
                }
            }
        }
        if k == maxiter {
            break;
        }
        let tract = address.tract_at(k);
        a = advance(model, tract, a, k)?;
        b = advance(model, tract, b, k)?;
    }
    Ok(SpeedOrdering::Undecided)
}

fn orbit_re(s: &OrbitState) -> f64 {
    match s {
        OrbitState::At(z) => z.re,
        OrbitState::Escaped => f64::INFINITY,
    }
}

fn advance(model: &BlogModel, tract: &TractId, s: OrbitState, step: usize) -> Result<OrbitState> {
    match s {
        OrbitState::Escaped => Ok(OrbitState::Escaped),
        OrbitState::At(z) => {
            if !model.contains(tract, z, MEMBER_SLACK) {
                return Err(Error::LeftAddress { step });
            }
            match model.eval(tract, z) {
                Ok(v) => Ok(OrbitState::At(v)),
                Err(Error::NonFinite(_)) => {
                    let re = model.re_eval_extended(tract, z);
                    if re == f64::INFINITY {
                        Ok(OrbitState::Escaped)
                    } else {
                        Err(Error::LeftAddress { step })
                    }
                }
                Err(e) => Err(e),
            }
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PairViolation {
    pub z: [f64; 2],
    pub w: [f64; 2],
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HeadstartReport {
    pub k: f64,
    pub m: f64,
    pub n_samples: usize,
    pub admissible: usize,
    pub vacuous: bool,
    pub violations: Vec<PairViolation>,
}

/// Sample pairs (z, w) in cl T with F(z), F(w) ∈ cl T′ and Re w > φ(Re z),
/// recording every pair that violates Re F(w) > φ(Re F(z)).
///
/// Closed-form strip families sample the domain side directly (solving the
/// cross-section so the image lands in T′), which reaches real parts far
/// beyond what image-side sampling can; real parts are capped near 500 so
/// that the image stays representable in f64. Other models sample image
/// points in T′ and pull them back through the inverse branch of T.
pub fn headstart_verify_pair(
    model: &BlogModel,
    tract: &TractId,
    tract_image: &TractId,
    phi: &HeadStartParams,
    n_samples: usize,
    seed: u64,
) -> Result<HeadstartReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut admissible = 0usize;
    let mut violations = Vec::new();
    for _ in 0..n_samples {
        let Some(((z, fz), (w, fw))) = draw_pair(model, tract, tract_image, &mut rng)? else {
            continue;
        };
        // Order so that w is the domain leader.
        let ((z, fz), (w, fw)) = if w.re > phi.phi(z.re) {
            ((z, fz), (w, fw))
        } else if z.re > phi.phi(w.re) {
            ((w, fw), (z, fz))
        } else {
            continue;
        };
        admissible += 1;
        let lhs = fw.re;
        let rhs = phi.phi(fz.re);
        if !(lhs > rhs) {
            violations.push(PairViolation {
                z: [z.re, z.im],
                w: [w.re, w.im],
                lhs,
                rhs,
            });
        }
    }
    Ok(HeadstartReport {
        k: phi.k,
        m: phi.m,
        n_samples,
        admissible,
        vacuous: admissible == 0,
        violations,
    })
}

type SampledPair = ((Complex64, Complex64), (Complex64, Complex64));

fn draw_pair<R: Rng>(
    model: &BlogModel,
    tract: &TractId,
    tract_image: &TractId,
    rng: &mut R,
) -> Result<Option<SampledPair>> {
    let one = |rng: &mut R| -> Result<Option<(Complex64, Complex64)>> {
        match model {
            BlogModel::Exp(m) => {
                // Domain-side: Re log-uniform, cross-section solved so the
                // image lands in the target strip.
                let (Ok(center_t), Ok(center_i)) =
                    (strip_center_of(tract), strip_center_of(tract_image))
                else {
                    return Err(Error::InvalidParameter("exp tracts are family 0".into()));
                };
                let lo = (m.cutoff().ln() + 0.15).max(0.05);
                let x = rng.gen_range(lo.ln()..500.0f64.ln()).exp();
                let y_img = center_i + rng.gen_range(-0.98 * PI / 2.0..0.98 * PI / 2.0);
                let s = (y_img - m.kappa().im) * (-x).exp();
                if s.abs() > 0.9 {
                    return Ok(None);
                }
                let w = Complex64::new(x, center_t + s.asin());
                if !model.contains(tract, w, 0.0) {
                    return Ok(None);
                }
                let fw = Complex64::new(x.exp() * (w.im - center_t).cos() + m.kappa().re, y_img);
                if !model.contains(tract_image, fw, 0.0) {
                    return Ok(None);
                }
                Ok(Some((w, fw)))
            }
            _ => {
                // Image-side: sample the image tract, pull back through T.
                let zeta = model.sample_point(tract_image, rng, 0.05, 1e4)?;
                if zeta.re <= model.half_plane_offset() {
                    return Ok(None);
                }
                let Ok(w) = model.inverse(tract, zeta) else {
                    return Ok(None);
                };
                if !model.contains(tract, w, MEMBER_SLACK) {
                    return Ok(None);
                }
                Ok(Some((w, zeta)))
            }
        }
    };
    let a = one(rng)?;
    let b = one(rng)?;
    Ok(match (a, b) {
        (Some(a), Some(b)) => Some((a, b)),
        _ => None,
    })
}

fn strip_center_of(tract: &TractId) -> Result<f64> {
    match tract {
        TractId::Base {
            family: 0,
            translate,
        } => Ok(crate::models::TWO_PI * *translate as f64),
        _ => Err(Error::InvalidParameter(format!(
            "not a strip tract: {tract}"
        ))),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SlopeReport {
    pub n_samples: usize,
    pub alpha_cap: f64,
    pub beta_cap: f64,
    /// Smallest grid α whose fitted β stays under the cap, with that β.
    pub fitted: Option<SlopeParams>,
    /// Fitted β at the α cap (diagnostic for the suspicion flag).
    pub beta_at_alpha_cap: f64,
    pub unbounded_slope_suspicion: bool,
    /// Violations of the user-supplied constants, when given.
    pub violations: Vec<PairViolation>,
}

/// Fit bounded-slope constants on sampled point pairs of the tract.
///
/// α runs over the grid {0.05·j}; for each α the minimal β is
/// max(|Im z − Im w| − α·max(Re z, Re w, 0)) over the sample. The fitted pair
/// takes the smallest α with β ≤ beta_cap; if even α = alpha_cap needs a
/// larger β, the tract is flagged as suspected unbounded slope.
pub fn check_bounded_slope(
    model: &BlogModel,
    tract: &TractId,
    n_samples: usize,
    seed: u64,
    alpha_cap: f64,
    beta_cap: f64,
    user: Option<SlopeParams>,
) -> Result<SlopeReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = Vec::with_capacity(n_samples);
    let mut violations = Vec::new();
    for _ in 0..n_samples {
        let z = model.sample_point(tract, &mut rng, 0.05, 1e4)?;
        let w = model.sample_point(tract, &mut rng, 0.05, 1e4)?;
        let dim = (z.im - w.im).abs();
        let mre = z.re.max(w.re).max(0.0);
        pairs.push((dim, mre));
        if let Some(sp) = user {
            let rhs = sp.alpha * mre + sp.beta;
            if dim > rhs {
                violations.push(PairViolation {
                    z: [z.re, z.im],
                    w: [w.re, w.im],
                    lhs: dim,
                    rhs,
                });
            }
        }
    }
    let beta_for = |alpha: f64| -> f64 {
        pairs
            .iter()
            .map(|(dim, mre)| dim - alpha * mre)
            .fold(0.0f64, f64::max)
    };
    let mut fitted = None;
    let steps = (alpha_cap / 0.05).round() as usize;
    for j in 0..=steps {
        let alpha = j as f64 * 0.05;
        let beta = beta_for(alpha);
        if beta <= beta_cap {
            fitted = Some(SlopeParams {
                alpha,
                beta: beta.max(1e-12),
            });
            break;
        }
    }
    let beta_at_alpha_cap = beta_for(alpha_cap);
    Ok(SlopeReport {
        n_samples,
        alpha_cap,
        beta_cap,
        fitted,
        beta_at_alpha_cap,
        unbounded_slope_suspicion: fitted.is_none(),
        violations,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WigglingViolation {
    pub z0: [f64; 2],
    pub t: f64,
    pub point: [f64; 2],
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WigglingReport {
    pub k: f64,
    pub mu: f64,
    pub n_geodesics: usize,
    pub n_points: usize,
    pub violations: Vec<WigglingViolation>,
}

/// Check bounded wiggling along sampled geodesics to ∞: for base points z₀,
/// the geodesic γ(t) = F⁻¹(F(z₀) + t) must satisfy
/// (Re γ(t))⁺ > Re z₀ / K − μ at every sampled t.
pub fn check_wiggling(
    model: &BlogModel,
    tract: &TractId,
    k: f64,
    mu: f64,
    n_geodesics: usize,
    n_points: usize,
    seed: u64,
) -> Result<WigglingReport> {
    if !model.is_normalized() {
        return Err(Error::InvalidParameter(
            "check_wiggling requires a normalized model".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = Vec::new();
    let mut done = 0usize;
    let mut attempts = 0usize;
    while done < n_geodesics && attempts < 20 * n_geodesics {
        attempts += 1;
        let z0 = model.sample_point(tract, &mut rng, 0.05, 500.0)?;
        let f0 = match model.eval(tract, z0) {
            Ok(v) => v,
            Err(_) => continue,
        };
        done += 1;
        let rhs = z0.re / k - mu;
        for j in 0..n_points {
            let t = if j == 0 {
                0.0
            } else {
                10f64.powf(-2.0 + 20.0 * (j as f64 - 1.0) / (n_points.max(2) as f64 - 1.0))
            };
            let g = model.inverse(tract, f0 + t)?;
            let lhs = g.re.max(0.0);
            if !(lhs > rhs) {
                violations.push(WigglingViolation {
                    z0: [z0.re, z0.im],
                    t,
                    point: [g.re, g.im],
                    lhs,
                    rhs,
                });
            }
        }
    }
    Ok(WigglingReport {
        k,
        mu,
        n_geodesics: done,
        n_points,
        violations,
    })
}

/// Wiggling constants for a model of finite order with
/// log Re F(z) ≤ ρ·Re z + M: K = 1 + 2πρ and μ = 2πM/(1 + 2πρ).
pub fn finite_order_constants(rho: f64, m: f64) -> Result<(f64, f64)> {
    if !(rho > 0.0) || !(m >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "finite-order constants need ρ > 0 (got {rho}) and M ≥ 0 (got {m})"
        )));
    }
    let k = 1.0 + 2.0 * PI * rho;
    Ok((k, 2.0 * PI * m / k))
}

/// Fit finite-order growth constants (ρ, M) with
/// log Re F(z) ≤ ρ·Re z + M on sampled tract points.
pub fn fit_growth_constants(
    model: &BlogModel,
    tract: &TractId,
    n_samples: usize,
    seed: u64,
) -> Result<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut slope: f64 = 0.0;
    let mut samples = Vec::new();
    for _ in 0..n_samples {
        let z = model.sample_point(tract, &mut rng, 0.05, 500.0)?;
        let Ok(f) = model.eval(tract, z) else {
            continue;
        };
        if f.re <= 0.0 {
            continue;
        }
        samples.push((z.re, f.re.ln()));
        if z.re >= 5.0 {
            slope = slope.max(f.re.ln() / z.re);
        }
    }
    if samples.is_empty() {
        return Err(Error::Other("no growth samples".into()));
    }
    let rho = slope * 1.02 + 1e-6;
    let m = samples
        .iter()
        .map(|(re, lf)| lf - rho * re)
        .fold(0.0f64, f64::max)
        + 0.5;
    Ok((rho, m))
}

/// δ(α, β) = max(α+β+2, 16π·ln(α+β+2)) from the linear-separation estimate.
pub fn delta_constants(alpha: f64, beta: f64) -> Result<f64> {
    let d = alpha + beta + 2.0;
    if !(d > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "α+β+2 = {d} must be positive"
        )));
    }
    Ok(d.max(16.0 * PI * d.ln()))
}

/// δ(α, β, K, Q): enlarge δ(α, β) until every x ≥ δ − 1/2 satisfies
/// e^(x/16π) > x + K + Q + 1/2. The threshold is found by monotone search
/// above the inflection point 16π·ln(16π), then tightened by bisection.
pub fn delta_constants_growth(alpha: f64, beta: f64, k: f64, q: f64) -> Result<f64> {
    if !(k >= 1.0) || !(q >= 0.0) {
        return Err(Error::InvalidParameter("need K ≥ 1 and Q ≥ 0".into()));
    }
    let base = delta_constants(alpha, beta)? + 0.5;
    let sixteen_pi = 16.0 * PI;
    // e^(x/16π) − x is increasing for x ≥ x*, so checking the left endpoint
    // suffices once δ − 1/2 ≥ x*.
    let x_star = sixteen_pi * sixteen_pi.ln();
    let ok = |delta: f64| -> bool {
        let x = delta - 0.5;
        x >= x_star && (x / sixteen_pi).exp() > x + k + q + 0.5
    };
    let mut lo = base.max(x_star + 0.5);
    if ok(lo) {
        return Ok(lo);
    }
    let mut hi = lo;
    while !ok(hi) {
        hi *= 1.5;
        if hi > 1e9 {
            return Err(Error::Other("δ search diverged".into()));
        }
    }
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if ok(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{normalize, BlogModel, ExpModel};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn exp_model() -> BlogModel {
        normalize(
            &BlogModel::Exp(ExpModel::new(c(1.0, 0.0), 3.0).unwrap()),
            500,
            1,
        )
        .unwrap()
    }

    fn zero_address() -> ExternalAddress {
        ExternalAddress::constant(TractId::translate(0))
    }

    #[test]
    fn address_parsing_and_shift() {
        let a = ExternalAddress::parse("0,1|2").unwrap();
        assert_eq!(*a.tract_at(0), TractId::translate(0));
        assert_eq!(*a.tract_at(1), TractId::translate(1));
        assert_eq!(*a.tract_at(2), TractId::translate(2));
        assert_eq!(*a.tract_at(7), TractId::translate(2));
        let s = a.shifted();
        assert_eq!(*s.tract_at(0), TractId::translate(1));
        assert_eq!(*s.tract_at(1), TractId::translate(2));
        assert_eq!(a.to_string(), "0,1|2");
        assert!(ExternalAddress::parse("|").is_err());
    }

    #[test]
    fn trace_ray_shift_consistency() {
        // F applied to the depth-(N+1) trace of the shifted address agrees
        // with the depth-N trace to within the recorded bound.
        let m = exp_model();
        let addr = zero_address();
        let pots = [0.0, 1.0, 2.0];
        for depth in [5usize, 9, 14] {
            let deep = trace_ray(&m, &addr, depth + 1, 50.0, &pots).unwrap();
            let shallow = trace_ray(&m, &addr, depth, 50.0, &pots).unwrap();
            for ((_, zd), (_, zs)) in deep.points.iter().zip(&shallow.points) {
                let pushed = m.eval(&TractId::translate(0), *zd).unwrap();
                assert!(
                    (pushed - zs).norm() <= shallow.error_bound,
                    "depth {depth}: |F(deep) − shallow| = {} > bound {}",
                    (pushed - zs).norm(),
                    shallow.error_bound
                );
            }
        }
    }

    #[test]
    fn trace_ray_shift_equivariance_mixed_address() {
        // F applied to the depth-(N+1) trace equals the depth-N trace of the
        // shifted address exactly (same pullback chain minus its first map).
        let m = exp_model();
        let addr = ExternalAddress::parse("0,1|2,-1").unwrap();
        let pots = [0.0, 1.5];
        let deep = trace_ray(&m, &addr, 9, 50.0, &pots).unwrap();
        let shifted = trace_ray(&m, &addr.shifted(), 8, 50.0, &pots).unwrap();
        for ((_, zd), (_, zs)) in deep.points.iter().zip(&shifted.points) {
            let pushed = m.eval(addr.tract_at(0), *zd).unwrap();
            assert!(
                (pushed - zs).norm() <= shifted.error_bound.min(1e-9),
                "|F(deep) − shifted| = {}",
                (pushed - zs).norm()
            );
        }
    }

    #[test]
    fn trace_ray_self_refinement() {
        let m = exp_model();
        let addr = zero_address();
        for depth in [5usize, 10, 15, 20, 25] {
            let a = trace_ray(&m, &addr, depth, 50.0, &[0.0]).unwrap();
            let b = trace_ray(&m, &addr, depth + 10, 50.0, &[0.0]).unwrap();
            let d = (a.points[0].1 - b.points[0].1).norm();
            assert!(d <= a.error_bound, "depth {depth}: {d} > {}", a.error_bound);
        }
    }

    #[test]
    fn trace_ray_basics() {
        let m = exp_model();
        let addr = zero_address();
        let ray = trace_ray(&m, &addr, 8, 50.0, &[0.0, 5.0]).unwrap();
        // Distinct potentials give distinct points.
        assert!((ray.points[0].1 - ray.points[1].1).norm() > 0.0);
        // Applying F lands in the shifted tract's closure.
        let pushed = m.eval(&TractId::translate(0), ray.points[0].1).unwrap();
        assert!(m.contains(&TractId::translate(0), pushed, 1e-6));
    }

    #[test]
    fn speed_compare_examples() {
        let m = exp_model();
        let addr = zero_address();
        let phi = HeadStartParams::new(2.0, 3.0).unwrap();
        // z = w is never decided.
        let z = c(5.0, 0.0);
        assert_eq!(
            speed_compare(&m, z, z, &addr, &phi, 10).unwrap(),
            SpeedOrdering::Undecided
        );
        // w = z + 4 gets ahead within 3 iterations.
        let w = c(9.0, 0.0);
        assert_eq!(
            speed_compare(&m, z, w, &addr, &phi, 3).unwrap(),
            SpeedOrdering::Less
        );
    }

    #[test]
    fn speed_compare_antisymmetry() {
        use rand::Rng;
        let m = exp_model();
        let addr = zero_address();
        let phi = HeadStartParams::new(2.0, 3.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let mut decided = 0;
        for _ in 0..1000 {
            let z = c(rng.gen_range(1.6..6.0), 0.0);
            let w = c(rng.gen_range(1.6..6.0), 0.0);
            let ab = speed_compare(&m, z, w, &addr, &phi, 8).unwrap();
            let ba = speed_compare(&m, w, z, &addr, &phi, 8).unwrap();
            match (ab, ba) {
                (SpeedOrdering::Greater, SpeedOrdering::Greater)
                | (SpeedOrdering::Less, SpeedOrdering::Less) => {
                    panic!("both directions claim the same winner for {z}, {w}")
                }
                (SpeedOrdering::Greater, _) | (_, SpeedOrdering::Greater) => decided += 1,
                _ => {}
            }
        }
        assert!(decided > 100, "too few decided pairs: {decided}");
    }

    #[test]
    fn speed_compare_transitivity() {
        use rand::Rng;
        let m = exp_model();
        let addr = zero_address();
        let phi = HeadStartParams::new(2.0, 3.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let mut checked = 0;
        for _ in 0..1000 {
            let mut v = [
                c(rng.gen_range(1.6..6.0), 0.0),
                c(rng.gen_range(1.6..6.0), 0.0),
                c(rng.gen_range(1.6..6.0), 0.0),
            ];
            v.sort_by(|a, b| b.re.partial_cmp(&a.re).unwrap());
            let ab = speed_compare(&m, v[0], v[1], &addr, &phi, 8).unwrap();
            let bc = speed_compare(&m, v[1], v[2], &addr, &phi, 8).unwrap();
            let ac = speed_compare(&m, v[0], v[2], &addr, &phi, 8).unwrap();
            if ab == SpeedOrdering::Greater && bc == SpeedOrdering::Greater {
                assert_eq!(ac, SpeedOrdering::Greater, "transitivity fails");
                checked += 1;
            }
        }
        assert!(checked > 50, "too few triples: {checked}");
    }

    #[test]
    fn growth_of_real_parts() {
        use rand::Rng;
        // Decided pairs exceed any threshold S quickly.
        let m = exp_model();
        let addr = zero_address();
        let phi = HeadStartParams::new(2.0, 3.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for _ in 0..50 {
            let z = c(rng.gen_range(1.6..4.0), 0.0);
            let w = c(z.re + rng.gen_range(2.0..4.0), 0.0);
            if speed_compare(&m, z, w, &addr, &phi, 8).unwrap() == SpeedOrdering::Undecided {
                continue;
            }
            let mut a = z;
            let mut b = w;
            let mut reached = false;
            for _ in 0..60 {
                if a.re.max(b.re) > 50.0 {
                    reached = true;
                    break;
                }
                a = m.eval(&TractId::translate(0), a).unwrap_or(c(1e9, 0.0));
                b = m.eval(&TractId::translate(0), b).unwrap_or(c(1e9, 0.0));
            }
            assert!(reached);
        }
    }

    #[test]
    fn leaving_the_address_errors() {
        let m = exp_model();
        let addr = ExternalAddress::constant(TractId::translate(3));
        let phi = HeadStartParams::new(2.0, 3.0).unwrap();
        // Real points are in tract 0, not tract 3.
        let r = speed_compare(&m, c(5.0, 0.0), c(7.0, 0.0), &addr, &phi, 5);
        assert!(matches!(r, Err(Error::LeftAddress { .. })));
    }

    #[test]
    fn headstart_zero_violations_for_exp() {
        let m = exp_model();
        let t = TractId::translate(0);
        let slope = check_bounded_slope(&m, &t, 3000, 5, 10.0, 2.0 * PI + 1.0, None).unwrap();
        let sp = slope.fitted.expect("slope fit");
        let delta = delta_constants_growth(sp.alpha.max(0.05), sp.beta, 2.0, 0.0).unwrap();
        let phi = HeadStartParams::new(2.0, delta).unwrap();
        let rep = headstart_verify_pair(&m, &t, &t, &phi, 10_000, 6).unwrap();
        assert!(!rep.vacuous, "sampling produced no admissible pairs");
        assert!(
            rep.violations.is_empty(),
            "violations: {:?}",
            rep.violations.len()
        );
    }

    #[test]
    fn headstart_violations_found_across_a_fold() {
        // A desk-scale wiggle: points just past the turn lead in real parts
        // while their images fall behind.
        let tube = crate::wiggle::corridor_geometry(&[2.2, 5.0, 14.0], 0.5).unwrap();
        let m = BlogModel::Tube(crate::models::TubeModel::new(tube).unwrap());
        let t = TractId::translate(0);
        let phi = HeadStartParams::new(1.0001, 0.01).unwrap();
        let rep = headstart_verify_pair(&m, &t, &t, &phi, 20_000, 5).unwrap();
        assert!(!rep.vacuous);
        assert!(
            rep.violations.len() > 10,
            "expected fold violations, found {}",
            rep.violations.len()
        );
    }

    #[test]
    fn wiggling_violations_found_on_folded_tube() {
        let tube = crate::wiggle::corridor_geometry(&[2.2, 5.0, 14.0], 0.5).unwrap();
        let m = BlogModel::Tube(crate::models::TubeModel::new(tube).unwrap());
        let t = TractId::translate(0);
        let rep = check_wiggling(&m, &t, 1.01, 0.01, 200, 40, 6).unwrap();
        assert!(
            rep.violations.len() > 10,
            "expected geodesic dips, found {}",
            rep.violations.len()
        );
        // t = 0 never violates when Re z₀ ≥ 0: (Re z₀)⁺ > Re z₀/K − μ.
        assert!(rep.violations.iter().all(|v| v.t > 0.0));
    }

    #[test]
    fn unbounded_slope_suspicion_on_vertical_meander() {
        let pts: Vec<Complex64> = (0..40)
            .map(|j| c(if j % 2 == 0 { 1.5 } else { 4.0 }, 1.5 * j as f64))
            .collect();
        let tube = crate::tube::TubeDomain::new(pts, 0.45).unwrap();
        let m = BlogModel::Tube(crate::models::TubeModel::new(tube).unwrap());
        let t = TractId::translate(0);
        let rep = check_bounded_slope(&m, &t, 4000, 7, 10.0, 2.0 * PI + 1.0, None).unwrap();
        assert!(rep.unbounded_slope_suspicion);
        assert!(rep.fitted.is_none());
    }

    #[test]
    fn headstart_vacuous_pass_flagged() {
        let m = exp_model();
        let t = TractId::translate(0);
        // Absurd M admits no pairs below the sampling cap.
        let phi = HeadStartParams::new(2.0, 1e9).unwrap();
        let rep = headstart_verify_pair(&m, &t, &t, &phi, 500, 7).unwrap();
        assert!(rep.vacuous);
        assert!(rep.violations.is_empty());
    }

    #[test]
    fn delta_constant_values() {
        // δ(1, 2) = max(5, 16π·ln 5) = 80.8991731537898… (50-digit value).
        let d = delta_constants(1.0, 2.0).unwrap();
        assert!((d - 80.899_173_153_789_8).abs() < 1e-10);
        // Degenerate edge: α+β+2 = 1 gives max(1, 0) = 1.
        let d = delta_constants(-0.5, -0.5).unwrap();
        assert_eq!(d, 1.0);
        // (b)-variant self-check.
        let d = delta_constants_growth(1.0, 2.0, 2.0, 0.0).unwrap();
        let x = d - 0.5;
        assert!((x / (16.0 * PI)).exp() > x + 2.0 + 0.0 + 0.5);
    }

    #[test]
    fn finite_order_constant_values() {
        let (k, mu) = finite_order_constants(1.0, 0.0).unwrap();
        assert!((k - 7.283185307179586).abs() < 1e-12);
        assert_eq!(mu, 0.0);
        let (_, mu) = finite_order_constants(1.0, 1.0).unwrap();
        assert!((mu - 0.862_697_438_301_587).abs() < 1e-12);
        // ρ → 0 gives K → 1.
        let (k, _) = finite_order_constants(1e-12, 0.0).unwrap();
        assert!((k - 1.0) < 1e-10);
    }

    #[test]
    fn wiggling_exp_no_violations() {
        let m = exp_model();
        let t = TractId::translate(0);
        let (rho, big_m) = fit_growth_constants(&m, &t, 2000, 8).unwrap();
        let (k, mu) = finite_order_constants(rho, big_m).unwrap();
        let rep = check_wiggling(&m, &t, k, mu, 200, 24, 9).unwrap();
        assert!(
            rep.violations.is_empty(),
            "{} violations",
            rep.violations.len()
        );
    }

    #[test]
    fn slope_fit_for_exp_tract() {
        let m = exp_model();
        let t = TractId::translate(0);
        let rep = check_bounded_slope(&m, &t, 5000, 10, 10.0, 2.0 * PI + 1.0, None).unwrap();
        let sp = rep.fitted.expect("fit");
        assert!(sp.alpha <= 0.5, "α = {}", sp.alpha);
        assert!(sp.beta <= 2.0 * PI + 1.0, "β = {}", sp.beta);
        // z = w pairs never violate.
        let user = SlopeParams {
            alpha: 0.5,
            beta: 7.0,
        };
        let rep = check_bounded_slope(&m, &t, 1000, 11, 10.0, 7.0, Some(user)).unwrap();
        assert!(rep.violations.is_empty());
    }

    #[test]
    fn linear_separation_on_real_pairs() {
        use rand::Rng;
        // Same-address pairs |z−w| ≥ δ keep one of the two displayed
        // inequalities at every step until f64 overflows both orbits.
        let m = exp_model();
        let t = TractId::translate(0);
        let slope = check_bounded_slope(&m, &t, 2000, 12, 10.0, 2.0 * PI + 1.0, None).unwrap();
        let sp = slope.fitted.unwrap();
        let delta = delta_constants_growth(sp.alpha.max(0.05), sp.beta, 1.0, 0.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        for _ in 0..1000 {
            let z = c(rng.gen_range(1.6..5.0), 0.0);
            let w = c(z.re + rng.gen_range(delta..600.0 - 5.0), 0.0);
            let sep = (z - w).norm();
            let mut a = z;
            let mut b = w;
            for _k in 1..=20 {
                let fa = m.re_eval_extended(&t, a);
                let fb = m.re_eval_extended(&t, b);
                if fa.is_infinite() && fb.is_infinite() {
                    break;
                }
                // K = 1, Q = 0 variant of the displayed inequalities.
                let one = fb > fa + sep;
                let two = fa > fb + sep;
                assert!(one || two, "separation fails for {z}, {w}");
                if fa.is_infinite() || fb.is_infinite() {
                    break;
                }
                a = c(fa, 0.0);
                b = c(fb, 0.0);
            }
        }
    }
}
