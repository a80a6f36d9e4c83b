//! Level-index ("tower") arithmetic for iterated-exponential magnitudes.
//!
//! A [`TowerReal`] with level `n` and mantissa `r` denotes the real number
//! `exp∘…∘exp (n times) of r`. The certification chains in [`crate::wiggle`]
//! produce quantities like `exp(exp(1.8e28))` that overflow any fixed-precision
//! float by the second step; this representation keeps one hardware float per
//! level and compares values lexicographically.
//!
//! [`TowerInterval`] performs outward-rounded interval arithmetic over tower
//! reals: every operation returns an enclosure of the exact image. At level 2
//! and above, additive perturbations are absorbed by widening the mantissa one
//! level down by an ulp-scaled margin, which over-covers any bounded addend.

use crate::error::{Error, Result};
use std::cmp::Ordering;
use std::fmt;

/// A level is lowered when `exp(mantissa)` stays comfortably inside f64 range.
pub const LOWER_THRESHOLD: f64 = 690.7755278982137; // ln(1e300)

/// Above this mantissa, `exp` overflows f64 and the value must keep its level.
const LN_F64_MAX: f64 = 709.782712893384;

/// Rounding direction for outward interval endpoints.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Dir {
    Down,
    Up,
}

impl Dir {
    fn round(self, x: f64) -> f64 {
        match self {
            Dir::Down => x.next_down(),
            Dir::Up => x.next_up(),
        }
    }

    /// Two-ulp guard for library functions (exp/ln/powf) that are not
    /// guaranteed correctly rounded.
    fn round2(self, x: f64) -> f64 {
        self.round(self.round(x))
    }
}

/// `exp^{∘level}(mantissa)` in canonical form.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TowerReal {
    level: u32,
    mantissa: f64,
}

impl TowerReal {
    /// Canonicalize `(level, mantissa)`: lower a level whenever the value fits
    /// a finite float below 1e300.
    pub fn normalize(level: u32, mantissa: f64) -> Result<Self> {
        if !mantissa.is_finite() {
            return Err(Error::NonFinite(format!(
                "tower mantissa {mantissa} at level {level}"
            )));
        }
        let mut level = level;
        let mut mantissa = mantissa;
        while level >= 1 && mantissa < LOWER_THRESHOLD {
            mantissa = mantissa.exp();
            level -= 1;
        }
        Ok(TowerReal { level, mantissa })
    }

    pub fn from_f64(x: f64) -> Result<Self> {
        Self::normalize(0, x)
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn mantissa(&self) -> f64 {
        self.mantissa
    }

    /// The denoted value as f64, or `None` when it overflows.
    pub fn to_f64(&self) -> Option<f64> {
        match self.level {
            0 => Some(self.mantissa),
            1 if self.mantissa <= LN_F64_MAX => Some(self.mantissa.exp()),
            _ => None,
        }
    }

    /// Exact comparison of denoted values.
    ///
    /// Levels are equalized by lifting the lower-level operand through `ln`.
    /// The lift rounds to f64, so values that agree to within an ulp in the
    /// iterated-log metric may compare `Equal` spuriously; the certification
    /// chains only rely on comparisons with far larger margins.
    pub fn compare(&self, other: &TowerReal) -> Ordering {
        let mut a = *self;
        let mut b = *other;
        loop {
            match a.level.cmp(&b.level) {
                Ordering::Equal => {
                    return a
                        .mantissa
                        .partial_cmp(&b.mantissa)
                        .unwrap_or(Ordering::Equal)
                }
                Ordering::Less => match lift(a) {
                    Some(l) => a = l,
                    None => return Ordering::Less, // a ≤ 0 < exp(…)
                },
                Ordering::Greater => match lift(b) {
                    Some(l) => b = l,
                    None => return Ordering::Greater,
                },
            }
        }
    }

    fn round_mantissa(self, dir: Dir) -> Self {
        TowerReal {
            level: self.level,
            mantissa: dir.round(self.mantissa),
        }
    }
}

/// Raise a value one level: `exp^∘L(m) = exp^∘(L+1)(ln m)`. `None` if `m ≤ 0`
/// (possible only at level 0, where the value itself is non-positive).
fn lift(t: TowerReal) -> Option<TowerReal> {
    if t.mantissa <= 0.0 {
        None
    } else {
        Some(TowerReal {
            level: t.level + 1,
            mantissa: t.mantissa.ln(),
        })
    }
}

/// Directed addition of denoted values: result ≈ a + b rounded towards `dir`.
///
/// Soundness at high levels comes from the ulp bump: at level ≥ 1 with
/// mantissa m, one ulp of m changes the value by ≈ value·m·ε which dominates
/// every finite f64 addend once exp(m) ≥ 1e300.
fn add_real(a: TowerReal, b: TowerReal, dir: Dir) -> Result<TowerReal> {
    if a.level == 0 && b.level == 0 {
        let s = a.mantissa + b.mantissa;
        if !s.is_finite() {
            // Overflow of the plain sum: both operands near f64 max; go through
            // the log path: a + b = exp(ln a + log1p(b/a)).
            let (hi, lo) = if a.mantissa >= b.mantissa {
                (a, b)
            } else {
                (b, a)
            };
            if hi.mantissa <= 0.0 {
                return Err(Error::Tower(
                    "overflowing sum of non-positive values".into(),
                ));
            }
            let m = hi.mantissa.ln() + (lo.mantissa / hi.mantissa).ln_1p();
            return TowerReal::normalize(1, dir.round2(m));
        }
        return TowerReal::normalize(0, dir.round(s));
    }

    // Order so that `big` carries the higher level (or larger value).
    let (big, small) = if a.compare(&b) == Ordering::Less {
        (b, a)
    } else {
        (a, b)
    };

    if big.level >= 2
        || (big.level == 1 && small.level == 1 && small.mantissa < big.mantissa - 700.0)
    {
        // Absorb into an ulp-widened mantissa one level down.
        return Ok(bump(big, dir, small_sign(small)));
    }

    if big.level == 1 {
        if small.level == 1 {
            // e^x + e^z = e^(x + log1p(e^(z-x))), z ≤ x.
            let d = small.mantissa - big.mantissa; // ≤ 0
            let m = big.mantissa + d.exp().ln_1p();
            return TowerReal::normalize(1, dir.round2(m));
        }
        // small is level 0: q = small / e^m.
        debug_assert_eq!(small.level, 0);
        if big.mantissa <= LN_F64_MAX {
            let v = big.mantissa.exp();
            let s = v + small.mantissa;
            if s.is_finite() && s > 0.0 {
                return TowerReal::normalize(0, dir.round2(s));
            }
        }
        let q = small.mantissa * (-big.mantissa).exp();
        if q.abs() > 1e-290 && q > -0.5 {
            // log1p path with a relative guard for the subnormal product.
            let adj = q.ln_1p();
            let guarded = big.mantissa + adj + adj.abs() * 1e-10 * sign_of(dir);
            return TowerReal::normalize(1, dir.round2(guarded));
        }
        return Ok(bump(big, dir, small_sign(small)));
    }

    unreachable!("level-0 pair handled above");
}

fn sign_of(dir: Dir) -> f64 {
    match dir {
        Dir::Down => -1.0,
        Dir::Up => 1.0,
    }
}

fn small_sign(small: TowerReal) -> f64 {
    if small.level == 0 && small.mantissa < 0.0 {
        -1.0
    } else {
        1.0
    }
}

/// Widen `t`'s mantissa by one ulp, but only when that is an outward move for
/// the perturbation's sign; otherwise the unmodified value already encloses.
fn bump(t: TowerReal, dir: Dir, perturb_sign: f64) -> TowerReal {
    let outward = sign_of(dir);
    if outward * perturb_sign >= 0.0 {
        t.round_mantissa(dir)
    } else {
        // Perturbation pulls against the rounding direction: keeping the value
        // is already sound (e.g. rounding Up while subtracting a small amount).
        t
    }
}

/// Directed subtraction `a - b` for `a > b`; errors when positivity of the
/// enclosure could not be established.
fn sub_real(a: TowerReal, b: TowerReal, dir: Dir) -> Result<TowerReal> {
    if a.compare(&b) != Ordering::Greater {
        return Err(Error::Tower(
            "subtraction would produce a possibly-negative enclosure".into(),
        ));
    }
    if a.level == 0 && b.level == 0 {
        return TowerReal::normalize(0, dir.round(a.mantissa - b.mantissa));
    }
    if a.level >= 2 {
        return Ok(bump(a, dir, -1.0));
    }
    // a.level == 1
    if b.level == 1 {
        let d = b.mantissa - a.mantissa; // < 0
        if d < -700.0 {
            return Ok(bump(a, dir, -1.0));
        }
        let m = a.mantissa + (-d.exp()).ln_1p();
        return TowerReal::normalize(1, dir.round2(m));
    }
    // b is level 0.
    if a.mantissa <= LN_F64_MAX {
        let v = a.mantissa.exp() - b.mantissa;
        if v.is_finite() && v > 0.0 {
            return TowerReal::normalize(0, dir.round2(v));
        }
    }
    let q = -b.mantissa * (-a.mantissa).exp();
    if q.abs() > 1e-290 && q > -0.5 {
        let adj = q.ln_1p();
        let guarded = a.mantissa + adj + adj.abs() * 1e-10 * sign_of(dir);
        return TowerReal::normalize(1, dir.round2(guarded));
    }
    Ok(bump(a, dir, -1.0))
}

/// exp of a denoted value, rounded towards `dir`. Raising a level is exact.
fn exp_real(t: TowerReal, dir: Dir) -> Result<TowerReal> {
    if t.level == 0 && t.mantissa < LOWER_THRESHOLD {
        return TowerReal::normalize(0, dir.round2(t.mantissa.exp()));
    }
    Ok(TowerReal {
        level: t.level + 1,
        mantissa: t.mantissa,
    })
}

/// ln of a denoted value, rounded towards `dir`.
fn log_real(t: TowerReal, dir: Dir) -> Result<TowerReal> {
    if t.level >= 1 {
        return TowerReal::normalize(t.level - 1, t.mantissa);
    }
    if t.mantissa <= 0.0 {
        return Err(Error::Tower(format!(
            "log of non-positive value {}",
            t.mantissa
        )));
    }
    TowerReal::normalize(0, dir.round2(t.mantissa.ln()))
}

/// c · value for c > 0: multiply at level 0, otherwise add ln c one level down.
fn scale_real(t: TowerReal, c: f64, dir: Dir) -> Result<TowerReal> {
    if c <= 0.0 || !c.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "scale factor {c} must be positive"
        )));
    }
    if t.level == 0 {
        let p = t.mantissa * c;
        if p.is_finite() {
            return TowerReal::normalize(0, dir.round(p));
        }
        if t.mantissa <= 0.0 {
            return Err(Error::Tower(
                "overflowing scale of non-positive value".into(),
            ));
        }
        let m = t.mantissa.ln() + c.ln();
        return TowerReal::normalize(1, dir.round2(m));
    }
    let ln_c = TowerReal::from_f64(dir.round2(c.ln()))?;
    let mantissa_tower = TowerReal {
        level: t.level - 1,
        mantissa: t.mantissa,
    };
    let adjusted = add_real(mantissa_tower, ln_c, dir)?;
    exp_real(adjusted, dir)
}

/// value^p for p > 0 and value > 0: powf at level 0, otherwise scale the
/// mantissa-tower by p.
fn pow_real(t: TowerReal, p: f64, dir: Dir) -> Result<TowerReal> {
    if p <= 0.0 || !p.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "exponent {p} must be positive"
        )));
    }
    if t.level == 0 {
        if t.mantissa < 0.0 {
            return Err(Error::Tower("power of negative base".into()));
        }
        let v = t.mantissa.powf(p);
        if v.is_finite() {
            return TowerReal::normalize(0, dir.round2(v));
        }
        let m = t.mantissa.ln() * p;
        return TowerReal::normalize(1, dir.round2(m));
    }
    let mantissa_tower = TowerReal {
        level: t.level - 1,
        mantissa: t.mantissa,
    };
    let scaled = scale_real(mantissa_tower, p, dir)?;
    exp_real(scaled, dir)
}

impl fmt::Display for TowerReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.level {
            0 => write!(f, "{}", self.mantissa),
            n => write!(f, "E^{}({})", n, self.mantissa),
        }
    }
}

/// Outward-rounded interval of tower reals.
#[derive(Clone, Copy, Debug)]
pub struct TowerInterval {
    lo: TowerReal,
    hi: TowerReal,
}

impl TowerInterval {
    pub fn new(lo: TowerReal, hi: TowerReal) -> Result<Self> {
        if lo.compare(&hi) == Ordering::Greater {
            return Err(Error::Tower(format!(
                "interval endpoints out of order: {lo} > {hi}"
            )));
        }
        Ok(TowerInterval { lo, hi })
    }

    pub fn point(x: f64) -> Result<Self> {
        let t = TowerReal::from_f64(x)?;
        Ok(TowerInterval { lo: t, hi: t })
    }

    /// Point interval widened by one ulp on each side (used when `x` itself is
    /// already a rounded quantity).
    pub fn around(x: f64) -> Result<Self> {
        let t = TowerReal::from_f64(x)?;
        Ok(TowerInterval {
            lo: t.round_mantissa(Dir::Down),
            hi: t.round_mantissa(Dir::Up),
        })
    }

    pub fn lo(&self) -> TowerReal {
        self.lo
    }

    pub fn hi(&self) -> TowerReal {
        self.hi
    }

    pub fn exp(&self) -> Result<Self> {
        Self::new(exp_real(self.lo, Dir::Down)?, exp_real(self.hi, Dir::Up)?)
    }

    pub fn log(&self) -> Result<Self> {
        Self::new(log_real(self.lo, Dir::Down)?, log_real(self.hi, Dir::Up)?)
    }

    pub fn scale(&self, c: f64) -> Result<Self> {
        Self::new(
            scale_real(self.lo, c, Dir::Down)?,
            scale_real(self.hi, c, Dir::Up)?,
        )
    }

    pub fn pow(&self, p: f64) -> Result<Self> {
        Self::new(
            pow_real(self.lo, p, Dir::Down)?,
            pow_real(self.hi, p, Dir::Up)?,
        )
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Self::new(
            add_real(self.lo, other.lo, Dir::Down)?,
            add_real(self.hi, other.hi, Dir::Up)?,
        )
    }

    pub fn add_scalar(&self, c: f64) -> Result<Self> {
        let c = TowerReal::from_f64(c)?;
        Self::new(
            add_real(self.lo, c, Dir::Down)?,
            add_real(self.hi, c, Dir::Up)?,
        )
    }

    /// `self - other`, requiring the result to be certainly positive
    /// (`other.hi < self.lo`); the verification chains never need signed
    /// enclosures at level ≥ 1.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        Self::new(
            sub_real(self.lo, other.hi, Dir::Down)?,
            sub_real(self.hi, other.lo, Dir::Up)?,
        )
    }

    /// Inflate the interval's width by `rel` (each side moves outward by
    /// `rel/2` of the width measured in the mantissa of the coarser level)
    /// plus one ulp. Used for the robustness re-run of the certification.
    pub fn widen_relative(&self, rel: f64) -> Result<Self> {
        let lo;
        let hi;
        if self.lo.level == self.hi.level {
            let w = (self.hi.mantissa - self.lo.mantissa).abs();
            let pad = w * rel / 2.0;
            lo = TowerReal::normalize(self.lo.level, (self.lo.mantissa - pad).next_down())?;
            hi = TowerReal::normalize(self.hi.level, (self.hi.mantissa + pad).next_up())?;
        } else {
            // Levels differ: the width is enormous; a one-ulp outward move of
            // each mantissa already dwarfs any rel-fraction of rounding noise.
            lo = self.lo.round_mantissa(Dir::Down);
            hi = self.hi.round_mantissa(Dir::Up);
        }
        Self::new(lo, hi)
    }

    pub fn compare_points(a: &TowerReal, b: &TowerReal) -> Ordering {
        a.compare(b)
    }
}

impl fmt::Display for TowerInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Three-valued outcome of an interval comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    True,
    False,
    Indeterminate,
}

impl Verdict {
    pub fn is_true(self) -> bool {
        self == Verdict::True
    }
}

/// Certified strict comparison `a < b` of interval enclosures.
pub fn certainly_less(a: &TowerInterval, b: &TowerInterval) -> Verdict {
    if a.hi.compare(&b.lo) == Ordering::Less {
        Verdict::True
    } else if b.hi.compare(&a.lo) != Ordering::Greater {
        Verdict::False
    } else {
        Verdict::Indeterminate
    }
}
