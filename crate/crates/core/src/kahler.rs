//! Kähler angles of diagonal complex projective spaces.
//!
//! In `CP^m × ⋯ × CP^m` (`k` copies) the diagonal built from `s` copies of
//! the identity and `k - s` copies of complex conjugation is totally geodesic
//! with constant Kähler angle `φ`, `cos φ = |2s - k| / k`. Products of `k`
//! projective spaces sit as complex totally geodesic submanifolds in the
//! Grassmannian `G_k(C^{n+k})` for every partition of `n` into `k` parts, so
//! every rational cosine is realized inside some Grassmannian. Angles are
//! carried as exact cosines; radians are for display.
//!
//! The realized set is dense in `[0, π/2]`. Nothing here claims it is all of
//! `[0, π/2]`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use num_rational::Rational64;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::tableaux::Partition;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum KahlerError {
    #[error("number of diagonal copies must be positive")]
    ZeroCopies,
    #[error("dimension must be positive")]
    ZeroDimension,
    #[error("cosine {0} outside [0, 1]")]
    CosineOutOfRange(String),
    #[error("cannot split {n} into {k} positive parts")]
    TooManyParts { k: usize, n: usize },
    #[error("target angle {0} outside [0, π/2]")]
    AngleOutOfRange(f64),
    #[error("epsilon must be positive, got {0}")]
    NonPositiveEpsilon(f64),
    #[error("no continued-fraction approximation within {epsilon} after {iterations} terms")]
    NoConvergence { epsilon: f64, iterations: usize },
    #[error("integer overflow while building a realization")]
    Overflow,
}

/// Maximum number of continued-fraction terms tried by [`approximate_angle`].
pub const MAX_CF_TERMS: usize = 64;

#[derive(Debug, Clone, Copy)]
pub struct ExactAngle {
    cosine: Rational64,
    radians: f64,
}

impl ExactAngle {
    pub fn from_cosine(cosine: Rational64) -> Result<Self, KahlerError> {
        if cosine.is_negative() || cosine > Rational64::from_integer(1) {
            return Err(KahlerError::CosineOutOfRange(cosine.to_string()));
        }
        let x = cosine.to_f64().unwrap_or(f64::NAN);
        Ok(ExactAngle {
            cosine,
            radians: x.clamp(0.0, 1.0).acos(),
        })
    }

    pub fn cosine(&self) -> Rational64 {
        self.cosine
    }

    pub fn radians(&self) -> f64 {
        self.radians
    }
}

impl PartialEq for ExactAngle {
    fn eq(&self, other: &Self) -> bool {
        self.cosine == other.cosine
    }
}

impl Eq for ExactAngle {}

impl PartialOrd for ExactAngle {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExactAngle {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cosine.cmp(&other.cosine)
    }
}

impl fmt::Display for ExactAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "arccos({}) = {:.12}", self.cosine, self.radians)
    }
}

/// `G_k(C^{n+k})`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Grassmannian {
    pub k: u64,
    pub n: u64,
}

impl fmt::Display for Grassmannian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G{}(C{})", self.k, self.n + self.k)
    }
}

/// A `k`-diagonal `CP^m` with `s` unconjugated copies inside `G_k(C^{n+k})`,
/// `n = k·m`, whose constant Kähler angle has cosine `|2s - k| / k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AngleRealization {
    pub k: u64,
    pub s: u64,
    pub m: u64,
    pub n: u64,
    pub ambient: Grassmannian,
    pub cosine: Rational64,
}

impl AngleRealization {
    /// `|2s - k| / k`, evaluated from the stored copy counts.
    pub fn formula_cosine(&self) -> Rational64 {
        diagonal_cosine(self.k, self.s)
    }

    pub fn angle(&self) -> ExactAngle {
        ExactAngle::from_cosine(self.cosine).expect("realizations carry cosines in [0, 1]")
    }

    /// The equal-parts partition `(m, …, m)` of `n` certifying the product
    /// `CP^m × ⋯ × CP^m` inside the ambient Grassmannian.
    pub fn equal_parts(&self) -> Partition {
        Partition::new(vec![self.m as usize; self.k as usize]).expect("equal parts are valid")
    }
}

fn diagonal_cosine(k: u64, s: u64) -> Rational64 {
    let k = k as i64;
    let s = s as i64;
    Rational64::new((2 * s - k).abs(), k)
}

/// `{ |2s - k| / k : s = 0, …, k }` as exact angles.
pub fn angles_in_product(k: u64) -> Result<BTreeSet<ExactAngle>, KahlerError> {
    if k == 0 {
        return Err(KahlerError::ZeroCopies);
    }
    if k > i64::MAX as u64 / 2 {
        return Err(KahlerError::Overflow);
    }
    (0..=k)
        .map(|s| ExactAngle::from_cosine(diagonal_cosine(k, s)))
        .collect()
}

/// Minimal-`k` realization of cosine `q = a/b` (lowest terms) by a diagonal
/// `CP^m`: `k = b` when `b - a` is even, else `k = 2b`, and
/// `s = (k - a·k/b) / 2`. For `q = 1` all copies are taken unconjugated
/// (`s = k`).
pub fn realize_angle(q: Rational64, m: u64) -> Result<AngleRealization, KahlerError> {
    if m == 0 {
        return Err(KahlerError::ZeroDimension);
    }
    if q.is_negative() || q > Rational64::from_integer(1) {
        return Err(KahlerError::CosineOutOfRange(q.to_string()));
    }
    let a = *q.numer();
    let b = *q.denom();
    let k = if (b - a) % 2 == 0 {
        b
    } else {
        b.checked_mul(2).ok_or(KahlerError::Overflow)?
    };
    let ak_over_b = a.checked_mul(k / b).ok_or(KahlerError::Overflow)?;
    let s = if a == b { k } else { (k - ak_over_b) / 2 };
    let k = k as u64;
    let s = s as u64;
    let n = k.checked_mul(m).ok_or(KahlerError::Overflow)?;
    let realization = AngleRealization {
        k,
        s,
        m,
        n,
        ambient: Grassmannian { k, n },
        cosine: q,
    };
    debug_assert_eq!(realization.formula_cosine(), q);
    Ok(realization)
}

/// Partitions of `n` into exactly `k` parts; each certifies a complex totally
/// geodesic `CP^{n_1} × ⋯ × CP^{n_k}` in `G_k(C^{n+k})`.
pub fn grassmannian_product_embeddings(k: usize, n: usize) -> Result<Vec<Partition>, KahlerError> {
    if k == 0 {
        return Err(KahlerError::ZeroCopies);
    }
    if k > n {
        return Err(KahlerError::TooManyParts { k, n });
    }
    Ok(Partition::into_exactly(n, k))
}

/// First fraction `p/q` accepted by `accept`, walking the continued-fraction
/// expansion of `x ∈ [0, 1]` by increasing denominator: every convergent
/// and every intermediate fraction between consecutive convergents. Along
/// one run of intermediate fractions the distance to `x` shrinks
/// monotonically, so the run is bisected rather than enumerated; partial
/// quotients near the endpoints of `[0, 1]` can exceed `10^10`.
fn cf_search(x: f64, max_terms: usize, accept: impl Fn(i64, i64) -> bool) -> Option<(i64, i64)> {
    let a0 = x.floor() as i64;
    if accept(a0, 1) {
        return Some((a0, 1));
    }
    let (mut h_prev, mut h) = (1i64, a0);
    let (mut k_prev, mut k) = (0i64, 1i64);
    let mut frac = x - x.floor();
    for _ in 0..max_terms {
        if frac <= 0.0 {
            return None;
        }
        let y = 1.0 / frac;
        let a = if y.floor() >= 9.0e18 { i64::MAX } else { y.floor() as i64 };
        let at = |t: i64| -> Option<(i64, i64)> {
            Some((
                t.checked_mul(h)?.checked_add(h_prev)?,
                t.checked_mul(k)?.checked_add(k_prev)?,
            ))
        };
        // largest t in [1, a] that does not overflow
        let top = if at(a).is_some() {
            a
        } else {
            let (mut lo, mut hi) = (0i64, a);
            while lo < hi {
                let mid = lo + (hi - lo + 1) / 2;
                if at(mid).is_some() {
                    lo = mid;
                } else {
                    hi = mid - 1;
                }
            }
            lo
        };
        if top == 0 {
            return None;
        }
        let (p, q) = at(top).expect("fits");
        if accept(p, q) {
            let (mut lo, mut hi) = (1i64, top);
            while lo < hi {
                let mid = lo + (hi - lo) / 2;
                let (p, q) = at(mid).expect("fits");
                if accept(p, q) {
                    hi = mid;
                } else {
                    lo = mid + 1;
                }
            }
            return at(lo);
        }
        if top < a {
            return None;
        }
        h_prev = h;
        k_prev = k;
        h = p;
        k = q;
        frac = y - y.floor();
    }
    None
}

/// Realization whose angle is within `epsilon` of `target_radians`, found by
/// rational approximation of `cos(target)`. Endpoints are exact. Small
/// denominators are preferred, but `k` is not guaranteed minimal.
pub fn approximate_angle(
    target_radians: f64,
    epsilon: f64,
    m: u64,
) -> Result<AngleRealization, KahlerError> {
    if epsilon.is_nan() || epsilon <= 0.0 {
        return Err(KahlerError::NonPositiveEpsilon(epsilon));
    }
    let half_pi = std::f64::consts::FRAC_PI_2;
    if !(0.0..=half_pi).contains(&target_radians) {
        return Err(KahlerError::AngleOutOfRange(target_radians));
    }
    let x = target_radians.cos().clamp(0.0, 1.0);
    let accept = |p: i64, q: i64| {
        let angle = (p as f64 / q as f64).clamp(0.0, 1.0).acos();
        (angle - target_radians).abs() < epsilon
    };
    match cf_search(x, MAX_CF_TERMS, accept) {
        Some((p, q)) => realize_angle(Rational64::new(p, q), m),
        None if x.is_zero() => realize_angle(Rational64::zero(), m),
        None => Err(KahlerError::NoConvergence {
            epsilon,
            iterations: MAX_CF_TERMS,
        }),
    }
}
