//! Weighted norm families (infinity, l^p, cornered p) with exact
//! comparison semantics, and the reference point objective built on them.
//!
//! Infinity and cornered norms evaluate to exact rationals. l^p values are
//! irrational in general; they are carried as refinable enclosures, and
//! comparisons go through p-th powers (exact, for integer p) or through
//! enclosure refinement down to a resolution of 2^-64.

use crate::error::{Error, Result};
use crate::rational::{nth_root_enclosure, nth_root_exact, Rat};
use crate::vector::{ObjectiveVector, Sense};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Resolution bound for enclosure-based comparisons: 2^-64.
pub const RESOLUTION_BITS: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum NormKind {
    Infinity,
    /// Standard l^p norm, p >= 1 (rational).
    Lp(Rat),
    /// Cornered p-norm: max_i |y_i| + (1/p) * sum_i |y_i|, p >= 1.
    CorneredP(Rat),
}

/// A weighted norm: the base norm applied to (w_1 y_1, ..., w_k y_k).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Norm {
    kind: NormKind,
    weights: Vec<Rat>,
}

impl Norm {
    pub fn new(kind: NormKind, weights: Vec<Rat>) -> Result<Self> {
        Self::validate(&kind, &weights, false)?;
        Ok(Norm { kind, weights })
    }

    /// Permits an all-zero weight vector (a seminorm). Needed by reductions
    /// that project onto a coordinate subset with zero-padded weights.
    pub fn new_allow_zero_weights(kind: NormKind, weights: Vec<Rat>) -> Result<Self> {
        Self::validate(&kind, &weights, true)?;
        Ok(Norm { kind, weights })
    }

    fn validate(kind: &NormKind, weights: &[Rat], allow_all_zero: bool) -> Result<()> {
        if weights.is_empty() {
            return Err(Error::InvalidNorm("empty weight vector".into()));
        }
        if weights.iter().any(|w| w.is_negative()) {
            return Err(Error::InvalidNorm("weights must be nonnegative".into()));
        }
        if !allow_all_zero && weights.iter().all(|w| w.is_zero()) {
            return Err(Error::InvalidNorm(
                "all-zero weight vector defines a seminorm; use the explicit opt-in".into(),
            ));
        }
        match kind {
            NormKind::Lp(p) | NormKind::CorneredP(p) => {
                if p < &Rat::one() {
                    return Err(Error::InvalidNorm(format!("p = {} < 1", p)));
                }
            }
            NormKind::Infinity => {}
        }
        Ok(())
    }

    pub fn infinity(weights: Vec<Rat>) -> Result<Self> {
        Self::new(NormKind::Infinity, weights)
    }

    pub fn lp(p: Rat, weights: Vec<Rat>) -> Result<Self> {
        Self::new(NormKind::Lp(p), weights)
    }

    pub fn cornered(p: Rat, weights: Vec<Rat>) -> Result<Self> {
        Self::new(NormKind::CorneredP(p), weights)
    }

    /// Infinity norm with unit weights in dimension `k`.
    pub fn unit_infinity(k: usize) -> Self {
        Norm {
            kind: NormKind::Infinity,
            weights: vec![Rat::one(); k],
        }
    }

    pub fn kind(&self) -> &NormKind {
        &self.kind
    }

    pub fn weights(&self) -> &[Rat] {
        &self.weights
    }

    pub fn k(&self) -> usize {
        self.weights.len()
    }

    /// Same norm family with different weights.
    pub fn with_weights(&self, weights: Vec<Rat>) -> Result<Self> {
        Self::new_allow_zero_weights(self.kind.clone(), weights)
    }

    fn weighted_abs(&self, v: &ObjectiveVector) -> Result<Vec<Rat>> {
        v.check_dim(self.k())?;
        Ok(self
            .weights
            .iter()
            .zip(v.coords())
            .map(|(w, c)| w * &c.abs())
            .collect())
    }
}

/// Value of a norm evaluation: exact rational, or an enclosure for l^p roots.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum NormValue {
    Exact(Rat),
    Interval { lo: Rat, hi: Rat },
}

impl NormValue {
    pub fn lo(&self) -> &Rat {
        match self {
            NormValue::Exact(r) => r,
            NormValue::Interval { lo, .. } => lo,
        }
    }

    pub fn hi(&self) -> &Rat {
        match self {
            NormValue::Exact(r) => r,
            NormValue::Interval { hi, .. } => hi,
        }
    }

    pub fn as_exact(&self) -> Option<&Rat> {
        match self {
            NormValue::Exact(r) => Some(r),
            NormValue::Interval { .. } => None,
        }
    }

    pub fn contains(&self, v: &Rat) -> bool {
        self.lo() <= v && v <= self.hi()
    }

    pub fn width(&self) -> Rat {
        self.hi() - self.lo()
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            NormValue::Exact(r) => r.to_f64(),
            NormValue::Interval { lo, hi } => (lo.to_f64() + hi.to_f64()) / 2.0,
        }
    }

    pub fn add(&self, other: &NormValue) -> NormValue {
        match (self, other) {
            (NormValue::Exact(a), NormValue::Exact(b)) => NormValue::Exact(a + b),
            _ => NormValue::Interval {
                lo: self.lo() + other.lo(),
                hi: self.hi() + other.hi(),
            },
        }
    }

    pub fn sub(&self, other: &NormValue) -> NormValue {
        match (self, other) {
            (NormValue::Exact(a), NormValue::Exact(b)) => NormValue::Exact(a - b),
            _ => NormValue::Interval {
                lo: self.lo() - other.hi(),
                hi: self.hi() - other.lo(),
            },
        }
    }

    pub fn scale(&self, factor: &Rat) -> NormValue {
        assert!(!factor.is_negative());
        match self {
            NormValue::Exact(r) => NormValue::Exact(r * factor),
            NormValue::Interval { lo, hi } => NormValue::Interval {
                lo: lo * factor,
                hi: hi * factor,
            },
        }
    }
}

impl fmt::Display for NormValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormValue::Exact(r) => write!(f, "{}", r),
            NormValue::Interval { lo, hi } => write!(f, "[{}, {}]", lo, hi),
        }
    }
}

/// Outcome of an exact norm comparison. `ToleranceEqual` is only possible for
/// non-integer p where enclosures overlap below the resolution bound and the
/// symbolic equality check failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormCmp {
    Less,
    Equal,
    Greater,
    ToleranceEqual,
}

impl NormCmp {
    pub fn is_le(self) -> bool {
        matches!(self, NormCmp::Less | NormCmp::Equal | NormCmp::ToleranceEqual)
    }

    pub fn is_ge(self) -> bool {
        matches!(self, NormCmp::Greater | NormCmp::Equal | NormCmp::ToleranceEqual)
    }

    pub fn reverse(self) -> Self {
        match self {
            NormCmp::Less => NormCmp::Greater,
            NormCmp::Greater => NormCmp::Less,
            other => other,
        }
    }
}

fn p_as_u32(p: &Rat) -> Result<(u32, u32)> {
    let a = u32::try_from(p.numer().clone())
        .map_err(|_| Error::InvalidNorm(format!("p = {} too large", p)))?;
    let b = u32::try_from(p.denom().clone())
        .map_err(|_| Error::InvalidNorm(format!("p = {} too large", p)))?;
    Ok((a, b))
}

/// Encloses `w^p` for `w >= 0` and rational `p = a/b`.
fn term_pow(w: &Rat, a: u32, b: u32, bits: u32) -> NormValue {
    if w.is_zero() {
        return NormValue::Exact(Rat::zero());
    }
    let x = w.pow(a as i32);
    if b == 1 {
        return NormValue::Exact(x);
    }
    if let Some(r) = nth_root_exact(&x, b) {
        return NormValue::Exact(r);
    }
    let (lo, hi) = nth_root_enclosure(&x, b, bits);
    NormValue::Interval { lo, hi }
}

/// Encloses `s^(1/p)` for `s >= 0` and rational `p = a/b` (so the exponent is b/a).
fn inv_pow(s: &NormValue, a: u32, b: u32, bits: u32) -> NormValue {
    let raise = |x: &Rat| x.pow(b as i32);
    match s {
        NormValue::Exact(x) => {
            let xb = raise(x);
            if let Some(r) = nth_root_exact(&xb, a) {
                NormValue::Exact(r)
            } else {
                let (lo, hi) = nth_root_enclosure(&xb, a, bits);
                NormValue::Interval { lo, hi }
            }
        }
        NormValue::Interval { lo, hi } => {
            let (llo, _) = nth_root_enclosure(&raise(lo), a, bits);
            let (_, hhi) = nth_root_enclosure(&raise(hi), a, bits);
            NormValue::Interval { lo: llo, hi: hhi }
        }
    }
}

/// Exact sum of p-th powers of the weighted components (integer p only).
fn power_sum(weighted: &[Rat], p: u32) -> Rat {
    weighted.iter().map(|w| w.pow(p as i32)).sum()
}

pub fn eval_norm(norm: &Norm, v: &ObjectiveVector) -> Result<NormValue> {
    eval_norm_with_bits(norm, v, RESOLUTION_BITS)
}

/// Norm evaluation with an explicit enclosure precision (fractional bits).
pub fn eval_norm_with_bits(norm: &Norm, v: &ObjectiveVector, bits: u32) -> Result<NormValue> {
    let weighted = norm.weighted_abs(v)?;
    let max = weighted.iter().max().cloned().unwrap_or_else(Rat::zero);
    match norm.kind() {
        NormKind::Infinity => Ok(NormValue::Exact(max)),
        NormKind::CorneredP(p) => {
            let sum: Rat = weighted.iter().sum();
            Ok(NormValue::Exact(max + sum / p.clone()))
        }
        NormKind::Lp(p) => {
            let (a, b) = p_as_u32(p)?;
            if b == 1 {
                let s = power_sum(&weighted, a);
                Ok(inv_pow(&NormValue::Exact(s), a, 1, bits))
            } else {
                let mut all_exact = true;
                let mut lo = Rat::zero();
                let mut hi = Rat::zero();
                let mut exact_sum = Rat::zero();
                for w in &weighted {
                    let t = term_pow(w, a, b, bits);
                    match &t {
                        NormValue::Exact(r) => exact_sum += r,
                        NormValue::Interval { .. } => all_exact = false,
                    }
                    lo += t.lo();
                    hi += t.hi();
                }
                let s = if all_exact {
                    NormValue::Exact(exact_sum)
                } else {
                    NormValue::Interval { lo, hi }
                };
                Ok(inv_pow(&s, a, b, bits))
            }
        }
    }
}

/// Exact decision of `||u|| <=> ||v||` for the weighted norm.
pub fn compare_norm(norm: &Norm, u: &ObjectiveVector, v: &ObjectiveVector) -> Result<NormCmp> {
    let wu = norm.weighted_abs(u)?;
    let wv = norm.weighted_abs(v)?;
    let ord_to_cmp = |o: std::cmp::Ordering| match o {
        std::cmp::Ordering::Less => NormCmp::Less,
        std::cmp::Ordering::Equal => NormCmp::Equal,
        std::cmp::Ordering::Greater => NormCmp::Greater,
    };
    match norm.kind() {
        NormKind::Infinity => {
            let mu = wu.iter().max().cloned().unwrap_or_else(Rat::zero);
            let mv = wv.iter().max().cloned().unwrap_or_else(Rat::zero);
            Ok(ord_to_cmp(mu.cmp(&mv)))
        }
        NormKind::CorneredP(p) => {
            let cu = wu.iter().max().cloned().unwrap_or_else(Rat::zero)
                + wu.iter().sum::<Rat>() / p.clone();
            let cv = wv.iter().max().cloned().unwrap_or_else(Rat::zero)
                + wv.iter().sum::<Rat>() / p.clone();
            Ok(ord_to_cmp(cu.cmp(&cv)))
        }
        NormKind::Lp(p) => {
            let (a, b) = p_as_u32(p)?;
            if b == 1 {
                // Integer p: compare p-th powers, which is exact and monotone.
                let su = power_sum(&wu, a);
                let sv = power_sum(&wv, a);
                return Ok(ord_to_cmp(su.cmp(&sv)));
            }
            // Symbolic check first: equal weighted component multisets give
            // equal norms regardless of p.
            let mut su = wu.clone();
            let mut sv = wv.clone();
            su.sort();
            sv.sort();
            if su == sv {
                return Ok(NormCmp::Equal);
            }
            let resolution = Rat::from_big(
                num_bigint::BigInt::from(1),
                num_bigint::BigInt::from(1) << RESOLUTION_BITS,
            );
            let mut bits = 32;
            loop {
                let nu = eval_norm_with_bits(norm, u, bits)?;
                let nv = eval_norm_with_bits(norm, v, bits)?;
                if nu.hi() < nv.lo() {
                    return Ok(NormCmp::Less);
                }
                if nu.lo() > nv.hi() {
                    return Ok(NormCmp::Greater);
                }
                if nu.width() <= resolution && nv.width() <= resolution {
                    return Ok(NormCmp::ToleranceEqual);
                }
                if bits >= 1024 {
                    return Ok(NormCmp::ToleranceEqual);
                }
                bits *= 2;
            }
        }
    }
}

/// A reference point together with the norm and sense it is used under.
///
/// Feasibility (refpoint below the ideal point for Min, above it for Max) can
/// only be checked against an instance; the context stores the claim and a
/// `verified` flag set by whoever checked it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReferenceContext {
    pub refpoint: ObjectiveVector,
    pub norm: Norm,
    pub sense: Sense,
    pub verified: bool,
}

impl ReferenceContext {
    pub fn new(refpoint: ObjectiveVector, norm: Norm, sense: Sense) -> Result<Self> {
        refpoint.check_dim(norm.k())?;
        Ok(ReferenceContext {
            refpoint,
            norm,
            sense,
            verified: false,
        })
    }

    pub fn verified(mut self) -> Self {
        self.verified = true;
        self
    }

    pub fn k(&self) -> usize {
        self.norm.k()
    }
}

/// The reference point objective.
///
/// Min: `||y^r|| + ||y - y^r||` (price of compromise added).
/// Max: `||y^r|| - ||y^r - y||` (price of compromise subtracted; may be negative).
///
/// Differences are taken component-wise in absolute value, so the objective is
/// total even at points below (Min) or above (Max) the reference point.
pub fn ref_objective(ctx: &ReferenceContext, y: &ObjectiveVector) -> Result<NormValue> {
    y.check_dim(ctx.k())?;
    let base = eval_norm(&ctx.norm, &ctx.refpoint)?;
    let dist = eval_norm(&ctx.norm, &y.abs_diff(&ctx.refpoint))?;
    Ok(match ctx.sense {
        Sense::Min => base.add(&dist),
        Sense::Max => base.sub(&dist),
    })
}

/// Exact comparison of `r(u)` and `r(v)` under a shared context.
///
/// The `||y^r||` term is common to both sides, so the comparison reduces to
/// comparing distances, which is exact wherever `compare_norm` is.
pub fn compare_ref_objective(
    ctx: &ReferenceContext,
    u: &ObjectiveVector,
    v: &ObjectiveVector,
) -> Result<NormCmp> {
    let du = u.abs_diff(&ctx.refpoint);
    let dv = v.abs_diff(&ctx.refpoint);
    let cmp = compare_norm(&ctx.norm, &du, &dv)?;
    Ok(match ctx.sense {
        Sense::Min => cmp,
        // Larger distance from the reference point means a smaller Max objective.
        Sense::Max => cmp.reverse(),
    })
}

/// Reference objective with an explicit enclosure precision.
pub fn ref_objective_with_bits(
    ctx: &ReferenceContext,
    y: &ObjectiveVector,
    bits: u32,
) -> Result<NormValue> {
    y.check_dim(ctx.k())?;
    let base = eval_norm_with_bits(&ctx.norm, &ctx.refpoint, bits)?;
    let dist = eval_norm_with_bits(&ctx.norm, &y.abs_diff(&ctx.refpoint), bits)?;
    Ok(match ctx.sense {
        Sense::Min => base.add(&dist),
        Sense::Max => base.sub(&dist),
    })
}

/// Certifies an approximation ratio bound exactly, refining enclosures where
/// the norm value is irrational.
///
/// Min sense: certifies `r(candidate) <= factor * r(reference)`.
/// Max sense: certifies `factor * r(candidate) >= r(reference)`.
///
/// Identical points pass immediately. For l^p values the enclosures are
/// refined down to width 2^-512; if the two sides still straddle each other
/// below the 2^-64 resolution bound, the bound is accepted as holding within
/// tolerance (the comparison convention used crate-wide).
pub fn certify_within_factor(
    ctx: &ReferenceContext,
    candidate: &ObjectiveVector,
    reference: &ObjectiveVector,
    factor: &Rat,
) -> Result<bool> {
    if candidate == reference && factor >= &Rat::one() {
        return Ok(true);
    }
    let resolution = Rat::from_big(
        num_bigint::BigInt::from(1),
        num_bigint::BigInt::from(1) << RESOLUTION_BITS,
    );
    let mut bits = RESOLUTION_BITS;
    loop {
        let rc = ref_objective_with_bits(ctx, candidate, bits)?;
        let rr = ref_objective_with_bits(ctx, reference, bits)?;
        let (lhs, rhs) = match ctx.sense {
            Sense::Min => (rc.clone(), rr.scale(factor)),
            Sense::Max => (rr.clone(), rc.scale(factor)),
        };
        // Certified: lhs <= rhs everywhere in the enclosures.
        if lhs.hi() <= rhs.lo() {
            return Ok(true);
        }
        // Refuted: lhs > rhs everywhere.
        if lhs.lo() > rhs.hi() {
            return Ok(false);
        }
        if bits >= 512 {
            return Ok(lhs.width() <= resolution && rhs.width() <= resolution);
        }
        bits *= 2;
    }
}
