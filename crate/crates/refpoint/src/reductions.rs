//! Reductions between Pareto set approximation, reference point and
//! compromise programming approximation, the weighted sum problem, and the
//! Gap problem.
//!
//! Every reduction is oracle-relative: the solvers it composes are passed in
//! as first-class callables, so the same machinery runs over brute-force
//! enumeration, LP solvers, or FPTAS solvers. Factor preconditions are
//! checked exactly on rationals before any oracle is invoked.

use crate::error::{Error, Result};
use crate::explicit::{exact_pareto_set, ExplicitInstance};
use crate::norm::{compare_ref_objective, Norm, NormKind, ReferenceContext};
use crate::rational::Rat;
use crate::vector::{pareto_filter, ObjectiveVector, Sense};
use serde::{Deserialize, Serialize};

/// Answer to a Gap query for a vector `y` and factor `alpha`.
///
/// `Witness(y')` carries an attainable point with `y' <= y`; `NoneBelow`
/// certifies that no attainable point lies at or below `y / alpha`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum GapAnswer {
    Witness(ObjectiveVector),
    NoneBelow,
}

impl GapAnswer {
    pub fn witness(&self) -> Option<&ObjectiveVector> {
        match self {
            GapAnswer::Witness(w) => Some(w),
            GapAnswer::NoneBelow => None,
        }
    }
}

/// How each point of an [`ApproxParetoSet`] was obtained.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    /// Exact enumeration of the Pareto set.
    Exact,
    /// Witness returned by a Gap oracle query on a grid cell.
    GridCell { cell: Vec<usize>, oracle_call: usize },
    /// Survivor of thinning an exact Pareto set to a coarser factor.
    Thinned,
    /// Supplied by the caller.
    Given,
}

/// An approximate Pareto set tagged with its factor and per-point provenance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApproxParetoSet {
    pub alpha: Rat,
    points: Vec<ObjectiveVector>,
    provenance: Vec<Provenance>,
}

impl ApproxParetoSet {
    pub fn new(alpha: Rat, points: Vec<ObjectiveVector>, provenance: Vec<Provenance>) -> Self {
        assert_eq!(points.len(), provenance.len());
        ApproxParetoSet {
            alpha,
            points,
            provenance,
        }
    }

    /// The exact Pareto set of an explicit instance, as a factor-1 set.
    pub fn exact(inst: &ExplicitInstance, sense: Sense) -> Self {
        let points = exact_pareto_set(inst, sense);
        let provenance = vec![Provenance::Exact; points.len()];
        ApproxParetoSet {
            alpha: Rat::one(),
            points,
            provenance,
        }
    }

    pub fn from_points(alpha: Rat, points: Vec<ObjectiveVector>) -> Self {
        let provenance = vec![Provenance::Given; points.len()];
        ApproxParetoSet {
            alpha,
            points,
            provenance,
        }
    }

    pub fn points(&self) -> &[ObjectiveVector] {
        &self.points
    }

    pub fn provenance(&self) -> &[Provenance] {
        &self.provenance
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Checks containment and coverage against an explicit instance:
    /// every point must be attainable, and every Pareto optimal point `z`
    /// must have some set point within factor `alpha` (componentwise).
    pub fn is_valid_for(&self, inst: &ExplicitInstance, sense: Sense) -> bool {
        if self.points.iter().any(|p| !inst.contains(p)) {
            return false;
        }
        match observed_coverage_factor(&self.points, &exact_pareto_set(inst, sense), sense) {
            Some(factor) => factor <= self.alpha,
            None => false,
        }
    }
}

/// Smallest factor at which `points` covers `pareto`: for Min, the max over
/// Pareto points `z` of the best achievable `max_i y'_i / z_i`. `None` when
/// some Pareto point is not covered at any finite factor.
pub fn observed_coverage_factor(
    points: &[ObjectiveVector],
    pareto: &[ObjectiveVector],
    sense: Sense,
) -> Option<Rat> {
    let mut worst = Rat::one();
    for z in pareto {
        let mut best: Option<Rat> = None;
        'candidates: for y in points {
            let mut needed = Rat::one();
            for i in 0..z.k() {
                let (good, bad) = match sense {
                    Sense::Min => (z.get(i), y.get(i)),
                    Sense::Max => (y.get(i), z.get(i)),
                };
                // Factor needed in coordinate i so that bad <= needed * good.
                if good.is_zero() {
                    if bad.is_zero() {
                        continue;
                    }
                    continue 'candidates;
                }
                let ratio = bad / good;
                if ratio > needed {
                    needed = ratio;
                }
            }
            best = Some(match best {
                None => needed,
                Some(b) => b.min(needed),
            });
        }
        {
            let b = best?;
            if b > worst {
                worst = b;
            }
        }
    }
    Some(worst)
}

/// Thins an exact Pareto set to a valid `alpha`-approximate Pareto set by
/// greedily dropping points already covered within factor `alpha`.
pub fn thin_pareto_set(inst: &ExplicitInstance, sense: Sense, alpha: &Rat) -> ApproxParetoSet {
    let pareto = exact_pareto_set(inst, sense);
    let mut kept: Vec<ObjectiveVector> = Vec::new();
    for p in &pareto {
        let covered = kept.iter().any(|q| match sense {
            Sense::Min => (0..p.k()).all(|i| q.get(i) <= &(alpha * p.get(i))),
            Sense::Max => (0..p.k()).all(|i| &(alpha * q.get(i)) >= p.get(i)),
        });
        if !covered {
            kept.push(p.clone());
        }
    }
    let provenance = vec![Provenance::Thinned; kept.len()];
    ApproxParetoSet::new(alpha.clone(), kept, provenance)
}

/// Objective-space regime an instance handle operates in. Drives how a Gap
/// witness is validated: integral objectives round, strictly positive
/// rational objectives divide.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ObjectiveMode {
    Integral,
    /// All attainable objective values are at least `lower` (> 0).
    StrictlyPositive { lower: Rat },
}

/// Type of the solver callables the reductions compose.
pub type SolveFn<'a, Input> = Box<dyn Fn(&Input) -> Result<ObjectiveVector> + 'a>;

/// Solver callable over a weight slice (weighted sum solvers).
pub type WeightedSolveFn<'a> = Box<dyn Fn(&[Rat]) -> Result<ObjectiveVector> + 'a>;

/// Everything a reduction needs to know about an instance without committing
/// to a representation: dimension, objective bound, objective regime, and a
/// membership test for validating solver outputs.
pub struct InstanceHandle<'a> {
    pub k: usize,
    pub bound_m: Rat,
    pub mode: ObjectiveMode,
    contains: Box<dyn Fn(&ObjectiveVector) -> bool + 'a>,
}

impl<'a> InstanceHandle<'a> {
    pub fn new(
        k: usize,
        bound_m: Rat,
        mode: ObjectiveMode,
        contains: impl Fn(&ObjectiveVector) -> bool + 'a,
    ) -> Self {
        InstanceHandle {
            k,
            bound_m,
            mode,
            contains: Box::new(contains),
        }
    }

    pub fn explicit(inst: &'a ExplicitInstance) -> Self {
        let mode = if inst.is_rational() {
            let lower = inst
                .points()
                .iter()
                .flat_map(|p| p.coords())
                .min()
                .cloned()
                .unwrap_or_else(Rat::one);
            ObjectiveMode::StrictlyPositive { lower }
        } else {
            ObjectiveMode::Integral
        };
        InstanceHandle {
            k: inst.k(),
            bound_m: inst.bound_m().clone(),
            mode,
            contains: Box::new(move |y| inst.contains(y)),
        }
    }

    pub fn contains(&self, y: &ObjectiveVector) -> bool {
        (self.contains)(y)
    }
}

/// An approximate reference point solver with a stated factor: the returned
/// point `y'` satisfies `r(y') <= factor * min r`.
pub struct RpApproxSolver<'a> {
    factor: Rat,
    solve: SolveFn<'a, ReferenceContext>,
}

impl<'a> RpApproxSolver<'a> {
    pub fn new(
        factor: Rat,
        solve: impl Fn(&ReferenceContext) -> Result<ObjectiveVector> + 'a,
    ) -> Self {
        assert!(factor >= Rat::one());
        RpApproxSolver {
            factor,
            solve: Box::new(solve),
        }
    }

    /// Exact solver (factor 1) backed by enumeration.
    pub fn exact_brute(inst: &'a ExplicitInstance) -> Self {
        RpApproxSolver::new(Rat::one(), move |ctx| {
            crate::explicit::brute_rp_optimum_unchecked(inst, ctx).map(|(y, _)| y)
        })
    }

    pub fn factor(&self) -> &Rat {
        &self.factor
    }

    pub fn solve(&self, ctx: &ReferenceContext) -> Result<ObjectiveVector> {
        (self.solve)(ctx)
    }
}

/// An approximate compromise programming solver: computes the ideal point
/// itself and returns `y'` with `r_ideal(y') <= factor * min r_ideal`.
pub struct CpApproxSolver<'a> {
    factor: Rat,
    solve: SolveFn<'a, Norm>,
}

impl<'a> CpApproxSolver<'a> {
    pub fn new(factor: Rat, solve: impl Fn(&Norm) -> Result<ObjectiveVector> + 'a) -> Self {
        assert!(factor >= Rat::one());
        CpApproxSolver {
            factor,
            solve: Box::new(solve),
        }
    }

    pub fn exact_brute(inst: &'a ExplicitInstance) -> Self {
        CpApproxSolver::new(Rat::one(), move |norm| {
            crate::explicit::brute_cp_optimum(inst, norm, Sense::Min).map(|(y, _)| y)
        })
    }

    pub fn factor(&self) -> &Rat {
        &self.factor
    }

    pub fn solve(&self, norm: &Norm) -> Result<ObjectiveVector> {
        (self.solve)(norm)
    }
}

/// An approximate weighted sum solver: returns `y'` with
/// `lambda . y' <= factor * min_y lambda . y`.
pub struct WeightedSumSolver<'a> {
    factor: Rat,
    solve: WeightedSolveFn<'a>,
}

impl<'a> WeightedSumSolver<'a> {
    pub fn new(factor: Rat, solve: impl Fn(&[Rat]) -> Result<ObjectiveVector> + 'a) -> Self {
        assert!(factor >= Rat::one());
        WeightedSumSolver {
            factor,
            solve: Box::new(solve),
        }
    }

    /// Exact enumeration; ties break to the lexicographically smallest vector.
    pub fn exact_brute(inst: &'a ExplicitInstance) -> Self {
        WeightedSumSolver::new(Rat::one(), move |weights| {
            let mut best: Option<(&ObjectiveVector, Rat)> = None;
            for p in inst.points() {
                let value: Rat = weights.iter().zip(p.coords()).map(|(w, c)| w * c).sum();
                match &best {
                    None => best = Some((p, value)),
                    Some((_, bv)) => {
                        if value < *bv {
                            best = Some((p, value));
                        }
                    }
                }
            }
            Ok(best.expect("nonempty instance").0.clone())
        })
    }

    pub fn factor(&self) -> &Rat {
        &self.factor
    }

    pub fn solve(&self, weights: &[Rat]) -> Result<ObjectiveVector> {
        (self.solve)(weights)
    }
}

/// Picks the best reference point solution out of an approximate Pareto set.
/// If the set has factor `alpha`, the result is an `alpha`-approximation to
/// the reference point optimum, for any monotone norm.
pub fn select_rp_from_pareto(
    approx_set: &ApproxParetoSet,
    ctx: &ReferenceContext,
) -> Result<ObjectiveVector> {
    if approx_set.is_empty() {
        return Err(Error::EmptySet);
    }
    debug_assert_eq!(ctx.sense, Sense::Min);
    let mut sorted: Vec<&ObjectiveVector> = approx_set.points().iter().collect();
    sorted.sort();
    let mut best = sorted[0];
    for p in &sorted[1..] {
        if compare_ref_objective(ctx, p, best)? == crate::norm::NormCmp::Less {
            best = p;
        }
    }
    Ok(best.clone())
}

/// Approximates the compromise solution from an approximate Pareto set
/// without knowing the ideal point: builds the feasible reference point
/// `y^r_i = ceil(min_i / alpha)` from per-coordinate minima of the set, then
/// selects the closest set point. Factor `alpha^2` against the true
/// compromise optimum.
pub fn approx_cp_via_pareto(
    approx_set: &ApproxParetoSet,
    norm: &Norm,
) -> Result<(ObjectiveVector, ObjectiveVector)> {
    if approx_set.is_empty() {
        return Err(Error::EmptySet);
    }
    let k = approx_set.points()[0].k();
    let refpoint = ObjectiveVector::new(
        (0..k)
            .map(|i| {
                let min = approx_set
                    .points()
                    .iter()
                    .map(|p| p.get(i))
                    .min()
                    .expect("nonempty")
                    .clone();
                (min / approx_set.alpha.clone()).ceil()
            })
            .collect(),
    )?;
    let ctx = ReferenceContext::new(refpoint.clone(), norm.clone(), Sense::Min)?;
    let answer = select_rp_from_pareto(approx_set, &ctx)?;
    Ok((refpoint, answer))
}

/// Norm family selector for constructions that work for both the l^p and the
/// cornered p-norm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NormFamily {
    Lp,
    CorneredP,
}

impl NormFamily {
    pub fn kind(self, p: Rat) -> NormKind {
        match self {
            NormFamily::Lp => NormKind::Lp(p),
            NormFamily::CorneredP => NormKind::CorneredP(p),
        }
    }
}

/// The weight vector that makes a chosen Pareto point the unique reference
/// point optimum for every `p` above the threshold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightConstruction {
    pub weights: Vec<Rat>,
    pub p_threshold: Rat,
    pub family: NormFamily,
}

impl WeightConstruction {
    /// The weighted norm at a concrete `p > p_threshold`.
    pub fn norm_at(&self, p: Rat) -> Result<Norm> {
        Norm::new(self.family.kind(p), self.weights.clone())
    }
}

/// Smallest integer `n >= 1` with `base^n > bound` (`>=` when `strict` is false).
fn smallest_power_exceeding(base: &Rat, bound: &Rat, strict: bool) -> u32 {
    assert!(base > &Rat::one());
    let mut acc = base.clone();
    let mut n = 1u32;
    loop {
        if (strict && acc > *bound) || (!strict && acc >= *bound) {
            return n;
        }
        acc = acc * base.clone();
        n += 1;
    }
}

/// For an integral instance, a Pareto optimal point `y`, and a feasible
/// reference point, constructs weights under which `y` is the unique
/// minimizer of the weighted distance to the reference point for every
/// `p` above the returned threshold: `1 + k` on coordinates where `y`
/// touches the reference point, `1 / (y_i - y^r_i)` elsewhere.
pub fn weight_for_pareto_point(
    inst: &ExplicitInstance,
    y: &ObjectiveVector,
    refpoint: &ObjectiveVector,
    family: NormFamily,
) -> Result<WeightConstruction> {
    y.check_dim(inst.k())?;
    refpoint.check_dim(inst.k())?;
    if inst.is_rational() {
        return Err(Error::InvalidInstance(
            "the weight construction requires integral objectives".into(),
        ));
    }
    if !crate::explicit::is_feasible_refpoint(inst, refpoint, Sense::Min)? {
        return Err(Error::InfeasibleRefpoint { index: 0 });
    }
    if !exact_pareto_set(inst, Sense::Min).contains(y) {
        return Err(Error::InvalidParameter(format!(
            "{:?} is not Pareto optimal for the instance",
            y
        )));
    }
    let k = inst.k();
    let one_plus_k = Rat::from_int(1 + k as i64);
    let weights = (0..k)
        .map(|i| {
            if y.get(i) == refpoint.get(i) {
                one_plus_k.clone()
            } else {
                (y.get(i) - refpoint.get(i)).recip()
            }
        })
        .collect();
    let m = inst.bound_m().clone();
    let p_threshold = match family {
        NormFamily::CorneredP => Rat::from_int(k as i64) * m,
        NormFamily::Lp => {
            // Smallest integer with (1 + 1/M)^n > k.
            let base = Rat::one() + m.recip();
            Rat::from_int(smallest_power_exceeding(&base, &Rat::from_int(k as i64), true) as i64)
        }
    };
    Ok(WeightConstruction {
        weights,
        p_threshold,
        family,
    })
}

fn check_gap_preconditions(alpha: &Rat, solver_factor: &Rat) -> Result<Rat> {
    if alpha <= &Rat::one() {
        return Err(Error::InvalidParameter(format!(
            "alpha = {} must be > 1",
            alpha
        )));
    }
    // beta = alpha^2 / (2 alpha - 1)
    let beta = (alpha * alpha) / (Rat::from_int(2) * alpha - Rat::one());
    if solver_factor > &beta {
        return Err(Error::InvalidParameter(format!(
            "solver factor {} exceeds the admissible beta = {}",
            solver_factor, beta
        )));
    }
    Ok(beta)
}

/// Shared accept/reject skeleton of the Gap-via-reference-point reductions.
///
/// Rejects immediately when `y` is not at least `alpha * y^r`; otherwise runs
/// the approximate solver once under the provided weighted norm and answers
/// with the witness iff `r(y') <= r(y)`.
fn gap_via_rp_common(
    handle: &InstanceHandle,
    y: &ObjectiveVector,
    alpha: &Rat,
    refpoint: ObjectiveVector,
    weights: Vec<Rat>,
    kind: NormKind,
    solver: &RpApproxSolver,
) -> Result<GapAnswer> {
    let scaled_ref = refpoint.scale(alpha);
    if !scaled_ref.le(y) {
        return Ok(GapAnswer::NoneBelow);
    }
    let norm = Norm::new(kind, weights)?;
    let ctx = ReferenceContext::new(refpoint, norm, Sense::Min)?.verified();
    let y_prime = solver.solve(&ctx)?;
    if !handle.contains(&y_prime) {
        return Err(Error::ContractViolation(format!(
            "reference point solver returned the unattainable point {:?}",
            y_prime
        )));
    }
    if compare_ref_objective(&ctx, &y_prime, y)?.is_le() {
        if !y_prime.le(y) {
            return Err(Error::ContractViolation(format!(
                "accepted witness {:?} is not componentwise below the query {:?}",
                y_prime, y
            )));
        }
        Ok(GapAnswer::Witness(y_prime))
    } else {
        Ok(GapAnswer::NoneBelow)
    }
}

/// Solves the Gap problem with factor `alpha` from a single call to a
/// `beta`-approximate reference point solver for the weighted infinity norm,
/// where `beta = alpha^2 / (2 alpha - 1)`.
///
/// `refpoint_provider` plays the role of the oracle computing a feasible
/// reference point the solver can approximate well.
pub fn gap_via_rp_inf(
    handle: &InstanceHandle,
    y: &ObjectiveVector,
    alpha: &Rat,
    refpoint_provider: impl FnOnce() -> Result<ObjectiveVector>,
    solver: &RpApproxSolver,
) -> Result<GapAnswer> {
    check_gap_preconditions(alpha, solver.factor())?;
    y.check_dim(handle.k)?;
    if let ObjectiveMode::StrictlyPositive { lower } = &handle.mode {
        // With strictly positive objectives, a zero query coordinate already
        // certifies the negative answer.
        if lower.is_positive() && y.coords().iter().any(|c| c.is_zero()) {
            return Ok(GapAnswer::NoneBelow);
        }
    }
    let refpoint = refpoint_provider()?;
    refpoint.check_dim(handle.k)?;
    let weights = (0..handle.k)
        .map(|i| {
            if y.get(i) > refpoint.get(i) {
                (y.get(i) - refpoint.get(i)).recip()
            } else {
                // Only reachable when y_i = y^r_i = 0 (integral mode).
                Rat::from_int(2)
            }
        })
        .collect();
    gap_via_rp_common(handle, y, alpha, refpoint, weights, NormKind::Infinity, solver)
}

/// The `p` used by [`gap_via_rp_pnorm`]: the smallest integer at least
/// `max { log k / log(1 + 1/(2M)), 2 k M q }`, where `q` is the largest
/// denominator among the components of `y`.
pub fn pnorm_gap_exponent(k: usize, bound_m: &Rat, y: &ObjectiveVector) -> Rat {
    let base = Rat::one() + (Rat::from_int(2) * bound_m).recip();
    let first = smallest_power_exceeding(&base, &Rat::from_int(k as i64), false);
    let q = y
        .coords()
        .iter()
        .map(|c| c.denom().clone())
        .max()
        .expect("nonempty");
    let second = (Rat::from_int(2 * k as i64) * bound_m * Rat::from_bigint(q)).ceil();
    Rat::from_int(first as i64).max(second)
}

/// Gap with factor `alpha` from a `beta`-approximate reference point solver
/// for the weighted l^p or cornered p-norm, `beta = alpha^2 / (2 alpha - 1)`.
/// The exponent is chosen so that integer arithmetic stays exact and the
/// witness argument closes.
pub fn gap_via_rp_pnorm(
    handle: &InstanceHandle,
    y: &ObjectiveVector,
    alpha: &Rat,
    refpoint_provider: impl FnOnce() -> Result<ObjectiveVector>,
    solver: &RpApproxSolver,
    family: NormFamily,
) -> Result<GapAnswer> {
    check_gap_preconditions(alpha, solver.factor())?;
    y.check_dim(handle.k)?;
    if let ObjectiveMode::StrictlyPositive { lower } = &handle.mode {
        if lower.is_positive() && y.coords().iter().any(|c| c.is_zero()) {
            return Ok(GapAnswer::NoneBelow);
        }
    }
    let refpoint = refpoint_provider()?;
    refpoint.check_dim(handle.k)?;
    let p = pnorm_gap_exponent(handle.k, &handle.bound_m, y);
    let weights = (0..handle.k)
        .map(|i| {
            if y.get(i) > refpoint.get(i) {
                (y.get(i) - refpoint.get(i)).recip()
            } else {
                Rat::from_int(2)
            }
        })
        .collect();
    gap_via_rp_common(handle, y, alpha, refpoint, weights, family.kind(p), solver)
}

/// Norm family selector for [`gap_via_cp`], covering all three families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GapNorm {
    Infinity,
    Family(NormFamily),
}

/// Solves Gap with factor `alpha` from a compromise programming solver with
/// factor `beta <= sqrt(alpha^2 / (2 alpha - 1))` (checked as
/// `beta^2 <= alpha^2 / (2 alpha - 1)`, exactly).
///
/// The reference point comes from `k` unit-weight compromise solves; the
/// compromise solver then acts as a `beta^2`-approximate reference point
/// solver for that point, and the reference-point route finishes the job.
pub fn gap_via_cp(
    handle: &InstanceHandle,
    y: &ObjectiveVector,
    alpha: &Rat,
    cp_solver: &CpApproxSolver,
    norm: GapNorm,
) -> Result<GapAnswer> {
    let beta = cp_solver.factor().clone();
    let beta_sq = beta.clone() * beta.clone();
    check_gap_preconditions(alpha, &beta_sq)?;
    y.check_dim(handle.k)?;
    let k = handle.k;

    // A1: per-coordinate unit-weight compromise solves pin the reference
    // point between ideal / beta and ideal.
    let mut refpoint_coords = Vec::with_capacity(k);
    for i in 0..k {
        let mut unit = vec![Rat::zero(); k];
        unit[i] = Rat::one();
        let kind = match norm {
            GapNorm::Infinity => NormKind::Infinity,
            GapNorm::Family(family) => {
                family.kind(pnorm_gap_exponent(k, &handle.bound_m, y))
            }
        };
        let unit_norm = Norm::new_allow_zero_weights(kind, unit)?;
        let approx = cp_solver.solve(&unit_norm)?;
        if !handle.contains(&approx) {
            return Err(Error::ContractViolation(format!(
                "compromise solver returned the unattainable point {:?}",
                approx
            )));
        }
        refpoint_coords.push((approx.get(i) / &beta).ceil());
    }
    let refpoint = ObjectiveVector::new(refpoint_coords)?;
    let a1 = move || Ok(refpoint);

    // A2: the compromise solver is a beta^2-approximate reference point
    // solver for the A1 reference point.
    let a2 = RpApproxSolver::new(beta_sq, |ctx: &ReferenceContext| {
        cp_solver.solve(&ctx.norm)
    });

    match norm {
        GapNorm::Infinity => gap_via_rp_inf(handle, y, alpha, a1, &a2),
        GapNorm::Family(family) => gap_via_rp_pnorm(handle, y, alpha, a1, &a2, family),
    }
}

/// Reference point approximation from a weighted sum solver: one weighted sum
/// call gives a `k * factor` approximation for the weighted infinity norm.
pub fn rp_via_weighted_sum(
    ctx: &ReferenceContext,
    ws_solver: &WeightedSumSolver,
) -> Result<ObjectiveVector> {
    if !matches!(ctx.norm.kind(), NormKind::Infinity) {
        return Err(Error::InvalidParameter(
            "the weighted sum route is stated for the infinity norm".into(),
        ));
    }
    debug_assert_eq!(ctx.sense, Sense::Min);
    ws_solver.solve(ctx.norm.weights())
}

/// Grid coordinates for the Gap-based Pareto set construction: 0 and the
/// geometric ladder `alpha^j` spanning the attainable value range, extended
/// one ratio past the bound so every Pareto point has a cell strictly above it.
pub fn gap_grid_coordinates(
    mode: &ObjectiveMode,
    bound_m: &Rat,
    alpha: &Rat,
) -> Vec<Rat> {
    let mut coords = Vec::new();
    let top = alpha * bound_m;
    match mode {
        ObjectiveMode::Integral => {
            // Integral objectives make values in (0, 1) impossible, so the
            // ladder starts at 1 and 0 is queried explicitly.
            coords.push(Rat::zero());
            let mut value = Rat::one();
            loop {
                coords.push(value.clone());
                if value >= top {
                    break;
                }
                value = value * alpha.clone();
            }
        }
        ObjectiveMode::StrictlyPositive { lower } => {
            // Descend below the positivity floor so small Pareto coordinates
            // still have a grid value at most alpha times themselves.
            let floor = alpha * lower;
            let mut start = Rat::one();
            while start > floor {
                start = start / alpha.clone();
            }
            let mut value = start;
            loop {
                coords.push(value.clone());
                if value >= top {
                    break;
                }
                value = value * alpha.clone();
            }
        }
    }
    coords
}

/// Builds an approximate Pareto set by querying a Gap oracle over the
/// geometric grid. With a valid `Gap(alpha)` oracle the output is an
/// `alpha^2`-approximate Pareto set.
pub fn epsilon_pareto_via_gap(
    handle: &InstanceHandle,
    gap: impl Fn(&ObjectiveVector) -> Result<GapAnswer>,
    alpha: &Rat,
) -> Result<ApproxParetoSet> {
    if alpha <= &Rat::one() {
        return Err(Error::InvalidParameter(format!(
            "alpha = {} must be > 1",
            alpha
        )));
    }
    let coords = gap_grid_coordinates(&handle.mode, &handle.bound_m, alpha);
    let k = handle.k;
    let mut witnesses: Vec<ObjectiveVector> = Vec::new();
    let mut seen: std::collections::HashSet<ObjectiveVector> = std::collections::HashSet::new();
    let mut provenance: Vec<Provenance> = Vec::new();
    let mut cell = vec![0usize; k];
    let mut call = 0usize;
    loop {
        let y = ObjectiveVector::new(cell.iter().map(|&i| coords[i].clone()).collect())?;
        match gap(&y)? {
            GapAnswer::Witness(w) => {
                if !w.le(&y) {
                    return Err(Error::ContractViolation(format!(
                        "gap oracle returned witness {:?} above the query {:?}",
                        w, y
                    )));
                }
                if seen.insert(w.clone()) {
                    witnesses.push(w);
                    provenance.push(Provenance::GridCell {
                        cell: cell.clone(),
                        oracle_call: call,
                    });
                }
            }
            GapAnswer::NoneBelow => {}
        }
        call += 1;
        // Odometer over the k-fold grid product.
        let mut dim = 0;
        loop {
            if dim == k {
                let filtered = pareto_filter(&witnesses, Sense::Min);
                let (points, provenance): (Vec<_>, Vec<_>) = witnesses
                    .into_iter()
                    .zip(provenance)
                    .filter(|(w, _)| filtered.contains(w))
                    .unzip();
                return Ok(ApproxParetoSet::new(alpha * alpha, points, provenance));
            }
            cell[dim] += 1;
            if cell[dim] < coords.len() {
                break;
            }
            cell[dim] = 0;
            dim += 1;
        }
    }
}

/// Largest `delta` with `(1 + delta)^2 (2 eps + 1) <= (1 + eps)^2`, i.e. the
/// compromise-programming solver accuracy sufficient for a `Gap(1 + eps)`
/// call. Exact when the bound is a rational square, otherwise certified by
/// the square predicate at resolution 2^-64.
pub fn fptas_equivalence_delta(eps: &Rat) -> Result<Rat> {
    if !eps.is_positive() {
        return Err(Error::InvalidParameter(format!(
            "eps = {} must be > 0",
            eps
        )));
    }
    let one = Rat::one();
    let alpha = &one + eps;
    let beta_sq = (&alpha * &alpha) / (Rat::from_int(2) * eps + Rat::one());
    if let Some(beta) = beta_sq.sqrt_exact() {
        return Ok(beta - one);
    }
    let holds = |delta: &Rat| {
        let b = &one + delta;
        &(&b * &b) * &(Rat::from_int(2) * eps + Rat::one()) <= &alpha * &alpha
    };
    let mut lo = Rat::zero();
    let mut hi = eps.clone();
    debug_assert!(holds(&lo) && !holds(&hi));
    let resolution = Rat::from_big(
        num_bigint::BigInt::from(1),
        num_bigint::BigInt::from(1) << crate::norm::RESOLUTION_BITS,
    );
    while &hi - &lo > resolution {
        let mid = (&lo + &hi) / Rat::from_int(2);
        if holds(&mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::explicit::{brute_rp_optimum, gap_oracle_exact};
    use crate::norm::{eval_norm, NormValue};

    fn v(coords: &[i64]) -> ObjectiveVector {
        ObjectiveVector::from_ints(coords)
    }

    fn routes() -> ExplicitInstance {
        ExplicitInstance::from_int_rows(&[&[10, 1], &[6, 6], &[1, 10]])
    }

    fn unit_inf(k: usize) -> Norm {
        Norm::unit_infinity(k)
    }

    #[test]
    fn select_rp_examples() {
        let inst = routes();
        let set = ApproxParetoSet::exact(&inst, Sense::Min);
        let ctx = ReferenceContext::new(v(&[1, 1]), unit_inf(2), Sense::Min).unwrap();
        assert_eq!(select_rp_from_pareto(&set, &ctx).unwrap(), v(&[6, 6]));

        let singleton = ApproxParetoSet::from_points(Rat::one(), vec![v(&[4, 4])]);
        assert_eq!(select_rp_from_pareto(&singleton, &ctx).unwrap(), v(&[4, 4]));

        // alpha = 2 set {(2,2)} for an instance also containing (1,1):
        // r((2,2)) <= 2 * r((1,1)) at the origin refpoint.
        let inst2 = ExplicitInstance::from_int_rows(&[&[1, 1], &[2, 2]]);
        let set2 = ApproxParetoSet::from_points(Rat::from_int(2), vec![v(&[2, 2])]);
        assert!(set2.is_valid_for(&inst2, Sense::Min));
        let ctx0 = ReferenceContext::new(v(&[0, 0]), unit_inf(2), Sense::Min).unwrap();
        let chosen = select_rp_from_pareto(&set2, &ctx0).unwrap();
        let r_chosen = crate::norm::ref_objective(&ctx0, &chosen).unwrap();
        let (_, r_opt) = brute_rp_optimum(&inst2, &ctx0).unwrap();
        assert!(r_chosen.hi() <= &(Rat::from_int(2) * r_opt.lo()));
    }

    #[test]
    fn approx_cp_examples() {
        let inst = routes();
        let set = ApproxParetoSet::exact(&inst, Sense::Min);
        let (refpoint, answer) = approx_cp_via_pareto(&set, &unit_inf(2)).unwrap();
        assert_eq!(refpoint, v(&[1, 1]));
        assert_eq!(answer, v(&[6, 6]));

        let set2 = ApproxParetoSet::from_points(
            Rat::from_int(2),
            vec![v(&[2, 2]), v(&[10, 1]), v(&[1, 10])],
        );
        let (refpoint, _) = approx_cp_via_pareto(&set2, &unit_inf(2)).unwrap();
        assert_eq!(refpoint, v(&[1, 1]));

        let singleton = ApproxParetoSet::from_points(Rat::from_int(2), vec![v(&[4, 4])]);
        let (refpoint, answer) = approx_cp_via_pareto(&singleton, &unit_inf(2)).unwrap();
        assert_eq!(refpoint, v(&[2, 2]));
        assert_eq!(answer, v(&[4, 4]));
    }

    #[test]
    fn weight_construction_examples() {
        let inst = ExplicitInstance::from_int_rows(&[&[2, 1], &[1, 2]]);
        let wc = weight_for_pareto_point(&inst, &v(&[2, 1]), &v(&[0, 0]), NormFamily::CorneredP)
            .unwrap();
        assert_eq!(wc.weights, vec![Rat::new(1, 2), Rat::one()]);
        assert_eq!(wc.p_threshold, Rat::from_int(4));
        // p = 5: (2,1) is strictly closer to the origin than (1,2).
        let norm = wc.norm_at(Rat::from_int(5)).unwrap();
        let d_target = eval_norm(&norm, &v(&[2, 1])).unwrap();
        let d_other = eval_norm(&norm, &v(&[1, 2])).unwrap();
        assert_eq!(d_target, NormValue::Exact(Rat::new(7, 5)));
        assert_eq!(d_other, NormValue::Exact(Rat::new(5, 2)));

        // Touching coordinate gets weight 1 + k.
        let inst2 = ExplicitInstance::from_int_rows(&[&[0, 2], &[2, 0]]);
        let wc2 = weight_for_pareto_point(&inst2, &v(&[0, 2]), &v(&[0, 0]), NormFamily::CorneredP)
            .unwrap();
        assert_eq!(wc2.weights[0], Rat::from_int(3));

        // k = 1: a single criterion, weight 1/(y - y^r), distance exactly 1.
        let inst1 = ExplicitInstance::from_int_rows(&[&[4], &[7]]);
        let wc1 =
            weight_for_pareto_point(&inst1, &v(&[4]), &v(&[0]), NormFamily::Lp).unwrap();
        assert_eq!(wc1.weights, vec![Rat::new(1, 4)]);
    }

    #[test]
    fn weight_construction_rejects_bad_inputs() {
        let inst = ExplicitInstance::from_int_rows(&[&[2, 1], &[1, 2], &[3, 3]]);
        assert!(matches!(
            weight_for_pareto_point(&inst, &v(&[3, 3]), &v(&[0, 0]), NormFamily::Lp),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            weight_for_pareto_point(&inst, &v(&[2, 1]), &v(&[2, 2]), NormFamily::Lp),
            Err(Error::InfeasibleRefpoint { .. })
        ));
    }

    #[test]
    fn gap_via_rp_inf_worked_example() {
        let inst = routes();
        let handle = InstanceHandle::explicit(&inst);
        let solver = RpApproxSolver::exact_brute(&inst);
        let two = Rat::from_int(2);

        let answer = gap_via_rp_inf(&handle, &v(&[7, 7]), &two, || Ok(v(&[1, 1])), &solver)
            .unwrap();
        assert_eq!(answer, GapAnswer::Witness(v(&[6, 6])));

        // Zero-coordinate branch: lambda_1 = 2 on the touching zero.
        let answer = gap_via_rp_inf(&handle, &v(&[0, 5]), &two, || Ok(v(&[0, 0])), &solver)
            .unwrap();
        assert_eq!(answer, GapAnswer::NoneBelow);

        let answer = gap_via_rp_inf(&handle, &v(&[2, 2]), &two, || Ok(v(&[1, 1])), &solver)
            .unwrap();
        assert_eq!(answer, GapAnswer::NoneBelow);
    }

    #[test]
    fn gap_via_rp_pnorm_examples() {
        // k = 2, M = 10, q = 1: p = max{ceil-log term, 40} = 40.
        let inst = routes();
        assert_eq!(
            pnorm_gap_exponent(2, inst.bound_m(), &v(&[7, 7])),
            Rat::from_int(40)
        );

        let handle = InstanceHandle::explicit(&inst);
        let solver = RpApproxSolver::exact_brute(&inst);
        let two = Rat::from_int(2);
        for family in [NormFamily::CorneredP, NormFamily::Lp] {
            let answer = gap_via_rp_pnorm(
                &handle,
                &v(&[7, 7]),
                &two,
                || Ok(v(&[1, 1])),
                &solver,
                family,
            )
            .unwrap();
            assert_eq!(answer, GapAnswer::Witness(v(&[6, 6])), "{:?}", family);
            let answer = gap_via_rp_pnorm(
                &handle,
                &v(&[2, 2]),
                &two,
                || Ok(v(&[1, 1])),
                &solver,
                family,
            )
            .unwrap();
            assert_eq!(answer, GapAnswer::NoneBelow, "{:?}", family);
        }
    }

    #[test]
    fn gap_factor_precondition() {
        let inst = routes();
        let handle = InstanceHandle::explicit(&inst);
        // A solver claiming factor 2 is too weak for alpha = 2 (beta = 4/3).
        let weak = RpApproxSolver::new(Rat::from_int(2), |_| Ok(v(&[6, 6])));
        assert!(gap_via_rp_inf(&handle, &v(&[7, 7]), &Rat::from_int(2), || Ok(v(&[1, 1])), &weak)
            .is_err());
        // The boundary beta = 4/3 itself is accepted.
        let boundary = RpApproxSolver::new(Rat::new(4, 3), |ctx| {
            crate::explicit::brute_rp_optimum_unchecked(&routes(), ctx).map(|(y, _)| y)
        });
        assert!(gap_via_rp_inf(
            &handle,
            &v(&[7, 7]),
            &Rat::from_int(2),
            || Ok(v(&[1, 1])),
            &boundary
        )
        .is_ok());
    }

    #[test]
    fn gap_via_cp_examples() {
        let inst = routes();
        let handle = InstanceHandle::explicit(&inst);
        let cp = CpApproxSolver::exact_brute(&inst);
        let two = Rat::from_int(2);
        let answer = gap_via_cp(&handle, &v(&[7, 7]), &two, &cp, GapNorm::Infinity).unwrap();
        assert_eq!(answer, GapAnswer::Witness(v(&[6, 6])));
        let answer = gap_via_cp(&handle, &v(&[2, 2]), &two, &cp, GapNorm::Infinity).unwrap();
        assert_eq!(answer, GapAnswer::NoneBelow);
        let answer = gap_via_cp(
            &handle,
            &v(&[7, 7]),
            &two,
            &cp,
            GapNorm::Family(NormFamily::CorneredP),
        )
        .unwrap();
        assert_eq!(answer, GapAnswer::Witness(v(&[6, 6])));
    }

    #[test]
    fn gap_via_cp_factor_precondition() {
        // alpha = 2 admits beta^2 <= 4/3. A compromise solver declaring
        // 13/12 has beta^2 = 169/144 <= 192/144 and is accepted; 7/6 has
        // beta^2 = 49/36 > 48/36 and is rejected.
        let inst = routes();
        let handle = InstanceHandle::explicit(&inst);
        let two = Rat::from_int(2);
        let accepted = CpApproxSolver::new(Rat::new(13, 12), |norm| {
            crate::explicit::brute_cp_optimum(&routes(), norm, Sense::Min).map(|(y, _)| y)
        });
        assert!(gap_via_cp(&handle, &v(&[7, 7]), &two, &accepted, GapNorm::Infinity).is_ok());
        let rejected = CpApproxSolver::new(Rat::new(7, 6), |norm| {
            crate::explicit::brute_cp_optimum(&routes(), norm, Sense::Min).map(|(y, _)| y)
        });
        assert!(matches!(
            gap_via_cp(&handle, &v(&[7, 7]), &two, &rejected, GapNorm::Infinity),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn weighted_sum_route() {
        let inst = routes();
        let ws = WeightedSumSolver::exact_brute(&inst);
        let ctx = ReferenceContext::new(v(&[1, 1]), unit_inf(2), Sense::Min).unwrap();
        let y = rp_via_weighted_sum(&ctx, &ws).unwrap();
        // Weighted sums 11, 12, 11: ties break lexicographically.
        assert_eq!(y, v(&[1, 10]));
        let r = crate::norm::ref_objective(&ctx, &y).unwrap();
        let (_, opt) = brute_rp_optimum(&inst, &ctx).unwrap();
        // k * alpha bound with k = 2 and an exact solver.
        assert!(r.hi() <= &(Rat::from_int(2) * opt.lo()));

        let single = ExplicitInstance::from_int_rows(&[&[5, 5]]);
        let ws = WeightedSumSolver::exact_brute(&single);
        assert_eq!(rp_via_weighted_sum(&ctx, &ws).unwrap(), v(&[5, 5]));
    }

    #[test]
    fn grid_construction_examples() {
        let inst = routes();
        let handle = InstanceHandle::explicit(&inst);
        let alpha = Rat::new(11, 10);
        let set = epsilon_pareto_via_gap(
            &handle,
            |y| gap_oracle_exact(&inst, y, &alpha),
            &alpha,
        )
        .unwrap();
        assert_eq!(set.alpha, Rat::new(121, 100));
        assert!(set.is_valid_for(&inst, Sense::Min));

        let single = ExplicitInstance::from_int_rows(&[&[5, 5]]);
        let handle = InstanceHandle::explicit(&single);
        let set = epsilon_pareto_via_gap(
            &handle,
            |y| gap_oracle_exact(&single, y, &Rat::from_int(2)),
            &Rat::from_int(2),
        )
        .unwrap();
        assert_eq!(set.points(), &[v(&[5, 5])]);

        let tiny = ExplicitInstance::from_int_rows(&[&[1, 1]]);
        let handle = InstanceHandle::explicit(&tiny);
        let set = epsilon_pareto_via_gap(
            &handle,
            |y| gap_oracle_exact(&tiny, y, &Rat::from_int(2)),
            &Rat::from_int(2),
        )
        .unwrap();
        assert_eq!(set.points(), &[v(&[1, 1])]);
    }

    #[test]
    fn cycle_closes_on_routes() {
        // Pareto -> RP -> Gap -> Pareto with factor alpha^2 per loop.
        let inst = routes();
        let handle = InstanceHandle::explicit(&inst);
        let solver = RpApproxSolver::exact_brute(&inst);
        let alpha = Rat::from_int(2);
        let set = epsilon_pareto_via_gap(
            &handle,
            |y| gap_via_rp_inf(&handle, y, &alpha, || Ok(v(&[1, 1])), &solver),
            &alpha,
        )
        .unwrap();
        assert!(set.is_valid_for(&inst, Sense::Min));
        let ctx = ReferenceContext::new(v(&[1, 1]), unit_inf(2), Sense::Min).unwrap();
        let chosen = select_rp_from_pareto(&set, &ctx).unwrap();
        let r = crate::norm::ref_objective(&ctx, &chosen).unwrap();
        let (_, opt) = brute_rp_optimum(&inst, &ctx).unwrap();
        assert!(r.hi() <= &(&set.alpha * opt.lo()));
    }

    #[test]
    fn delta_for_eps() {
        // eps = 1: beta^2 = 4/3, delta certified by (1+delta)^2 * 3 <= 4.
        let delta = fptas_equivalence_delta(&Rat::from_int(1)).unwrap();
        let lhs = (Rat::one() + delta.clone()).pow(2) * Rat::from_int(3);
        assert!(lhs <= Rat::from_int(4));
        assert!(delta > Rat::new(15, 100) && delta < Rat::new(16, 100));

        // delta <= eps always.
        for eps in [Rat::new(1, 10), Rat::one(), Rat::from_int(3)] {
            let delta = fptas_equivalence_delta(&eps).unwrap();
            assert!(delta <= eps);
        }

        // eps = 3: (1 + delta)^2 = 16/7.
        let delta = fptas_equivalence_delta(&Rat::from_int(3)).unwrap();
        let lhs = (Rat::one() + delta.clone()).pow(2) * Rat::from_int(7);
        assert!(lhs <= Rat::from_int(16));
        let hi = delta + Rat::from_big(num_bigint::BigInt::from(1), num_bigint::BigInt::from(1) << 32);
        assert!((Rat::one() + hi).pow(2) * Rat::from_int(7) > Rat::from_int(16));
    }

    #[test]
    fn thinned_sets_are_valid() {
        let inst = ExplicitInstance::from_int_rows(&[
            &[10, 1],
            &[9, 2],
            &[6, 6],
            &[2, 9],
            &[1, 10],
        ]);
        for alpha in [Rat::new(11, 10), Rat::from_int(2), Rat::from_int(5)] {
            let set = thin_pareto_set(&inst, Sense::Min, &alpha);
            assert!(set.is_valid_for(&inst, Sense::Min), "alpha = {}", alpha);
        }
        // Coarse factors actually thin.
        let coarse = thin_pareto_set(&inst, Sense::Min, &Rat::from_int(10));
        assert!(coarse.len() < 5);
    }
}
