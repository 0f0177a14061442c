//! Maximization counterparts of the reference point machinery, and the two
//! counterexample families separating maximization from minimization.
//!
//! For maximization the objective is `r(y) = ||y^r|| - ||y^r - y||`, the
//! ideal point takes per-coordinate maxima, feasible reference points sit at
//! or above it, and a Gap witness must dominate the query from above.

use crate::error::{Error, Result};
use crate::explicit::{brute_rp_optimum_unchecked, ideal_point, ExplicitInstance};
use crate::norm::{
    compare_ref_objective, ref_objective, Norm, NormCmp, NormKind, NormValue, ReferenceContext,
};
use crate::rational::Rat;
use crate::reductions::{ApproxParetoSet, InstanceHandle};
use crate::vector::{ObjectiveVector, Sense};
use serde::{Deserialize, Serialize};

/// Answer to a maximization Gap query: an attainable point at or above `y`,
/// or the certificate that nothing reaches `alpha * y`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum MaxGapAnswer {
    Witness(ObjectiveVector),
    NoneAbove,
}

/// The maximization reference objective `||y^r|| - ||y^r - y||`.
/// May be negative at points far from a transient reference point; for
/// feasible reference points it is nonnegative on attainable vectors.
pub fn max_ref_objective(ctx: &ReferenceContext, y: &ObjectiveVector) -> Result<NormValue> {
    debug_assert_eq!(ctx.sense, Sense::Max);
    ref_objective(ctx, y)
}

/// An approximate maximization reference point solver: returns `y'` with
/// `r(y') >= max r / factor`.
pub struct MaxRpSolver<'a> {
    factor: Rat,
    solve: crate::reductions::SolveFn<'a, ReferenceContext>,
}

impl<'a> MaxRpSolver<'a> {
    pub fn new(
        factor: Rat,
        solve: impl Fn(&ReferenceContext) -> Result<ObjectiveVector> + 'a,
    ) -> Self {
        assert!(factor >= Rat::one());
        MaxRpSolver {
            factor,
            solve: Box::new(solve),
        }
    }

    pub fn exact_brute(inst: &'a ExplicitInstance) -> Self {
        MaxRpSolver::new(Rat::one(), move |ctx| {
            brute_rp_optimum_unchecked(inst, ctx).map(|(y, _)| y)
        })
    }

    pub fn factor(&self) -> &Rat {
        &self.factor
    }

    pub fn solve(&self, ctx: &ReferenceContext) -> Result<ObjectiveVector> {
        (self.solve)(ctx)
    }
}

/// Best point of an approximate Pareto set under the maximization reference
/// objective. If the set has factor `alpha`, the result is within `1/alpha`
/// of the optimum, for any monotone norm and feasible reference point.
///
/// Selection doubles as the maximization reference point reduction;
/// [`max_rp_via_pareto`] is the same operation under its reduction name.
pub fn max_select_from_pareto(
    approx_set: &ApproxParetoSet,
    ctx: &ReferenceContext,
) -> Result<ObjectiveVector> {
    if approx_set.is_empty() {
        return Err(Error::EmptySet);
    }
    debug_assert_eq!(ctx.sense, Sense::Max);
    let mut sorted: Vec<&ObjectiveVector> = approx_set.points().iter().collect();
    sorted.sort();
    let mut best = sorted[0];
    for p in &sorted[1..] {
        if compare_ref_objective(ctx, p, best)? == NormCmp::Greater {
            best = p;
        }
    }
    Ok(best.clone())
}

/// Reference point approximation from an approximate Pareto set, factor
/// `alpha`: selection under the given (feasible) reference point.
pub fn max_rp_via_pareto(
    approx_set: &ApproxParetoSet,
    ctx: &ReferenceContext,
) -> Result<ObjectiveVector> {
    max_select_from_pareto(approx_set, ctx)
}

/// Compromise solution from an approximate Pareto set without the ideal
/// point: per-coordinate maxima of the set, scaled up by `alpha` and rounded,
/// give a feasible reference point; selecting the best set point against it
/// is an `alpha^2`-approximation to the compromise optimum.
pub fn max_cp_via_pareto(
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
                let max = approx_set
                    .points()
                    .iter()
                    .map(|p| p.get(i))
                    .max()
                    .expect("nonempty")
                    .clone();
                (&approx_set.alpha * &max).ceil()
            })
            .collect(),
    )?;
    let ctx = ReferenceContext::new(refpoint.clone(), norm.clone(), Sense::Max)?;
    let answer = max_select_from_pareto(approx_set, &ctx)?;
    Ok((refpoint, answer))
}

/// Gap for maximization from a single reference point solve: the reference
/// point is `c * y` with `c = max_i M / y_i` over the support of `y`, the
/// weights are `1 / y_i` on the support and zero elsewhere, and the witness
/// test is `r(y') >= r(y) = 1`.
pub fn max_gap_via_rp(
    handle: &InstanceHandle,
    y: &ObjectiveVector,
    alpha: &Rat,
    solver: &MaxRpSolver,
    bound_m: &Rat,
) -> Result<MaxGapAnswer> {
    if alpha <= &Rat::one() {
        return Err(Error::InvalidParameter(format!(
            "alpha = {} must be > 1",
            alpha
        )));
    }
    if solver.factor() > alpha {
        return Err(Error::InvalidParameter(format!(
            "solver factor {} exceeds the gap factor {}",
            solver.factor(),
            alpha
        )));
    }
    y.check_dim(handle.k)?;
    if y.coords().iter().all(|c| c.is_zero()) {
        return Err(Error::InvalidParameter(
            "the zero vector is excluded from maximization gap queries".into(),
        ));
    }
    let support: Vec<usize> = (0..handle.k)
        .filter(|&i| !y.get(i).is_zero())
        .collect();
    let c = support
        .iter()
        .map(|&i| bound_m / y.get(i))
        .max()
        .expect("nonempty support");
    if c < Rat::one() {
        // Every supported coordinate of y exceeds the objective bound, so
        // nothing attainable reaches even y, let alone alpha * y.
        return Ok(MaxGapAnswer::NoneAbove);
    }
    let refpoint = y.scale(&c);
    let weights: Vec<Rat> = (0..handle.k)
        .map(|i| {
            if y.get(i).is_zero() {
                Rat::zero()
            } else {
                y.get(i).recip()
            }
        })
        .collect();
    let norm = Norm::new_allow_zero_weights(NormKind::Infinity, weights)?;
    let ctx = ReferenceContext::new(refpoint, norm, Sense::Max)?.verified();
    debug_assert_eq!(
        ref_objective(&ctx, y)?,
        NormValue::Exact(Rat::one()),
        "the query evaluates to 1 by construction"
    );
    let y_prime = solver.solve(&ctx)?;
    if !handle.contains(&y_prime) {
        return Err(Error::ContractViolation(format!(
            "maximization solver returned the unattainable point {:?}",
            y_prime
        )));
    }
    if compare_ref_objective(&ctx, &y_prime, y)?.is_ge() {
        if !y_prime.ge(y) {
            return Err(Error::ContractViolation(format!(
                "accepted witness {:?} is not componentwise above the query {:?}",
                y_prime, y
            )));
        }
        Ok(MaxGapAnswer::Witness(y_prime))
    } else {
        Ok(MaxGapAnswer::NoneAbove)
    }
}

/// The fixed weighted-sum counterexample: (1,1) is Pareto optimal but never
/// a weighted-sum maximizer.
pub fn ws_max_fixture() -> ExplicitInstance {
    ExplicitInstance::from_int_rows(&[&[1, 1], &[3, 0], &[0, 3]])
}

/// The pair of fixtures whose compromise values are indistinguishable up to
/// `1 + O(1/M)` although their approximate Pareto sets must differ: the
/// second instance drops the point `(1, M+1)`.
pub fn cp_max_fixture(m: i64, eps: &Rat) -> Result<(ExplicitInstance, ExplicitInstance)> {
    if !(eps.is_positive() && eps < &Rat::one()) {
        return Err(Error::InvalidParameter(format!(
            "eps = {} must lie in (0, 1)",
            eps
        )));
    }
    let m_rat = Rat::from_int(m);
    let damp = (Rat::one() + eps.clone()).pow(-2);
    let y = ObjectiveVector::new(vec![Rat::one(), &m_rat + &Rat::one()])?;
    let y_prime = ObjectiveVector::new(vec![damp.clone(), &m_rat + &damp])?;
    let y_dprime =
        ObjectiveVector::new(vec![Rat::one(), &m_rat / &Rat::from_int(2) + Rat::one()])?;
    let corner_x = ObjectiveVector::new(vec![&m_rat + &Rat::one(), Rat::zero()])?;
    let corner_y =
        ObjectiveVector::new(vec![Rat::zero(), Rat::from_int(2) * m_rat + Rat::one()])?;
    let with_y = ExplicitInstance::new_rational(
        vec![
            y.clone(),
            y_prime.clone(),
            y_dprime.clone(),
            corner_x.clone(),
            corner_y.clone(),
        ],
        None,
    )?;
    let without_y =
        ExplicitInstance::new_rational(vec![y_prime, y_dprime, corner_x, corner_y], None)?;
    Ok((with_y, without_y))
}

/// Result of sweeping a weighted-sum maximizer over the simplex of weights
/// on the fixed counterexample instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WsCounterexampleReport {
    pub grid_points: usize,
    /// How often (1,1) was returned (must be 0 for any valid maximizer).
    pub balanced_point_returned: usize,
    /// Whether (1,1) ever attains the weighted-sum maximum (exact check).
    pub balanced_point_ever_optimal: bool,
    /// Whether the solver outputs on the full instance and on the instance
    /// without (1,1) coincide on every grid weight.
    pub outputs_identical_without_point: bool,
}

/// Sweeps weight vectors `(t, 1-t)` over a grid and reports whether the
/// given weighted-sum maximizer can ever reveal the balanced point (1,1).
///
/// The solver is called as `solve(weights, instance)` and must return an
/// attainable point whose weighted sum is within the solver's factor of the
/// maximum.
pub fn ws_counterexample_check(
    solve: impl Fn(&[Rat], &ExplicitInstance) -> Result<ObjectiveVector>,
    grid_points: usize,
) -> Result<WsCounterexampleReport> {
    assert!(grid_points >= 2);
    let full = ws_max_fixture();
    let reduced = ExplicitInstance::from_int_rows(&[&[3, 0], &[0, 3]]);
    let balanced = ObjectiveVector::from_ints(&[1, 1]);
    let mut returned = 0usize;
    let mut ever_optimal = false;
    let mut identical = true;
    for t in 0..grid_points {
        let lambda = vec![
            Rat::new(t as i64, (grid_points - 1) as i64),
            Rat::one() - Rat::new(t as i64, (grid_points - 1) as i64),
        ];
        if lambda.iter().all(|l| l.is_zero()) {
            continue;
        }
        let on_full = solve(&lambda, &full)?;
        let on_reduced = solve(&lambda, &reduced)?;
        if on_full == balanced {
            returned += 1;
        }
        if on_full != on_reduced {
            identical = false;
        }
        // Exact optimality check: lambda . (1,1) against the best corner.
        let balanced_value = &lambda[0] + &lambda[1];
        let corner_value =
            (Rat::from_int(3) * lambda[0].clone()).max(Rat::from_int(3) * lambda[1].clone());
        if balanced_value >= corner_value {
            ever_optimal = true;
        }
    }
    Ok(WsCounterexampleReport {
        grid_points,
        balanced_point_returned: returned,
        balanced_point_ever_optimal: ever_optimal,
        outputs_identical_without_point: identical,
    })
}

/// Exact weighted-sum maximizer over an explicit instance; ties break to the
/// lexicographically smallest vector.
pub fn exact_ws_max(weights: &[Rat], inst: &ExplicitInstance) -> Result<ObjectiveVector> {
    let mut best: Option<(&ObjectiveVector, Rat)> = None;
    for p in inst.points() {
        let value: Rat = weights.iter().zip(p.coords()).map(|(w, c)| w * c).sum();
        match &best {
            None => best = Some((p, value)),
            Some((_, bv)) => {
                if value > *bv {
                    best = Some((p, value));
                }
            }
        }
    }
    Ok(best.expect("nonempty instance").0.clone())
}

/// Per-weight outcome of the compromise indistinguishability sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CpIndistRow {
    pub lambda: Vec<Rat>,
    /// max over the reduced instance of r, relative to r at the dropped point.
    pub best_ratio: Rat,
    pub covered_by: String,
}

/// Report of the compromise indistinguishability check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CpIndistReport {
    pub m: i64,
    pub eps: Rat,
    pub delta: Rat,
    pub rows: Vec<CpIndistRow>,
    /// In the regime `lambda_2 >= 2/3`, the damped neighbor approximates the
    /// dropped point within `1 + delta` on every grid weight.
    pub high_regime_ok: bool,
    /// In the regime `lambda_2 <= 2/3` (with `lambda_1 = 1`), the halfway
    /// point attains exactly the dropped point's value.
    pub low_regime_exact: bool,
    /// Smallest delta that would have sufficed on this grid, scaled by M.
    pub empirical_delta_times_m: Rat,
}

/// Sweeps weights with `||lambda||_inf = 1` over a grid and verifies that on
/// the reduced fixture some remaining point approximates the dropped point's
/// compromise value within `1 + delta`, in the two regimes the construction
/// separates. A compromise solver with that accuracy therefore cannot
/// certify the dropped point's presence.
pub fn cp_indistinguishability_check(
    m: i64,
    eps: &Rat,
    delta: &Rat,
    grid_points: usize,
) -> Result<CpIndistReport> {
    assert!(grid_points >= 2);
    if !delta.is_positive() {
        return Err(Error::InvalidParameter(format!(
            "delta = {} must be > 0",
            delta
        )));
    }
    let (with_y, without_y) = cp_max_fixture(m, eps)?;
    let ideal = ideal_point(&with_y, Sense::Max);
    debug_assert_eq!(ideal, ideal_point(&without_y, Sense::Max));
    let m_rat = Rat::from_int(m);
    let dropped = ObjectiveVector::new(vec![Rat::one(), &m_rat + &Rat::one()])?;
    debug_assert!(with_y.contains(&dropped) && !without_y.contains(&dropped));
    let damp = (Rat::one() + eps.clone()).pow(-2);
    let damped = ObjectiveVector::new(vec![damp.clone(), &m_rat + &damp])?;
    let halfway =
        ObjectiveVector::new(vec![Rat::one(), &m_rat / &Rat::from_int(2) + Rat::one()])?;

    let two_thirds = Rat::new(2, 3);
    let mut rows = Vec::new();
    let mut high_ok = true;
    let mut low_exact = true;
    let mut worst_gap = Rat::zero();

    let mut lambdas: Vec<Vec<Rat>> = Vec::new();
    for t in 0..=grid_points {
        let frac = Rat::new(t as i64, grid_points as i64);
        lambdas.push(vec![Rat::one(), frac.clone()]);
        lambdas.push(vec![frac, Rat::one()]);
    }
    for lambda in lambdas {
        if lambda.iter().all(|l| l.is_zero()) {
            continue;
        }
        let norm = Norm::new_allow_zero_weights(NormKind::Infinity, lambda.clone())?;
        let ctx = ReferenceContext::new(ideal.clone(), norm, Sense::Max)?.verified();
        let r_at = |z: &ObjectiveVector| -> Result<Rat> {
            match ref_objective(&ctx, z)? {
                NormValue::Exact(r) => Ok(r),
                NormValue::Interval { .. } => unreachable!("infinity norm is exact"),
            }
        };
        let r_dropped = r_at(&dropped)?;
        debug_assert!(r_dropped.is_positive());
        let r_damped = r_at(&damped)?;
        let r_half = r_at(&halfway)?;
        let best = without_y
            .points()
            .iter()
            .map(r_at)
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .max()
            .expect("nonempty");
        let best_ratio = &best / &r_dropped;

        let threshold = r_dropped.clone() / (Rat::one() + delta.clone());
        let covered_by: String;
        if lambda[1] >= two_thirds {
            if r_damped < threshold {
                high_ok = false;
            }
            covered_by = "damped-neighbor".into();
            // Track the delta this weight actually needs.
            if r_damped.is_positive() {
                let needed = &r_dropped / &r_damped - Rat::one();
                if needed > worst_gap {
                    worst_gap = needed;
                }
            }
        } else {
            if r_half != r_dropped {
                low_exact = false;
            }
            covered_by = "halfway-point".into();
        }
        rows.push(CpIndistRow {
            lambda,
            best_ratio,
            covered_by,
        });
    }
    Ok(CpIndistReport {
        m,
        eps: eps.clone(),
        delta: delta.clone(),
        rows,
        high_regime_ok: high_ok,
        low_regime_exact: low_exact,
        empirical_delta_times_m: worst_gap * Rat::from_int(m),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::explicit::brute_cp_optimum;

    fn v(coords: &[i64]) -> ObjectiveVector {
        ObjectiveVector::from_ints(coords)
    }

    fn unit_inf(k: usize) -> Norm {
        Norm::unit_infinity(k)
    }

    #[test]
    fn max_objective_examples() {
        let ctx = ReferenceContext::new(v(&[3, 3]), unit_inf(2), Sense::Max).unwrap();
        assert_eq!(
            max_ref_objective(&ctx, &v(&[1, 1])).unwrap(),
            NormValue::Exact(Rat::one())
        );
        // r at the reference point itself is the maximum attainable value.
        assert_eq!(
            max_ref_objective(&ctx, &v(&[3, 3])).unwrap(),
            NormValue::Exact(Rat::from_int(3))
        );
        // Argmax over the fixture is the balanced point.
        let inst = ws_max_fixture();
        let (best, value) = brute_rp_optimum_unchecked(&inst, &ctx.clone().verified()).unwrap();
        assert_eq!(best, v(&[1, 1]));
        assert_eq!(value, NormValue::Exact(Rat::one()));
    }

    #[test]
    fn select_from_pareto_max() {
        let inst = ws_max_fixture();
        let set = ApproxParetoSet::exact(&inst, Sense::Max);
        let ctx = ReferenceContext::new(v(&[3, 3]), unit_inf(2), Sense::Max).unwrap();
        assert_eq!(max_select_from_pareto(&set, &ctx).unwrap(), v(&[1, 1]));

        let singleton = ApproxParetoSet::from_points(Rat::one(), vec![v(&[2, 2])]);
        assert_eq!(max_select_from_pareto(&singleton, &ctx).unwrap(), v(&[2, 2]));

        // {(3,0),(0,3)} is NOT a valid 2-approximate Pareto set here: nothing
        // covers (1,1) from below within factor 2.
        let invalid = ApproxParetoSet::from_points(
            Rat::from_int(2),
            vec![v(&[3, 0]), v(&[0, 3])],
        );
        assert!(!invalid.is_valid_for(&inst, Sense::Max));
        // A valid 2-approximate set keeps the bound.
        let valid = crate::reductions::thin_pareto_set(&inst, Sense::Max, &Rat::from_int(2));
        assert!(valid.is_valid_for(&inst, Sense::Max));
        let chosen = max_select_from_pareto(&valid, &ctx).unwrap();
        let r_chosen = ref_objective(&ctx, &chosen).unwrap();
        let (_, opt) = brute_rp_optimum_unchecked(&inst, &ctx.clone().verified()).unwrap();
        assert!(
            r_chosen.lo().clone() * Rat::from_int(2) >= opt.hi().clone(),
            "within 1/alpha of the optimum"
        );
    }

    #[test]
    fn cp_via_pareto_max() {
        let inst = ws_max_fixture();
        let set = ApproxParetoSet::exact(&inst, Sense::Max);
        let (refpoint, answer) = max_cp_via_pareto(&set, &unit_inf(2)).unwrap();
        assert_eq!(refpoint, v(&[3, 3]));
        assert_eq!(answer, v(&[1, 1]));
        let (brute, _) = brute_cp_optimum(&inst, &unit_inf(2), Sense::Max).unwrap();
        assert_eq!(answer, brute);
    }

    #[test]
    fn max_gap_worked_example() {
        let inst = ws_max_fixture();
        let handle = InstanceHandle::explicit(&inst);
        let solver = MaxRpSolver::exact_brute(&inst);
        let m = Rat::from_int(3);
        let two = Rat::from_int(2);

        match max_gap_via_rp(&handle, &v(&[1, 1]), &two, &solver, &m).unwrap() {
            MaxGapAnswer::Witness(w) => assert_eq!(w, v(&[1, 1])),
            MaxGapAnswer::NoneAbove => panic!("expected a witness"),
        }

        // y = (4,4): nothing is >= (4,4), and nothing reaches (8,8) either.
        assert_eq!(
            max_gap_via_rp(&handle, &v(&[4, 4]), &two, &solver, &m).unwrap(),
            MaxGapAnswer::NoneAbove
        );

        // Zero coordinate: support {0}, weights (1/2, 0).
        match max_gap_via_rp(&handle, &v(&[2, 0]), &two, &solver, &m).unwrap() {
            MaxGapAnswer::Witness(w) => assert_eq!(w, v(&[3, 0])),
            MaxGapAnswer::NoneAbove => panic!("expected a witness"),
        }

        assert!(max_gap_via_rp(&handle, &v(&[0, 0]), &two, &solver, &m).is_err());
    }

    #[test]
    fn ws_counterexample_exact_solver() {
        let report = ws_counterexample_check(exact_ws_max, 100).unwrap();
        assert_eq!(report.balanced_point_returned, 0);
        assert!(!report.balanced_point_ever_optimal);
        assert!(report.outputs_identical_without_point);
    }

    #[test]
    fn ws_fixture_specific_weights() {
        let inst = ws_max_fixture();
        assert_eq!(
            exact_ws_max(&[Rat::one(), Rat::zero()], &inst).unwrap(),
            v(&[3, 0])
        );
        // (1,1) weights: corners score 3 > 2; lexicographic pick is (0,3).
        assert_eq!(
            exact_ws_max(&[Rat::one(), Rat::one()], &inst).unwrap(),
            v(&[0, 3])
        );
    }

    #[test]
    fn cp_fixture_points_exact() {
        let (with_y, without_y) = cp_max_fixture(1000, &Rat::new(1, 2)).unwrap();
        assert_eq!(with_y.points().len(), 5);
        assert_eq!(without_y.points().len(), 4);
        let damp = Rat::new(4, 9); // (3/2)^-2
        assert!(with_y
            .points()
            .iter()
            .any(|p| p.coords() == [Rat::one(), Rat::from_int(1001)]));
        assert!(with_y
            .points()
            .iter()
            .any(|p| p.coords() == [damp.clone(), Rat::from_int(1000) + damp.clone()]));
        assert!(with_y
            .points()
            .iter()
            .any(|p| p.coords() == [Rat::one(), Rat::from_int(501)]));
        assert!(with_y
            .points()
            .iter()
            .any(|p| p.coords() == [Rat::from_int(1001), Rat::zero()]));
        assert!(with_y
            .points()
            .iter()
            .any(|p| p.coords() == [Rat::zero(), Rat::from_int(2001)]));
        // Every (1+eps)-approximate Pareto set of the full fixture needs the
        // dropped point: without it, coverage fails at factor 3/2.
        let others = crate::reductions::ApproxParetoSet::from_points(
            Rat::new(3, 2),
            without_y.points().to_vec(),
        );
        assert!(!others.is_valid_for(&with_y, Sense::Max));
    }

    #[test]
    fn cp_indistinguishability_regimes() {
        let report =
            cp_indistinguishability_check(1000, &Rat::new(1, 2), &Rat::new(1, 100), 30).unwrap();
        assert!(report.high_regime_ok);
        assert!(report.low_regime_exact);
        // The needed accuracy really is on the order of 1/M.
        assert!(report.empirical_delta_times_m < Rat::from_int(10));
        assert!(report.empirical_delta_times_m.is_positive());

        // Specific weights from the construction.
        let (with_y, _) = cp_max_fixture(1000, &Rat::new(1, 2)).unwrap();
        let ideal = ideal_point(&with_y, Sense::Max);
        let dropped = ObjectiveVector::new(vec![Rat::one(), Rat::from_int(1001)]).unwrap();
        let damp = Rat::new(4, 9);
        let damped =
            ObjectiveVector::new(vec![damp.clone(), Rat::from_int(1000) + damp]).unwrap();
        let lam = |a: Rat, b: Rat| {
            Norm::new_allow_zero_weights(NormKind::Infinity, vec![a, b]).unwrap()
        };
        // lambda = (1/3, 1): the damped neighbor lands within the claimed ratio.
        let ctx = ReferenceContext::new(ideal.clone(), lam(Rat::new(1, 3), Rat::one()), Sense::Max)
            .unwrap();
        let r_dropped = ref_objective(&ctx, &dropped).unwrap();
        let r_damped = ref_objective(&ctx, &damped).unwrap();
        let ratio_minus_one =
            r_dropped.lo() / r_damped.lo() - Rat::one();
        assert!(ratio_minus_one.is_positive());
        assert!(ratio_minus_one < Rat::new(1, 100));
        // lambda = (1, 1/2): the halfway point ties the dropped point exactly.
        let ctx = ReferenceContext::new(ideal, lam(Rat::one(), Rat::new(1, 2)), Sense::Max)
            .unwrap();
        let r_dropped = ref_objective(&ctx, &dropped).unwrap();
        let halfway = ObjectiveVector::new(vec![Rat::one(), Rat::from_int(501)]).unwrap();
        let r_half = ref_objective(&ctx, &halfway).unwrap();
        assert_eq!(r_dropped, r_half);

        // A loose delta is trivially indistinguishable.
        let report =
            cp_indistinguishability_check(1000, &Rat::new(1, 2), &Rat::one(), 10).unwrap();
        assert!(report.high_regime_ok);
    }
}
