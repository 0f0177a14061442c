//! Cost scaling: turning the pseudopolynomial shortest-path solver into an
//! FPTAS for reference point and compromise solutions.
//!
//! Costs are scaled by `3n / (eps' L)` and floored, where `L` is a lower
//! bound on the optimum from one weighted sum call and
//! `eps' = eps / (1 + k/p)`. The scaled instance is solved exactly; the
//! returned path, evaluated at the original costs, is within `1 + eps` of
//! the optimum.

use crate::error::{Error, Result};
use crate::graph::{
    clamped_objective, graph_ideal_point, pseudopoly_sp_rp, shortest_path_weighted_sum,
    GraphInstance, SpSolution,
};
use crate::norm::{ref_objective, Norm, NormKind, ReferenceContext};
use crate::rational::Rat;
use crate::vector::{ObjectiveVector, Sense};
use serde::{Deserialize, Serialize};

/// Lower and upper bounds on the reference point optimum, with the weighted
/// sum path cost that witnesses them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub lower: Rat,
    pub upper: Rat,
    pub witness: ObjectiveVector,
}

/// Bounds from a single exact weighted sum solve: `L <= OPT <= kL` for the
/// infinity and cornered families (the cornered norm dominates `(1 + 1/p)`
/// times the weighted infinity norm, which absorbs the extra summand).
pub fn bounds_via_weighted_sum(inst: &GraphInstance, ctx: &ReferenceContext) -> Result<Bounds> {
    if matches!(ctx.norm.kind(), NormKind::Lp(_)) {
        return Err(Error::InvalidParameter(
            "bounds are computed for the infinity and cornered norms".into(),
        ));
    }
    let ideal = graph_ideal_point(inst)?;
    if !ctx.refpoint.le(&ideal) {
        let index = (0..inst.k())
            .find(|&i| ctx.refpoint.get(i) > ideal.get(i))
            .unwrap_or(0);
        return Err(Error::InfeasibleRefpoint { index });
    }
    let (_, cost) = shortest_path_weighted_sum(inst, ctx.norm.weights())?;
    let upper = clamped_objective(ctx, &cost)?;
    let lower = &upper / &Rat::from_int(inst.k() as i64);
    Ok(Bounds {
        lower,
        upper,
        witness: cost,
    })
}

/// A scaled copy of an instance: costs and reference point multiplied by
/// `3n / (eps' L)` and floored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledInstance {
    pub scale_factor: Rat,
    pub eps_prime: Rat,
    pub instance: GraphInstance,
    pub refpoint: ObjectiveVector,
}

/// `eps' = eps * (1 + k/p)^-1`; for the infinity norm (`p -> inf`) this is
/// `eps` itself.
pub fn eps_prime(eps: &Rat, k: usize, kind: &NormKind) -> Result<Rat> {
    if !eps.is_positive() {
        return Err(Error::InvalidParameter(format!("eps = {} must be > 0", eps)));
    }
    Ok(match kind {
        NormKind::Infinity => eps.clone(),
        NormKind::CorneredP(p) => {
            let k = Rat::from_int(k as i64);
            eps * &(p / &(p + &k))
        }
        NormKind::Lp(_) => {
            return Err(Error::InvalidParameter(
                "scaling is defined for the infinity and cornered norms".into(),
            ))
        }
    })
}

/// Scales costs and reference point by `3n / (eps' L)`, flooring to integers.
pub fn scale_instance(
    inst: &GraphInstance,
    refpoint: &ObjectiveVector,
    eps: &Rat,
    kind: &NormKind,
    lower_bound: &Rat,
) -> Result<ScaledInstance> {
    scale_instance_weighted(inst, refpoint, eps, kind, lower_bound, None)
}

/// Scaling with the norm weights folded into the costs first, so weighted
/// problems reduce to unit-weight ones on the scaled instance.
pub(crate) fn scale_instance_weighted(
    inst: &GraphInstance,
    refpoint: &ObjectiveVector,
    eps: &Rat,
    kind: &NormKind,
    lower_bound: &Rat,
    weights: Option<&[Rat]>,
) -> Result<ScaledInstance> {
    if !lower_bound.is_positive() {
        return Err(Error::InvalidParameter(format!(
            "lower bound {} must be > 0",
            lower_bound
        )));
    }
    refpoint.check_dim(inst.k())?;
    let ep = eps_prime(eps, inst.k(), kind)?;
    let scale_factor = Rat::from_int(3 * inst.n() as i64) / (ep.clone() * lower_bound.clone());
    let weight = |i: usize| weights.map_or_else(Rat::one, |w| w[i].clone());
    let costs = inst
        .edges()
        .iter()
        .map(|e| {
            ObjectiveVector::new(
                (0..inst.k())
                    .map(|i| (&scale_factor * &(weight(i) * e.cost.get(i).clone())).floor())
                    .collect(),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let scaled_ref = ObjectiveVector::new(
        (0..inst.k())
            .map(|i| (&scale_factor * &(weight(i) * refpoint.get(i).clone())).floor())
            .collect(),
    )?;
    Ok(ScaledInstance {
        scale_factor,
        eps_prime: ep,
        instance: inst.with_costs(costs)?,
        refpoint: scaled_ref,
    })
}

/// What a scaling run did: the bounds it used and the guarantee it claims.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalingCertificate {
    pub eps: Rat,
    pub eps_prime: Rat,
    pub lower_bound: Rat,
    pub scale_factor: Rat,
    pub scaled_upper_bound: Rat,
    pub guarantee: Rat,
}

fn unit_norm_like(kind: &NormKind, k: usize) -> Result<Norm> {
    Norm::new(kind.clone(), vec![Rat::one(); k])
}

fn zero_optimum_result(
    inst: &GraphInstance,
    ctx: &ReferenceContext,
    eps: &Rat,
) -> Result<(SpSolution, ScalingCertificate)> {
    let (path, cost) = shortest_path_weighted_sum(inst, ctx.norm.weights())?;
    let r_value = ref_objective(ctx, &cost)?;
    Ok((
        SpSolution {
            path,
            cost,
            r_value,
        },
        ScalingCertificate {
            eps: eps.clone(),
            eps_prime: eps_prime(eps, inst.k(), ctx.norm.kind())?,
            lower_bound: Rat::zero(),
            scale_factor: Rat::zero(),
            scaled_upper_bound: Rat::zero(),
            guarantee: Rat::one(),
        },
    ))
}

fn run_scaled(
    inst: &GraphInstance,
    ctx: &ReferenceContext,
    eps: &Rat,
    lower_bound: &Rat,
    cp_mode: bool,
) -> Result<(SpSolution, ScalingCertificate)> {
    let kind = ctx.norm.kind();
    let scaled = scale_instance_weighted(
        inst,
        &ctx.refpoint,
        eps,
        kind,
        lower_bound,
        Some(ctx.norm.weights()),
    )?;
    let scaled_refpoint = if cp_mode {
        // Compromise programming pins the reference point to the ideal point
        // of whatever instance is solved, so the scaled run uses the scaled
        // instance's own ideal point.
        graph_ideal_point(&scaled.instance)?
    } else {
        scaled.refpoint.clone()
    };
    let scaled_ctx =
        ReferenceContext::new(scaled_refpoint, unit_norm_like(kind, inst.k())?, Sense::Min)?
            .verified();
    // Any attainable value bounds the scaled optimum from above; one unit
    // weighted sum call supplies it.
    let (_, ws_cost) = shortest_path_weighted_sum(&scaled.instance, scaled_ctx.norm.weights())?;
    let scaled_upper = clamped_objective(&scaled_ctx, &ws_cost)?;
    let (scaled_sol, _) = pseudopoly_sp_rp(&scaled.instance, &scaled_ctx, Some(&scaled_upper))?;

    let cost = inst.path_cost(&scaled_sol.path);
    let r_value = ref_objective(ctx, &cost)?;
    Ok((
        SpSolution {
            path: scaled_sol.path,
            cost,
            r_value,
        },
        ScalingCertificate {
            eps: eps.clone(),
            eps_prime: scaled.eps_prime,
            lower_bound: lower_bound.clone(),
            scale_factor: scaled.scale_factor,
            scaled_upper_bound: scaled_upper,
            guarantee: Rat::one() + eps.clone(),
        },
    ))
}

/// FPTAS for the reference point shortest path problem: the returned path's
/// objective is at most `(1 + eps)` times the optimum.
pub fn fptas_rp_sp(
    inst: &GraphInstance,
    ctx: &ReferenceContext,
    eps: &Rat,
) -> Result<(SpSolution, ScalingCertificate)> {
    if !eps.is_positive() {
        return Err(Error::InvalidParameter(format!("eps = {} must be > 0", eps)));
    }
    let bounds = bounds_via_weighted_sum(inst, ctx)?;
    if bounds.lower.is_zero() {
        // The weighted sum witness already attains objective 0: optimal as is.
        return zero_optimum_result(inst, ctx, eps);
    }
    run_scaled(inst, ctx, eps, &bounds.lower, false)
}

/// FPTAS for compromise programming on shortest paths: reference point fixed
/// to the ideal point, which the scaled run recomputes on the scaled instance.
pub fn fptas_cp_sp(
    inst: &GraphInstance,
    norm: &Norm,
    eps: &Rat,
) -> Result<(SpSolution, ScalingCertificate)> {
    if !eps.is_positive() {
        return Err(Error::InvalidParameter(format!("eps = {} must be > 0", eps)));
    }
    let ideal = graph_ideal_point(inst)?;
    let ctx = ReferenceContext::new(ideal, norm.clone(), Sense::Min)?.verified();
    let bounds = bounds_via_weighted_sum(inst, &ctx)?;
    if bounds.lower.is_zero() {
        return zero_optimum_result(inst, &ctx, eps);
    }
    run_scaled(inst, &ctx, eps, &bounds.lower, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(coords: &[i64]) -> ObjectiveVector {
        ObjectiveVector::from_ints(coords)
    }

    fn parallel_routes() -> GraphInstance {
        GraphInstance::from_int_edges(
            2,
            2,
            0,
            1,
            &[(0, 1, &[10, 1]), (0, 1, &[6, 6]), (0, 1, &[1, 10])],
        )
    }

    fn inf_ctx(refpoint: &[i64]) -> ReferenceContext {
        ReferenceContext::new(
            ObjectiveVector::from_ints(refpoint),
            Norm::unit_infinity(2),
            Sense::Min,
        )
        .unwrap()
        .verified()
    }

    #[test]
    fn bounds_examples() {
        // Single edge (3,4): the only path, OPT = 4, L = 2, U = 4.
        let g = GraphInstance::from_int_edges(2, 2, 0, 1, &[(0, 1, &[3, 4])]);
        let b = bounds_via_weighted_sum(&g, &inf_ctx(&[0, 0])).unwrap();
        assert_eq!(b.lower, Rat::from_int(2));
        assert_eq!(b.upper, Rat::from_int(4));

        // Parallel routes, refpoint (1,1): OPT = 6 sits in [L, 2L].
        let b = bounds_via_weighted_sum(&parallel_routes(), &inf_ctx(&[1, 1])).unwrap();
        assert!(b.lower <= Rat::from_int(6));
        assert!(Rat::from_int(6) <= b.upper);
        assert_eq!(b.upper, Rat::from_int(2) * b.lower.clone());

        // k = 1: L = U = OPT.
        let g1 = GraphInstance::from_int_edges(2, 1, 0, 1, &[(0, 1, &[7]), (0, 1, &[9])]);
        let ctx = ReferenceContext::new(v(&[0]), Norm::unit_infinity(1), Sense::Min)
            .unwrap()
            .verified();
        let b = bounds_via_weighted_sum(&g1, &ctx).unwrap();
        assert_eq!(b.lower, Rat::from_int(7));
        assert_eq!(b.upper, Rat::from_int(7));
    }

    #[test]
    fn bounds_reject_infeasible_refpoint() {
        assert!(matches!(
            bounds_via_weighted_sum(&parallel_routes(), &inf_ctx(&[2, 0])),
            Err(Error::InfeasibleRefpoint { index: 0 })
        ));
    }

    #[test]
    fn scale_arithmetic_example() {
        // eps = 1, k = 2, p = 2 gives eps' = 1/2; with n = 3 and L = 4 the
        // factor is 9/2 and a cost of 7 scales to floor(63/2) = 31.
        let g = GraphInstance::from_int_edges(3, 2, 0, 2, &[(0, 1, &[7, 0]), (1, 2, &[0, 7])]);
        let kind = NormKind::CorneredP(Rat::from_int(2));
        let scaled =
            scale_instance(&g, &v(&[0, 0]), &Rat::one(), &kind, &Rat::from_int(4)).unwrap();
        assert_eq!(scaled.eps_prime, Rat::new(1, 2));
        assert_eq!(scaled.scale_factor, Rat::new(9, 2));
        assert_eq!(scaled.instance.edges()[0].cost.get(0), &Rat::from_int(31));
        // Zero reference point scales to zero.
        assert_eq!(scaled.refpoint, v(&[0, 0]));
    }

    #[test]
    fn eps_prime_formula() {
        assert_eq!(
            eps_prime(&Rat::one(), 2, &NormKind::CorneredP(Rat::from_int(2))).unwrap(),
            Rat::new(1, 2)
        );
        assert_eq!(eps_prime(&Rat::one(), 2, &NormKind::Infinity).unwrap(), Rat::one());
        assert!(eps_prime(&Rat::zero(), 2, &NormKind::Infinity).is_err());
    }

    #[test]
    fn scaling_sandwich_exact() {
        let g = GraphInstance::from_int_edges(
            4,
            2,
            0,
            3,
            &[(0, 1, &[3, 9]), (1, 3, &[14, 2]), (0, 3, &[50, 1])],
        );
        let kind = NormKind::CorneredP(Rat::from_int(3));
        let scaled =
            scale_instance(&g, &v(&[1, 1]), &Rat::new(1, 2), &kind, &Rat::new(7, 3)).unwrap();
        let t_inv = scaled.scale_factor.recip();
        for (e, se) in g.edges().iter().zip(scaled.instance.edges()) {
            for i in 0..2 {
                let c = e.cost.get(i);
                let cbar = se.cost.get(i);
                assert!(&(&t_inv * cbar) <= c);
                assert!(c < &(&t_inv * &(cbar + &Rat::one())));
            }
        }
        // Reference point bound: t^-1 ybar <= y^r < t^-1 ybar + eps' L / 3.
        let slack = scaled.eps_prime.clone() * Rat::new(7, 3) / Rat::from_int(3);
        for i in 0..2 {
            let y = Rat::one();
            let ybar = scaled.refpoint.get(i);
            assert!(&t_inv * ybar <= y);
            assert!(y < &t_inv * ybar + slack.clone());
        }
    }

    #[test]
    fn fptas_degenerate_and_small() {
        let g = parallel_routes();
        let ctx = inf_ctx(&[1, 1]);
        // Huge eps still returns a valid path within the (trivial) bound.
        let (sol, cert) = fptas_rp_sp(&g, &ctx, &Rat::from_int(1_000_000)).unwrap();
        let (opt, _) = pseudopoly_sp_rp(&g, &ctx, None).unwrap();
        assert!(
            sol.r_value.as_exact().unwrap()
                <= &(&cert.guarantee * opt.r_value.as_exact().unwrap())
        );

        // eps = 0.1 on a 3-point landscape cannot move the answer.
        let (sol, _) = fptas_rp_sp(&g, &ctx, &Rat::new(1, 10)).unwrap();
        assert_eq!(sol.cost, v(&[6, 6]));
    }

    #[test]
    fn fptas_zero_optimum() {
        let g = GraphInstance::from_int_edges(2, 2, 0, 1, &[(0, 1, &[0, 0]), (0, 1, &[5, 5])]);
        let (sol, cert) = fptas_rp_sp(&g, &inf_ctx(&[0, 0]), &Rat::new(1, 10)).unwrap();
        assert_eq!(sol.cost, v(&[0, 0]));
        assert_eq!(cert.lower_bound, Rat::zero());
    }

    #[test]
    fn fptas_cp_examples() {
        // Single path: returned with ratio 1.
        let g = GraphInstance::from_int_edges(3, 2, 0, 2, &[(0, 1, &[3, 4]), (1, 2, &[1, 1])]);
        let norm = Norm::cornered(Rat::from_int(2), vec![Rat::one(); 2]).unwrap();
        let (sol, _) = fptas_cp_sp(&g, &norm, &Rat::new(1, 2)).unwrap();
        assert_eq!(sol.cost, v(&[4, 5]));

        let (sol, _) =
            fptas_cp_sp(&parallel_routes(), &Norm::unit_infinity(2), &Rat::new(1, 10)).unwrap();
        assert_eq!(sol.cost, v(&[6, 6]));
    }
}
