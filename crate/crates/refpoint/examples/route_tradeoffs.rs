//! Three routes, two criteria: the weighted-sum blind spot and how a
//! reference point recovers the balanced route.
//!
//! Run with: cargo run --example route_tradeoffs

use refpoint::explicit::{
    brute_cp_optimum, brute_rp_optimum, exact_pareto_set, ideal_point, ExplicitInstance,
};
use refpoint::norm::{Norm, ReferenceContext};
use refpoint::reductions::WeightedSumSolver;
use refpoint::{ObjectiveVector, Rat, Result, Sense};

fn main() -> Result<()> {
    // Travel time vs fuel for three routes.
    let routes = ExplicitInstance::from_int_rows(&[&[10, 1], &[6, 6], &[1, 10]]);
    println!("objective vectors: {:?}", routes.points());
    println!("Pareto set:        {:?}", exact_pareto_set(&routes, Sense::Min));
    println!("ideal point:       {:?}", ideal_point(&routes, Sense::Min));

    // No weighted sum ever picks the balanced route (6,6).
    let ws = WeightedSumSolver::exact_brute(&routes);
    for t in [0, 1, 2, 3, 4] {
        let lambda = vec![Rat::new(t, 4), Rat::one() - Rat::new(t, 4)];
        if lambda.iter().all(|l| l.is_zero()) {
            continue;
        }
        let pick = ws.solve(&lambda)?;
        println!("weighted sum, lambda = ({}, {}): {:?}", lambda[0], lambda[1], pick);
    }

    // The Chebyshev reference point at the ideal point picks it immediately.
    let ctx = ReferenceContext::new(
        ObjectiveVector::from_ints(&[1, 1]),
        Norm::unit_infinity(2),
        Sense::Min,
    )?;
    let (point, value) = brute_rp_optimum(&routes, &ctx)?;
    println!("reference point (1,1), infinity norm: {:?} with r = {}", point, value);

    // Compromise programming computes the ideal point itself.
    let (point, value) = brute_cp_optimum(&routes, &Norm::unit_infinity(2), Sense::Min)?;
    println!("compromise solution: {:?} with r = {}", point, value);
    Ok(())
}
