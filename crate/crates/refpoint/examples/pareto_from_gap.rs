//! Building an approximate Pareto set from Gap queries on a geometric grid,
//! and closing the cycle: the resulting set answers reference point queries
//! within the squared factor.
//!
//! Run with: cargo run --example pareto_from_gap

use refpoint::explicit::{
    brute_rp_optimum, exact_pareto_set, ExactGapOracle, ExplicitInstance,
};
use refpoint::norm::{ref_objective, Norm, ReferenceContext};
use refpoint::reductions::{
    epsilon_pareto_via_gap, observed_coverage_factor, select_rp_from_pareto, InstanceHandle,
};
use refpoint::{ObjectiveVector, Rat, Result, Sense};

fn main() -> Result<()> {
    let inst = ExplicitInstance::from_int_rows(&[
        &[40, 2],
        &[25, 5],
        &[18, 9],
        &[12, 14],
        &[8, 23],
        &[5, 33],
        &[3, 48],
        &[30, 30],
    ]);
    let pareto = exact_pareto_set(&inst, Sense::Min);
    println!("exact Pareto set ({} points): {:?}", pareto.len(), pareto);

    let handle = InstanceHandle::explicit(&inst);
    let oracle = ExactGapOracle::new(&inst);
    for alpha in [Rat::new(11, 10), Rat::from_int(2)] {
        let set = epsilon_pareto_via_gap(&handle, |y| oracle.query(y), &alpha)?;
        let coverage = observed_coverage_factor(set.points(), &pareto, Sense::Min)
            .expect("witnesses cover the frontier");
        println!(
            "grid at alpha = {}: {} points, claimed factor {}, observed coverage {}",
            alpha,
            set.len(),
            set.alpha,
            coverage
        );

        // Selecting from the set answers reference point queries within alpha^2.
        let ctx = ReferenceContext::new(
            ObjectiveVector::from_ints(&[3, 2]),
            Norm::unit_infinity(2),
            Sense::Min,
        )?;
        let chosen = select_rp_from_pareto(&set, &ctx)?;
        let r_chosen = ref_objective(&ctx, &chosen)?;
        let (opt, r_opt) = brute_rp_optimum(&inst, &ctx)?;
        println!(
            "  refpoint (3,2): picked {:?} (r = {}), optimum {:?} (r = {})",
            chosen, r_chosen, opt, r_opt
        );
    }
    Ok(())
}
