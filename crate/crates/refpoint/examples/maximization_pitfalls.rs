//! Where maximization differs: weighted sums cannot reveal the balanced
//! point, compromise solvers cannot certify it either, but freely chosen
//! reference points still answer Gap queries.
//!
//! Run with: cargo run --example maximization_pitfalls

use refpoint::max::{
    cp_indistinguishability_check, exact_ws_max, max_gap_via_rp, ws_counterexample_check,
    ws_max_fixture, MaxRpSolver,
};
use refpoint::reductions::InstanceHandle;
use refpoint::{ObjectiveVector, Rat, Result};

fn main() -> Result<()> {
    // {(1,1), (3,0), (0,3)}: the balanced point is Pareto optimal but never
    // a weighted-sum maximizer.
    let report = ws_counterexample_check(exact_ws_max, 100)?;
    println!(
        "weighted-sum sweep over {} weights: balanced point returned {} times, \
         ever optimal: {}, outputs identical without it: {}",
        report.grid_points,
        report.balanced_point_returned,
        report.balanced_point_ever_optimal,
        report.outputs_identical_without_point
    );

    // Compromise solvers with accuracy coarser than O(1/M) cannot tell the
    // two fixtures apart, although their approximate Pareto sets must differ.
    let report = cp_indistinguishability_check(1000, &Rat::new(1, 2), &Rat::new(1, 100), 30)?;
    println!(
        "compromise indistinguishability at M = {}: damped-neighbor regime ok: {}, \
         halfway-point regime exact: {}, needed accuracy ~ {:.3}/M",
        report.m,
        report.high_regime_ok,
        report.low_regime_exact,
        report.empirical_delta_times_m.to_f64()
    );

    // Reference points chosen per query still solve Gap for maximization.
    let inst = ws_max_fixture();
    let handle = InstanceHandle::explicit(&inst);
    let solver = MaxRpSolver::exact_brute(&inst);
    let m = Rat::from_int(3);
    for (query, alpha) in [([1i64, 1], 2i64), ([4, 4], 2), ([2, 0], 2)] {
        let y = ObjectiveVector::from_ints(&query);
        let answer = max_gap_via_rp(&handle, &y, &Rat::from_int(alpha), &solver, &m)?;
        println!("max-gap, y = {:?}, alpha = {}: {:?}", y, alpha, answer);
    }
    Ok(())
}
