//! For large enough p, every Pareto point is the unique reference point
//! optimum under purpose-built weights: 1 + k on coordinates touching the
//! reference point, 1 / (y_i - y^r_i) elsewhere. The thresholds are
//! polynomially sized: kM for the cornered norm, log k / log(1 + 1/M)
//! for l^p.
//!
//! Run with: cargo run --example every_pareto_point_reachable

use refpoint::explicit::{exact_pareto_set, ExplicitInstance};
use refpoint::norm::compare_norm;
use refpoint::reductions::{weight_for_pareto_point, NormFamily};
use refpoint::{ObjectiveVector, Rat, Result, Sense};

fn main() -> Result<()> {
    let inst = ExplicitInstance::from_int_rows(&[
        &[9, 1],
        &[6, 3],
        &[4, 4],
        &[2, 7],
        &[1, 9],
        &[8, 8],
    ]);
    let refpoint = ObjectiveVector::from_ints(&[0, 1]);
    let pareto = exact_pareto_set(&inst, Sense::Min);
    println!("Pareto points: {:?}", pareto);

    for family in [NormFamily::CorneredP, NormFamily::Lp] {
        println!("\n{:?} family:", family);
        for target in &pareto {
            let wc = weight_for_pareto_point(&inst, target, &refpoint, family)?;
            let p = wc.p_threshold.clone() + Rat::one();
            let norm = wc.norm_at(p.clone())?;
            // The target must strictly beat every other point in weighted
            // distance to the reference point.
            let mut all_beaten = true;
            for other in inst.points() {
                if other == target {
                    continue;
                }
                let cmp = compare_norm(
                    &norm,
                    &target.abs_diff(&refpoint),
                    &other.abs_diff(&refpoint),
                )?;
                if cmp != refpoint::NormCmp::Less {
                    all_beaten = false;
                }
            }
            println!(
                "  {:?}: weights {:?}, threshold {}, p = {}, unique minimum: {}",
                target,
                wc.weights,
                wc.p_threshold,
                p,
                all_beaten
            );
        }
    }
    Ok(())
}
