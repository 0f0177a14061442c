//! Bicriteria shortest paths: the exact label-correcting solver, and the
//! cost-scaling FPTAS that trades a (1 + eps) factor for a polynomial label
//! budget.
//!
//! Run with: cargo run --example shortest_path_fptas

use refpoint::graph::{enumerate_simple_paths, pseudopoly_sp_rp, GraphInstance};
use refpoint::norm::{Norm, ReferenceContext};
use refpoint::scaling::{bounds_via_weighted_sum, fptas_cp_sp, fptas_rp_sp};
use refpoint::{ObjectiveVector, Rat, Result, Sense};

fn main() -> Result<()> {
    // A two-lane ladder: fast-expensive on top, slow-cheap below.
    let g = GraphInstance::from_int_edges(
        6,
        2,
        0,
        5,
        &[
            (0, 1, &[1, 6]),
            (0, 2, &[5, 1]),
            (1, 3, &[1, 7]),
            (2, 3, &[6, 1]),
            (1, 4, &[2, 4]),
            (2, 4, &[4, 2]),
            (3, 5, &[1, 5]),
            (4, 5, &[3, 3]),
        ],
    );
    println!(
        "{} simple s-t paths",
        enumerate_simple_paths(&g).len()
    );

    let norm = Norm::cornered(Rat::from_int(2), vec![Rat::one(); 2]).unwrap();
    let ctx = ReferenceContext::new(
        ObjectiveVector::from_ints(&[2, 2]),
        norm.clone(),
        Sense::Min,
    )?
    .verified();

    let bounds = bounds_via_weighted_sum(&g, &ctx)?;
    println!(
        "weighted-sum bounds: {} <= OPT <= {}",
        bounds.lower, bounds.upper
    );

    let (exact, stats) = pseudopoly_sp_rp(&g, &ctx, Some(&bounds.upper))?;
    println!(
        "exact label solve: cost {:?}, r = {}, {} labels ({} pruned by bound)",
        exact.cost, exact.r_value, stats.labels_created, stats.labels_pruned_by_bound
    );

    for eps in [Rat::new(1, 2), Rat::new(1, 10)] {
        let (approx, cert) = fptas_rp_sp(&g, &ctx, &eps)?;
        println!(
            "fptas eps = {}: cost {:?}, r = {} (scale factor {}, guarantee {})",
            eps, approx.cost, approx.r_value, cert.scale_factor, cert.guarantee
        );
    }

    // Compromise variant: the scaled instance recomputes its own ideal point.
    let (cp, cert) = fptas_cp_sp(&g, &norm, &Rat::new(1, 10))?;
    println!(
        "compromise fptas: cost {:?}, r = {} (guarantee {})",
        cp.cost, cp.r_value, cert.guarantee
    );
    Ok(())
}
