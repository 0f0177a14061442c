//! Oblivious LP rounding carries single-criterion guarantees over to
//! reference point objectives: the triangle vertex cover pipeline, end to
//! end and exactly.
//!
//! Run with: cargo run --example vertex_cover_rounding

use refpoint::covering::{brute_integral_rp, rp_via_lp_rounding, vertex_cover_instance, RoundingRule};
use refpoint::norm::{Norm, ReferenceContext};
use refpoint::{ObjectiveVector, Result, Sense};

fn main() -> Result<()> {
    // K3 with bicriteria unit vertex costs.
    let inst = vertex_cover_instance(
        3,
        &[(0, 1), (0, 2), (1, 2)],
        &vec![ObjectiveVector::from_ints(&[1, 1]); 3],
    )?;
    println!(
        "triangle vertex cover: kappa = {}, max element frequency = {}",
        inst.kappa(),
        inst.max_frequency()
    );

    let ctx = ReferenceContext::new(
        ObjectiveVector::zero(2),
        Norm::unit_infinity(2),
        Sense::Min,
    )?
    .verified();
    let rule = RoundingRule::hochbaum(&inst);
    let rounded = rp_via_lp_rounding(&inst, &ctx, &rule)?;
    println!("fractional optimum: {:?} with program value {}", rounded.fractional, rounded.fractional_value);
    println!(
        "rounded cover: sets {:?}, cost {:?}, r = {}",
        rounded
            .selected
            .iter()
            .enumerate()
            .filter(|(_, &s)| s)
            .map(|(i, _)| i)
            .collect::<Vec<_>>(),
        rounded.cost,
        rounded.r_value
    );

    let (cover, cost, opt) = brute_integral_rp(&inst, &ctx)?;
    println!(
        "exhaustive integral optimum: sets {:?}, cost {:?}, r = {}",
        cover
            .iter()
            .enumerate()
            .filter(|(_, &s)| s)
            .map(|(i, _)| i)
            .collect::<Vec<_>>(),
        cost,
        opt
    );
    println!(
        "observed ratio {} against the kappa = {} guarantee",
        &rounded.r_value / &opt,
        rule.factor
    );

    // The chain that proves the factor, term by term.
    let kappa = rule.factor.clone();
    assert!(rounded.r_value <= &kappa * &rounded.fractional_value);
    assert!(rounded.fractional_value <= opt);
    println!("chain verified: r(rounded) <= kappa * fractional <= kappa * integral optimum");
    Ok(())
}
