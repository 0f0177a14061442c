//! The reverse direction: answering Gap queries with a single approximate
//! reference point solve, at factor beta = alpha^2 / (2 alpha - 1), for the
//! infinity norm and for the cornered/l^p families.
//!
//! Run with: cargo run --example gap_from_reference_points

use refpoint::explicit::{ideal_point, ExplicitInstance};
use refpoint::reductions::{
    gap_via_cp, gap_via_rp_inf, gap_via_rp_pnorm, pnorm_gap_exponent, CpApproxSolver, GapNorm,
    InstanceHandle, NormFamily, RpApproxSolver,
};
use refpoint::{ObjectiveVector, Rat, Result, Sense};

fn main() -> Result<()> {
    let inst = ExplicitInstance::from_int_rows(&[&[10, 1], &[6, 6], &[1, 10]]);
    let handle = InstanceHandle::explicit(&inst);
    let solver = RpApproxSolver::exact_brute(&inst);
    let refpoint = ideal_point(&inst, Sense::Min);
    let alpha = Rat::from_int(2);
    let beta = (&alpha * &alpha) / (Rat::from_int(2) * alpha.clone() - Rat::one());
    println!("alpha = {}, admissible solver factor beta = {}", alpha, beta);

    for query in [[7i64, 7], [2, 2], [12, 1]] {
        let y = ObjectiveVector::from_ints(&query);
        let a = gap_via_rp_inf(&handle, &y, &alpha, || Ok(refpoint.clone()), &solver)?;
        println!("infinity route, y = {:?}: {:?}", y, a);
    }

    // The p-norm route picks its exponent from k, M and the query denominators.
    let y = ObjectiveVector::from_ints(&[7, 7]);
    let p = pnorm_gap_exponent(inst.k(), inst.bound_m(), &y);
    println!("p-norm route uses p = {}", p);
    for family in [NormFamily::CorneredP, NormFamily::Lp] {
        let a = gap_via_rp_pnorm(&handle, &y, &alpha, || Ok(refpoint.clone()), &solver, family)?;
        println!("{:?} route, y = {:?}: {:?}", family, y, a);
    }

    // Compromise solvers suffice as well: they pin the reference point
    // near the ideal point with k unit-weight solves.
    let cp = CpApproxSolver::exact_brute(&inst);
    let a = gap_via_cp(&handle, &y, &alpha, &cp, GapNorm::Infinity)?;
    println!("compromise route, y = {:?}: {:?}", y, a);
    Ok(())
}
