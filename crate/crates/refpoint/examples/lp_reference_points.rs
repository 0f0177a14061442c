//! Reference point solving over polyhedra is itself a linear program, and
//! with strictly positive objectives it powers an FPTAS for the Pareto set
//! of a multicriteria LP.
//!
//! Run with: cargo run --example lp_reference_points

use refpoint::lp::{fptas_pareto_lp, rp_lp_solve, PExponent, RpProgram};
use refpoint::rational::Rat;
use refpoint::simplex::{
    enumerate_vertices, simplex_solve, ConstraintRow, LpSense, Polyhedron, Relation,
};
use refpoint::{ObjectiveVector, Result};

fn r(n: i64) -> Rat {
    Rat::from_int(n)
}

fn main() -> Result<()> {
    // A small production polytope with two cost criteria.
    let poly = Polyhedron::nonneg_system(
        2,
        vec![
            ConstraintRow { a: vec![r(1), r(1)], rel: Relation::Ge, b: r(2) },
            ConstraintRow { a: vec![r(1), r(0)], rel: Relation::Le, b: r(3) },
            ConstraintRow { a: vec![r(0), r(1)], rel: Relation::Le, b: r(3) },
        ],
    )?;
    let costs = vec![vec![r(2), r(1)], vec![r(1), r(3)]];

    // Plain simplex on one criterion.
    let (x, value) = simplex_solve(&poly, &costs[0], LpSense::Min)?.optimal()?;
    println!("min first criterion: {} at x = {:?}", value, x);

    // The reference point program for p = infinity and p = 3.
    for p in [PExponent::Infinity, PExponent::Finite(r(3))] {
        let prog = RpProgram::new(poly.clone(), costs.clone(), ObjectiveVector::zero(2), p)?;
        let sol = rp_lp_solve(&prog)?;
        println!(
            "reference point program {:?}: x = {:?}, Cx = {:?}, r = {}",
            prog.p, sol.x, sol.objective, sol.r_value
        );
        // The optimum sits at a vertex of the reformulated (x, D) system.
        let vertices = enumerate_vertices(&prog.extended_polyhedron()?)?;
        println!("  ({} vertices in the reformulated system)", vertices.len());
    }

    // With strictly positive objectives the exact solver turns into a Gap
    // oracle, and the grid gives a (1+eps)^2-approximate Pareto set.
    let eps = Rat::new(1, 2);
    let set = fptas_pareto_lp(&poly, &costs, &eps, &Rat::one())?;
    println!(
        "Pareto FPTAS at eps = {}: factor {}, {} attainable points, first few:",
        eps,
        set.alpha,
        set.len()
    );
    for point in set.points().iter().take(5) {
        println!("  {:?}", point);
    }
    Ok(())
}
