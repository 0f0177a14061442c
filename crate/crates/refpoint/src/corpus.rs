//! Seeded random instance generators shared by the verification suites and
//! the acceptance tests. Everything is driven by a ChaCha stream so a seed
//! pins the whole corpus byte-for-byte.

use crate::covering::{CoverSet, CoveringInstance};
use crate::explicit::{ideal_point, ExplicitInstance};
use crate::graph::GraphInstance;
use crate::norm::Norm;
use crate::rational::Rat;
use crate::simplex::{ConstraintRow, Polyhedron, Relation};
use crate::vector::{ObjectiveVector, Sense};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Random integral instance: `k` criteria, up to `max_points` points with
/// coordinates in `[0, max_coord]`.
pub fn random_explicit_instance(
    rng: &mut ChaCha8Rng,
    k: usize,
    max_points: usize,
    max_coord: i64,
) -> ExplicitInstance {
    let n = rng.gen_range(1..=max_points);
    let points: Vec<ObjectiveVector> = (0..n)
        .map(|_| {
            ObjectiveVector::new(
                (0..k)
                    .map(|_| Rat::from_int(rng.gen_range(0..=max_coord)))
                    .collect(),
            )
            .expect("nonnegative integers")
        })
        .collect();
    ExplicitInstance::new(points, Some(Rat::from_int(max_coord))).expect("valid instance")
}

/// A reference point drawn uniformly below (Min) or above (Max) the ideal point.
pub fn random_feasible_refpoint(
    rng: &mut ChaCha8Rng,
    inst: &ExplicitInstance,
    sense: Sense,
) -> ObjectiveVector {
    let ideal = ideal_point(inst, sense);
    let coords = ideal
        .coords()
        .iter()
        .map(|c| {
            let c_i64 = i64::try_from(c.floor_int()).expect("desk-scale coordinates");
            match sense {
                Sense::Min => Rat::from_int(rng.gen_range(0..=c_i64)),
                Sense::Max => Rat::from_int(rng.gen_range(c_i64..=c_i64 + 10)),
            }
        })
        .collect();
    ObjectiveVector::new(coords).expect("nonnegative refpoint")
}

/// A norm from one of the three families with small positive weights.
/// `family`: 0 = infinity, 1 = cornered, anything else = l^p with integer p
/// (so comparisons stay exact).
pub fn random_norm(rng: &mut ChaCha8Rng, k: usize, family: u8) -> Norm {
    let weights: Vec<Rat> = (0..k)
        .map(|_| Rat::new(rng.gen_range(1..=4), rng.gen_range(1..=2)))
        .collect();
    match family {
        0 => Norm::infinity(weights).expect("positive weights"),
        1 => {
            let p = Rat::from_int(rng.gen_range(1..=5));
            Norm::cornered(p, weights).expect("positive weights")
        }
        _ => {
            let p = Rat::from_int(rng.gen_range(1..=3));
            Norm::lp(p, weights).expect("positive weights")
        }
    }
}

/// Random digraph with a guaranteed source-to-target backbone path, extra
/// random edges, and integral costs in `[0, max_cost]`.
pub fn random_graph(
    rng: &mut ChaCha8Rng,
    max_nodes: usize,
    max_cost: i64,
    k: usize,
) -> GraphInstance {
    let n = rng.gen_range(2..=max_nodes.max(2));
    let cost = |rng: &mut ChaCha8Rng| {
        ObjectiveVector::new(
            (0..k)
                .map(|_| Rat::from_int(rng.gen_range(0..=max_cost)))
                .collect(),
        )
        .expect("nonnegative costs")
    };
    let mut edges: Vec<crate::graph::Edge> = Vec::new();
    for v in 1..n {
        edges.push(crate::graph::Edge {
            from: v - 1,
            to: v,
            cost: cost(rng),
        });
    }
    let extra = rng.gen_range(0..=2 * n);
    for _ in 0..extra {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v {
            edges.push(crate::graph::Edge {
                from: u,
                to: v,
                cost: cost(rng),
            });
        }
    }
    GraphInstance::new(n, k, 0, n - 1, edges).expect("valid random graph")
}

/// Random covering system with every element covered and the maximum
/// element frequency kept at or below the maximum set cardinality, so the
/// threshold rounding is guaranteed feasible.
pub fn random_covering_instance(
    rng: &mut ChaCha8Rng,
    max_elements: usize,
    max_sets: usize,
    k: usize,
    max_cost: i64,
) -> CoveringInstance {
    loop {
        let elements = rng.gen_range(2..=max_elements);
        let sets_n = rng.gen_range(2..=max_sets);
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); sets_n];
        // Cover every element at least once, then sprinkle extras.
        for e in 0..elements {
            members[rng.gen_range(0..sets_n)].push(e);
        }
        for _ in 0..rng.gen_range(0..=elements) {
            let s = rng.gen_range(0..sets_n);
            let e = rng.gen_range(0..elements);
            if !members[s].contains(&e) {
                members[s].push(e);
            }
        }
        let sets: Vec<CoverSet> = members
            .into_iter()
            .filter(|m| !m.is_empty())
            .map(|m| CoverSet {
                members: m,
                cost: ObjectiveVector::new(
                    (0..k)
                        .map(|_| Rat::from_int(rng.gen_range(1..=max_cost)))
                        .collect(),
                )
                .expect("positive costs"),
            })
            .collect();
        if sets.is_empty() {
            continue;
        }
        let Ok(inst) = CoveringInstance::new(elements, sets) else {
            continue;
        };
        if inst.max_frequency() <= inst.kappa() {
            return inst;
        }
    }
}

/// Random bounded 2-variable polytope kept away from the origin, so cost
/// rows with positive entries give strictly positive objectives.
pub fn random_polytope_2d(rng: &mut ChaCha8Rng) -> Polyhedron {
    let bound = rng.gen_range(3..=8);
    let mut rows = vec![
        ConstraintRow {
            a: vec![Rat::one(), Rat::one()],
            rel: Relation::Ge,
            b: Rat::from_int(rng.gen_range(1..=2)),
        },
        ConstraintRow {
            a: vec![Rat::one(), Rat::zero()],
            rel: Relation::Le,
            b: Rat::from_int(bound),
        },
        ConstraintRow {
            a: vec![Rat::zero(), Rat::one()],
            rel: Relation::Le,
            b: Rat::from_int(bound),
        },
    ];
    // An extra random halfplane that always admits the box's top-right
    // corner, keeping the region nonempty.
    let a = vec![
        Rat::from_int(rng.gen_range(0..=2)),
        Rat::from_int(rng.gen_range(0..=2)),
    ];
    let at_corner: Rat = a.iter().map(|c| c * &Rat::from_int(bound)).sum();
    rows.push(ConstraintRow {
        a,
        rel: Relation::Le,
        b: at_corner,
    });
    Polyhedron::nonneg_system(2, rows).expect("valid polytope")
}

/// Random strictly positive 2x2 cost matrix for LP instances.
pub fn random_positive_costs_2d(rng: &mut ChaCha8Rng) -> Vec<Vec<Rat>> {
    (0..2)
        .map(|_| {
            (0..2)
                .map(|_| Rat::from_int(rng.gen_range(1..=4)))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::explicit::is_feasible_refpoint;

    #[test]
    fn generators_are_deterministic() {
        let a = random_explicit_instance(&mut rng_for(0, 1), 2, 20, 50);
        let b = random_explicit_instance(&mut rng_for(0, 1), 2, 20, 50);
        assert_eq!(a, b);
    }

    #[test]
    fn refpoints_are_feasible() {
        let mut rng = rng_for(7, 0);
        for _ in 0..20 {
            let inst = random_explicit_instance(&mut rng, 3, 30, 40);
            let rp = random_feasible_refpoint(&mut rng, &inst, Sense::Min);
            assert!(is_feasible_refpoint(&inst, &rp, Sense::Min).unwrap());
            let rp = random_feasible_refpoint(&mut rng, &inst, Sense::Max);
            assert!(is_feasible_refpoint(&inst, &rp, Sense::Max).unwrap());
        }
    }

    #[test]
    fn graphs_reach_target_and_covers_round() {
        let mut rng = rng_for(3, 2);
        for _ in 0..10 {
            let g = random_graph(&mut rng, 8, 20, 2);
            assert!(crate::graph::graph_ideal_point(&g).is_ok());
            let inst = random_covering_instance(&mut rng, 8, 6, 2, 9);
            assert!(inst.max_frequency() <= inst.kappa());
        }
    }
}
