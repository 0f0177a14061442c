//! Multicriteria shortest paths: the pseudopolynomial label-correcting
//! solver that the cost-scaling FPTAS is built on.
//!
//! Labels are per-node antichains of partial path cost vectors. Dominated
//! labels are pruned, and labels whose reference objective can no longer
//! stay within the upper bound are discarded; both prunes are safe because
//! edge costs are nonnegative and the norms in use are monotone.

use crate::error::{Error, Result};
use crate::norm::{eval_norm, ref_objective, Norm, NormKind, NormValue, ReferenceContext};
use crate::rational::Rat;
use crate::vector::{ObjectiveVector, Sense};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub cost: ObjectiveVector,
}

/// A directed graph with k-dimensional nonnegative integral edge costs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphInstance {
    n: usize,
    k: usize,
    source: usize,
    target: usize,
    edges: Vec<Edge>,
}

impl GraphInstance {
    pub fn new(
        n: usize,
        k: usize,
        source: usize,
        target: usize,
        edges: Vec<Edge>,
    ) -> Result<Self> {
        if source == target {
            return Err(Error::InvalidInstance("source equals target".into()));
        }
        if source >= n || target >= n {
            return Err(Error::InvalidInstance("endpoint out of range".into()));
        }
        for e in &edges {
            if e.from >= n || e.to >= n {
                return Err(Error::InvalidInstance("edge endpoint out of range".into()));
            }
            e.cost.check_dim(k)?;
            if !e.cost.is_integral() {
                return Err(Error::InvalidInstance("edge costs must be integral".into()));
            }
        }
        Ok(GraphInstance {
            n,
            k,
            source,
            target,
            edges,
        })
    }

    pub fn from_int_edges(
        n: usize,
        k: usize,
        source: usize,
        target: usize,
        edges: &[(usize, usize, &[i64])],
    ) -> Self {
        let edges = edges
            .iter()
            .map(|&(u, v, c)| Edge {
                from: u,
                to: v,
                cost: ObjectiveVector::from_ints(c),
            })
            .collect();
        GraphInstance::new(n, k, source, target, edges).expect("valid integer graph")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Total cost vector of a path given by edge indices.
    pub fn path_cost(&self, path: &[usize]) -> ObjectiveVector {
        let mut acc = ObjectiveVector::zero(self.k);
        for &e in path {
            acc = acc.add(&self.edges[e].cost);
        }
        acc
    }

    /// Sum of all edge costs per coordinate: a valid objective bound M.
    pub fn objective_bound(&self) -> Rat {
        (0..self.k)
            .map(|i| self.edges.iter().map(|e| e.cost.get(i)).sum::<Rat>())
            .max()
            .unwrap_or_else(Rat::zero)
    }

    /// Same topology and endpoints with different (integral) costs.
    pub fn with_costs(&self, costs: Vec<ObjectiveVector>) -> Result<GraphInstance> {
        assert_eq!(costs.len(), self.edges.len());
        let edges = self
            .edges
            .iter()
            .zip(costs)
            .map(|(e, cost)| Edge {
                from: e.from,
                to: e.to,
                cost,
            })
            .collect();
        GraphInstance::new(self.n, self.k, self.source, self.target, edges)
    }
}

/// A solved shortest-path query: edge indices from source to target, the
/// accumulated cost vector, and its reference objective value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpSolution {
    pub path: Vec<usize>,
    pub cost: ObjectiveVector,
    pub r_value: NormValue,
}

/// Exact single-criterion shortest path for a weighted sum of the cost
/// coordinates (Bellman-Ford; costs are nonnegative so n - 1 rounds suffice).
pub fn shortest_path_weighted_sum(
    inst: &GraphInstance,
    weights: &[Rat],
) -> Result<(Vec<usize>, ObjectiveVector)> {
    assert_eq!(weights.len(), inst.k());
    let scalar = |cost: &ObjectiveVector| -> Rat {
        weights.iter().zip(cost.coords()).map(|(w, c)| w * c).sum()
    };
    let mut dist: Vec<Option<Rat>> = vec![None; inst.n()];
    let mut pred: Vec<Option<usize>> = vec![None; inst.n()];
    dist[inst.source()] = Some(Rat::zero());
    for _ in 0..inst.n().saturating_sub(1) {
        let mut changed = false;
        for (idx, e) in inst.edges().iter().enumerate() {
            let Some(du) = dist[e.from].clone() else {
                continue;
            };
            let cand = du + scalar(&e.cost);
            if dist[e.to].as_ref().is_none_or(|dv| &cand < dv) {
                dist[e.to] = Some(cand);
                pred[e.to] = Some(idx);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    if dist[inst.target()].is_none() {
        return Err(Error::Unreachable);
    }
    let mut path = Vec::new();
    let mut node = inst.target();
    while node != inst.source() {
        let e = pred[node].expect("reachable node has a predecessor");
        path.push(e);
        node = inst.edges()[e].from;
    }
    path.reverse();
    let cost = inst.path_cost(&path);
    Ok((path, cost))
}

/// Per-criterion minima over s-t paths: the ideal point of the instance.
pub fn graph_ideal_point(inst: &GraphInstance) -> Result<ObjectiveVector> {
    let mut coords = Vec::with_capacity(inst.k());
    for i in 0..inst.k() {
        let mut unit = vec![Rat::zero(); inst.k()];
        unit[i] = Rat::one();
        let (_, cost) = shortest_path_weighted_sum(inst, &unit)?;
        coords.push(cost.get(i).clone());
    }
    ObjectiveVector::new(coords)
}

/// The objective the label solver minimizes: `||y^r|| + ||(y - y^r)_+||`,
/// the positive part taken componentwise.
///
/// For feasible reference points every path cost sits at or above `y^r`, so
/// this is exactly the reference objective. The positive part keeps the
/// value monotone in `y` even for reference points slightly above the ideal
/// point, which the cost-scaling construction can produce.
pub fn clamped_objective(ctx: &ReferenceContext, y: &ObjectiveVector) -> Result<Rat> {
    let base = exact_value(&ctx.norm, &ctx.refpoint)?;
    let dist = exact_value(&ctx.norm, &y.pos_diff(&ctx.refpoint))?;
    Ok(base + dist)
}

fn exact_value(norm: &Norm, v: &ObjectiveVector) -> Result<Rat> {
    match eval_norm(norm, v)? {
        NormValue::Exact(r) => Ok(r),
        NormValue::Interval { .. } => Err(Error::InvalidParameter(
            "the label solver needs an exactly evaluable norm (infinity or cornered)".into(),
        )),
    }
}

struct Label {
    node: usize,
    cost: ObjectiveVector,
    pred: Option<(usize, usize)>, // (edge index, arena index of the parent label)
}

/// Statistics of a label solver run, for pruning diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelStats {
    pub labels_created: usize,
    pub labels_pruned_by_bound: usize,
}

/// Exact reference point optimum over s-t paths by label correction, for the
/// infinity and cornered norm families.
///
/// `upper_bound`, when given, must be at least the optimal objective value;
/// candidate labels whose clamped objective already exceeds it are dropped
/// (partial costs only grow and the norm is monotone, so no optimum is
/// lost). Ties break to the lexicographically smallest cost vector.
pub fn pseudopoly_sp_rp(
    inst: &GraphInstance,
    ctx: &ReferenceContext,
    upper_bound: Option<&Rat>,
) -> Result<(SpSolution, LabelStats)> {
    if ctx.sense != Sense::Min {
        return Err(Error::InvalidParameter(
            "the label solver minimizes; maximization is out of scope here".into(),
        ));
    }
    if matches!(ctx.norm.kind(), NormKind::Lp(_)) {
        return Err(Error::InvalidParameter(
            "the label solver supports the infinity and cornered norms".into(),
        ));
    }
    ctx.refpoint.check_dim(inst.k())?;
    let mut stats = LabelStats {
        labels_created: 0,
        labels_pruned_by_bound: 0,
    };
    // All labels ever created live in the arena; per-node sets hold the
    // currently non-dominated ones. Dominated labels leave the active set
    // but stay in the arena so predecessor links remain valid.
    let mut arena: Vec<Label> = Vec::new();
    let mut active: Vec<Vec<usize>> = vec![Vec::new(); inst.n()];
    arena.push(Label {
        node: inst.source(),
        cost: ObjectiveVector::zero(inst.k()),
        pred: None,
    });
    active[inst.source()].push(0);
    stats.labels_created += 1;

    for _ in 0..inst.n().saturating_sub(1) {
        let mut inserted = false;
        for edge_idx in 0..inst.edges().len() {
            let e = &inst.edges()[edge_idx];
            if e.from == e.to {
                continue;
            }
            let parents = active[e.from].clone();
            for parent in parents {
                let cand = arena[parent].cost.add(&e.cost);
                if let Some(u) = upper_bound {
                    if &clamped_objective(ctx, &cand)? > u {
                        stats.labels_pruned_by_bound += 1;
                        continue;
                    }
                }
                if active[e.to].iter().any(|&l| arena[l].cost.le(&cand)) {
                    continue;
                }
                active[e.to].retain(|&l| !cand.le(&arena[l].cost));
                arena.push(Label {
                    node: e.to,
                    cost: cand,
                    pred: Some((edge_idx, parent)),
                });
                active[e.to].push(arena.len() - 1);
                stats.labels_created += 1;
                inserted = true;
            }
        }
        if !inserted {
            break;
        }
    }

    if active[inst.target()].is_empty() {
        return Err(Error::Unreachable);
    }
    let mut best: Option<(usize, Rat)> = None;
    for &l in &active[inst.target()] {
        let value = clamped_objective(ctx, &arena[l].cost)?;
        let better = match &best {
            None => true,
            Some((bl, bvalue)) => {
                value < *bvalue || (value == *bvalue && arena[l].cost < arena[*bl].cost)
            }
        };
        if better {
            best = Some((l, value));
        }
    }
    let (mut label_idx, _) = best.expect("nonempty target labels");

    let mut path = Vec::new();
    while let Some((edge_idx, parent)) = arena[label_idx].pred {
        path.push(edge_idx);
        label_idx = parent;
    }
    path.reverse();
    debug_assert_eq!(arena[0].node, inst.source());
    let cost = inst.path_cost(&path);
    let r_value = ref_objective(ctx, &cost)?;
    Ok((
        SpSolution {
            path,
            cost,
            r_value,
        },
        stats,
    ))
}

/// All simple s-t paths with their cost vectors, by depth-first search.
/// Exponential; the exhaustive oracle for small graphs.
pub fn enumerate_simple_paths(inst: &GraphInstance) -> Vec<(Vec<usize>, ObjectiveVector)> {
    fn dfs(
        inst: &GraphInstance,
        node: usize,
        visited: &mut Vec<bool>,
        stack: &mut Vec<usize>,
        out: &mut Vec<(Vec<usize>, ObjectiveVector)>,
    ) {
        if node == inst.target() {
            out.push((stack.clone(), inst.path_cost(stack)));
            return;
        }
        visited[node] = true;
        for (idx, e) in inst.edges().iter().enumerate() {
            if e.from == node && !visited[e.to] {
                stack.push(idx);
                dfs(inst, e.to, visited, stack, out);
                stack.pop();
            }
        }
        visited[node] = false;
    }
    let mut out = Vec::new();
    let mut visited = vec![false; inst.n()];
    let mut stack = Vec::new();
    dfs(inst, inst.source(), &mut visited, &mut stack, &mut out);
    out
}

/// Exhaustive reference point optimum over simple paths; ties break to the
/// lexicographically smallest cost vector.
pub fn brute_sp_rp(inst: &GraphInstance, ctx: &ReferenceContext) -> Result<SpSolution> {
    let all = enumerate_simple_paths(inst);
    if all.is_empty() {
        return Err(Error::Unreachable);
    }
    let mut best: Option<(&Vec<usize>, &ObjectiveVector, Rat)> = None;
    for (path, cost) in &all {
        let value = clamped_objective(ctx, cost)?;
        let better = match &best {
            None => true,
            Some((_, bcost, bvalue)) => {
                value < *bvalue || (value == *bvalue && &cost < bcost)
            }
        };
        if better {
            best = Some((path, cost, value));
        }
    }
    let (path, cost, _) = best.expect("nonempty");
    Ok(SpSolution {
        path: path.clone(),
        cost: cost.clone(),
        r_value: ref_objective(ctx, cost)?,
    })
}

/// JSON shape: `{"k":2,"n":4,"s":0,"t":3,"edges":[[0,1,[3,4]],...]}`.
#[derive(Serialize, Deserialize)]
struct GraphRepr {
    k: usize,
    n: usize,
    s: usize,
    t: usize,
    edges: Vec<(usize, usize, Vec<Rat>)>,
}

impl Serialize for GraphInstance {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        GraphRepr {
            k: self.k,
            n: self.n,
            s: self.source,
            t: self.target,
            edges: self
                .edges
                .iter()
                .map(|e| (e.from, e.to, e.cost.coords().to_vec()))
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GraphInstance {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = GraphRepr::deserialize(deserializer)?;
        let edges = repr
            .edges
            .into_iter()
            .map(|(from, to, cost)| {
                Ok(Edge {
                    from,
                    to,
                    cost: ObjectiveVector::new(cost).map_err(serde::de::Error::custom)?,
                })
            })
            .collect::<std::result::Result<Vec<_>, D::Error>>()?;
        GraphInstance::new(repr.n, repr.k, repr.s, repr.t, edges)
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(coords: &[i64]) -> ObjectiveVector {
        ObjectiveVector::from_ints(coords)
    }

    /// Three parallel edges mirroring the routes instance.
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
    fn weighted_sum_path() {
        let g = parallel_routes();
        let (_, cost) = shortest_path_weighted_sum(&g, &[Rat::one(), Rat::one()]).unwrap();
        assert_eq!(cost.coords().iter().sum::<Rat>(), Rat::from_int(11));

        let unreachable = GraphInstance::from_int_edges(3, 2, 0, 2, &[(0, 1, &[1, 1])]);
        assert!(matches!(
            shortest_path_weighted_sum(&unreachable, &[Rat::one(), Rat::one()]),
            Err(Error::Unreachable)
        ));
    }

    #[test]
    fn ideal_point_of_graph() {
        assert_eq!(graph_ideal_point(&parallel_routes()).unwrap(), v(&[1, 1]));
    }

    #[test]
    fn label_solver_on_parallel_edges() {
        let (sol, _) = pseudopoly_sp_rp(&parallel_routes(), &inf_ctx(&[1, 1]), None).unwrap();
        assert_eq!(sol.cost, v(&[6, 6]));
        assert_eq!(sol.r_value, NormValue::Exact(Rat::from_int(6)));
    }

    #[test]
    fn label_solver_single_path() {
        let g = GraphInstance::from_int_edges(3, 2, 0, 2, &[(0, 1, &[3, 4]), (1, 2, &[1, 1])]);
        let (sol, _) = pseudopoly_sp_rp(&g, &inf_ctx(&[0, 0]), None).unwrap();
        assert_eq!(sol.path, vec![0, 1]);
        assert_eq!(sol.cost, v(&[4, 5]));
    }

    #[test]
    fn label_solver_matches_enumeration_on_diamond() {
        let g = GraphInstance::from_int_edges(
            4,
            2,
            0,
            3,
            &[
                (0, 1, &[1, 5]),
                (0, 2, &[4, 1]),
                (1, 3, &[1, 5]),
                (2, 3, &[4, 1]),
                (1, 3, &[6, 0]),
                (2, 3, &[0, 6]),
            ],
        );
        for refpoint in [[0, 0], [1, 1]] {
            let ctx = inf_ctx(&refpoint);
            let (sol, _) = pseudopoly_sp_rp(&g, &ctx, None).unwrap();
            let brute = brute_sp_rp(&g, &ctx).unwrap();
            assert_eq!(sol.cost, brute.cost);
            assert_eq!(sol.r_value, brute.r_value);
        }
    }

    #[test]
    fn upper_bound_prunes_but_preserves_optimum() {
        let g = GraphInstance::from_int_edges(
            5,
            2,
            0,
            4,
            &[
                (0, 1, &[2, 1]),
                (0, 2, &[1, 2]),
                (1, 3, &[3, 1]),
                (2, 3, &[1, 3]),
                (3, 4, &[1, 1]),
                (1, 4, &[9, 9]),
                (2, 4, &[8, 8]),
            ],
        );
        let ctx = inf_ctx(&[0, 0]);
        let (unpruned, s0) = pseudopoly_sp_rp(&g, &ctx, None).unwrap();
        let u = unpruned.r_value.as_exact().unwrap().clone();
        let (pruned, s1) = pseudopoly_sp_rp(&g, &ctx, Some(&u)).unwrap();
        assert_eq!(unpruned.cost, pruned.cost);
        assert_eq!(unpruned.r_value, pruned.r_value);
        assert!(s1.labels_pruned_by_bound > 0);
        assert!(s1.labels_created <= s0.labels_created);
    }

    #[test]
    fn returned_cost_is_nondominated() {
        let g = GraphInstance::from_int_edges(
            4,
            2,
            0,
            3,
            &[
                (0, 1, &[1, 3]),
                (0, 2, &[3, 1]),
                (1, 3, &[1, 3]),
                (2, 3, &[3, 1]),
                (0, 3, &[3, 3]),
            ],
        );
        let (sol, _) = pseudopoly_sp_rp(&g, &inf_ctx(&[0, 0]), None).unwrap();
        for (_, cost) in enumerate_simple_paths(&g) {
            assert!(!crate::vector::dominates(&cost, &sol.cost, Sense::Min));
        }
    }

    #[test]
    fn json_roundtrip() {
        let json = r#"{"k":2,"n":4,"s":0,"t":3,"edges":[[0,1,[3,4]],[1,3,[1,1]]]}"#;
        let g: GraphInstance = serde_json::from_str(json).unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.edges().len(), 2);
        let back = serde_json::to_string(&g).unwrap();
        let again: GraphInstance = serde_json::from_str(&back).unwrap();
        assert_eq!(again, g);
    }
}
