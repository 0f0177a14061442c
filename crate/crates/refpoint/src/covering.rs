//! Covering problems and oblivious LP rounding.
//!
//! The threshold rounding keeps every set whose fractional value reaches
//! `1/kappa`, where `kappa` is the maximum set cardinality. The rounded
//! vector satisfies `x <= kappa * x'` coordinatewise, so the loss factor
//! `kappa` transfers to any nonnegative linear cost, and through the
//! reference point program to the reference objective itself.

use crate::error::{Error, Result};
use crate::lp::{rp_lp_solve, PExponent, RpProgram};
use crate::norm::{ref_objective, NormKind, ReferenceContext};
use crate::rational::Rat;
use crate::simplex::{ConstraintRow, Polyhedron, Relation};
use crate::vector::ObjectiveVector;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverSet {
    pub members: Vec<usize>,
    pub cost: ObjectiveVector,
}

/// A covering system: pick sets so that every universe element is covered.
/// `kappa` is the maximum set cardinality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoveringInstance {
    elements: usize,
    k: usize,
    sets: Vec<CoverSet>,
}

impl CoveringInstance {
    pub fn new(elements: usize, sets: Vec<CoverSet>) -> Result<Self> {
        if sets.is_empty() || elements == 0 {
            return Err(Error::InvalidInstance("empty covering system".into()));
        }
        let k = sets[0].cost.k();
        let mut covered = vec![false; elements];
        for s in &sets {
            s.cost.check_dim(k)?;
            if !s.cost.is_integral() {
                return Err(Error::InvalidInstance("set costs must be integral".into()));
            }
            if s.members.is_empty() {
                return Err(Error::InvalidInstance("a set has no members".into()));
            }
            for &e in &s.members {
                if e >= elements {
                    return Err(Error::InvalidInstance("set member out of range".into()));
                }
                covered[e] = true;
            }
        }
        if covered.iter().any(|c| !c) {
            return Err(Error::InvalidInstance(
                "some element is covered by no set".into(),
            ));
        }
        Ok(CoveringInstance { elements, k, sets })
    }

    pub fn elements(&self) -> usize {
        self.elements
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn sets(&self) -> &[CoverSet] {
        &self.sets
    }

    /// Maximum set cardinality.
    pub fn kappa(&self) -> usize {
        self.sets.iter().map(|s| s.members.len()).max().unwrap_or(0)
    }

    /// Number of sets containing the most-covered element. The threshold
    /// rounding is guaranteed feasible when this does not exceed kappa.
    pub fn max_frequency(&self) -> usize {
        (0..self.elements)
            .map(|e| self.sets.iter().filter(|s| s.members.contains(&e)).count())
            .max()
            .unwrap_or(0)
    }

    pub fn is_cover(&self, selected: &[bool]) -> bool {
        assert_eq!(selected.len(), self.sets.len());
        (0..self.elements).all(|e| {
            self.sets
                .iter()
                .zip(selected)
                .any(|(s, &sel)| sel && s.members.contains(&e))
        })
    }

    /// The fractional covering relaxation: one variable per set in `[0, 1]`,
    /// one coverage row per element.
    pub fn relaxation(&self) -> Polyhedron {
        let n = self.sets.len();
        let mut rows = Vec::with_capacity(self.elements + n);
        for e in 0..self.elements {
            let a = self
                .sets
                .iter()
                .map(|s| {
                    if s.members.contains(&e) {
                        Rat::one()
                    } else {
                        Rat::zero()
                    }
                })
                .collect();
            rows.push(ConstraintRow {
                a,
                rel: Relation::Ge,
                b: Rat::one(),
            });
        }
        for j in 0..n {
            let mut a = vec![Rat::zero(); n];
            a[j] = Rat::one();
            rows.push(ConstraintRow {
                a,
                rel: Relation::Le,
                b: Rat::one(),
            });
        }
        Polyhedron::nonneg_system(n, rows).expect("valid relaxation")
    }

    /// k x n cost matrix of the covering LP.
    pub fn cost_matrix(&self) -> Vec<Vec<Rat>> {
        (0..self.k)
            .map(|i| self.sets.iter().map(|s| s.cost.get(i).clone()).collect())
            .collect()
    }

    /// Objective vector of an integral selection.
    pub fn selection_cost(&self, selected: &[bool]) -> ObjectiveVector {
        let mut acc = ObjectiveVector::zero(self.k);
        for (s, &sel) in self.sets.iter().zip(selected) {
            if sel {
                acc = acc.add(&s.cost);
            }
        }
        acc
    }

    fn is_fractional_cover(&self, x: &[Rat]) -> bool {
        x.len() == self.sets.len()
            && x.iter().all(|v| !v.is_negative())
            && (0..self.elements).all(|e| {
                self.sets
                    .iter()
                    .zip(x)
                    .filter(|(s, _)| s.members.contains(&e))
                    .map(|(_, v)| v)
                    .sum::<Rat>()
                    >= Rat::one()
            })
    }
}

/// A rounding procedure with its loss factor. Oblivious rules satisfy
/// `rule(x') <= factor * x'` coordinatewise, hence lose at most `factor`
/// against every nonnegative linear cost.
/// A rounding callable: fractional solution in, integral selection out.
pub type RoundFn<'a> = Box<dyn Fn(&[Rat]) -> Result<Vec<bool>> + 'a>;

pub struct RoundingRule<'a> {
    pub factor: Rat,
    pub oblivious: bool,
    round: RoundFn<'a>,
}

impl<'a> RoundingRule<'a> {
    pub fn new(
        factor: Rat,
        oblivious: bool,
        round: impl Fn(&[Rat]) -> Result<Vec<bool>> + 'a,
    ) -> Self {
        RoundingRule {
            factor,
            oblivious,
            round: Box::new(round),
        }
    }

    pub fn round(&self, x: &[Rat]) -> Result<Vec<bool>> {
        (self.round)(x)
    }

    /// The threshold rule at `1/kappa`.
    pub fn hochbaum(inst: &'a CoveringInstance) -> Self {
        let kappa = Rat::from_int(inst.kappa() as i64);
        RoundingRule::new(kappa, true, move |x| hochbaum_round(inst, x))
    }
}

/// Keeps exactly the sets with fractional value at least `1/kappa`.
///
/// The output covers every element whenever no element appears in more than
/// `kappa` sets; a violation is reported as an error rather than returned.
pub fn hochbaum_round(inst: &CoveringInstance, x_frac: &[Rat]) -> Result<Vec<bool>> {
    if !inst.is_fractional_cover(x_frac) {
        return Err(Error::InvalidParameter(
            "the fractional point does not cover every element".into(),
        ));
    }
    let threshold = Rat::from_int(inst.kappa() as i64).recip();
    let selected: Vec<bool> = x_frac.iter().map(|v| v >= &threshold).collect();
    if !inst.is_cover(&selected) {
        return Err(Error::ContractViolation(format!(
            "threshold rounding at 1/kappa = {} misses an element; an element \
             appears in more sets ({}) than the largest set's cardinality ({})",
            threshold,
            inst.max_frequency(),
            inst.kappa()
        )));
    }
    Ok(selected)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundedSolution {
    pub selected: Vec<bool>,
    pub fractional: Vec<Rat>,
    /// Program value at the fractional optimum (the relaxation bound).
    pub fractional_value: Rat,
    pub cost: ObjectiveVector,
    pub r_value: Rat,
}

/// Reference point solving by LP rounding: solve the relaxation exactly,
/// round obliviously, and keep the rule's factor against the integral
/// optimum.
pub fn rp_via_lp_rounding(
    inst: &CoveringInstance,
    ctx: &ReferenceContext,
    rule: &RoundingRule,
) -> Result<RoundedSolution> {
    let p = match ctx.norm.kind() {
        NormKind::Infinity => PExponent::Infinity,
        NormKind::CorneredP(p) => PExponent::Finite(p.clone()),
        NormKind::Lp(_) => {
            return Err(Error::InvalidParameter(
                "LP rounding works over the infinity and cornered norms".into(),
            ))
        }
    };
    // Fold the norm weights into the costs and reference point.
    let weights = ctx.norm.weights();
    let folded_costs: Vec<Vec<Rat>> = inst
        .cost_matrix()
        .iter()
        .enumerate()
        .map(|(i, row)| row.iter().map(|c| &weights[i] * c).collect())
        .collect();
    let folded_ref = ObjectiveVector::new(
        (0..inst.k())
            .map(|i| &weights[i] * ctx.refpoint.get(i))
            .collect(),
    )?;
    let prog = RpProgram::new(inst.relaxation(), folded_costs, folded_ref, p)?;
    let frac = rp_lp_solve(&prog)?;
    let selected = rule.round(&frac.x)?;
    let cost = inst.selection_cost(&selected);
    let r_value = match ref_objective(ctx, &cost)? {
        crate::norm::NormValue::Exact(r) => r,
        crate::norm::NormValue::Interval { .. } => unreachable!("cornered norms are exact"),
    };
    Ok(RoundedSolution {
        selected,
        fractional: frac.x,
        fractional_value: frac.r_value,
        cost,
        r_value,
    })
}

/// Exhaustive integral reference point optimum over all covers.
/// Exponential in the number of sets; the oracle for small instances.
pub fn brute_integral_rp(
    inst: &CoveringInstance,
    ctx: &ReferenceContext,
) -> Result<(Vec<bool>, ObjectiveVector, Rat)> {
    let n = inst.sets().len();
    assert!(n <= 20, "exhaustive search is for small instances");
    let mut best: Option<(Vec<bool>, ObjectiveVector, Rat)> = None;
    for mask in 0u32..(1 << n) {
        let selected: Vec<bool> = (0..n).map(|j| mask & (1 << j) != 0).collect();
        if !inst.is_cover(&selected) {
            continue;
        }
        let cost = inst.selection_cost(&selected);
        let value = match ref_objective(ctx, &cost)? {
            crate::norm::NormValue::Exact(r) => r,
            crate::norm::NormValue::Interval { .. } => unreachable!(),
        };
        let better = match &best {
            None => true,
            Some((_, bcost, bvalue)) => {
                value < *bvalue || (value == *bvalue && &cost < bcost)
            }
        };
        if better {
            best = Some((selected, cost, value));
        }
    }
    best.ok_or(Error::EmptySet)
}

/// JSON shape: `{"k":2,"elements":5,"sets":[{"members":[0,1],"cost":[2,1]},...]}`.
#[derive(Serialize, Deserialize)]
struct CoveringRepr {
    k: usize,
    elements: usize,
    sets: Vec<CoverSetRepr>,
}

#[derive(Serialize, Deserialize)]
struct CoverSetRepr {
    members: Vec<usize>,
    cost: Vec<Rat>,
}

impl Serialize for CoveringInstance {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        CoveringRepr {
            k: self.k,
            elements: self.elements,
            sets: self
                .sets
                .iter()
                .map(|s| CoverSetRepr {
                    members: s.members.clone(),
                    cost: s.cost.coords().to_vec(),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CoveringInstance {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = CoveringRepr::deserialize(deserializer)?;
        let sets = repr
            .sets
            .into_iter()
            .map(|s| {
                Ok(CoverSet {
                    members: s.members,
                    cost: ObjectiveVector::new(s.cost).map_err(serde::de::Error::custom)?,
                })
            })
            .collect::<std::result::Result<Vec<_>, D::Error>>()?;
        for s in &sets {
            if s.cost.k() != repr.k {
                return Err(serde::de::Error::custom("cost dimension mismatch"));
            }
        }
        CoveringInstance::new(repr.elements, sets).map_err(serde::de::Error::custom)
    }
}

/// Vertex cover of a graph as a covering instance: the universe is the edge
/// set, and each vertex contributes the set of its incident edges.
pub fn vertex_cover_instance(
    vertices: usize,
    edges: &[(usize, usize)],
    costs: &[ObjectiveVector],
) -> Result<CoveringInstance> {
    assert_eq!(costs.len(), vertices);
    let sets = (0..vertices)
        .map(|v| CoverSet {
            members: edges
                .iter()
                .enumerate()
                .filter(|(_, &(a, b))| a == v || b == v)
                .map(|(i, _)| i)
                .collect(),
            cost: costs[v].clone(),
        })
        .filter(|s| !s.members.is_empty())
        .collect();
    CoveringInstance::new(edges.len(), sets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norm::Norm;
    use crate::vector::Sense;

    fn r(n: i64) -> Rat {
        Rat::from_int(n)
    }

    fn unit_costs(n: usize, k: usize) -> Vec<ObjectiveVector> {
        vec![ObjectiveVector::from_ints(&vec![1; k]); n]
    }

    fn triangle_vc() -> CoveringInstance {
        vertex_cover_instance(3, &[(0, 1), (0, 2), (1, 2)], &unit_costs(3, 2)).unwrap()
    }

    fn inf_ctx(k: usize, refpoint: &[i64]) -> ReferenceContext {
        ReferenceContext::new(
            ObjectiveVector::from_ints(refpoint),
            Norm::unit_infinity(k),
            Sense::Min,
        )
        .unwrap()
        .verified()
    }

    #[test]
    fn triangle_rounding() {
        let inst = triangle_vc();
        assert_eq!(inst.kappa(), 2);
        let half = vec![Rat::new(1, 2); 3];
        let selected = hochbaum_round(&inst, &half).unwrap();
        assert_eq!(selected, vec![true, true, true]);
        // Cost 3 <= kappa * 3/2.
        let cost = inst.selection_cost(&selected);
        assert_eq!(cost, ObjectiveVector::from_ints(&[3, 3]));
    }

    #[test]
    fn rounding_is_idempotent_on_integral_points() {
        let inst = triangle_vc();
        let integral = vec![r(1), r(1), r(0)];
        let selected = hochbaum_round(&inst, &integral).unwrap();
        assert_eq!(selected, vec![true, true, false]);
    }

    #[test]
    fn star_rounds_to_center() {
        // K_{1,3}: center 0, leaves 1..3.
        let inst =
            vertex_cover_instance(4, &[(0, 1), (0, 2), (0, 3)], &unit_costs(4, 2)).unwrap();
        assert_eq!(inst.kappa(), 3);
        let prog = RpProgram::new(
            inst.relaxation(),
            inst.cost_matrix(),
            ObjectiveVector::zero(2),
            PExponent::Infinity,
        )
        .unwrap();
        let sol = rp_lp_solve(&prog).unwrap();
        assert_eq!(sol.x[0], Rat::one());
        let selected = hochbaum_round(&inst, &sol.x).unwrap();
        assert_eq!(selected, vec![true, false, false, false]);
    }

    #[test]
    fn rejects_non_cover_fraction() {
        let inst = triangle_vc();
        assert!(hochbaum_round(&inst, &[Rat::new(1, 4), Rat::new(1, 4), Rat::new(1, 4)])
            .is_err());
    }

    #[test]
    fn triangle_pipeline_ratio() {
        let inst = triangle_vc();
        let ctx = inf_ctx(2, &[0, 0]);
        let rule = RoundingRule::hochbaum(&inst);
        let rounded = rp_via_lp_rounding(&inst, &ctx, &rule).unwrap();
        assert_eq!(rounded.fractional, vec![Rat::new(1, 2); 3]);
        assert_eq!(rounded.fractional_value, Rat::new(3, 2));
        assert_eq!(rounded.r_value, r(3));
        let (_, _, opt) = brute_integral_rp(&inst, &ctx).unwrap();
        assert_eq!(opt, r(2));
        // Observed ratio 3/2 within the kappa = 2 guarantee.
        assert!(rounded.r_value <= rule.factor.clone() * opt);
    }

    #[test]
    fn disjoint_singletons_are_exact() {
        // kappa = 1: each element covered by exactly one singleton set.
        let sets = (0..3)
            .map(|e| CoverSet {
                members: vec![e],
                cost: ObjectiveVector::from_ints(&[1 + e as i64, 3 - e as i64]),
            })
            .collect();
        let inst = CoveringInstance::new(3, sets).unwrap();
        assert_eq!(inst.kappa(), 1);
        let ctx = inf_ctx(2, &[0, 0]);
        let rule = RoundingRule::hochbaum(&inst);
        let rounded = rp_via_lp_rounding(&inst, &ctx, &rule).unwrap();
        let (_, _, opt) = brute_integral_rp(&inst, &ctx).unwrap();
        assert_eq!(rounded.r_value, opt);
    }

    #[test]
    fn chain_inequality_terms() {
        // r(C round(x')) <= kappa * program(x') <= kappa * r(C x_int*).
        let inst = triangle_vc();
        let ctx = inf_ctx(2, &[0, 0]);
        let rule = RoundingRule::hochbaum(&inst);
        let rounded = rp_via_lp_rounding(&inst, &ctx, &rule).unwrap();
        let kappa = rule.factor.clone();
        let (_, _, opt) = brute_integral_rp(&inst, &ctx).unwrap();
        assert!(rounded.r_value <= kappa.clone() * rounded.fractional_value.clone());
        assert!(rounded.fractional_value <= opt);
        // Coordinatewise rounding bound.
        for (sel, frac) in rounded.selected.iter().zip(&rounded.fractional) {
            let sel = if *sel { Rat::one() } else { Rat::zero() };
            assert!(sel <= kappa.clone() * frac.clone());
        }
    }

    #[test]
    fn json_roundtrip() {
        let json =
            r#"{"k":2,"elements":2,"sets":[{"members":[0,1],"cost":[2,1]},{"members":[1],"cost":[1,1]}]}"#;
        let inst: CoveringInstance = serde_json::from_str(json).unwrap();
        assert_eq!(inst.elements(), 2);
        assert_eq!(inst.kappa(), 2);
        let back = serde_json::to_string(&inst).unwrap();
        let again: CoveringInstance = serde_json::from_str(&back).unwrap();
        assert_eq!(again, inst);
    }
}
