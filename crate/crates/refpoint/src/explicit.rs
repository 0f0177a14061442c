//! Explicit finite instances and brute-force oracles.
//!
//! These solvers enumerate the whole objective vector set and serve as the
//! ground truth every reduction and approximation factor is validated against.

use crate::error::{Error, Result};
use crate::norm::{
    compare_ref_objective, ref_objective, Norm, NormCmp, NormValue, ReferenceContext,
};
use crate::rational::Rat;
use crate::reductions::GapAnswer;
use crate::vector::{pareto_filter, ObjectiveVector, Sense};
use serde::{Deserialize, Serialize};

/// A finite objective vector set contained in `[0, M]^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplicitInstance {
    k: usize,
    points: Vec<ObjectiveVector>,
    bound_m: Rat,
    rational: bool,
}

impl ExplicitInstance {
    /// Integral instance. `m` defaults to the largest coordinate.
    pub fn new(points: Vec<ObjectiveVector>, m: Option<Rat>) -> Result<Self> {
        Self::build(points, m, false)
    }

    /// Instance with rational coordinates (e.g. the image of an LP).
    pub fn new_rational(points: Vec<ObjectiveVector>, m: Option<Rat>) -> Result<Self> {
        Self::build(points, m, true)
    }

    fn build(mut points: Vec<ObjectiveVector>, m: Option<Rat>, rational: bool) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptySet);
        }
        let k = points[0].k();
        for p in &points {
            p.check_dim(k)?;
            if !rational && !p.is_integral() {
                return Err(Error::InvalidInstance(
                    "non-integral coordinates in an integral instance".into(),
                ));
            }
        }
        points.sort();
        points.dedup();
        let max_coord = points
            .iter()
            .flat_map(|p| p.coords())
            .max()
            .cloned()
            .expect("nonempty");
        let bound_m = match m {
            Some(m) => {
                if max_coord > m {
                    return Err(Error::InvalidInstance(format!(
                        "coordinate {} exceeds the stated bound M = {}",
                        max_coord, m
                    )));
                }
                m
            }
            None => max_coord,
        };
        Ok(ExplicitInstance {
            k,
            points,
            bound_m,
            rational,
        })
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        let points = rows.iter().map(|r| ObjectiveVector::from_ints(r)).collect();
        Self::new(points, None).expect("valid integer rows")
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Lexicographically sorted, duplicate-free.
    pub fn points(&self) -> &[ObjectiveVector] {
        &self.points
    }

    pub fn bound_m(&self) -> &Rat {
        &self.bound_m
    }

    pub fn is_rational(&self) -> bool {
        self.rational
    }

    pub fn contains(&self, y: &ObjectiveVector) -> bool {
        self.points.binary_search(y).is_ok()
    }
}

/// Component-wise optimum over all points: min for `Min`, max for `Max`.
pub fn ideal_point(inst: &ExplicitInstance, sense: Sense) -> ObjectiveVector {
    let coords = (0..inst.k())
        .map(|i| {
            let it = inst.points().iter().map(|p| p.get(i));
            match sense {
                Sense::Min => it.min().expect("nonempty").clone(),
                Sense::Max => it.max().expect("nonempty").clone(),
            }
        })
        .collect();
    ObjectiveVector::new(coords).expect("ideal point of a valid instance")
}

/// Feasible reference points sit at or below (Min) / at or above (Max) the ideal point.
pub fn is_feasible_refpoint(
    inst: &ExplicitInstance,
    refpoint: &ObjectiveVector,
    sense: Sense,
) -> Result<bool> {
    refpoint.check_dim(inst.k())?;
    let ideal = ideal_point(inst, sense);
    Ok(match sense {
        Sense::Min => refpoint.le(&ideal),
        Sense::Max => refpoint.ge(&ideal),
    })
}

/// Exact reference point optimum by enumeration. Ties break to the
/// lexicographically smallest objective vector.
///
/// Rejects infeasible reference points exactly (the brute oracle is the
/// exact end of the approximate-distinguish spectrum).
pub fn brute_rp_optimum(
    inst: &ExplicitInstance,
    ctx: &ReferenceContext,
) -> Result<(ObjectiveVector, NormValue)> {
    if ctx.k() != inst.k() {
        return Err(Error::DimensionMismatch {
            expected: inst.k(),
            got: ctx.k(),
        });
    }
    if !is_feasible_refpoint(inst, &ctx.refpoint, ctx.sense)? {
        let ideal = ideal_point(inst, ctx.sense);
        let index = (0..inst.k())
            .find(|&i| match ctx.sense {
                Sense::Min => ctx.refpoint.get(i) > ideal.get(i),
                Sense::Max => ctx.refpoint.get(i) < ideal.get(i),
            })
            .unwrap_or(0);
        return Err(Error::InfeasibleRefpoint { index });
    }
    brute_rp_optimum_unchecked(inst, ctx)
}

/// Exact rational key that orders points by their distance to the reference
/// point: the max for the infinity norm, max + sum/p for the cornered norm,
/// and the p-th power sum for integer-p l^p norms (a monotone transform).
fn distance_key(ctx: &ReferenceContext, point: &ObjectiveVector) -> Option<Rat> {
    let weighted: Vec<Rat> = ctx
        .norm
        .weights()
        .iter()
        .zip(point.abs_diff(&ctx.refpoint).coords())
        .map(|(w, d)| w * d)
        .collect();
    let max = weighted.iter().max().cloned().unwrap_or_else(Rat::zero);
    match ctx.norm.kind() {
        crate::norm::NormKind::Infinity => Some(max),
        crate::norm::NormKind::CorneredP(p) => {
            Some(max + weighted.iter().sum::<Rat>() / p.clone())
        }
        crate::norm::NormKind::Lp(p) => {
            if p.is_integer() {
                let exp = i32::try_from(p.numer().clone()).ok()?;
                Some(weighted.iter().map(|w| w.pow(exp)).sum())
            } else {
                None
            }
        }
    }
}

/// Integer power-sum keys for integer-p l^p norms over integral data: the
/// weights are cleared to integers by their common denominator (shared by
/// every point, so the ordering is unchanged) and everything stays in
/// big-integer arithmetic, avoiding rational normalization entirely.
fn lp_integer_keys(
    inst: &ExplicitInstance,
    ctx: &ReferenceContext,
) -> Option<Vec<num_bigint::BigInt>> {
    let crate::norm::NormKind::Lp(p) = ctx.norm.kind() else {
        return None;
    };
    if !p.is_integer() || inst.is_rational() || !ctx.refpoint.is_integral() {
        return None;
    }
    let exp = usize::try_from(p.numer().clone()).ok()?;
    let common: num_bigint::BigInt = ctx
        .norm
        .weights()
        .iter()
        .fold(num_bigint::BigInt::from(1), |acc, w| {
            num_integer::lcm(acc, w.denom().clone())
        });
    let scaled: Vec<num_bigint::BigInt> = ctx
        .norm
        .weights()
        .iter()
        .map(|w| w.numer() * &common / w.denom())
        .collect();
    let keys = inst
        .points()
        .iter()
        .map(|point| {
            point
                .abs_diff(&ctx.refpoint)
                .coords()
                .iter()
                .zip(&scaled)
                .map(|(d, w)| num_traits::pow::pow(d.numer() * w, exp))
                .sum()
        })
        .collect();
    Some(keys)
}

/// Same enumeration without the feasibility gate. Reductions call this on
/// transient reference points the caller has already reasoned about.
pub fn brute_rp_optimum_unchecked(
    inst: &ExplicitInstance,
    ctx: &ReferenceContext,
) -> Result<(ObjectiveVector, NormValue)> {
    // Keys are monotone transforms of the distance to the reference point;
    // both senses optimize by minimizing it (Min adds the distance to the
    // base value, Max subtracts it), and the lexicographically smallest
    // point wins ties because points are stored sorted.
    if let Some(keys) = lp_integer_keys(inst, ctx) {
        let best_idx = (1..keys.len()).fold(0, |b, i| if keys[i] < keys[b] { i } else { b });
        let best = inst.points()[best_idx].clone();
        let value = ref_objective(ctx, &best)?;
        return Ok((best, value));
    }
    if let Some(first_key) = distance_key(ctx, &inst.points()[0]) {
        let mut best = &inst.points()[0];
        let mut best_key = first_key;
        for p in &inst.points()[1..] {
            let key = distance_key(ctx, p).expect("same norm kind for every point");
            if key < best_key {
                best = p;
                best_key = key;
            }
        }
        let best = best.clone();
        let value = ref_objective(ctx, &best)?;
        return Ok((best, value));
    }
    let mut best: Option<&ObjectiveVector> = None;
    for p in inst.points() {
        match best {
            None => best = Some(p),
            Some(b) => {
                let cmp = compare_ref_objective(ctx, p, b)?;
                let better = match ctx.sense {
                    Sense::Min => cmp == NormCmp::Less,
                    Sense::Max => cmp == NormCmp::Greater,
                };
                if better {
                    best = Some(p);
                }
            }
        }
    }
    let best = best.expect("nonempty instance").clone();
    let value = ref_objective(ctx, &best)?;
    Ok((best, value))
}

/// Exact compromise programming optimum: reference point problem at the
/// ideal point, which is computed internally.
pub fn brute_cp_optimum(
    inst: &ExplicitInstance,
    norm: &Norm,
    sense: Sense,
) -> Result<(ObjectiveVector, NormValue)> {
    let ideal = ideal_point(inst, sense);
    let ctx = ReferenceContext::new(ideal, norm.clone(), sense)?.verified();
    brute_rp_optimum_unchecked(inst, &ctx)
}

pub fn exact_pareto_set(inst: &ExplicitInstance, sense: Sense) -> Vec<ObjectiveVector> {
    pareto_filter(inst.points(), sense)
}

/// Exact Gap oracle: a witness `y' <= y` when one exists (the lexicographically
/// smallest), otherwise the certificate that nothing lies at or below `y / alpha`.
///
/// The exact oracle prefers the witness side whenever both answers are valid.
pub fn gap_oracle_exact(
    inst: &ExplicitInstance,
    y: &ObjectiveVector,
    alpha: &Rat,
) -> Result<GapAnswer> {
    y.check_dim(inst.k())?;
    if alpha <= &Rat::one() {
        return Err(Error::InvalidParameter(format!("alpha = {} must be > 1", alpha)));
    }
    // Points are sorted, so the first match is the lexicographically smallest;
    // no point <= y at all certifies the negative side for any alpha > 1.
    for p in inst.points() {
        if p.le(y) {
            return Ok(GapAnswer::Witness(p.clone()));
        }
    }
    Ok(GapAnswer::NoneBelow)
}

/// Gap oracle with the witness search restricted to the Pareto frontier,
/// precomputed once. Answers are identical to [`gap_oracle_exact`]: the
/// lexicographically smallest witness always lies on the frontier.
///
/// For integral instances a point lies below `y` iff it lies below
/// `floor(y)`, so queries floor once and compare machine integers.
pub struct ExactGapOracle {
    frontier: Vec<ObjectiveVector>,
    frontier_int: Option<Vec<Vec<i64>>>,
    k: usize,
}

impl ExactGapOracle {
    pub fn new(inst: &ExplicitInstance) -> Self {
        let frontier = exact_pareto_set(inst, Sense::Min);
        let frontier_int = frontier
            .iter()
            .map(|p| {
                p.coords()
                    .iter()
                    .map(|c| {
                        if c.is_integer() {
                            i64::try_from(c.numer().clone()).ok()
                        } else {
                            None
                        }
                    })
                    .collect::<Option<Vec<i64>>>()
            })
            .collect::<Option<Vec<Vec<i64>>>>();
        ExactGapOracle {
            frontier,
            frontier_int,
            k: inst.k(),
        }
    }

    pub fn query(&self, y: &ObjectiveVector) -> Result<GapAnswer> {
        y.check_dim(self.k)?;
        if let Some(frontier_int) = &self.frontier_int {
            let floors: Vec<i64> = y
                .coords()
                .iter()
                .map(|c| i64::try_from(c.floor_int()).unwrap_or(i64::MAX))
                .collect();
            for (idx, p) in frontier_int.iter().enumerate() {
                if p.iter().zip(&floors) .all(|(pc, yc)| pc <= yc) {
                    return Ok(GapAnswer::Witness(self.frontier[idx].clone()));
                }
            }
            return Ok(GapAnswer::NoneBelow);
        }
        for p in &self.frontier {
            if p.le(y) {
                return Ok(GapAnswer::Witness(p.clone()));
            }
        }
        Ok(GapAnswer::NoneBelow)
    }
}

/// JSON shape: `{"k":2,"points":[[10,1],[6,6],[1,10]],"M":10}`.
#[derive(Serialize, Deserialize)]
struct ExplicitInstanceRepr {
    k: usize,
    points: Vec<Vec<Rat>>,
    #[serde(rename = "M", skip_serializing_if = "Option::is_none")]
    m: Option<Rat>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    rational: bool,
}

impl Serialize for ExplicitInstance {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ExplicitInstanceRepr {
            k: self.k,
            points: self
                .points
                .iter()
                .map(|p| p.coords().to_vec())
                .collect(),
            m: Some(self.bound_m.clone()),
            rational: self.rational,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ExplicitInstance {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = ExplicitInstanceRepr::deserialize(deserializer)?;
        let points = repr
            .points
            .into_iter()
            .map(ObjectiveVector::new)
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        for p in &points {
            if p.k() != repr.k {
                return Err(serde::de::Error::custom(format!(
                    "point {:?} does not have k = {} coordinates",
                    p, repr.k
                )));
            }
        }
        let build = if repr.rational {
            ExplicitInstance::new_rational(points, repr.m)
        } else {
            ExplicitInstance::new(points, repr.m)
        };
        build.map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norm::eval_norm;

    fn routes() -> ExplicitInstance {
        ExplicitInstance::from_int_rows(&[&[10, 1], &[6, 6], &[1, 10]])
    }

    fn v(coords: &[i64]) -> ObjectiveVector {
        ObjectiveVector::from_ints(coords)
    }

    fn unit_inf(k: usize) -> Norm {
        Norm::unit_infinity(k)
    }

    #[test]
    fn ideal_points() {
        assert_eq!(ideal_point(&routes(), Sense::Min), v(&[1, 1]));
        let single = ExplicitInstance::from_int_rows(&[&[5, 5]]);
        assert_eq!(ideal_point(&single, Sense::Min), v(&[5, 5]));
        let max3 = ExplicitInstance::from_int_rows(&[&[1, 1], &[3, 0], &[0, 3]]);
        assert_eq!(ideal_point(&max3, Sense::Max), v(&[3, 3]));
    }

    #[test]
    fn feasibility() {
        let inst = routes();
        assert!(is_feasible_refpoint(&inst, &v(&[1, 1]), Sense::Min).unwrap());
        assert!(is_feasible_refpoint(&inst, &v(&[0, 0]), Sense::Min).unwrap());
        assert!(!is_feasible_refpoint(&inst, &v(&[2, 0]), Sense::Min).unwrap());
    }

    #[test]
    fn brute_rp() {
        let inst = routes();
        let ctx = ReferenceContext::new(v(&[1, 1]), unit_inf(2), Sense::Min).unwrap();
        let (y, value) = brute_rp_optimum(&inst, &ctx).unwrap();
        assert_eq!(y, v(&[6, 6]));
        assert_eq!(value, NormValue::Exact(Rat::from_int(6)));

        let single = ExplicitInstance::from_int_rows(&[&[5, 5]]);
        let ctx = ReferenceContext::new(v(&[0, 0]), unit_inf(2), Sense::Min).unwrap();
        assert_eq!(brute_rp_optimum(&single, &ctx).unwrap().0, v(&[5, 5]));

        let norm = Norm::infinity(vec![Rat::one(), Rat::zero()]).unwrap();
        let ctx = ReferenceContext::new(v(&[0, 0]), norm, Sense::Min).unwrap();
        let (y, value) = brute_rp_optimum(&inst, &ctx).unwrap();
        assert_eq!(y, v(&[1, 10]));
        assert_eq!(value, NormValue::Exact(Rat::from_int(1)));
    }

    #[test]
    fn brute_rp_rejects_infeasible() {
        let ctx = ReferenceContext::new(v(&[2, 0]), unit_inf(2), Sense::Min).unwrap();
        match brute_rp_optimum(&routes(), &ctx) {
            Err(Error::InfeasibleRefpoint { index }) => assert_eq!(index, 0),
            other => panic!("expected infeasible refpoint, got {:?}", other.map(|x| x.0)),
        }
    }

    #[test]
    fn brute_cp() {
        let (y, value) = brute_cp_optimum(&routes(), &unit_inf(2), Sense::Min).unwrap();
        assert_eq!(y, v(&[6, 6]));
        assert_eq!(value, NormValue::Exact(Rat::from_int(6)));

        let attained = ExplicitInstance::from_int_rows(&[&[0, 0], &[1, 1]]);
        let (y, value) = brute_cp_optimum(&attained, &unit_inf(2), Sense::Min).unwrap();
        assert_eq!(y, v(&[0, 0]));
        assert_eq!(value, NormValue::Exact(Rat::zero()));

        let max3 = ExplicitInstance::from_int_rows(&[&[1, 1], &[3, 0], &[0, 3]]);
        let (y, value) = brute_cp_optimum(&max3, &unit_inf(2), Sense::Max).unwrap();
        assert_eq!(y, v(&[1, 1]));
        assert_eq!(value, NormValue::Exact(Rat::from_int(1)));
    }

    #[test]
    fn gap_oracle() {
        let inst = routes();
        let two = Rat::from_int(2);
        match gap_oracle_exact(&inst, &v(&[7, 7]), &two).unwrap() {
            GapAnswer::Witness(w) => assert_eq!(w, v(&[6, 6])),
            GapAnswer::NoneBelow => panic!("expected witness"),
        }
        assert_eq!(
            gap_oracle_exact(&inst, &v(&[0, 0]), &two).unwrap(),
            GapAnswer::NoneBelow
        );
        assert_eq!(
            gap_oracle_exact(&inst, &v(&[5, 5]), &Rat::new(21, 20)).unwrap(),
            GapAnswer::NoneBelow
        );
        assert!(gap_oracle_exact(&inst, &v(&[5, 5]), &Rat::one()).is_err());
    }

    #[test]
    fn frontier_oracle_matches_plain_oracle() {
        let inst = ExplicitInstance::from_int_rows(&[
            &[1, 9],
            &[2, 2],
            &[9, 1],
            &[5, 5],
            &[2, 8],
        ]);
        let oracle = ExactGapOracle::new(&inst);
        for a in 0..11 {
            for b in 0..11 {
                let y = v(&[a, b]);
                assert_eq!(
                    oracle.query(&y).unwrap(),
                    gap_oracle_exact(&inst, &y, &Rat::from_int(2)).unwrap()
                );
            }
        }
    }

    #[test]
    fn cp_value_dominates_ideal_norm() {
        // Price of compromise is nonnegative for Min.
        let insts = [
            routes(),
            ExplicitInstance::from_int_rows(&[&[3, 7], &[4, 4], &[8, 1], &[2, 9]]),
        ];
        for inst in &insts {
            for norm in [
                unit_inf(2),
                Norm::cornered(Rat::from_int(3), vec![Rat::one(), Rat::new(1, 2)]).unwrap(),
            ] {
                let ideal = ideal_point(inst, Sense::Min);
                let ideal_norm = eval_norm(&norm, &ideal).unwrap();
                let (_, value) = brute_cp_optimum(inst, &norm, Sense::Min).unwrap();
                assert!(value.hi() >= ideal_norm.lo());
            }
        }
    }

    #[test]
    fn json_roundtrip() {
        let json = r#"{"k":2,"points":[[10,1],[6,6],[1,10]],"M":10}"#;
        let inst: ExplicitInstance = serde_json::from_str(json).unwrap();
        assert_eq!(inst, routes());
        let back = serde_json::to_string(&inst).unwrap();
        let again: ExplicitInstance = serde_json::from_str(&back).unwrap();
        assert_eq!(again, inst);

        // Rational coordinates require the flag.
        let bad = r#"{"k":2,"points":[["1/2",1]]}"#;
        assert!(serde_json::from_str::<ExplicitInstance>(bad).is_err());
        let ok = r#"{"k":2,"points":[["1/2",1]],"rational":true}"#;
        assert!(serde_json::from_str::<ExplicitInstance>(ok).is_ok());
    }
}
