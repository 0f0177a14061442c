//! Batch front end: instance ingestion, solver dispatch, and the seeded
//! verification suites. The `refpoint` binary is a thin wrapper over this
//! module.
//!
//! All numeric output is emitted as exact rational strings with a decimal
//! convenience field; identical configuration and seed produce byte-identical
//! documents.

use crate::covering::{brute_integral_rp, rp_via_lp_rounding, CoveringInstance, RoundingRule};
use crate::error::{Error, Result};
use crate::explicit::{
    brute_cp_optimum, brute_rp_optimum, brute_rp_optimum_unchecked, exact_pareto_set,
    gap_oracle_exact, ideal_point, ExactGapOracle, ExplicitInstance,
};
use crate::graph::{brute_sp_rp, graph_ideal_point, pseudopoly_sp_rp, GraphInstance};
use crate::lp::{fptas_pareto_lp, rp_lp_solve, PExponent, RpProgram};
use crate::max::{
    cp_indistinguishability_check, cp_max_fixture, exact_ws_max, max_gap_via_rp,
    max_select_from_pareto, ws_counterexample_check, ws_max_fixture, MaxGapAnswer, MaxRpSolver,
};
use crate::norm::{
    certify_within_factor, ref_objective, Norm, NormKind, NormValue, ReferenceContext,
};
use crate::rational::Rat;
use crate::reductions::{
    approx_cp_via_pareto, epsilon_pareto_via_gap, gap_via_rp_inf, gap_via_rp_pnorm,
    observed_coverage_factor, rp_via_weighted_sum, select_rp_from_pareto, thin_pareto_set,
    weight_for_pareto_point, ApproxParetoSet, GapAnswer, InstanceHandle, NormFamily,
    RpApproxSolver, WeightedSumSolver,
};
use crate::scaling::{bounds_via_weighted_sum, fptas_cp_sp, fptas_rp_sp, scale_instance};
use crate::simplex::{enumerate_vertices, Polyhedron};
use crate::vector::{ObjectiveVector, Sense};
use crate::corpus;
use serde::{Deserialize, Serialize};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
}

/// A finished command: the document to print and the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutput {
    pub document: String,
    pub exit_code: i32,
}

impl CommandOutput {
    fn ok(document: String) -> Self {
        CommandOutput {
            document,
            exit_code: EXIT_OK,
        }
    }
}

fn error_output(err: &Error) -> CommandOutput {
    let exit_code = match err {
        Error::InfeasibleRefpoint { .. } => EXIT_INFEASIBLE,
        _ => EXIT_PARSE,
    };
    let doc = serde_json::json!({
        "error": err.to_string(),
        "note": match err {
            Error::InfeasibleRefpoint { .. } =>
                "reference points must lie at or below the ideal point; approximate \
                 solvers may accept slightly infeasible points, the exact ones reject exactly",
            _ => "",
        },
    });
    CommandOutput {
        document: serde_json::to_string_pretty(&doc).expect("serializable"),
        exit_code,
    }
}

/// Any of the instance formats the toolkit reads, detected by JSON shape
/// (`points` / `edges` / `sets` / `rows`) or forced by a `"type"` field.
#[derive(Debug, Clone)]
pub enum Instance {
    Explicit(ExplicitInstance),
    Graph(GraphInstance),
    Covering(CoveringInstance),
    Lp(LpFile),
}

/// JSON H-representation with rational strings plus the objective rows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LpFile {
    pub n: usize,
    pub nonneg: Vec<bool>,
    pub rows: Vec<crate::simplex::ConstraintRow>,
    pub objectives: Vec<Vec<Rat>>,
}

impl LpFile {
    pub fn polyhedron(&self) -> Result<Polyhedron> {
        Polyhedron::new(self.n, self.nonneg.clone(), self.rows.clone())
    }
}

pub fn parse_instance(json: &str) -> Result<Instance> {
    let value: serde_json::Value =
        serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
    let obj = value
        .as_object()
        .ok_or_else(|| Error::Parse("instance file must be a JSON object".into()))?;
    let kind = obj
        .get("type")
        .and_then(|t| t.as_str())
        .map(str::to_owned)
        .unwrap_or_else(|| {
            if obj.contains_key("points") {
                "explicit".into()
            } else if obj.contains_key("edges") {
                "graph".into()
            } else if obj.contains_key("sets") {
                "covering".into()
            } else if obj.contains_key("rows") {
                "lp".into()
            } else {
                "unknown".into()
            }
        });
    let mut value = value;
    if let Some(map) = value.as_object_mut() {
        map.remove("type");
    }
    match kind.as_str() {
        "explicit" => Ok(Instance::Explicit(
            serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))?,
        )),
        "graph" => Ok(Instance::Graph(
            serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))?,
        )),
        "covering" => Ok(Instance::Covering(
            serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))?,
        )),
        "lp" => Ok(Instance::Lp(
            serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))?,
        )),
        other => Err(Error::Parse(format!(
            "cannot determine instance type (got {:?}); expected points/edges/sets/rows \
             or an explicit \"type\"",
            other
        ))),
    }
}

/// Parses `"inf"`, `"lp:p"` or `"cornered:p"` together with optional weights
/// (unit weights by default).
pub fn parse_norm_spec(spec: &str, weights: Option<&[Rat]>, k: usize) -> Result<Norm> {
    let weights = match weights {
        Some(w) => {
            if w.len() != k {
                return Err(Error::DimensionMismatch {
                    expected: k,
                    got: w.len(),
                });
            }
            w.to_vec()
        }
        None => vec![Rat::one(); k],
    };
    let kind = if spec == "inf" {
        NormKind::Infinity
    } else if let Some(p) = spec.strip_prefix("lp:") {
        NormKind::Lp(p.parse().map_err(|_| Error::Parse(format!("bad p in {:?}", spec)))?)
    } else if let Some(p) = spec.strip_prefix("cornered:") {
        NormKind::CorneredP(
            p.parse()
                .map_err(|_| Error::Parse(format!("bad p in {:?}", spec)))?,
        )
    } else {
        return Err(Error::Parse(format!(
            "norm spec {:?} is not inf | lp:p | cornered:p",
            spec
        )));
    };
    Norm::new_allow_zero_weights(kind, weights)
}

fn rat_vec(values: &[Rat]) -> Vec<String> {
    values.iter().map(|r| r.to_string()).collect()
}

/// Result document of a single solve.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolveDocument {
    pub command: String,
    pub method: String,
    pub norm: String,
    pub weights: Vec<String>,
    pub refpoint: Vec<String>,
    pub solution: serde_json::Value,
    pub objective_vector: Vec<String>,
    pub r_value: String,
    pub r_value_decimal: f64,
    pub factor_guarantee: String,
}

fn norm_spec_string(norm: &Norm) -> String {
    match norm.kind() {
        NormKind::Infinity => "inf".into(),
        NormKind::Lp(p) => format!("lp:{}", p),
        NormKind::CorneredP(p) => format!("cornered:{}", p),
    }
}

fn solve_document(
    command: &str,
    method: &str,
    ctx: &ReferenceContext,
    solution: serde_json::Value,
    objective: &ObjectiveVector,
    r_value: &NormValue,
    guarantee: &Rat,
) -> SolveDocument {
    SolveDocument {
        command: command.into(),
        method: method.into(),
        norm: norm_spec_string(&ctx.norm),
        weights: rat_vec(ctx.norm.weights()),
        refpoint: rat_vec(ctx.refpoint.coords()),
        solution,
        objective_vector: rat_vec(objective.coords()),
        r_value: match r_value {
            NormValue::Exact(r) => r.to_string(),
            NormValue::Interval { lo, hi } => format!("[{}, {}]", lo, hi),
        },
        r_value_decimal: r_value.to_f64(),
        factor_guarantee: guarantee.to_string(),
    }
}

fn to_json(value: &impl Serialize) -> String {
    serde_json::to_string_pretty(value).expect("serializable document")
}

/// Reference point solve dispatched on the instance type. `epsilon` switches
/// graph instances from the exact label solver to the FPTAS.
pub fn cmd_rp(
    instance: &Instance,
    norm_spec: &str,
    weights: Option<&[Rat]>,
    refpoint: &[Rat],
    epsilon: Option<&Rat>,
) -> CommandOutput {
    match cmd_rp_inner(instance, norm_spec, weights, refpoint, epsilon) {
        Ok(doc) => CommandOutput::ok(to_json(&doc)),
        Err(e) => error_output(&e),
    }
}

fn cmd_rp_inner(
    instance: &Instance,
    norm_spec: &str,
    weights: Option<&[Rat]>,
    refpoint: &[Rat],
    epsilon: Option<&Rat>,
) -> Result<SolveDocument> {
    match instance {
        Instance::Explicit(inst) => {
            let norm = parse_norm_spec(norm_spec, weights, inst.k())?;
            let refpoint = ObjectiveVector::new(refpoint.to_vec())?;
            let ctx = ReferenceContext::new(refpoint, norm, Sense::Min)?;
            let (point, value) = brute_rp_optimum(inst, &ctx)?;
            Ok(solve_document(
                "rp",
                "brute-force",
                &ctx,
                serde_json::json!({ "point": rat_vec(point.coords()) }),
                &point,
                &value,
                &Rat::one(),
            ))
        }
        Instance::Graph(inst) => {
            let norm = parse_norm_spec(norm_spec, weights, inst.k())?;
            let refpoint = ObjectiveVector::new(refpoint.to_vec())?;
            let ctx = ReferenceContext::new(refpoint, norm, Sense::Min)?;
            let ideal = graph_ideal_point(inst)?;
            if !ctx.refpoint.le(&ideal) {
                let index = (0..inst.k())
                    .find(|&i| ctx.refpoint.get(i) > ideal.get(i))
                    .unwrap_or(0);
                return Err(Error::InfeasibleRefpoint { index });
            }
            match epsilon {
                None => {
                    let bounds = bounds_via_weighted_sum(inst, &ctx)?;
                    let (sol, _) = pseudopoly_sp_rp(inst, &ctx, Some(&bounds.upper))?;
                    Ok(solve_document(
                        "rp",
                        "label-dp",
                        &ctx,
                        serde_json::json!({ "path_edges": sol.path }),
                        &sol.cost,
                        &sol.r_value,
                        &Rat::one(),
                    ))
                }
                Some(eps) => {
                    let (sol, cert) = fptas_rp_sp(inst, &ctx, eps)?;
                    Ok(solve_document(
                        "rp",
                        "fptas-sp",
                        &ctx,
                        serde_json::json!({
                            "path_edges": sol.path,
                            "certificate": cert,
                        }),
                        &sol.cost,
                        &sol.r_value,
                        &cert.guarantee,
                    ))
                }
            }
        }
        Instance::Lp(file) => {
            let k = file.objectives.len();
            let norm = parse_norm_spec(norm_spec, weights, k)?;
            let p = match norm.kind() {
                NormKind::Infinity => PExponent::Infinity,
                NormKind::CorneredP(p) => PExponent::Finite(p.clone()),
                NormKind::Lp(_) => {
                    return Err(Error::InvalidParameter(
                        "LP reference point programs use inf or cornered:p".into(),
                    ))
                }
            };
            let refpoint = ObjectiveVector::new(refpoint.to_vec())?;
            let ctx = ReferenceContext::new(refpoint.clone(), norm.clone(), Sense::Min)?;
            let poly = file.polyhedron()?;
            // Feasibility against the fractional ideal point, exactly.
            let (minima, _) = crate::lp::objective_range(&poly, &file.objectives)?;
            if let Some(index) =
                (0..k).find(|&i| refpoint.get(i) > &minima[i])
            {
                return Err(Error::InfeasibleRefpoint { index });
            }
            // Fold weights into costs.
            let folded: Vec<Vec<Rat>> = file
                .objectives
                .iter()
                .enumerate()
                .map(|(i, row)| row.iter().map(|c| &norm.weights()[i] * c).collect())
                .collect();
            let folded_ref = ObjectiveVector::new(
                (0..k)
                    .map(|i| &norm.weights()[i] * refpoint.get(i))
                    .collect(),
            )?;
            let prog = RpProgram::new(poly, folded, folded_ref, p)?;
            let sol = rp_lp_solve(&prog)?;
            let unweighted = ObjectiveVector::new(
                file.objectives
                    .iter()
                    .map(|row| row.iter().zip(&sol.x).map(|(c, xi)| c * xi).sum())
                    .collect(),
            )?;
            Ok(solve_document(
                "rp",
                "lp",
                &ctx,
                serde_json::json!({ "x": rat_vec(&sol.x) }),
                &unweighted,
                &NormValue::Exact(sol.r_value.clone()),
                &Rat::one(),
            ))
        }
        Instance::Covering(_) => Err(Error::InvalidParameter(
            "covering instances solve via the `round` command".into(),
        )),
    }
}

/// Compromise programming solve: the ideal point is computed, never taken
/// as input.
pub fn cmd_cp(
    instance: &Instance,
    norm_spec: &str,
    weights: Option<&[Rat]>,
    epsilon: Option<&Rat>,
) -> CommandOutput {
    match cmd_cp_inner(instance, norm_spec, weights, epsilon) {
        Ok(doc) => CommandOutput::ok(to_json(&doc)),
        Err(e) => error_output(&e),
    }
}

fn cmd_cp_inner(
    instance: &Instance,
    norm_spec: &str,
    weights: Option<&[Rat]>,
    epsilon: Option<&Rat>,
) -> Result<SolveDocument> {
    match instance {
        Instance::Explicit(inst) => {
            let norm = parse_norm_spec(norm_spec, weights, inst.k())?;
            let (point, value) = brute_cp_optimum(inst, &norm, Sense::Min)?;
            let ctx = ReferenceContext::new(
                ideal_point(inst, Sense::Min),
                norm,
                Sense::Min,
            )?;
            Ok(solve_document(
                "cp",
                "brute-force",
                &ctx,
                serde_json::json!({ "point": rat_vec(point.coords()) }),
                &point,
                &value,
                &Rat::one(),
            ))
        }
        Instance::Graph(inst) => {
            let norm = parse_norm_spec(norm_spec, weights, inst.k())?;
            let ideal = graph_ideal_point(inst)?;
            let ctx = ReferenceContext::new(ideal, norm.clone(), Sense::Min)?.verified();
            match epsilon {
                None => {
                    let bounds = bounds_via_weighted_sum(inst, &ctx)?;
                    let (sol, _) = pseudopoly_sp_rp(inst, &ctx, Some(&bounds.upper))?;
                    Ok(solve_document(
                        "cp",
                        "label-dp",
                        &ctx,
                        serde_json::json!({ "path_edges": sol.path }),
                        &sol.cost,
                        &sol.r_value,
                        &Rat::one(),
                    ))
                }
                Some(eps) => {
                    let (sol, cert) = fptas_cp_sp(inst, &norm, eps)?;
                    Ok(solve_document(
                        "cp",
                        "fptas-sp",
                        &ctx,
                        serde_json::json!({
                            "path_edges": sol.path,
                            "certificate": cert,
                        }),
                        &sol.cost,
                        &sol.r_value,
                        &cert.guarantee,
                    ))
                }
            }
        }
        Instance::Lp(file) => {
            // Ideal point from per-criterion LP minima, then the RP program.
            let poly = file.polyhedron()?;
            let (minima, _) = crate::lp::objective_range(&poly, &file.objectives)?;
            let ideal: Vec<Rat> = minima;
            cmd_rp_inner(instance, norm_spec, weights, &ideal, epsilon).map(|mut doc| {
                doc.command = "cp".into();
                doc
            })
        }
        Instance::Covering(_) => Err(Error::InvalidParameter(
            "covering instances solve via the `round` command".into(),
        )),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GapDocument {
    pub command: String,
    pub via: String,
    pub query: Vec<String>,
    pub alpha: String,
    pub answer: String,
    pub witness: Option<Vec<String>>,
}

/// Gap query over an explicit instance, via the exact oracle or one of the
/// reductions powered by exact brute-force solvers.
pub fn cmd_gap(instance: &Instance, query: &[Rat], alpha: &Rat, via: &str) -> CommandOutput {
    match cmd_gap_inner(instance, query, alpha, via) {
        Ok(doc) => CommandOutput::ok(to_json(&doc)),
        Err(e) => error_output(&e),
    }
}

fn cmd_gap_inner(
    instance: &Instance,
    query: &[Rat],
    alpha: &Rat,
    via: &str,
) -> Result<GapDocument> {
    let Instance::Explicit(inst) = instance else {
        return Err(Error::InvalidParameter(
            "gap queries run over explicit instances".into(),
        ));
    };
    let y = ObjectiveVector::new(query.to_vec())?;
    let handle = InstanceHandle::explicit(inst);
    let solver = RpApproxSolver::exact_brute(inst);
    let refpoint = ideal_point(inst, Sense::Min);
    let answer = match via {
        "exact" => gap_oracle_exact(inst, &y, alpha)?,
        "rp" => gap_via_rp_inf(&handle, &y, alpha, || Ok(refpoint), &solver)?,
        "rp-pnorm" => gap_via_rp_pnorm(
            &handle,
            &y,
            alpha,
            || Ok(refpoint),
            &solver,
            NormFamily::CorneredP,
        )?,
        "cp" => {
            let cp = crate::reductions::CpApproxSolver::exact_brute(inst);
            crate::reductions::gap_via_cp(
                &handle,
                &y,
                alpha,
                &cp,
                crate::reductions::GapNorm::Infinity,
            )?
        }
        other => {
            return Err(Error::Parse(format!(
                "unknown gap route {:?}; expected exact | rp | rp-pnorm | cp",
                other
            )))
        }
    };
    Ok(GapDocument {
        command: "gap".into(),
        via: via.into(),
        query: rat_vec(y.coords()),
        alpha: alpha.to_string(),
        answer: match &answer {
            GapAnswer::Witness(_) => "witness".into(),
            GapAnswer::NoneBelow => "none-below".into(),
        },
        witness: answer.witness().map(|w| rat_vec(w.coords())),
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ParetoDocument {
    pub command: String,
    pub via: String,
    pub alpha: String,
    pub points: Vec<Vec<String>>,
    pub provenance: Vec<String>,
    pub observed_coverage: Option<String>,
}

/// Pareto set construction: exact enumeration or the Gap-grid route. With an
/// explicit instance the observed coverage factor is reported exactly; LP
/// instances run the grid over the exact reference point program and need a
/// strictly positive objective bound (`positivity`).
pub fn cmd_pareto(
    instance: &Instance,
    alpha: Option<&Rat>,
    epsilon: Option<&Rat>,
    via: &str,
    positivity: Option<&Rat>,
) -> CommandOutput {
    match cmd_pareto_inner(instance, alpha, epsilon, via, positivity) {
        Ok(doc) => CommandOutput::ok(to_json(&doc)),
        Err(e) => error_output(&e),
    }
}

fn cmd_pareto_inner(
    instance: &Instance,
    alpha: Option<&Rat>,
    epsilon: Option<&Rat>,
    via: &str,
    positivity: Option<&Rat>,
) -> Result<ParetoDocument> {
    let inst = match instance {
        Instance::Explicit(inst) => inst,
        Instance::Lp(file) => {
            let eps = match (epsilon, alpha) {
                (Some(e), _) => e.clone(),
                (None, Some(a)) => a - &Rat::one(),
                (None, None) => Rat::one(),
            };
            let bound = positivity.cloned().ok_or_else(|| {
                Error::InvalidParameter(
                    "LP Pareto approximation needs --positivity, the promised lower \
                     bound on every attainable objective value"
                        .into(),
                )
            })?;
            let set = fptas_pareto_lp(&file.polyhedron()?, &file.objectives, &eps, &bound)?;
            return Ok(ParetoDocument {
                command: "pareto".into(),
                via: "gap".into(),
                alpha: set.alpha.to_string(),
                points: set.points().iter().map(|p| rat_vec(p.coords())).collect(),
                provenance: set.provenance().iter().map(|p| format!("{:?}", p)).collect(),
                observed_coverage: None,
            });
        }
        _ => {
            return Err(Error::InvalidParameter(
                "pareto construction runs over explicit or LP instances".into(),
            ))
        }
    };
    let alpha = match (alpha, epsilon) {
        (Some(a), _) => a.clone(),
        (None, Some(e)) => Rat::one() + e.clone(),
        (None, None) => Rat::from_int(2),
    };
    let set = match via {
        "exact" => ApproxParetoSet::exact(inst, Sense::Min),
        "gap" => {
            let oracle = ExactGapOracle::new(inst);
            let handle = InstanceHandle::explicit(inst);
            epsilon_pareto_via_gap(&handle, |y| oracle.query(y), &alpha)?
        }
        other => {
            return Err(Error::Parse(format!(
                "unknown pareto route {:?}; expected exact | gap",
                other
            )))
        }
    };
    let coverage = observed_coverage_factor(
        set.points(),
        &exact_pareto_set(inst, Sense::Min),
        Sense::Min,
    );
    Ok(ParetoDocument {
        command: "pareto".into(),
        via: via.into(),
        alpha: set.alpha.to_string(),
        points: set
            .points()
            .iter()
            .map(|p| rat_vec(p.coords()))
            .collect(),
        provenance: set
            .provenance()
            .iter()
            .map(|p| format!("{:?}", p))
            .collect(),
        observed_coverage: coverage.map(|c| c.to_string()),
    })
}

/// Emits one of the maximization counterexample fixtures as an instance file.
pub fn cmd_fixtures(name: &str, m: Option<i64>, eps: Option<&Rat>) -> CommandOutput {
    let result: Result<String> = (|| match name {
        "ws-max" => Ok(serde_json::to_string_pretty(&ws_max_fixture()).expect("serializable")),
        "cp-max" => {
            let m = m.unwrap_or(1000);
            let eps = eps.cloned().unwrap_or_else(|| Rat::new(1, 2));
            let (with_y, without_y) = cp_max_fixture(m, &eps)?;
            Ok(to_json(&serde_json::json!({
                "with_balanced_point": with_y,
                "without_balanced_point": without_y,
            })))
        }
        other => Err(Error::Parse(format!(
            "unknown fixture {:?}; expected ws-max | cp-max",
            other
        ))),
    })();
    match result {
        Ok(document) => CommandOutput::ok(document),
        Err(e) => error_output(&e),
    }
}

/// Rounding pipeline over a covering instance: exact fractional reference
/// point solve, threshold rounding, exact report.
pub fn cmd_round(
    instance: &Instance,
    norm_spec: &str,
    weights: Option<&[Rat]>,
    refpoint: &[Rat],
) -> CommandOutput {
    match cmd_round_inner(instance, norm_spec, weights, refpoint) {
        Ok(doc) => CommandOutput::ok(doc),
        Err(e) => error_output(&e),
    }
}

fn cmd_round_inner(
    instance: &Instance,
    norm_spec: &str,
    weights: Option<&[Rat]>,
    refpoint: &[Rat],
) -> Result<String> {
    let Instance::Covering(inst) = instance else {
        return Err(Error::InvalidParameter(
            "`round` runs over covering instances".into(),
        ));
    };
    let norm = parse_norm_spec(norm_spec, weights, inst.k())?;
    let refpoint = ObjectiveVector::new(refpoint.to_vec())?;
    let ctx = ReferenceContext::new(refpoint, norm, Sense::Min)?;
    let rule = RoundingRule::hochbaum(inst);
    let factor = rule.factor.clone();
    let rounded = rp_via_lp_rounding(inst, &ctx, &rule)?;
    Ok(to_json(&serde_json::json!({
        "command": "round",
        "method": "lp-rounding",
        "kappa": factor.to_string(),
        "fractional": rat_vec(&rounded.fractional),
        "fractional_value": rounded.fractional_value.to_string(),
        "selected_sets": rounded
            .selected
            .iter()
            .enumerate()
            .filter(|(_, &s)| s)
            .map(|(i, _)| i)
            .collect::<Vec<_>>(),
        "objective_vector": rat_vec(rounded.cost.coords()),
        "r_value": rounded.r_value.to_string(),
        "r_value_decimal": rounded.r_value.to_f64(),
        "factor_guarantee": factor.to_string(),
    })))
}

// ---------------------------------------------------------------------------
// Verification suites
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerifyRow {
    pub instance: String,
    pub check: String,
    pub claimed: String,
    pub observed: String,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suite: String,
    pub seed: u64,
    pub trials: usize,
    pub violations: usize,
    pub rows: Vec<VerifyRow>,
}

impl VerifyReport {
    pub fn exit_code(&self) -> i32 {
        if self.violations == 0 {
            EXIT_OK
        } else {
            EXIT_VIOLATION
        }
    }

    /// CSV of (instance id, check, claimed factor, observed ratio, pass).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("instance,check,claimed,observed,pass\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                row.instance, row.check, row.claimed, row.observed, row.pass
            ));
        }
        out
    }
}

struct RowSink {
    rows: Vec<VerifyRow>,
}

impl RowSink {
    fn new() -> Self {
        RowSink { rows: Vec::new() }
    }

    fn push(&mut self, instance: String, check: &str, claimed: String, result: Result<(bool, String)>) {
        let (pass, observed) = match result {
            Ok((pass, observed)) => (pass, observed),
            Err(e) => (false, format!("error: {}", e)),
        };
        self.rows.push(VerifyRow {
            instance,
            check: check.into(),
            claimed,
            observed,
            pass,
        });
    }
}

fn finish(suite: &str, seed: u64, trials: usize, rows: Vec<VerifyRow>) -> VerifyReport {
    let violations = rows.iter().filter(|r| !r.pass).count();
    VerifyReport {
        suite: suite.into(),
        seed,
        trials,
        violations,
        rows,
    }
}

/// Runs `per_instance` for every instance index, fanning out over `threads`
/// while keeping row order (hence report bytes) independent of the thread
/// count: every index derives its own RNG stream.
fn run_indexed(
    trials: usize,
    threads: usize,
    per_instance: impl Fn(usize) -> Vec<VerifyRow> + Sync,
) -> Vec<VerifyRow> {
    let threads = threads.max(1);
    if threads == 1 {
        return (0..trials).flat_map(per_instance).collect();
    }
    let mut all: Vec<Vec<VerifyRow>> = Vec::with_capacity(trials);
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads)
            .map(|t| {
                let per_instance = &per_instance;
                scope.spawn(move || {
                    let mut chunk = Vec::new();
                    let mut i = t;
                    while i < trials {
                        chunk.push((i, per_instance(i)));
                        i += threads;
                    }
                    chunk
                })
            })
            .collect();
        let mut indexed: Vec<(usize, Vec<VerifyRow>)> = handles
            .into_iter()
            .flat_map(|h| h.join().expect("verify worker"))
            .collect();
        indexed.sort_by_key(|(i, _)| *i);
        all = indexed.into_iter().map(|(_, rows)| rows).collect();
    });
    all.into_iter().flatten().collect()
}

/// How the reduction suite's inner reference point solver behaves. The
/// tampered variant deliberately violates its stated factor so the suite's
/// zero-violation property can itself be tested.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverQuality {
    Exact,
    TamperedForTesting,
}

fn quality_solver<'a>(inst: &'a ExplicitInstance, quality: SolverQuality) -> RpApproxSolver<'a> {
    match quality {
        SolverQuality::Exact => RpApproxSolver::exact_brute(inst),
        SolverQuality::TamperedForTesting => RpApproxSolver::new(Rat::one(), move |ctx| {
            // Claims exactness, returns the worst point.
            let mut worst: Option<&ObjectiveVector> = None;
            for p in inst.points() {
                worst = Some(match worst {
                    None => p,
                    Some(w) => {
                        if crate::norm::compare_ref_objective(ctx, p, w)?
                            == crate::norm::NormCmp::Greater
                        {
                            p
                        } else {
                            w
                        }
                    }
                });
            }
            Ok(worst.expect("nonempty").clone())
        }),
    }
}

/// A beta-approximate solver that answers as badly as its contract allows:
/// the point with the largest objective still within `beta * OPT`.
fn adversarial_solver<'a>(inst: &'a ExplicitInstance, beta: Rat) -> RpApproxSolver<'a> {
    RpApproxSolver::new(beta.clone(), move |ctx| {
        let (_, opt) = brute_rp_optimum_unchecked(inst, ctx)?;
        let budget = opt
            .as_exact()
            .expect("gap reductions use exactly evaluable norms")
            .clone()
            * beta.clone();
        let mut worst: Option<(&ObjectiveVector, Rat)> = None;
        for p in inst.points() {
            let value = match ref_objective(ctx, p)? {
                NormValue::Exact(r) => r,
                NormValue::Interval { .. } => unreachable!("exact norms only"),
            };
            if value <= budget {
                let better = match &worst {
                    None => true,
                    Some((_, wv)) => value > *wv,
                };
                if better {
                    worst = Some((p, value));
                }
            }
        }
        Ok(worst.expect("the optimum always fits the budget").0.clone())
    })
}

fn gap_answer_sound(
    inst: &ExplicitInstance,
    y: &ObjectiveVector,
    alpha: &Rat,
    answer: &GapAnswer,
) -> (bool, String) {
    match answer {
        GapAnswer::Witness(w) => {
            let ok = inst.contains(w) && w.le(y);
            (ok, format!("witness {:?}", w))
        }
        GapAnswer::NoneBelow => {
            let threshold: Vec<Rat> = y.coords().iter().map(|c| c / alpha).collect();
            let violated = inst.points().iter().any(|p| {
                p.coords()
                    .iter()
                    .zip(&threshold)
                    .all(|(pc, tc)| pc <= tc)
            });
            (!violated, "none-below".into())
        }
    }
}

/// The shared corpus of small integral instances: for index `i`, a k = 2 or
/// k = 3 instance with at most 64 points in `[0, 50]^k`, a feasible
/// reference point, and a norm cycling through the three families.
pub fn corpus_instance(
    seed: u64,
    i: usize,
) -> (ExplicitInstance, ObjectiveVector, Norm, rand_chacha::ChaCha8Rng) {
    let mut rng = corpus::rng_for(seed, i as u64);
    let k = if i.is_multiple_of(2) { 2 } else { 3 };
    let inst = corpus::random_explicit_instance(&mut rng, k, 64, 50);
    let refpoint = corpus::random_feasible_refpoint(&mut rng, &inst, Sense::Min);
    let norm = corpus::random_norm(&mut rng, k, (i % 3) as u8);
    (inst, refpoint, norm, rng)
}

/// Factor checks of the selection reductions on one corpus instance.
pub fn reduction_factor_rows(seed: u64, i: usize) -> Vec<VerifyRow> {
    let (inst, refpoint, norm, _) = corpus_instance(seed, i);
    let k = inst.k();
    let id = format!("reductions-{:04}", i);
    let mut sink = RowSink::new();
    let alpha = if i.is_multiple_of(2) {
        Rat::new(11, 10)
    } else {
        Rat::from_int(2)
    };

    // Selection out of an alpha-approximate Pareto set stays within alpha.
    sink.push(id.clone(), "pareto-to-rp", alpha.to_string(), (|| {
        let set = thin_pareto_set(&inst, Sense::Min, &alpha);
        let ctx = ReferenceContext::new(refpoint.clone(), norm.clone(), Sense::Min)?;
        let selected = select_rp_from_pareto(&set, &ctx)?;
        let (opt, _) = brute_rp_optimum(&inst, &ctx)?;
        let ok = certify_within_factor(&ctx, &selected, &opt, &alpha)?;
        Ok((ok, format!("selected {:?}", selected)))
    })());

    // Compromise via the derived reference point stays within alpha^2.
    sink.push(id.clone(), "pareto-to-cp", format!("{}", &alpha * &alpha), (|| {
        let set = thin_pareto_set(&inst, Sense::Min, &alpha);
        let (_, answer) = approx_cp_via_pareto(&set, &norm)?;
        let (opt, _) = brute_cp_optimum(&inst, &norm, Sense::Min)?;
        let ideal = ideal_point(&inst, Sense::Min);
        let cp_ctx = ReferenceContext::new(ideal, norm.clone(), Sense::Min)?;
        let ok = certify_within_factor(&cp_ctx, &answer, &opt, &(&alpha * &alpha))?;
        Ok((ok, format!("answer {:?}", answer)))
    })());

    // One exact weighted sum call is a k-approximation for the infinity-norm
    // reference problem.
    sink.push(id.clone(), "weighted-sum-rp", format!("{}", k), (|| {
        let inf = Norm::infinity(norm.weights().to_vec())?;
        let ctx = ReferenceContext::new(refpoint.clone(), inf, Sense::Min)?;
        let ws = WeightedSumSolver::exact_brute(&inst);
        let y = rp_via_weighted_sum(&ctx, &ws)?;
        let (opt, _) = brute_rp_optimum(&inst, &ctx)?;
        let ok = certify_within_factor(&ctx, &y, &opt, &Rat::from_int(k as i64))?;
        Ok((ok, format!("ws pick {:?}", y)))
    })());

    sink.rows
}

/// Gap soundness checks on one corpus instance: both reductions, exact and
/// boundary-factor solvers, enumeration-verified answers.
pub fn gap_soundness_rows(seed: u64, i: usize, quality: SolverQuality) -> Vec<VerifyRow> {
    let (inst, refpoint, _, mut rng) = corpus_instance(seed, i);
    let k = inst.k();
    let id = format!("reductions-{:04}", i);
    let mut sink = RowSink::new();
    let handle = InstanceHandle::explicit(&inst);
    for (ai, alpha) in [Rat::new(11, 10), Rat::from_int(2), Rat::from_int(10)]
        .into_iter()
        .enumerate()
    {
        let beta = (&alpha * &alpha) / (Rat::from_int(2) * alpha.clone() - Rat::one());
        let exact = quality_solver(&inst, quality);
        let boundary = adversarial_solver(&inst, beta.clone());
        let m_i64 = i64::try_from(inst.bound_m().floor_int()).unwrap_or(50);
        let queries: Vec<ObjectiveVector> = (0..4)
            .map(|qi| {
                ObjectiveVector::new(
                    (0..k)
                        .map(|_| {
                            if qi == 3 {
                                // Rational query with a small denominator.
                                Rat::new(rng.gen_range(0..=4 * (m_i64 + 2)), 4)
                            } else {
                                Rat::from_int(rng.gen_range(0..=m_i64 + 5))
                            }
                        })
                        .collect(),
                )
                .expect("nonnegative query")
            })
            .collect();
        for (qi, y) in queries.iter().enumerate() {
            let tag = format!("{}-a{}q{}", id, ai, qi);
            sink.push(tag.clone(), "gap-rp-inf", alpha.to_string(), (|| {
                let answer = gap_via_rp_inf(&handle, y, &alpha, || Ok(refpoint.clone()), &exact)?;
                Ok(gap_answer_sound(&inst, y, &alpha, &answer))
            })());
            sink.push(tag.clone(), "gap-rp-inf-boundary", beta.to_string(), (|| {
                let answer =
                    gap_via_rp_inf(&handle, y, &alpha, || Ok(refpoint.clone()), &boundary)?;
                Ok(gap_answer_sound(&inst, y, &alpha, &answer))
            })());
            sink.push(tag.clone(), "gap-rp-cornered", alpha.to_string(), (|| {
                let answer = gap_via_rp_pnorm(
                    &handle,
                    y,
                    &alpha,
                    || Ok(refpoint.clone()),
                    &exact,
                    NormFamily::CorneredP,
                )?;
                Ok(gap_answer_sound(&inst, y, &alpha, &answer))
            })());
            // The l^p route raises weighted differences to the 2kMq-th power;
            // one integral query per alpha keeps the arithmetic in bounds.
            if qi == 0 && y.is_integral() {
                sink.push(tag.clone(), "gap-rp-lp-norm", alpha.to_string(), (|| {
                    let answer = gap_via_rp_pnorm(
                        &handle,
                        y,
                        &alpha,
                        || Ok(refpoint.clone()),
                        &exact,
                        NormFamily::Lp,
                    )?;
                    Ok(gap_answer_sound(&inst, y, &alpha, &answer))
                })());
            }
        }
    }
    sink.rows
}

/// Equivalence-cycle checks on one corpus instance: exact Gap through the
/// grid gives an `alpha^2`-approximate Pareto set, and selecting from it is
/// an `alpha^2` reference point solver.
pub fn equivalence_cycle_rows(seed: u64, i: usize) -> Vec<VerifyRow> {
    let (inst, refpoint, _, _) = corpus_instance(seed, i);
    let k = inst.k();
    let id = format!("reductions-{:04}", i);
    let mut sink = RowSink::new();
    let handle = InstanceHandle::explicit(&inst);
    let oracle = ExactGapOracle::new(&inst);
    for alpha in [Rat::new(11, 10), Rat::from_int(2)] {
        let alpha_sq = &alpha * &alpha;
        let grid_set = epsilon_pareto_via_gap(&handle, |y| oracle.query(y), &alpha);
        sink.push(id.clone(), "gap-grid-coverage", alpha_sq.to_string(), (|| {
            let set = grid_set.as_ref().map_err(|e| Error::Parse(e.to_string()))?;
            let pareto = exact_pareto_set(&inst, Sense::Min);
            let coverage = observed_coverage_factor(set.points(), &pareto, Sense::Min);
            match coverage {
                Some(c) => Ok((c <= alpha_sq, c.to_string())),
                None => Ok((false, "uncovered".into())),
            }
        })());
        sink.push(id.clone(), "cycle-rp-factor", alpha_sq.to_string(), (|| {
            let set = grid_set.as_ref().map_err(|e| Error::Parse(e.to_string()))?;
            let ctx = ReferenceContext::new(refpoint.clone(), Norm::unit_infinity(k), Sense::Min)?;
            let selected = select_rp_from_pareto(set, &ctx)?;
            let (opt, _) = brute_rp_optimum(&inst, &ctx)?;
            let ok = certify_within_factor(&ctx, &selected, &opt, &alpha_sq)?;
            Ok((ok, format!("selected {:?}", selected)))
        })());
    }
    sink.rows
}

/// Factor checks only, over the shared corpus.
pub fn verify_reduction_factors(seed: u64, trials: usize, threads: usize) -> VerifyReport {
    let rows = run_indexed(trials, threads, |i| reduction_factor_rows(seed, i));
    finish("reduction-factors", seed, trials, rows)
}

/// Gap soundness only, over the shared corpus.
pub fn verify_gap_soundness(seed: u64, trials: usize, threads: usize) -> VerifyReport {
    let rows = run_indexed(trials, threads, |i| {
        gap_soundness_rows(seed, i, SolverQuality::Exact)
    });
    finish("gap-soundness", seed, trials, rows)
}

/// Equivalence cycle only, over the shared corpus.
pub fn verify_equivalence_cycle(seed: u64, trials: usize, threads: usize) -> VerifyReport {
    let rows = run_indexed(trials, threads, |i| equivalence_cycle_rows(seed, i));
    finish("equivalence-cycle", seed, trials, rows)
}

/// The full reduction suite: factor bounds, gap soundness and the
/// equivalence cycle over the shared corpus.
pub fn verify_reductions(seed: u64, trials: usize, threads: usize) -> VerifyReport {
    let rows = run_indexed(trials, threads, |i| {
        let mut rows = reduction_factor_rows(seed, i);
        rows.extend(gap_soundness_rows(seed, i, SolverQuality::Exact));
        rows.extend(equivalence_cycle_rows(seed, i));
        rows
    });
    finish("reductions", seed, trials, rows)
}

/// Negative control: the gap checks with a solver that lies about its
/// factor. Expected to report violations.
pub fn verify_reductions_tampered(seed: u64, trials: usize, threads: usize) -> VerifyReport {
    let rows = run_indexed(trials, threads, |i| {
        gap_soundness_rows(seed, i, SolverQuality::TamperedForTesting)
    });
    finish("reductions-tampered", seed, trials, rows)
}

/// Weight-construction reachability: every Pareto point becomes the strict
/// minimizer for both norm families at `p = threshold + 1`.
pub fn verify_weights(seed: u64, trials: usize, threads: usize) -> VerifyReport {
    let rows = run_indexed(trials, threads, |i| {
        let mut rng = corpus::rng_for(seed, 1_000_000 + i as u64);
        let inst = corpus::random_explicit_instance(&mut rng, 2, 64, 20);
        let id = format!("weights-{:04}", i);
        let mut sink = RowSink::new();
        let refpoint = if i % 2 == 0 {
            ObjectiveVector::zero(2)
        } else {
            corpus::random_feasible_refpoint(&mut rng, &inst, Sense::Min)
        };
        let pareto = exact_pareto_set(&inst, Sense::Min);
        for (pi, target) in pareto.iter().enumerate() {
            for family in [NormFamily::CorneredP, NormFamily::Lp] {
                let tag = format!("{}-p{}", id, pi);
                let check = match family {
                    NormFamily::CorneredP => "weights-cornered",
                    NormFamily::Lp => "weights-lp",
                };
                sink.push(tag, check, "strict-min".into(), (|| {
                    let wc = weight_for_pareto_point(&inst, target, &refpoint, family)?;
                    let p = wc.p_threshold.clone() + Rat::one();
                    let norm = wc.norm_at(p)?;
                    let target_diff = target.abs_diff(&refpoint);
                    for other in inst.points() {
                        if other == target {
                            continue;
                        }
                        let cmp = crate::norm::compare_norm(
                            &norm,
                            &target_diff,
                            &other.abs_diff(&refpoint),
                        )?;
                        if cmp != crate::norm::NormCmp::Less {
                            return Ok((
                                false,
                                format!("{:?} not strictly beaten", other),
                            ));
                        }
                    }
                    Ok((true, format!("{} rivals beaten", inst.points().len() - 1)))
                })());
            }
        }
        sink.rows
    });
    finish("weights", seed, trials, rows)
}

/// Label solver exactness and the scaling FPTAS guarantee.
pub fn verify_fptas(seed: u64, trials: usize, threads: usize, epsilons: &[Rat]) -> VerifyReport {
    let epsilons = epsilons.to_vec();
    let rows = run_indexed(trials, threads, |i| {
        let mut rng = corpus::rng_for(seed, 2_000_000 + i as u64);
        let id = format!("fptas-{:04}", i);
        let mut sink = RowSink::new();

        // Exactness against exhaustive enumeration on small graphs.
        let small = corpus::random_graph(&mut rng, 7, 20, 2);
        let norm = if i % 2 == 0 {
            Norm::unit_infinity(2)
        } else {
            Norm::cornered(Rat::from_int(2), vec![Rat::one(); 2]).expect("unit cornered")
        };
        sink.push(id.clone(), "label-dp-exact", "equal".into(), (|| {
            let ideal = graph_ideal_point(&small)?;
            let refpoint = ObjectiveVector::new(
                ideal
                    .coords()
                    .iter()
                    .map(|c| {
                        let c_i64 = i64::try_from(c.floor_int()).unwrap_or(0);
                        Rat::from_int(rng.gen_range(0..=c_i64))
                    })
                    .collect(),
            )?;
            let ctx = ReferenceContext::new(refpoint, norm.clone(), Sense::Min)?.verified();
            let (dp, _) = pseudopoly_sp_rp(&small, &ctx, None)?;
            let brute = brute_sp_rp(&small, &ctx)?;
            let ok = dp.cost == brute.cost && dp.r_value == brute.r_value;
            Ok((ok, format!("dp {:?} brute {:?}", dp.cost, brute.cost)))
        })());

        // Pruning with the weighted-sum upper bound never changes the answer.
        sink.push(id.clone(), "prune-safety", "equal".into(), (|| {
            let ctx =
                ReferenceContext::new(ObjectiveVector::zero(2), norm.clone(), Sense::Min)?
                    .verified();
            let (plain, _) = pseudopoly_sp_rp(&small, &ctx, None)?;
            let bounds = bounds_via_weighted_sum(&small, &ctx)?;
            let (pruned, _) = pseudopoly_sp_rp(&small, &ctx, Some(&bounds.upper))?;
            Ok((
                plain.cost == pruned.cost && plain.r_value == pruned.r_value,
                format!("cost {:?}", plain.cost),
            ))
        })());

        // FPTAS ratio on a larger graph, exact rational comparison.
        let big = corpus::random_graph(&mut rng, 25, 50, 2);
        let ideal = graph_ideal_point(&big).expect("backbone keeps target reachable");
        let refpoint = ObjectiveVector::new(
            ideal
                .coords()
                .iter()
                .map(|c| {
                    let c_i64 = i64::try_from(c.floor_int()).unwrap_or(0);
                    Rat::from_int(rng.gen_range(0..=c_i64))
                })
                .collect(),
        )
        .expect("feasible refpoint");
        for eps in &epsilons {
            let guarantee = Rat::one() + eps.clone();
            sink.push(id.clone(), "fptas-rp-ratio", guarantee.to_string(), (|| {
                let ctx =
                    ReferenceContext::new(refpoint.clone(), norm.clone(), Sense::Min)?.verified();
                let bounds = bounds_via_weighted_sum(&big, &ctx)?;
                let (opt, _) = pseudopoly_sp_rp(&big, &ctx, Some(&bounds.upper))?;
                let (approx, _) = fptas_rp_sp(&big, &ctx, eps)?;
                let opt_r = opt.r_value.as_exact().expect("exact norm").clone();
                let approx_r = approx.r_value.as_exact().expect("exact norm").clone();
                let ok = approx_r <= &guarantee * &opt_r;
                Ok((
                    ok,
                    if opt_r.is_zero() {
                        "opt 0".into()
                    } else {
                        format!("ratio {}", &approx_r / &opt_r)
                    },
                ))
            })());
        }

        // Compromise variant: the scaled run recomputes its own ideal point.
        sink.push(id.clone(), "fptas-cp-ratio", "3/2".into(), (|| {
            let eps = Rat::new(1, 2);
            let (approx, _) = fptas_cp_sp(&small, &norm, &eps)?;
            let ideal = graph_ideal_point(&small)?;
            let ctx = ReferenceContext::new(ideal, norm.clone(), Sense::Min)?.verified();
            let brute = brute_sp_rp(&small, &ctx)?;
            let approx_r = approx.r_value.as_exact().expect("exact norm").clone();
            let opt_r = brute.r_value.as_exact().expect("exact norm").clone();
            Ok((
                approx_r <= Rat::new(3, 2) * opt_r.clone(),
                if opt_r.is_zero() {
                    "opt 0".into()
                } else {
                    format!("ratio {}", &approx_r / &opt_r)
                },
            ))
        })());

        // The sandwich inequalities of the scaling, exactly.
        sink.push(id.clone(), "scaling-sandwich", "exact".into(), (|| {
            let kind = NormKind::CorneredP(Rat::from_int(2));
            let lower = Rat::new(7, 2);
            let refpoint = ObjectiveVector::from_ints(&[1, 1]);
            let scaled = scale_instance(&small, &refpoint, &Rat::new(1, 3), &kind, &lower)?;
            let t_inv = scaled.scale_factor.recip();
            for (e, se) in small.edges().iter().zip(scaled.instance.edges()) {
                for c in 0..2 {
                    let orig = e.cost.get(c);
                    let bar = se.cost.get(c);
                    if !(&(&t_inv * bar) <= orig && orig < &(&t_inv * &(bar + &Rat::one()))) {
                        return Ok((false, format!("edge cost {} vs {}", orig, bar)));
                    }
                }
            }
            // Scaled ideal point inequality used by the compromise variant.
            let scaled_ideal = graph_ideal_point(&scaled.instance)?;
            let ideal = graph_ideal_point(&small)?;
            let slack = scaled.eps_prime.clone() * lower / Rat::from_int(3);
            for c in 0..2 {
                let lhs = &t_inv * scaled_ideal.get(c);
                if !(lhs <= ideal.get(c).clone()
                    && ideal.get(c) < &(&t_inv * scaled_ideal.get(c) + slack.clone()))
                {
                    return Ok((false, format!("ideal coordinate {}", c)));
                }
            }
            Ok((true, "sandwich holds".into()))
        })());

        sink.rows
    });
    finish("fptas", seed, trials, rows)
}

/// Exact LP solving, the rounding pipeline, and the covering ratio bound.
pub fn verify_lp(seed: u64, trials: usize, threads: usize) -> VerifyReport {
    let rows = run_indexed(trials, threads, |i| {
        let mut rng = corpus::rng_for(seed, 3_000_000 + i as u64);
        let id = format!("lp-{:04}", i);
        let mut sink = RowSink::new();

        // Reference point LP vs vertex enumeration of the reformulation.
        let poly = corpus::random_polytope_2d(&mut rng);
        let costs = corpus::random_positive_costs_2d(&mut rng);
        for (pi, p) in [
            PExponent::Infinity,
            PExponent::Finite(Rat::from_int(1)),
            PExponent::Finite(Rat::from_int(3)),
        ]
        .into_iter()
        .enumerate()
        {
            sink.push(format!("{}-p{}", id, pi), "lp-vs-vertices", "equal".into(), (|| {
                let prog = RpProgram::new(
                    poly.clone(),
                    costs.clone(),
                    ObjectiveVector::zero(2),
                    p,
                )?;
                let sol = rp_lp_solve(&prog)?;
                let vertices = enumerate_vertices(&prog.extended_polyhedron()?)?;
                let best = vertices
                    .iter()
                    .map(|xd| prog.value_at(&xd[..2]))
                    .collect::<Result<Vec<_>>>()?
                    .into_iter()
                    .min()
                    .ok_or(Error::EmptySet)?;
                Ok((sol.r_value == best, format!("lp {} vertices {}", sol.r_value, best)))
            })());
        }

        // Covering: rounding ratio within kappa of the integral optimum, and
        // the chain inequality holds term by term.
        let inst = corpus::random_covering_instance(&mut rng, 10, 8, 2, 9);
        let kappa = Rat::from_int(inst.kappa() as i64);
        sink.push(id.clone(), "cover-ratio", kappa.to_string(), (|| {
            let ctx = ReferenceContext::new(
                ObjectiveVector::zero(2),
                Norm::unit_infinity(2),
                Sense::Min,
            )?
            .verified();
            let rule = RoundingRule::hochbaum(&inst);
            let rounded = rp_via_lp_rounding(&inst, &ctx, &rule)?;
            let (_, _, opt) = brute_integral_rp(&inst, &ctx)?;
            let ok = rounded.r_value <= &kappa * &opt
                && rounded.r_value <= &kappa * &rounded.fractional_value
                && rounded.fractional_value <= opt.clone();
            Ok((
                ok,
                if opt.is_zero() {
                    "opt 0".into()
                } else {
                    format!("ratio {}", &rounded.r_value / &opt)
                },
            ))
        })());

        // Pareto FPTAS over a strictly positive LP.
        sink.push(id.clone(), "lp-pareto-coverage", "(1+eps)^2".into(), (|| {
            let eps = Rat::new(1, 2);
            let set = fptas_pareto_lp(&poly, &costs, &eps, &Rat::new(1, 2))?;
            // Supported frontier sample via weighted sum LPs.
            let mut frontier: Vec<ObjectiveVector> = Vec::new();
            for t in 0..=10 {
                let l0 = Rat::new(t, 10);
                let l1 = Rat::one() - l0.clone();
                let objective: Vec<Rat> = (0..2)
                    .map(|j| &l0 * &costs[0][j] + &l1 * &costs[1][j])
                    .collect();
                if let crate::simplex::LpOutcome::Optimal { x, .. } =
                    crate::simplex::simplex_solve(&poly, &objective, crate::simplex::LpSense::Min)?
                {
                    let y = ObjectiveVector::new(
                        costs
                            .iter()
                            .map(|row| row.iter().zip(&x).map(|(c, xi)| c * xi).sum())
                            .collect(),
                    )?;
                    if !frontier.contains(&y) {
                        frontier.push(y);
                    }
                }
            }
            let alpha_sq = set.alpha.clone();
            match observed_coverage_factor(set.points(), &frontier, Sense::Min) {
                Some(c) => Ok((c <= alpha_sq, c.to_string())),
                None => Ok((false, "uncovered".into())),
            }
        })());

        sink.rows
    });
    finish("lp", seed, trials, rows)
}

/// Maximization: counterexamples behave as constructed, and the max-Gap
/// reduction stays sound.
pub fn verify_max(seed: u64, trials: usize, threads: usize) -> VerifyReport {
    let rows = run_indexed(trials, threads, |i| {
        let mut rng = corpus::rng_for(seed, 4_000_000 + i as u64);
        let id = format!("max-{:04}", i);
        let mut sink = RowSink::new();
        let k = 2;
        let inst = corpus::random_explicit_instance(&mut rng, k, 40, 30);
        let handle = InstanceHandle::explicit(&inst);
        let solver = MaxRpSolver::exact_brute(&inst);

        // Max-gap soundness with the exact solver.
        for (ai, alpha) in [Rat::new(3, 2), Rat::from_int(2)].into_iter().enumerate() {
            let m_i64 = i64::try_from(inst.bound_m().floor_int()).unwrap_or(30);
            for qi in 0..3 {
                let y = ObjectiveVector::new(
                    (0..k)
                        .map(|c| {
                            if qi == 2 && c == 0 {
                                Rat::zero()
                            } else {
                                Rat::from_int(rng.gen_range(1..=m_i64 + 3))
                            }
                        })
                        .collect(),
                )
                .expect("nonnegative");
                let tag = format!("{}-a{}q{}", id, ai, qi);
                sink.push(tag, "max-gap-sound", alpha.to_string(), (|| {
                    let answer =
                        max_gap_via_rp(&handle, &y, &alpha, &solver, inst.bound_m())?;
                    match answer {
                        MaxGapAnswer::Witness(w) => {
                            Ok((inst.contains(&w) && w.ge(&y), format!("witness {:?}", w)))
                        }
                        MaxGapAnswer::NoneAbove => {
                            let scaled = y.scale(&alpha);
                            let violated =
                                inst.points().iter().any(|p| p.ge(&scaled));
                            Ok((!violated, "none-above".into()))
                        }
                    }
                })());
            }
        }

        // Selection bound out of a valid max approximate Pareto set, all
        // three norm families.
        for family in 0..3u8 {
            let norm = corpus::random_norm(&mut rng, k, family);
            let alpha = Rat::from_int(2);
            let tag = format!("{}-f{}", id, family);
            sink.push(tag, "max-pareto-select", alpha.to_string(), (|| {
                let set = thin_pareto_set(&inst, Sense::Max, &alpha);
                let refpoint = corpus::random_feasible_refpoint(&mut rng.clone(), &inst, Sense::Max);
                let ctx = ReferenceContext::new(refpoint, norm.clone(), Sense::Max)?;
                let selected = max_select_from_pareto(&set, &ctx)?;
                let (opt, _) = brute_rp_optimum_unchecked(&inst, &ctx)?;
                let ok = certify_within_factor(&ctx, &selected, &opt, &alpha)?;
                Ok((ok, format!("selected {:?}", selected)))
            })());
        }

        sink.rows
    });

    let mut rows = rows;
    // Fixture checks run once, not per trial.
    let mut sink = RowSink::new();
    sink.push("ws-fixture".into(), "ws-counterexample", "0-hits".into(), (|| {
        let report = ws_counterexample_check(exact_ws_max, 100)?;
        let ok = report.balanced_point_returned == 0
            && !report.balanced_point_ever_optimal
            && report.outputs_identical_without_point;
        Ok((ok, format!("{} grid points", report.grid_points)))
    })());
    sink.push("cp-fixture".into(), "cp-indistinguishable", "both-regimes".into(), (|| {
        let report =
            cp_indistinguishability_check(1000, &Rat::new(1, 2), &Rat::new(1, 100), 30)?;
        Ok((
            report.high_regime_ok && report.low_regime_exact,
            format!("delta*M ~ {}", report.empirical_delta_times_m.to_f64()),
        ))
    })());
    rows.extend(sink.rows);
    finish("max", seed, trials, rows)
}

/// Runs a verification suite by name. `fptas` honors the `epsilon` override.
pub fn cmd_verify(
    suite: &str,
    seed: u64,
    trials: Option<usize>,
    epsilon: Option<&Rat>,
    threads: usize,
    format: OutputFormat,
) -> CommandOutput {
    let report = match suite {
        "reductions" => verify_reductions(seed, trials.unwrap_or(40), threads),
        "weights" => verify_weights(seed, trials.unwrap_or(40), threads),
        "fptas" => {
            let epsilons: Vec<Rat> = match epsilon {
                Some(e) => vec![e.clone()],
                None => vec![Rat::new(1, 2), Rat::new(1, 10)],
            };
            verify_fptas(seed, trials.unwrap_or(25), threads, &epsilons)
        }
        "lp" => verify_lp(seed, trials.unwrap_or(25), threads),
        "max" => verify_max(seed, trials.unwrap_or(25), threads),
        other => {
            return error_output(&Error::Parse(format!(
                "unknown suite {:?}; expected reductions | weights | fptas | lp | max",
                other
            )))
        }
    };
    let document = match format {
        OutputFormat::Json => to_json(&report),
        OutputFormat::Csv => report.to_csv(),
    };
    CommandOutput {
        document,
        exit_code: report.exit_code(),
    }
}

use rand::Rng;
