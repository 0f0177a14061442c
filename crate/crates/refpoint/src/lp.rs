//! Reference point programs over polyhedra.
//!
//! For a convex solution set, minimizing the cornered-norm reference
//! objective is itself a linear program:
//!
//! ```text
//! min  D + (1/p) * 1^T C x      s.t.  C x - y^r <= D * 1,  x in X,  D free
//! ```
//!
//! whose optimum has `D = max_i (c_i x - y^r_i)`. Adding the constant
//! `max_i y^r_i` makes the value equal to the reference objective
//! `<<y^r>>_p + <<Cx - y^r>>_p` whenever `Cx >= y^r` (the `(1/p)` sums
//! telescope). On top of the exact program sit the positivity-guarded Gap
//! oracle and the grid construction, which together yield approximate
//! Pareto sets of the LP's objective space.

use crate::error::{Error, Result};
use crate::rational::Rat;
use crate::reductions::{
    epsilon_pareto_via_gap, gap_via_rp_inf, ApproxParetoSet, InstanceHandle, ObjectiveMode,
    RpApproxSolver,
};
use crate::simplex::{simplex_solve, ConstraintRow, LpOutcome, LpSense, Polyhedron, Relation};
use crate::vector::ObjectiveVector;
use serde::{Deserialize, Serialize};

/// Exponent of the cornered norm in a reference point program.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum PExponent {
    Finite(Rat),
    Infinity,
}

impl PExponent {
    fn inv(&self) -> Rat {
        match self {
            PExponent::Finite(p) => p.recip(),
            PExponent::Infinity => Rat::zero(),
        }
    }
}

/// `min r(Cx)` over a polyhedron, with `r(y) = <<y^r>>_p + <<y - y^r>>_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RpProgram {
    pub polyhedron: Polyhedron,
    /// k rows of n nonnegative cost coefficients.
    pub costs: Vec<Vec<Rat>>,
    pub refpoint: ObjectiveVector,
    pub p: PExponent,
}

impl RpProgram {
    pub fn new(
        polyhedron: Polyhedron,
        costs: Vec<Vec<Rat>>,
        refpoint: ObjectiveVector,
        p: PExponent,
    ) -> Result<Self> {
        if costs.is_empty() {
            return Err(Error::InvalidInstance("no objectives".into()));
        }
        refpoint.check_dim(costs.len())?;
        for row in &costs {
            if row.len() != polyhedron.n {
                return Err(Error::InvalidInstance(
                    "cost row dimension mismatch".into(),
                ));
            }
            if row.iter().any(|c| c.is_negative()) {
                return Err(Error::InvalidInstance(
                    "cost coefficients must be nonnegative".into(),
                ));
            }
        }
        if let PExponent::Finite(p) = &p {
            if p < &Rat::one() {
                return Err(Error::InvalidNorm(format!("p = {} < 1", p)));
            }
        }
        Ok(RpProgram {
            polyhedron,
            costs,
            refpoint,
            p,
        })
    }

    pub fn k(&self) -> usize {
        self.costs.len()
    }

    /// `C x` for a concrete solution (coordinates clamped at zero are not
    /// needed: costs and x are nonnegative).
    pub fn objective_vector(&self, x: &[Rat]) -> Result<ObjectiveVector> {
        ObjectiveVector::new(
            self.costs
                .iter()
                .map(|row| row.iter().zip(x).map(|(c, xi)| c * xi).sum())
                .collect(),
        )
    }

    /// The program's objective at `x`, constant included:
    /// `max_i y^r_i + max_i (c_i x - y^r_i) + (1/p) sum_i c_i x`.
    /// Equals the reference objective exactly when `Cx >= y^r`.
    pub fn value_at(&self, x: &[Rat]) -> Result<Rat> {
        let y = self.objective_vector(x)?;
        let base = self.refpoint.max_coord().clone();
        let delta = (0..self.k())
            .map(|i| y.get(i) - self.refpoint.get(i))
            .max()
            .expect("k >= 1");
        let sum: Rat = y.coords().iter().sum();
        Ok(base + delta + self.p.inv() * sum)
    }

    /// The reformulated feasible set over `(x, D)`: the base rows plus
    /// `c_i x - D <= y^r_i`, with `D` free. Minima of the program sit at
    /// vertices of this polyhedron (not necessarily of the base one: the
    /// piecewise-linear objective can bottom out inside a base facet).
    pub fn extended_polyhedron(&self) -> Result<Polyhedron> {
        let n = self.polyhedron.n;
        let mut nonneg = self.polyhedron.nonneg.clone();
        nonneg.push(false);
        let mut rows: Vec<ConstraintRow> = self
            .polyhedron
            .rows
            .iter()
            .map(|r| {
                let mut a = r.a.clone();
                a.push(Rat::zero());
                ConstraintRow {
                    a,
                    rel: r.rel,
                    b: r.b.clone(),
                }
            })
            .collect();
        for i in 0..self.k() {
            let mut a = self.costs[i].clone();
            a.push(-Rat::one());
            rows.push(ConstraintRow {
                a,
                rel: Relation::Le,
                b: self.refpoint.get(i).clone(),
            });
        }
        Polyhedron::new(n + 1, nonneg, rows)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RpLpSolution {
    pub x: Vec<Rat>,
    pub objective: ObjectiveVector,
    pub r_value: Rat,
}

/// Exact minimizer of the reference objective over the polyhedron, by one
/// simplex solve on the reformulated program.
pub fn rp_lp_solve(prog: &RpProgram) -> Result<RpLpSolution> {
    let n = prog.polyhedron.n;
    let extended = prog.extended_polyhedron()?;
    let p_inv = prog.p.inv();
    let mut objective = vec![Rat::zero(); n + 1];
    for (j, coeff) in objective.iter_mut().enumerate().take(n) {
        *coeff = (0..prog.k()).map(|i| &p_inv * &prog.costs[i][j]).sum();
    }
    objective[n] = Rat::one();

    match simplex_solve(&extended, &objective, LpSense::Min)? {
        LpOutcome::Infeasible => Err(Error::LpInfeasible),
        LpOutcome::Unbounded => Err(Error::LpUnbounded),
        LpOutcome::Optimal { x, .. } => {
            let x: Vec<Rat> = x[..n].to_vec();
            let objective = prog.objective_vector(&x)?;
            let r_value = prog.value_at(&x)?;
            Ok(RpLpSolution {
                x,
                objective,
                r_value,
            })
        }
    }
}

/// Per-criterion extrema of `Cx` over the polyhedron.
pub fn objective_range(
    poly: &Polyhedron,
    costs: &[Vec<Rat>],
) -> Result<(Vec<Rat>, Vec<Rat>)> {
    let mut minima = Vec::with_capacity(costs.len());
    let mut maxima = Vec::with_capacity(costs.len());
    for row in costs {
        let (_, lo) = simplex_solve(poly, row, LpSense::Min)?
            .optimal()
            .map_err(|_| Error::LpInfeasible)?;
        let (_, hi) = match simplex_solve(poly, row, LpSense::Max)? {
            LpOutcome::Optimal { x, value } => (x, value),
            LpOutcome::Unbounded => return Err(Error::LpUnbounded),
            LpOutcome::Infeasible => return Err(Error::LpInfeasible),
        };
        minima.push(lo);
        maxima.push(hi);
    }
    Ok((minima, maxima))
}

/// FPTAS for the Pareto set of a multicriteria LP with strictly positive
/// objective values: the exact reference point solver powers a `Gap(1+eps)`
/// oracle, and the geometric grid turns it into a `(1+eps)^2`-approximate
/// Pareto set of the objective space.
///
/// `positivity_bound` is the promised lower bound on every attainable
/// objective value (the `1/pi` of the hypothesis); it is verified exactly.
pub fn fptas_pareto_lp(
    poly: &Polyhedron,
    costs: &[Vec<Rat>],
    eps: &Rat,
    positivity_bound: &Rat,
) -> Result<ApproxParetoSet> {
    if !eps.is_positive() {
        return Err(Error::InvalidParameter(format!("eps = {} must be > 0", eps)));
    }
    if !positivity_bound.is_positive() {
        return Err(Error::InvalidParameter(
            "the positivity bound must be > 0".into(),
        ));
    }
    let (minima, maxima) = objective_range(poly, costs)?;
    for (i, lo) in minima.iter().enumerate() {
        if lo < positivity_bound {
            return Err(Error::InvalidParameter(format!(
                "objective {} attains {}, below the positivity bound {}",
                i, lo, positivity_bound
            )));
        }
    }
    let bound_m = maxima.iter().max().cloned().expect("k >= 1");
    let k = costs.len();

    // The reference point: per-criterion minima rounded down to the
    // positivity grid. Feasible, strictly positive, and of bounded encoding.
    let refpoint = ObjectiveVector::new(
        minima
            .iter()
            .map(|lo| (lo / positivity_bound).floor() * positivity_bound.clone())
            .collect(),
    )?;

    let handle = InstanceHandle::new(
        k,
        bound_m,
        ObjectiveMode::StrictlyPositive {
            lower: positivity_bound.clone(),
        },
        // Witnesses are C x for solved x, attainable by construction.
        |_| true,
    );

    // Exact solver: fold the query weights into the costs and re-solve.
    let solver = RpApproxSolver::new(Rat::one(), |ctx: &crate::norm::ReferenceContext| {
        let weights = ctx.norm.weights();
        let folded_costs: Vec<Vec<Rat>> = costs
            .iter()
            .enumerate()
            .map(|(i, row)| row.iter().map(|c| &weights[i] * c).collect())
            .collect();
        let folded_ref = ObjectiveVector::new(
            (0..k)
                .map(|i| &weights[i] * ctx.refpoint.get(i))
                .collect(),
        )?;
        let prog = RpProgram::new(
            poly.clone(),
            folded_costs,
            folded_ref,
            PExponent::Infinity,
        )?;
        let sol = rp_lp_solve(&prog)?;
        // Report the unweighted objective vector; the caller's context
        // carries the weights.
        let mut coords = Vec::with_capacity(k);
        for row in costs {
            coords.push(row.iter().zip(&sol.x).map(|(c, xi)| c * xi).sum());
        }
        ObjectiveVector::new(coords)
    });

    let alpha = Rat::one() + eps.clone();
    epsilon_pareto_via_gap(
        &handle,
        |y| gap_via_rp_inf(&handle, y, &alpha, || Ok(refpoint.clone()), &solver),
        &alpha,
    )
}
