//! Exact rational linear programming: a dense two-phase primal simplex with
//! Bland's rule. Correctness over speed; every pivot is exact, so strict
//! inequality decisions downstream can rely on the results.

// Tableau code reads clearest with explicit row/column indices.
#![allow(clippy::needless_range_loop)]

use crate::error::{Error, Result};
use crate::rational::Rat;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "=")]
    Eq,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintRow {
    pub a: Vec<Rat>,
    pub rel: Relation,
    pub b: Rat,
}

/// An explicit H-representation: `a . x (<= | >= | =) b` rows plus
/// per-variable nonnegativity flags. Separation is a row scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polyhedron {
    pub n: usize,
    pub nonneg: Vec<bool>,
    pub rows: Vec<ConstraintRow>,
}

impl Polyhedron {
    pub fn new(n: usize, nonneg: Vec<bool>, rows: Vec<ConstraintRow>) -> Result<Self> {
        if nonneg.len() != n {
            return Err(Error::InvalidInstance(
                "nonnegativity flags must cover every variable".into(),
            ));
        }
        for r in &rows {
            if r.a.len() != n {
                return Err(Error::InvalidInstance(
                    "constraint row dimension mismatch".into(),
                ));
            }
        }
        Ok(Polyhedron { n, nonneg, rows })
    }

    /// All variables nonnegative.
    pub fn nonneg_system(n: usize, rows: Vec<ConstraintRow>) -> Result<Self> {
        Polyhedron::new(n, vec![true; n], rows)
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        if x.len() != self.n {
            return false;
        }
        for (i, &nn) in self.nonneg.iter().enumerate() {
            if nn && x[i].is_negative() {
                return false;
            }
        }
        self.rows.iter().all(|row| {
            let lhs: Rat = row.a.iter().zip(x).map(|(a, xi)| a * xi).sum();
            match row.rel {
                Relation::Le => lhs <= row.b,
                Relation::Ge => lhs >= row.b,
                Relation::Eq => lhs == row.b,
            }
        })
    }

    /// Appends a row to a copy of the polyhedron.
    pub fn with_row(&self, row: ConstraintRow) -> Result<Polyhedron> {
        let mut rows = self.rows.clone();
        rows.push(row);
        Polyhedron::new(self.n, self.nonneg.clone(), rows)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { x: Vec<Rat>, value: Rat },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn optimal(self) -> Result<(Vec<Rat>, Rat)> {
        match self {
            LpOutcome::Optimal { x, value } => Ok((x, value)),
            LpOutcome::Infeasible => Err(Error::InvalidInstance("LP is infeasible".into())),
            LpOutcome::Unbounded => Err(Error::InvalidInstance("LP is unbounded".into())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpSense {
    Min,
    Max,
}

struct Tableau {
    cols: usize,
    rows: Vec<Vec<Rat>>, // each row: coefficients followed by rhs
    basis: Vec<usize>,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rat {
        &self.rows[i][self.cols]
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let piv = self.rows[row][col].clone();
        debug_assert!(!piv.is_zero());
        for entry in self.rows[row].iter_mut() {
            *entry = &*entry / &piv;
        }
        for i in 0..self.rows.len() {
            if i == row {
                continue;
            }
            let factor = self.rows[i][col].clone();
            if factor.is_zero() {
                continue;
            }
            for j in 0..=self.cols {
                let delta = &factor * &self.rows[row][j];
                self.rows[i][j] = &self.rows[i][j] - &delta;
            }
        }
        self.basis[row] = col;
    }

    /// Minimizes `costs . x` over the tableau with Bland's rule, considering
    /// only the first `allowed_cols` columns for entering the basis.
    /// Returns false when unbounded.
    fn run(&mut self, costs: &[Rat], allowed_cols: usize) -> bool {
        loop {
            // Reduced costs: c_j - c_B . column_j.
            let mut entering = None;
            for j in 0..allowed_cols {
                let mut reduced = costs[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    if !costs[b].is_zero() {
                        reduced -= &(&costs[b] * &self.rows[i][j]);
                    }
                }
                if reduced.is_negative() {
                    entering = Some(j);
                    break; // Bland: smallest index.
                }
            }
            let Some(col) = entering else {
                return true;
            };
            let mut leaving: Option<(usize, Rat)> = None;
            for i in 0..self.rows.len() {
                if self.rows[i][col].is_positive() {
                    let ratio = self.rhs(i) / &self.rows[i][col];
                    let replace = match &leaving {
                        None => true,
                        Some((li, lr)) => {
                            ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                        }
                    };
                    if replace {
                        leaving = Some((i, ratio));
                    }
                }
            }
            let Some((row, _)) = leaving else {
                return false;
            };
            self.pivot(row, col);
        }
    }
}

/// Exact primal simplex over the H-representation. The optimum, when one
/// exists, is attained at a basic (vertex) solution, which is what is
/// returned.
pub fn simplex_solve(poly: &Polyhedron, objective: &[Rat], sense: LpSense) -> Result<LpOutcome> {
    if objective.len() != poly.n {
        return Err(Error::DimensionMismatch {
            expected: poly.n,
            got: objective.len(),
        });
    }

    // Standard form: free variables split, slack/surplus per inequality,
    // artificials for >= and = rows; right-hand sides made nonnegative.
    let mut col_of_var: Vec<(usize, Option<usize>)> = Vec::with_capacity(poly.n);
    let mut cols = 0usize;
    for &nn in &poly.nonneg {
        if nn {
            col_of_var.push((cols, None));
            cols += 1;
        } else {
            col_of_var.push((cols, Some(cols + 1)));
            cols += 2;
        }
    }
    let m = poly.rows.len();
    let struct_cols = cols;
    // One slack or surplus column per inequality row.
    let mut slack_col: Vec<Option<usize>> = vec![None; m];
    for (i, row) in poly.rows.iter().enumerate() {
        if !matches!(row.rel, Relation::Eq) {
            slack_col[i] = Some(cols);
            cols += 1;
        }
    }
    let art_start = cols;
    // Artificial variable per row; unneeded ones are skipped below.
    let total_cols = cols + m;

    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(m);
    let mut basis: Vec<usize> = Vec::with_capacity(m);
    let mut art_cols_used = 0usize;
    for (i, row) in poly.rows.iter().enumerate() {
        let mut t = vec![Rat::zero(); total_cols + 1];
        let negate = row.b.is_negative();
        let rel = match (row.rel, negate) {
            (Relation::Le, true) => Relation::Ge,
            (Relation::Ge, true) => Relation::Le,
            (r, _) => r,
        };
        let sign = if negate { -Rat::one() } else { Rat::one() };
        for (v, a) in row.a.iter().enumerate() {
            let (pos, neg) = col_of_var[v];
            t[pos] = &sign * a;
            if let Some(neg) = neg {
                t[neg] = -(&sign * a);
            }
        }
        t[total_cols] = &sign * &row.b;
        if let Some(sc) = slack_col[i] {
            t[sc] = match rel {
                Relation::Le => Rat::one(),
                Relation::Ge => -Rat::one(),
                Relation::Eq => unreachable!(),
            };
        }
        // A <= row with nonnegative rhs starts with its slack basic; anything
        // else needs an artificial.
        if matches!(rel, Relation::Le) {
            basis.push(slack_col[i].expect("inequality has a slack column"));
        } else {
            let ac = art_start + art_cols_used;
            art_cols_used += 1;
            t[ac] = Rat::one();
            basis.push(ac);
        }
        rows.push(t);
    }

    let mut tab = Tableau {
        cols: total_cols,
        rows,
        basis,
    };

    // Phase 1: drive artificials to zero.
    if art_cols_used > 0 {
        let mut phase1 = vec![Rat::zero(); total_cols];
        for c in phase1.iter_mut().take(total_cols).skip(art_start) {
            *c = Rat::one();
        }
        if !tab.run(&phase1, total_cols) {
            // Sum of artificials is bounded below by zero; cannot be unbounded.
            unreachable!("phase 1 is always bounded");
        }
        let mut value = Rat::zero();
        for (i, &b) in tab.basis.iter().enumerate() {
            if b >= art_start {
                value += tab.rhs(i);
            }
        }
        if value.is_positive() {
            return Ok(LpOutcome::Infeasible);
        }
        // Pivot lingering zero-level artificials out of the basis.
        for i in 0..tab.basis.len() {
            if tab.basis[i] >= art_start {
                if let Some(col) = (0..art_start).find(|&j| !tab.rows[i][j].is_zero()) {
                    tab.pivot(i, col);
                }
                // A fully zero row is a redundant constraint; leaving the
                // artificial basic at level zero is harmless.
            }
        }
    }

    // Phase 2: artificial columns are barred from entering. A lingering
    // basic artificial sits in a row that is zero on every structural and
    // slack column (a redundant constraint), so later pivots cannot move it
    // off zero.
    let mut costs = vec![Rat::zero(); total_cols];
    for v in 0..poly.n {
        let (pos, neg) = col_of_var[v];
        let c = match sense {
            LpSense::Min => objective[v].clone(),
            LpSense::Max => -objective[v].clone(),
        };
        costs[pos] = c.clone();
        if let Some(neg) = neg {
            costs[neg] = -c;
        }
    }
    if !tab.run(&costs, art_start) {
        return Ok(LpOutcome::Unbounded);
    }

    let mut x_std = vec![Rat::zero(); total_cols];
    for (i, &b) in tab.basis.iter().enumerate() {
        x_std[b] = tab.rhs(i).clone();
    }
    let mut x = Vec::with_capacity(poly.n);
    for v in 0..poly.n {
        let (pos, neg) = col_of_var[v];
        let mut value = x_std[pos].clone();
        if let Some(neg) = neg {
            value = value - x_std[neg].clone();
        }
        x.push(value);
    }
    debug_assert!(poly.contains(&x), "simplex solution violates a constraint");
    let value: Rat = objective.iter().zip(&x).map(|(c, xi)| c * xi).sum();
    let _ = struct_cols;
    Ok(LpOutcome::Optimal { x, value })
}

/// Solves an n x n rational system by Gaussian elimination; `None` when singular.
fn solve_square(mut a: Vec<Vec<Rat>>, mut b: Vec<Rat>) -> Option<Vec<Rat>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let p = a[col][col].clone();
        for j in col..n {
            a[col][j] = &a[col][j] / &p;
        }
        b[col] = &b[col] / &p;
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in col..n {
                let delta = &f * &a[col][j];
                a[r][j] = &a[r][j] - &delta;
            }
            let delta = &f * &b[col];
            b[r] = &b[r] - &delta;
        }
    }
    Some(b)
}

/// All vertices of a polyhedron, by intersecting every choice of n
/// constraints (nonnegativity bounds included) and keeping the feasible
/// intersection points. Combinatorial; the exhaustive oracle for LP tests
/// in low dimension.
pub fn enumerate_vertices(poly: &Polyhedron) -> Result<Vec<Vec<Rat>>> {
    let n = poly.n;
    if n == 0 || n > 4 {
        return Err(Error::InvalidParameter(
            "vertex enumeration is intended for up to four variables".into(),
        ));
    }
    let mut lines: Vec<(Vec<Rat>, Rat)> = poly
        .rows
        .iter()
        .map(|row| (row.a.clone(), row.b.clone()))
        .collect();
    for (i, &nn) in poly.nonneg.iter().enumerate() {
        if nn {
            let mut a = vec![Rat::zero(); n];
            a[i] = Rat::one();
            lines.push((a, Rat::zero()));
        }
    }
    let mut vertices: Vec<Vec<Rat>> = Vec::new();
    let mut choice: Vec<usize> = (0..n).collect();
    if lines.len() < n {
        return Ok(vertices);
    }
    loop {
        let a: Vec<Vec<Rat>> = choice.iter().map(|&i| lines[i].0.clone()).collect();
        let b: Vec<Rat> = choice.iter().map(|&i| lines[i].1.clone()).collect();
        if let Some(x) = solve_square(a, b) {
            if poly.contains(&x) && !vertices.contains(&x) {
                vertices.push(x);
            }
        }
        // Next n-combination of line indices.
        let mut i = n;
        loop {
            if i == 0 {
                vertices.sort();
                return Ok(vertices);
            }
            i -= 1;
            if choice[i] < lines.len() - (n - i) {
                choice[i] += 1;
                for j in (i + 1)..n {
                    choice[j] = choice[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// All vertices of a 2-variable polyhedron, by intersecting constraint pairs
/// (including the nonnegativity bounds) and keeping feasible points. The
/// exhaustive oracle for LP tests.
pub fn enumerate_vertices_2d(poly: &Polyhedron) -> Result<Vec<Vec<Rat>>> {
    if poly.n != 2 {
        return Err(Error::InvalidParameter(
            "vertex enumeration is implemented for two variables".into(),
        ));
    }
    let mut lines: Vec<(Rat, Rat, Rat)> = Vec::new(); // a1 x + a2 y = b
    for row in &poly.rows {
        lines.push((row.a[0].clone(), row.a[1].clone(), row.b.clone()));
    }
    if poly.nonneg[0] {
        lines.push((Rat::one(), Rat::zero(), Rat::zero()));
    }
    if poly.nonneg[1] {
        lines.push((Rat::zero(), Rat::one(), Rat::zero()));
    }
    let mut vertices: Vec<Vec<Rat>> = Vec::new();
    for i in 0..lines.len() {
        for j in (i + 1)..lines.len() {
            let (a1, b1, c1) = &lines[i];
            let (a2, b2, c2) = &lines[j];
            let det = &(a1 * b2) - &(b1 * a2);
            if det.is_zero() {
                continue;
            }
            let x = &(&(c1 * b2) - &(b1 * c2)) / &det;
            let y = &(&(a1 * c2) - &(c1 * a2)) / &det;
            let point = vec![x, y];
            if poly.contains(&point) && !vertices.contains(&point) {
                vertices.push(point);
            }
        }
    }
    vertices.sort();
    Ok(vertices)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rat {
        Rat::from_int(n)
    }

    fn row(a: &[i64], rel: Relation, b: i64) -> ConstraintRow {
        ConstraintRow {
            a: a.iter().map(|&x| r(x)).collect(),
            rel,
            b: r(b),
        }
    }

    #[test]
    fn simple_min() {
        // min x1 + x2 subject to x1 + x2 >= 1, x >= 0.
        let poly = Polyhedron::nonneg_system(2, vec![row(&[1, 1], Relation::Ge, 1)]).unwrap();
        let out = simplex_solve(&poly, &[r(1), r(1)], LpSense::Min).unwrap();
        let (_, value) = out.optimal().unwrap();
        assert_eq!(value, r(1));
    }

    #[test]
    fn infeasible_region() {
        let poly = Polyhedron::nonneg_system(1, vec![row(&[1], Relation::Le, -1)]).unwrap();
        let out = simplex_solve(&poly, &[r(1)], LpSense::Min).unwrap();
        assert_eq!(out, LpOutcome::Infeasible);
    }

    #[test]
    fn unbounded_direction() {
        let poly = Polyhedron::nonneg_system(1, vec![row(&[1], Relation::Ge, 1)]).unwrap();
        let out = simplex_solve(&poly, &[r(1)], LpSense::Max).unwrap();
        assert_eq!(out, LpOutcome::Unbounded);
    }

    #[test]
    fn triangle_vertex_cover_lp() {
        // Three edges of K3: x_u + x_v >= 1 for each pair, min sum.
        let poly = Polyhedron::nonneg_system(
            3,
            vec![
                row(&[1, 1, 0], Relation::Ge, 1),
                row(&[1, 0, 1], Relation::Ge, 1),
                row(&[0, 1, 1], Relation::Ge, 1),
            ],
        )
        .unwrap();
        let out = simplex_solve(&poly, &[r(1), r(1), r(1)], LpSense::Min).unwrap();
        let (x, value) = out.optimal().unwrap();
        assert_eq!(value, Rat::new(3, 2));
        assert_eq!(x, vec![Rat::new(1, 2), Rat::new(1, 2), Rat::new(1, 2)]);
    }

    #[test]
    fn equality_and_free_variables() {
        // min y subject to x + y = 3, x <= 2, x free, y >= 0.
        let poly = Polyhedron::new(
            2,
            vec![false, true],
            vec![row(&[1, 1], Relation::Eq, 3), row(&[1, 0], Relation::Le, 2)],
        )
        .unwrap();
        let out = simplex_solve(&poly, &[r(0), r(1)], LpSense::Min).unwrap();
        let (x, value) = out.optimal().unwrap();
        assert_eq!(value, r(1));
        assert_eq!(x, vec![r(2), r(1)]);
    }

    #[test]
    fn degenerate_cycling_guard() {
        // A classic degenerate instance; Bland's rule must terminate.
        let poly = Polyhedron::nonneg_system(
            4,
            vec![
                row(&[1, 0, 0, 1], Relation::Le, 1),
                row(&[0, 1, 0, 1], Relation::Le, 1),
                row(&[0, 0, 1, 1], Relation::Le, 1),
                row(&[1, 1, 1, 0], Relation::Ge, 0),
            ],
        )
        .unwrap();
        // Every point with x_i + x_4 = 1 on all three rows scores -3.
        let objective = [r(-1), r(-1), r(-1), r(-3)];
        let out = simplex_solve(&poly, &objective, LpSense::Min).unwrap();
        let (_, value) = out.optimal().unwrap();
        assert_eq!(value, r(-3));
    }

    #[test]
    fn vertices_of_triangle_lp() {
        let poly = Polyhedron::nonneg_system(
            2,
            vec![row(&[1, 1], Relation::Le, 4), row(&[1, 0], Relation::Le, 3)],
        )
        .unwrap();
        let vertices = enumerate_vertices_2d(&poly).unwrap();
        assert!(vertices.contains(&vec![r(0), r(0)]));
        assert!(vertices.contains(&vec![r(3), r(1)]));
        assert!(vertices.contains(&vec![r(3), r(0)]));
        assert!(vertices.contains(&vec![r(0), r(4)]));
        assert_eq!(vertices.len(), 4);
    }

    #[test]
    fn objective_matches_recomputation() {
        let poly = Polyhedron::nonneg_system(
            2,
            vec![row(&[2, 1], Relation::Ge, 4), row(&[1, 3], Relation::Ge, 6)],
        )
        .unwrap();
        let objective = [r(5), r(4)];
        let (x, value) = simplex_solve(&poly, &objective, LpSense::Min)
            .unwrap()
            .optimal()
            .unwrap();
        let recomputed: Rat = objective.iter().zip(&x).map(|(c, xi)| c * xi).sum();
        assert_eq!(value, recomputed);
        assert!(poly.contains(&x));
    }
}
