//! Exact rational linear programming: a dense two-phase simplex with
//! Bland's anti-cycling rule, plus Gauss-Jordan elimination for square
//! and rank-deficient systems.
//!
//! Variables are implicitly nonnegative; rows are equalities or
//! general `<=` constraints. Everything is `BigRational`, so the
//! optimum and the vertex solution are exact and deterministic given
//! the input ordering.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[derive(Debug, Clone, Default)]
pub struct LinearProgram {
    pub num_vars: usize,
    /// rows `a . x = b`
    pub equalities: Vec<(Vec<BigRational>, BigRational)>,
    /// rows `a . x <= b`
    pub leq: Vec<(Vec<BigRational>, BigRational)>,
    /// maximize `c . x`; all-zero means a pure feasibility problem
    pub objective: Vec<BigRational>,
}

impl LinearProgram {
    pub fn feasibility(num_vars: usize) -> Self {
        LinearProgram {
            num_vars,
            equalities: Vec::new(),
            leq: Vec::new(),
            objective: vec![BigRational::zero(); num_vars],
        }
    }

    pub fn maximize(num_vars: usize, objective: Vec<BigRational>) -> Self {
        LinearProgram {
            num_vars,
            equalities: Vec::new(),
            leq: Vec::new(),
            objective,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal {
        value: BigRational,
        assignment: Vec<BigRational>,
    },
    Infeasible,
    Unbounded,
}

struct Tableau {
    /// m rows by (cols + 1) entries; the last entry of each row is the rhs
    rows: Vec<Vec<BigRational>>,
    /// objective row (reduced costs), last entry is -(objective value)
    obj: Vec<BigRational>,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let pivot = self.rows[row][col].clone();
        debug_assert!(!pivot.is_zero());
        for entry in self.rows[row].iter_mut() {
            *entry = &*entry / &pivot;
        }
        let pivot_row = self.rows[row].clone();
        for (r, other) in self.rows.iter_mut().enumerate() {
            if r == row {
                continue;
            }
            let factor = other[col].clone();
            if factor.is_zero() {
                continue;
            }
            for (entry, p) in other.iter_mut().zip(&pivot_row) {
                *entry = &*entry - &factor * p;
            }
        }
        let factor = self.obj[col].clone();
        if !factor.is_zero() {
            for (entry, p) in self.obj.iter_mut().zip(&pivot_row) {
                *entry = &*entry - &factor * p;
            }
        }
        self.basis[row] = col;
    }

    /// Bland's rule for minimization: entering column is the lowest
    /// index with a negative reduced cost; the leaving row is the
    /// lowest-numbered basic variable among the minimum-ratio rows.
    /// `allowed` masks the columns that may enter.
    fn run_simplex(&mut self, allowed: &[bool]) -> SimplexEnd {
        loop {
            let entering = (0..self.cols)
                .find(|&j| allowed[j] && self.obj[j].is_negative());
            let Some(col) = entering else {
                return SimplexEnd::Optimal;
            };
            let mut leaving: Option<(usize, BigRational)> = None;
            for r in 0..self.rows.len() {
                let a = &self.rows[r][col];
                if a.is_positive() {
                    let ratio = &self.rows[r][self.cols] / a;
                    match &leaving {
                        None => leaving = Some((r, ratio)),
                        Some((best_r, best)) => {
                            if ratio < *best
                                || (ratio == *best && self.basis[r] < self.basis[*best_r])
                            {
                                leaving = Some((r, ratio));
                            }
                        }
                    }
                }
            }
            match leaving {
                None => return SimplexEnd::Unbounded,
                Some((row, _)) => self.pivot(row, col),
            }
        }
    }
}

enum SimplexEnd {
    Optimal,
    Unbounded,
}

/// Solve `maximize c.x` subject to the program's rows and `x >= 0`.
pub fn lp_solve(lp: &LinearProgram) -> Result<LpOutcome> {
    let n = lp.num_vars;
    for (row, _) in lp.equalities.iter().chain(&lp.leq) {
        if row.len() != n {
            return Err(Error::Precondition(format!(
                "constraint row has {} coefficients, expected {n}",
                row.len()
            )));
        }
    }
    if lp.objective.len() != n {
        return Err(Error::Precondition(format!(
            "objective has {} coefficients, expected {n}",
            lp.objective.len()
        )));
    }

    let num_slack = lp.leq.len();
    let m = lp.equalities.len() + lp.leq.len();
    let cols = n + num_slack + m; // structural + slack + artificial
    let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    for (i, (coeffs, rhs)) in lp.equalities.iter().chain(&lp.leq).enumerate() {
        let mut row = vec![BigRational::zero(); cols + 1];
        row[..n].clone_from_slice(coeffs);
        if i >= lp.equalities.len() {
            row[n + (i - lp.equalities.len())] = BigRational::one();
        }
        row[cols] = rhs.clone();
        if row[cols].is_negative() {
            for entry in row.iter_mut() {
                *entry = -&*entry;
            }
        }
        row[n + num_slack + i] = BigRational::one();
        rows.push(row);
    }

    // phase 1: minimize the sum of artificials
    let mut obj = vec![BigRational::zero(); cols + 1];
    for entry in obj[n + num_slack..cols].iter_mut() {
        *entry = BigRational::one();
    }
    let mut tableau = Tableau {
        basis: (n + num_slack..cols).collect(),
        rows,
        obj,
        cols,
    };
    // eliminate the basic (artificial) columns from the objective row
    for r in 0..m {
        let row = tableau.rows[r].clone();
        for (entry, p) in tableau.obj.iter_mut().zip(&row) {
            *entry = &*entry - p;
        }
    }
    let allowed: Vec<bool> = (0..cols).map(|_| true).collect();
    match tableau.run_simplex(&allowed) {
        SimplexEnd::Unbounded => unreachable!("phase-1 objective is bounded below by zero"),
        SimplexEnd::Optimal => {}
    }
    if tableau.obj[cols].is_negative() {
        return Ok(LpOutcome::Infeasible);
    }

    // drive leftover artificials out of the basis; all of them sit at
    // value zero now, so these pivots are degenerate
    for r in 0..m {
        if tableau.basis[r] >= n + num_slack {
            let col = (0..n + num_slack).find(|&j| !tableau.rows[r][j].is_zero());
            if let Some(col) = col {
                tableau.pivot(r, col);
            }
            // otherwise the row is redundant; its artificial stays basic at zero
        }
    }

    // phase 2: minimize -c.x with artificial columns barred
    let mut obj = vec![BigRational::zero(); cols + 1];
    for (entry, c) in obj.iter_mut().zip(&lp.objective) {
        *entry = -c;
    }
    tableau.obj = obj;
    for r in 0..m {
        let basic = tableau.basis[r];
        let factor = tableau.obj[basic].clone();
        if !factor.is_zero() {
            let row = tableau.rows[r].clone();
            for (entry, p) in tableau.obj.iter_mut().zip(&row) {
                *entry = &*entry - &factor * p;
            }
        }
    }
    let allowed: Vec<bool> = (0..cols).map(|j| j < n + num_slack).collect();
    match tableau.run_simplex(&allowed) {
        SimplexEnd::Unbounded => return Ok(LpOutcome::Unbounded),
        SimplexEnd::Optimal => {}
    }

    let mut assignment = vec![BigRational::zero(); n];
    for (r, &basic) in tableau.basis.iter().enumerate() {
        if basic < n {
            assignment[basic] = tableau.rows[r][cols].clone();
        }
    }
    let value = lp
        .objective
        .iter()
        .zip(&assignment)
        .map(|(c, x)| c * x)
        .fold(BigRational::zero(), |acc, t| acc + t);
    Ok(LpOutcome::Optimal { value, assignment })
}

/// Outcome of exact Gauss-Jordan elimination on `a . x = b`.
#[derive(Debug, Clone)]
pub enum LinSolve {
    Inconsistent,
    /// Unique solution.
    Unique(Vec<BigRational>),
    /// Affine solution set: a particular solution plus a basis of the
    /// homogeneous solutions.
    Affine {
        particular: Vec<BigRational>,
        nullspace: Vec<Vec<BigRational>>,
    },
}

pub fn solve_linear_system(
    rows: &[(Vec<BigRational>, BigRational)],
    num_vars: usize,
) -> LinSolve {
    let mut mat: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|(a, b)| {
            let mut row = a.clone();
            row.push(b.clone());
            row
        })
        .collect();
    let m = mat.len();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..num_vars {
        let Some(pr) = (r..m).find(|&i| !mat[i][c].is_zero()) else {
            continue;
        };
        mat.swap(r, pr);
        let pivot = mat[r][c].clone();
        for entry in mat[r].iter_mut() {
            *entry = &*entry / &pivot;
        }
        let pivot_row = mat[r].clone();
        for (i, row) in mat.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let factor = row[c].clone();
                for (entry, p) in row.iter_mut().zip(&pivot_row) {
                    *entry = &*entry - &factor * p;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == m {
            break;
        }
    }
    for row in mat.iter().skip(r) {
        if !row[num_vars].is_zero() {
            return LinSolve::Inconsistent;
        }
    }
    let mut particular = vec![BigRational::zero(); num_vars];
    for (i, &c) in pivot_cols.iter().enumerate() {
        particular[c] = mat[i][num_vars].clone();
    }
    if pivot_cols.len() == num_vars {
        return LinSolve::Unique(particular);
    }
    let is_pivot: Vec<bool> = {
        let mut v = vec![false; num_vars];
        for &c in &pivot_cols {
            v[c] = true;
        }
        v
    };
    let mut nullspace = Vec::new();
    for free in (0..num_vars).filter(|&c| !is_pivot[c]) {
        let mut vec_ = vec![BigRational::zero(); num_vars];
        vec_[free] = BigRational::one();
        for (i, &c) in pivot_cols.iter().enumerate() {
            vec_[c] = -mat[i][free].clone();
        }
        nullspace.push(vec_);
    }
    LinSolve::Affine {
        particular,
        nullspace,
    }
}

/// Rank of the column subset `cols` of the matrix whose rows are the
/// coefficient parts of `rows`.
pub fn column_rank(rows: &[(Vec<BigRational>, BigRational)], cols: &[usize]) -> usize {
    let mut mat: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|(a, _)| cols.iter().map(|&c| a[c].clone()).collect())
        .collect();
    let n = cols.len();
    let m = mat.len();
    let mut rank = 0;
    for c in 0..n {
        let Some(pr) = (rank..m).find(|&i| !mat[i][c].is_zero()) else {
            continue;
        };
        mat.swap(rank, pr);
        let pivot = mat[rank][c].clone();
        for entry in mat[rank].iter_mut() {
            *entry = &*entry / &pivot;
        }
        let pivot_row = mat[rank].clone();
        for (i, row) in mat.iter_mut().enumerate() {
            if i != rank && !row[c].is_zero() {
                let factor = row[c].clone();
                for (entry, p) in row.iter_mut().zip(&pivot_row) {
                    *entry = &*entry - &factor * p;
                }
            }
        }
        rank += 1;
        if rank == m {
            break;
        }
    }
    rank
}
