//! Dense two-phase primal simplex.
//!
//! Entering columns follow Dantzig's rule until a run of degenerate pivots,
//! after which Bland's rule takes over for the rest of the phase. Ratio-test
//! ties go to the row whose basic variable has the smallest index.

use super::{LpModel, LpSolution, LpStatus, Relation, Sense, FEAS_TOL, OPT_TOL};
use crate::error::{Error, Result};

const PIVOT_TOL: f64 = 1e-9;
const DEGENERATE_RUN: usize = 50;

struct Tableau {
    rows: Vec<Vec<f64>>,
    rhs: Vec<f64>,
    basis: Vec<usize>,
    reduced: Vec<f64>,
    value: f64,
    ncols: usize,
    pivots: usize,
    limit: usize,
}

impl Tableau {
    fn price(&mut self, costs: &[f64]) {
        self.reduced = costs.to_vec();
        self.value = 0.0;
        for (i, row) in self.rows.iter().enumerate() {
            let cb = costs[self.basis[i]];
            if cb != 0.0 {
                for (d, a) in self.reduced.iter_mut().zip(row) {
                    *d -= cb * a;
                }
                self.value += cb * self.rhs[i];
            }
        }
    }

    fn pivot(&mut self, r: usize, col: usize) {
        let p = self.rows[r][col];
        for a in self.rows[r].iter_mut() {
            *a /= p;
        }
        self.rhs[r] /= p;
        let pivot_row = std::mem::take(&mut self.rows[r]);
        let pivot_rhs = self.rhs[r];
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[col];
            if f != 0.0 {
                for (a, b) in row.iter_mut().zip(&pivot_row) {
                    *a -= f * b;
                }
                row[col] = 0.0;
                self.rhs[i] -= f * pivot_rhs;
                if self.rhs[i].abs() < 1e-13 {
                    self.rhs[i] = 0.0;
                }
            }
        }
        let f = self.reduced[col];
        if f != 0.0 {
            for (d, b) in self.reduced.iter_mut().zip(&pivot_row) {
                *d -= f * b;
            }
            self.reduced[col] = 0.0;
            self.value += f * pivot_rhs;
        }
        self.rows[r] = pivot_row;
        self.basis[r] = col;
        self.pivots += 1;
    }

    /// Runs simplex iterations over columns `0..allowed` until optimal.
    fn optimize(&mut self, allowed: usize) -> Result<()> {
        let mut degenerate = 0usize;
        loop {
            if self.pivots >= self.limit {
                return Err(Error::IterationLimit(self.pivots));
            }
            let bland = degenerate >= DEGENERATE_RUN;
            let entering = if bland {
                (0..allowed).find(|&j| self.reduced[j] < -OPT_TOL)
            } else {
                let mut best: Option<usize> = None;
                for j in 0..allowed {
                    if self.reduced[j] < -OPT_TOL
                        && best.is_none_or(|b| self.reduced[j] < self.reduced[b])
                    {
                        best = Some(j);
                    }
                }
                best
            };
            let Some(col) = entering else {
                return Ok(());
            };
            let mut leave: Option<(usize, f64)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                let a = row[col];
                if a > PIVOT_TOL {
                    let ratio = self.rhs[i] / a;
                    leave = match leave {
                        None => Some((i, ratio)),
                        Some((r, best)) => {
                            if ratio < best - 1e-12
                                || (ratio <= best + 1e-12 && self.basis[i] < self.basis[r])
                            {
                                Some((i, ratio))
                            } else {
                                Some((r, best))
                            }
                        }
                    };
                }
            }
            let Some((r, ratio)) = leave else {
                return Err(Error::Unbounded);
            };
            if ratio <= 1e-12 {
                degenerate += 1;
            } else if !bland {
                degenerate = 0;
            }
            self.pivot(r, col);
        }
    }
}

/// Solves `model` to optimality or reports infeasibility.
///
/// Deterministic for a fixed model.
pub fn solve_lp(model: &LpModel) -> Result<LpSolution> {
    let n = model.num_vars();
    if model.bounds.iter().any(|&(lo, _)| lo != 0.0) {
        return Err(Error::Precondition(
            "variable lower bounds must be zero".into(),
        ));
    }
    if model.infeasible_by_construction {
        return Ok(infeasible(n));
    }

    // (dense coefficients, relation, rhs) with rhs >= 0
    let mut rows: Vec<(Vec<f64>, Relation, f64)> = Vec::new();
    for c in &model.constraints {
        let mut dense = vec![0.0; n];
        for &(i, a) in &c.coeffs {
            dense[i] += a;
        }
        let (mut rel, mut rhs) = (c.relation, c.rhs);
        if rhs < 0.0 {
            dense.iter_mut().for_each(|a| *a = -*a);
            rhs = -rhs;
            rel = match rel {
                Relation::Ge => Relation::Le,
                Relation::Le => Relation::Ge,
            };
        }
        if rel == Relation::Ge && rhs == 0.0 {
            // 0 >= -a.x is a <= row with a slack basis
            dense.iter_mut().for_each(|a| *a = -*a);
            rel = Relation::Le;
        }
        rows.push((dense, rel, rhs));
    }
    for (j, &(_, hi)) in model.bounds.iter().enumerate() {
        if hi.is_finite() {
            let mut dense = vec![0.0; n];
            dense[j] = 1.0;
            rows.push((dense, Relation::Le, hi));
        }
    }

    let m = rows.len();
    let num_ge = rows.iter().filter(|r| r.1 == Relation::Ge).count();
    let first_art = n + m;
    let ncols = first_art + num_ge;
    let mut tab = Tableau {
        rows: Vec::with_capacity(m),
        rhs: Vec::with_capacity(m),
        basis: Vec::with_capacity(m),
        reduced: Vec::new(),
        value: 0.0,
        ncols,
        pivots: 0,
        limit: 50 * (m + ncols) + 1000,
    };
    let mut next_art = first_art;
    for (i, (dense, rel, rhs)) in rows.into_iter().enumerate() {
        let mut row = vec![0.0; ncols];
        row[..n].copy_from_slice(&dense);
        match rel {
            Relation::Le => {
                row[n + i] = 1.0;
                tab.basis.push(n + i);
            }
            Relation::Ge => {
                row[n + i] = -1.0;
                row[next_art] = 1.0;
                tab.basis.push(next_art);
                next_art += 1;
            }
        }
        tab.rows.push(row);
        tab.rhs.push(rhs);
    }

    if num_ge > 0 {
        let mut phase1 = vec![0.0; ncols];
        phase1[first_art..].iter_mut().for_each(|c| *c = 1.0);
        tab.price(&phase1);
        tab.optimize(ncols)?;
        if tab.value > FEAS_TOL {
            return Ok(infeasible(n));
        }
        // drive zero-level artificials out of the basis; drop redundant rows
        let mut i = 0;
        while i < tab.rows.len() {
            if tab.basis[i] >= first_art {
                match (0..first_art).find(|&j| tab.rows[i][j].abs() > PIVOT_TOL) {
                    Some(j) => tab.pivot(i, j),
                    None => {
                        tab.rows.remove(i);
                        tab.rhs.remove(i);
                        tab.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
    }

    let sign = match model.sense {
        Sense::Minimize => 1.0,
        Sense::Maximize => -1.0,
    };
    let mut costs = vec![0.0; tab.ncols];
    for (c, &o) in costs.iter_mut().zip(&model.objective) {
        *c = sign * o;
    }
    tab.price(&costs);
    tab.optimize(first_art)?;

    let mut values = vec![0.0; n];
    for (i, &b) in tab.basis.iter().enumerate() {
        if b < n {
            values[b] = tab.rhs[i];
        }
    }
    for (v, &(lo, hi)) in values.iter_mut().zip(&model.bounds) {
        *v = v.clamp(lo, hi);
    }
    let objective = model.objective_value(&values);
    Ok(LpSolution {
        status: LpStatus::Optimal,
        values,
        objective,
    })
}

fn infeasible(n: usize) -> LpSolution {
    LpSolution {
        status: LpStatus::Infeasible,
        values: vec![0.0; n],
        objective: f64::NAN,
    }
}
