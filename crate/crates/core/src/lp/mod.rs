//! Linear programs over object-selection variables in `[0, 1]`.

mod simplex;

pub use simplex::solve_lp;

use crate::error::Result;
use crate::instance::{self, CoverInstance, IncidenceMatrix, PackInstance};

/// Feasibility tolerance for constraint residuals.
pub const FEAS_TOL: f64 = 1e-7;
/// Reduced-cost tolerance for optimality.
pub const OPT_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Ge,
    Le,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Constraint {
    pub coeffs: Vec<(usize, f64)>,
    pub relation: Relation,
    pub rhs: f64,
}

impl Constraint {
    pub fn activity(&self, x: &[f64]) -> f64 {
        self.coeffs.iter().map(|&(i, a)| a * x[i]).sum()
    }

    /// Amount by which `x` violates this row; zero when satisfied.
    pub fn violation(&self, x: &[f64]) -> f64 {
        let lhs = self.activity(x);
        match self.relation {
            Relation::Ge => (self.rhs - lhs).max(0.0),
            Relation::Le => (lhs - self.rhs).max(0.0),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpModel {
    pub sense: Sense,
    pub objective: Vec<f64>,
    pub constraints: Vec<Constraint>,
    /// `(lower, upper)` per variable; lower bounds must be zero.
    pub bounds: Vec<(f64, f64)>,
    /// Set when some row can never be satisfied, e.g. an uncoverable blue.
    pub infeasible_by_construction: bool,
}

impl LpModel {
    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn objective_value(&self, x: &[f64]) -> f64 {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum()
    }

    /// Largest row violation of `x`.
    pub fn max_violation(&self, x: &[f64]) -> f64 {
        self.constraints
            .iter()
            .map(|c| c.violation(x))
            .fold(0.0, f64::max)
    }

    /// Unit-coefficient rows from an incidence matrix.
    pub fn from_incidence(
        sense: Sense,
        weights: &[f64],
        matrix: &IncidenceMatrix,
        relation: Relation,
        rhs: impl Fn(usize) -> f64,
    ) -> Self {
        let constraints: Vec<Constraint> = matrix
            .rows
            .iter()
            .enumerate()
            .map(|(j, row)| Constraint {
                coeffs: row.iter().map(|&i| (i, 1.0)).collect(),
                relation,
                rhs: rhs(j),
            })
            .collect();
        let infeasible_by_construction = constraints
            .iter()
            .any(|c| c.coeffs.is_empty() && c.violation(&[]) > FEAS_TOL);
        Self {
            sense,
            objective: weights.to_vec(),
            constraints,
            bounds: vec![(0.0, 1.0); weights.len()],
            infeasible_by_construction,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution {
    pub status: LpStatus,
    pub values: Vec<f64>,
    pub objective: f64,
}

impl LpSolution {
    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }
}

/// Covering LP: minimize total red weight, every blue (or point) covered at
/// least once.
pub fn build_cover_lp(inst: &CoverInstance) -> Result<LpModel> {
    let matrix = instance::incidence(inst)?;
    Ok(LpModel::from_incidence(
        Sense::Minimize,
        &inst.weights(),
        &matrix,
        Relation::Ge,
        |_| 1.0,
    ))
}

/// Packing LP: maximize total weight, each point loaded at most to its
/// capacity.
pub fn build_packing_lp(inst: &PackInstance) -> Result<LpModel> {
    let matrix = inst.incidence()?;
    Ok(LpModel::from_incidence(
        Sense::Maximize,
        &inst.weights(),
        &matrix,
        Relation::Le,
        |j| f64::from(inst.capacities[j]),
    ))
}
