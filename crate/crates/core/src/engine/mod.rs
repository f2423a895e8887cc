//! LPs whose coefficients are constructive reals, and sound fuel-bounded
//! procedures that answer questions about them or return `Unknown`.

mod decide;
mod expr;
mod families;
mod problem;
mod relax;

use thiserror::Error;

use crate::numerics::NumericsError;
use crate::simplex::LpError;

pub use decide::{
    check_plan_feasible, check_plan_optimal, decide_boundedness, decide_feasibility, diagnose_unsolvable,
    value_bounds, Analyzer, Answer, Bound, Boundedness, Certificate, Decision, Diagnosis, Feasibility, Query,
    SemiVerdict, Trace, ValueBounds,
};
pub use expr::{eval_expr, CrnExpr, Leaf, MachineRef};
pub use families::{family, optimal_value_crn_h, FamilyKind};
pub use problem::{Clpp, ClppConstraint, RowOrigin};
pub use relax::{interval_snapshot, outer_inner_relax, IntervalLp, IntervalRow, Relaxation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("malformed problem: {0}")]
    Malformed(String),
    #[error("variable {0} is not sign-restricted")]
    UnsignedVariable(usize),
    #[error("plan has {got} components, expected {expected}")]
    PlanLength { expected: usize, got: usize },
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

#[cfg(test)]
mod tests;
