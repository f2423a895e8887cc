use std::fmt;
use std::str::FromStr;

use num_traits::One;
use serde::Serialize;

use super::expr::{eval_expr, CrnExpr, MachineRef};
use super::problem::{Clpp, ClppConstraint};
use crate::numerics::{Crn, Rational};
use crate::simplex::{Relation, Sense, VarBounds};

/// The counterexample families, each built around one halting-derived
/// coefficient `s = s_n` (or the pair `a_n`, `b_n` for `D`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum FamilyKind {
    /// `max x` s.t. `s·x = 0`, `0 <= x <= 1`
    P,
    /// `max (1+s)x + (1-s)y` s.t. `x + y <= 1`, `x, y >= 0`
    H,
    /// `max x` s.t. `s·x = 0`, `x >= 0`
    Q,
    /// `max x` s.t. `s·x = 0`, `x = 1`, `x >= 0`
    R,
    /// `max y` s.t. `s·x = 0`, `x = 1`, `x, y >= 0`
    T,
    /// `max 0` s.t. `(a+b)x = a`, `0 <= x <= 1`
    D,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 6] =
        [FamilyKind::P, FamilyKind::H, FamilyKind::Q, FamilyKind::R, FamilyKind::T, FamilyKind::D];
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for FamilyKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FamilyKind::ALL
            .into_iter()
            .find(|k| k.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown family {s:?}"))
    }
}

fn row(row: Vec<CrnExpr>, rel: Relation, rhs: CrnExpr) -> ClppConstraint {
    ClppConstraint { row, rel, rhs }
}

pub fn family(kind: FamilyKind, m: &MachineRef, n: u64) -> Clpp {
    let s = CrnExpr::specker(m, n);
    let one = CrnExpr::one;
    let zero = CrnExpr::zero;
    let unit_box = || VarBounds::boxed(Rational::one());
    let (vars, objective, constraints, bounds) = match kind {
        FamilyKind::P => (vec!["x"], vec![one()], vec![row(vec![s], Relation::Eq, zero())], vec![unit_box()]),
        FamilyKind::H => (
            vec!["x", "y"],
            vec![CrnExpr::add(one(), s.clone()), CrnExpr::sub(one(), s)],
            vec![row(vec![one(), one()], Relation::Le, one())],
            vec![VarBounds::nonneg(), VarBounds::nonneg()],
        ),
        FamilyKind::Q => {
            (vec!["x"], vec![one()], vec![row(vec![s], Relation::Eq, zero())], vec![VarBounds::nonneg()])
        }
        FamilyKind::R => (
            vec!["x"],
            vec![one()],
            vec![row(vec![s], Relation::Eq, zero()), row(vec![one()], Relation::Eq, one())],
            vec![VarBounds::nonneg()],
        ),
        FamilyKind::T => (
            vec!["x", "y"],
            vec![zero(), one()],
            vec![row(vec![s, zero()], Relation::Eq, zero()), row(vec![one(), zero()], Relation::Eq, one())],
            vec![VarBounds::nonneg(), VarBounds::nonneg()],
        ),
        FamilyKind::D => {
            let (a, b) = (CrnExpr::pair_a(m, n), CrnExpr::pair_b(m, n));
            (
                vec!["x"],
                vec![zero()],
                vec![row(vec![CrnExpr::add(a.clone(), b)], Relation::Eq, a)],
                vec![unit_box()],
            )
        }
    };
    Clpp {
        sense: Sense::Max,
        vars: vars.into_iter().map(String::from).collect(),
        objective,
        constraints,
        bounds,
    }
}

/// Optimal value of `H`: the larger of its two objective coefficients. It is
/// computable even though no procedure can output an optimal plan.
pub fn optimal_value_crn_h(m: &MachineRef, n: u64) -> Crn {
    let s = CrnExpr::specker(m, n);
    eval_expr(&CrnExpr::max(CrnExpr::add(CrnExpr::one(), s.clone()), CrnExpr::sub(CrnExpr::one(), s)))
}
