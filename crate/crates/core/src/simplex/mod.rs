//! Exact two-phase simplex over the rationals.
//!
//! Problems are normalized to `A x = b, x >= 0, b >= 0` with slack/surplus
//! columns; free variables are split `x = x⁺ - x⁻` and upper bounds become
//! rows. Phase 1 minimizes the sum of artificial variables, phase 2 runs on
//! the original objective. Entering and leaving variables follow Bland's
//! rule, which rules out cycling.

mod vertices;

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numerics::{serde_rational, Rational};

pub use vertices::{enumerate_vertices, Vertex, MAX_VERTEX_ROWS, MAX_VERTEX_VARS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sense {
    Max,
    Min,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "=")]
    Eq,
}

impl Relation {
    pub fn holds(self, lhs: &Rational, rhs: &Rational) -> bool {
        match self {
            Relation::Le => lhs <= rhs,
            Relation::Ge => lhs >= rhs,
            Relation::Eq => lhs == rhs,
        }
    }

    fn flipped(self) -> Relation {
        match self {
            Relation::Le => Relation::Ge,
            Relation::Ge => Relation::Le,
            Relation::Eq => Relation::Eq,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Eq => "=",
        })
    }
}

/// Lower bound is either 0 (`nonneg`) or absent; upper bound optional.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VarBounds {
    pub nonneg: bool,
    #[serde(with = "serde_rational::opt")]
    pub upper: Option<Rational>,
}

impl VarBounds {
    pub fn nonneg() -> Self {
        VarBounds { nonneg: true, upper: None }
    }

    pub fn free() -> Self {
        VarBounds { nonneg: false, upper: None }
    }

    pub fn boxed(upper: Rational) -> Self {
        VarBounds { nonneg: true, upper: Some(upper) }
    }

    pub fn admits(&self, v: &Rational) -> bool {
        !(self.nonneg && v.is_negative()) && self.upper.as_ref().is_none_or(|u| v <= u)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LinearConstraint {
    #[serde(with = "serde_rational::vec")]
    pub row: Vec<Rational>,
    pub rel: Relation,
    #[serde(with = "serde_rational")]
    pub rhs: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RatLp {
    pub sense: Sense,
    #[serde(with = "serde_rational::vec")]
    pub objective: Vec<Rational>,
    pub constraints: Vec<LinearConstraint>,
    pub bounds: Vec<VarBounds>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LpError {
    #[error("malformed LP: {0}")]
    Malformed(String),
    #[error("vertex enumeration is limited to {MAX_VERTEX_VARS} variables and {MAX_VERTEX_ROWS} rows")]
    TooLarge,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum LpOutcome {
    Optimal {
        #[serde(with = "serde_rational::vec")]
        plan: Vec<Rational>,
        #[serde(with = "serde_rational")]
        value: Rational,
        /// Basic columns of the final tableau in normalized coordinates.
        basis: Vec<usize>,
    },
    Infeasible {
        /// Optimal phase-1 objective (sum of artificials), strictly positive.
        #[serde(with = "serde_rational")]
        phase1_value: Rational,
    },
    Unbounded {
        /// A feasible point from which `ray` improves without limit.
        #[serde(with = "serde_rational::vec")]
        point: Vec<Rational>,
        #[serde(with = "serde_rational::vec")]
        ray: Vec<Rational>,
    },
}

impl LpOutcome {
    pub fn class(&self) -> &'static str {
        match self {
            LpOutcome::Optimal { .. } => "optimal",
            LpOutcome::Infeasible { .. } => "infeasible",
            LpOutcome::Unbounded { .. } => "unbounded",
        }
    }

    pub fn is_infeasible(&self) -> bool {
        matches!(self, LpOutcome::Infeasible { .. })
    }

    /// Some feasible point, when the outcome carries one.
    pub fn feasible_point(&self) -> Option<&[Rational]> {
        match self {
            LpOutcome::Optimal { plan, .. } => Some(plan),
            LpOutcome::Unbounded { point, .. } => Some(point),
            LpOutcome::Infeasible { .. } => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Solution {
    pub outcome: LpOutcome,
    pub pivots: usize,
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

impl RatLp {
    pub fn vars(&self) -> usize {
        self.objective.len()
    }

    pub fn validate(&self) -> Result<(), LpError> {
        let n = self.vars();
        if self.bounds.len() != n {
            return Err(LpError::Malformed(format!(
                "{} bounds for {n} variables",
                self.bounds.len()
            )));
        }
        for (i, c) in self.constraints.iter().enumerate() {
            if c.row.len() != n {
                return Err(LpError::Malformed(format!(
                    "row {i} has {} coefficients, expected {n}",
                    c.row.len()
                )));
            }
        }
        Ok(())
    }

    pub fn value_of(&self, plan: &[Rational]) -> Rational {
        dot(&self.objective, plan)
    }
}

/// Exact check of every row and bound.
pub fn check_feasible_rational(lp: &RatLp, plan: &[Rational]) -> bool {
    plan.len() == lp.vars()
        && lp.bounds.iter().zip(plan).all(|(b, v)| b.admits(v))
        && lp.constraints.iter().all(|c| c.rel.holds(&dot(&c.row, plan), &c.rhs))
}

/// `ray` is a recession direction of the feasible region that improves the
/// objective.
pub fn check_improving_ray(lp: &RatLp, ray: &[Rational]) -> bool {
    if ray.len() != lp.vars() {
        return false;
    }
    let zero = Rational::zero();
    let recedes = lp.bounds.iter().zip(ray).all(|(b, r)| {
        !(b.nonneg && r.is_negative()) && !(b.upper.is_some() && r.is_positive())
    }) && lp.constraints.iter().all(|c| c.rel.holds(&dot(&c.row, ray), &zero));
    let gain = lp.value_of(ray);
    recedes
        && match lp.sense {
            Sense::Max => gain.is_positive(),
            Sense::Min => gain.is_negative(),
        }
}

pub fn solve_rational_lp(lp: &RatLp) -> Result<LpOutcome, LpError> {
    solve_with_stats(lp).map(|s| s.outcome)
}

pub fn solve_with_stats(lp: &RatLp) -> Result<Solution, LpError> {
    lp.validate()?;
    let mut t = Tableau::build(lp);
    let mut pivots = 0;

    if t.n_art > 0 {
        let cost: Vec<Rational> = (0..t.ncols)
            .map(|j| if t.is_artificial(j) { Rational::from_integer((-1).into()) } else { Rational::zero() })
            .collect();
        t.set_objective(&cost);
        let phase1 = t.maximize(t.ncols, &mut pivots);
        debug_assert!(phase1.is_none(), "phase 1 is bounded");
        let sum_art = -t.value();
        if sum_art.is_positive() {
            return Ok(Solution { outcome: LpOutcome::Infeasible { phase1_value: sum_art }, pivots });
        }
        t.drive_out_artificials(&mut pivots);
    }

    let sign = Rational::from_integer(match lp.sense {
        Sense::Max => 1.into(),
        Sense::Min => (-1).into(),
    });
    let mut cost = vec![Rational::zero(); t.ncols];
    for (j, c) in lp.objective.iter().enumerate() {
        cost[t.plus[j]] = c * &sign;
        if let Some(m) = t.minus[j] {
            cost[m] = -(c * &sign);
        }
    }
    t.set_objective(&cost);
    let structural_end = t.art_start;
    let outcome = match t.maximize(structural_end, &mut pivots) {
        None => {
            let plan = t.plan();
            let value = lp.value_of(&plan);
            LpOutcome::Optimal { plan, value, basis: t.basis.clone() }
        }
        Some(entering) => {
            let point = t.plan();
            let ray = t.ray(entering);
            LpOutcome::Unbounded { point, ray }
        }
    };
    Ok(Solution { outcome, pivots })
}

/// Dense tableau over `[structural | slack | artificial | rhs]` columns.
struct Tableau {
    rows: Vec<Vec<Rational>>,
    /// Reduced costs `c_j - c_B B^-1 a_j`, with `-value` in the last entry.
    z: Vec<Rational>,
    basis: Vec<usize>,
    ncols: usize,
    art_start: usize,
    n_art: usize,
    plus: Vec<usize>,
    minus: Vec<Option<usize>>,
}

impl Tableau {
    fn build(lp: &RatLp) -> Self {
        let n = lp.vars();
        let mut plus = Vec::with_capacity(n);
        let mut minus = Vec::with_capacity(n);
        let mut nstruct = 0;
        for b in &lp.bounds {
            plus.push(nstruct);
            nstruct += 1;
            if b.nonneg {
                minus.push(None);
            } else {
                minus.push(Some(nstruct));
                nstruct += 1;
            }
        }

        // (structural coefficients, relation, rhs) with rhs >= 0
        let mut raw: Vec<(Vec<Rational>, Relation, Rational)> = Vec::new();
        let expand = |row: &[Rational]| {
            let mut v = vec![Rational::zero(); nstruct];
            for (j, a) in row.iter().enumerate() {
                v[plus[j]] = a.clone();
                if let Some(m) = minus[j] {
                    v[m] = -a;
                }
            }
            v
        };
        for c in &lp.constraints {
            raw.push((expand(&c.row), c.rel, c.rhs.clone()));
        }
        for (j, b) in lp.bounds.iter().enumerate() {
            if let Some(u) = &b.upper {
                let mut unit = vec![Rational::zero(); n];
                unit[j] = Rational::from_integer(1.into());
                raw.push((expand(&unit), Relation::Le, u.clone()));
            }
        }
        for (row, rel, rhs) in raw.iter_mut() {
            if rhs.is_negative() {
                row.iter_mut().for_each(|a| *a = -&*a);
                *rhs = -&*rhs;
                *rel = rel.flipped();
            }
        }

        let n_slack = raw.iter().filter(|r| r.1 != Relation::Eq).count();
        let n_art = raw.iter().filter(|r| r.1 != Relation::Le).count();
        let art_start = nstruct + n_slack;
        let ncols = art_start + n_art;
        let m = raw.len();
        let mut rows = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let (mut s, mut a) = (nstruct, art_start);
        for (row, rel, rhs) in raw {
            let mut r = row;
            r.resize(ncols + 1, Rational::zero());
            r[ncols] = rhs;
            match rel {
                Relation::Le => {
                    r[s] = Rational::from_integer(1.into());
                    basis.push(s);
                    s += 1;
                }
                Relation::Ge => {
                    r[s] = Rational::from_integer((-1).into());
                    s += 1;
                    r[a] = Rational::from_integer(1.into());
                    basis.push(a);
                    a += 1;
                }
                Relation::Eq => {
                    r[a] = Rational::from_integer(1.into());
                    basis.push(a);
                    a += 1;
                }
            }
            rows.push(r);
        }
        Tableau { rows, z: vec![Rational::zero(); ncols + 1], basis, ncols, art_start, n_art, plus, minus }
    }

    fn is_artificial(&self, j: usize) -> bool {
        j >= self.art_start
    }

    fn value(&self) -> Rational {
        -&self.z[self.ncols]
    }

    fn set_objective(&mut self, cost: &[Rational]) {
        let mut z: Vec<Rational> = cost.to_vec();
        z.push(Rational::zero());
        for (i, row) in self.rows.iter().enumerate() {
            let cb = &cost[self.basis[i]];
            if cb.is_zero() {
                continue;
            }
            for (zj, a) in z.iter_mut().zip(row) {
                if !a.is_zero() {
                    *zj -= cb * a;
                }
            }
        }
        self.z = z;
    }

    /// Bland's rule ascent over columns `< allowed`. Returns the entering
    /// column of an unbounded direction, or `None` at optimality.
    fn maximize(&mut self, allowed: usize, pivots: &mut usize) -> Option<usize> {
        loop {
            let entering = (0..allowed).find(|&j| self.z[j].is_positive())?;
            let mut leave: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                let a = &row[entering];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &row[self.ncols] / a;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                None => return Some(entering),
                Some((r, _)) => {
                    self.pivot(r, entering);
                    *pivots += 1;
                }
            }
        }
    }

    fn pivot(&mut self, r: usize, e: usize) {
        let inv = Rational::from_integer(1.into()) / &self.rows[r][e];
        for a in self.rows[r].iter_mut() {
            if !a.is_zero() {
                *a *= &inv;
            }
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[e].is_zero() {
                continue;
            }
            let f = row[e].clone();
            for (a, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *a -= &f * p;
                }
            }
        }
        if !self.z[e].is_zero() {
            let f = self.z[e].clone();
            for (a, p) in self.z.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *a -= &f * p;
                }
            }
        }
        self.basis[r] = e;
    }

    /// After a zero phase-1 optimum, pivots artificial columns out of the
    /// basis; rows with no structural entry left are redundant and dropped.
    fn drive_out_artificials(&mut self, pivots: &mut usize) {
        let mut i = 0;
        while i < self.rows.len() {
            if !self.is_artificial(self.basis[i]) {
                i += 1;
                continue;
            }
            match (0..self.art_start).find(|&j| !self.rows[i][j].is_zero()) {
                Some(j) => {
                    self.pivot(i, j);
                    *pivots += 1;
                    i += 1;
                }
                None => {
                    self.rows.remove(i);
                    self.basis.remove(i);
                }
            }
        }
    }

    fn column_values(&self) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.ncols];
        for (i, &b) in self.basis.iter().enumerate() {
            v[b] = self.rows[i][self.ncols].clone();
        }
        v
    }

    fn to_original(&self, cols: &[Rational]) -> Vec<Rational> {
        self.plus
            .iter()
            .zip(&self.minus)
            .map(|(&p, m)| match m {
                Some(m) => &cols[p] - &cols[*m],
                None => cols[p].clone(),
            })
            .collect()
    }

    fn plan(&self) -> Vec<Rational> {
        self.to_original(&self.column_values())
    }

    fn ray(&self, entering: usize) -> Vec<Rational> {
        let mut d = vec![Rational::zero(); self.ncols];
        d[entering] = Rational::from_integer(1.into());
        for (i, &b) in self.basis.iter().enumerate() {
            d[b] = -&self.rows[i][entering];
        }
        self.to_original(&d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{int, rat};

    fn c(row: Vec<Rational>, rel: Relation, rhs: Rational) -> LinearConstraint {
        LinearConstraint { row, rel, rhs }
    }

    #[test]
    fn segment_optimum() {
        let lp = RatLp {
            sense: Sense::Max,
            objective: vec![int(1), int(1)],
            constraints: vec![c(vec![int(1), int(1)], Relation::Le, int(1))],
            bounds: vec![VarBounds::nonneg(), VarBounds::nonneg()],
        };
        match solve_rational_lp(&lp).unwrap() {
            LpOutcome::Optimal { plan, value, .. } => {
                assert_eq!(value, int(1));
                assert!(check_feasible_rational(&lp, &plan));
            }
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn zero_row_with_box() {
        let lp = RatLp {
            sense: Sense::Max,
            objective: vec![int(1)],
            constraints: vec![c(vec![int(0)], Relation::Eq, int(0))],
            bounds: vec![VarBounds::boxed(int(1))],
        };
        match solve_rational_lp(&lp).unwrap() {
            LpOutcome::Optimal { plan, value, .. } => {
                assert_eq!(plan, vec![int(1)]);
                assert_eq!(value, int(1));
            }
            o => panic!("{o:?}"),
        }
        assert!(check_feasible_rational(&lp, &[int(0)]));
        assert!(!check_feasible_rational(&lp, &[int(2)]));
        assert!(!check_feasible_rational(&lp, &[int(-1)]));
    }

    #[test]
    fn zero_row_unbounded() {
        let lp = RatLp {
            sense: Sense::Max,
            objective: vec![int(1)],
            constraints: vec![c(vec![int(0)], Relation::Eq, int(0))],
            bounds: vec![VarBounds::nonneg()],
        };
        match solve_rational_lp(&lp).unwrap() {
            LpOutcome::Unbounded { point, ray } => {
                assert_eq!(ray, vec![int(1)]);
                assert!(check_feasible_rational(&lp, &point));
                assert!(check_improving_ray(&lp, &ray));
            }
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn nonzero_coefficient_equality_is_infeasible() {
        let lp = RatLp {
            sense: Sense::Max,
            objective: vec![int(1)],
            constraints: vec![
                c(vec![rat(1, 8)], Relation::Eq, int(0)),
                c(vec![int(1)], Relation::Eq, int(1)),
            ],
            bounds: vec![VarBounds::nonneg()],
        };
        match solve_rational_lp(&lp).unwrap() {
            LpOutcome::Infeasible { phase1_value } => assert!(phase1_value.is_positive()),
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn free_variables_and_min_sense() {
        // min x subject to x >= -3, x free
        let lp = RatLp {
            sense: Sense::Min,
            objective: vec![int(1)],
            constraints: vec![c(vec![int(1)], Relation::Ge, int(-3))],
            bounds: vec![VarBounds::free()],
        };
        match solve_rational_lp(&lp).unwrap() {
            LpOutcome::Optimal { plan, value, .. } => {
                assert_eq!(plan, vec![int(-3)]);
                assert_eq!(value, int(-3));
            }
            o => panic!("{o:?}"),
        }
        let unb = RatLp { constraints: vec![], ..lp };
        match solve_rational_lp(&unb).unwrap() {
            LpOutcome::Unbounded { ray, .. } => assert!(check_improving_ray(&unb, &ray)),
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn redundant_equalities() {
        // x + y = 1 stated twice, max x
        let row = vec![int(1), int(1)];
        let lp = RatLp {
            sense: Sense::Max,
            objective: vec![int(1), int(0)],
            constraints: vec![
                c(row.clone(), Relation::Eq, int(1)),
                c(row, Relation::Eq, int(1)),
            ],
            bounds: vec![VarBounds::nonneg(), VarBounds::nonneg()],
        };
        match solve_rational_lp(&lp).unwrap() {
            LpOutcome::Optimal { plan, value, .. } => {
                assert_eq!(plan, vec![int(1), int(0)]);
                assert_eq!(value, int(1));
            }
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn validation() {
        let lp = RatLp {
            sense: Sense::Max,
            objective: vec![int(1)],
            constraints: vec![c(vec![int(1), int(2)], Relation::Le, int(1))],
            bounds: vec![VarBounds::nonneg()],
        };
        assert!(matches!(solve_rational_lp(&lp), Err(LpError::Malformed(_))));
    }
}
