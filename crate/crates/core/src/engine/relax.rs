//! Coefficient enclosures and the OUTER / INNER rational relaxations.
//!
//! With every column sign-restricted, the values of `Σ c_i x_i` over the
//! coefficient box are exactly `[Σ lo_i x_i, Σ hi_i x_i]`. OUTER keeps a
//! point if some coefficients in the box admit it; INNER keeps it only if
//! all of them do. Hence INNER ⊆ true region ⊆ OUTER at every level.

use num_traits::Zero;
use serde::Serialize;

use super::problem::{Clpp, Normalized};
use super::EngineError;
use crate::numerics::{rmin, Fuel, Interval, Rational};
use crate::simplex::{LinearConstraint, RatLp, Relation, Sense, VarBounds};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntervalRow {
    pub coeffs: Vec<Interval>,
    pub rel: Relation,
    pub rhs: Interval,
}

/// A CLPP with each coefficient replaced by an enclosing interval.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntervalLp {
    pub sense: Sense,
    pub objective: Vec<Interval>,
    pub rows: Vec<IntervalRow>,
    pub bounds: Vec<VarBounds>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relaxation {
    pub outer: RatLp,
    /// `None` when some equality cannot be certified robustly, in which case
    /// the INNER region is taken to be empty.
    pub inner: Option<RatLp>,
    /// Rows whose equality could not be made robust.
    pub uncertifiable: Vec<usize>,
}

impl Normalized {
    pub(crate) fn snapshot(&self, t: u64) -> IntervalLp {
        IntervalLp {
            sense: self.sense,
            objective: self.objective.iter().map(|c| c.enclosure(t)).collect(),
            rows: self
                .rows
                .iter()
                .map(|r| IntervalRow {
                    coeffs: r.coeffs.iter().map(|c| c.enclosure(t)).collect(),
                    rel: r.rel,
                    rhs: r.rhs.enclosure(t),
                })
                .collect(),
            bounds: self.bounds.clone(),
        }
    }
}

/// Enclosure of every coefficient at precision `2^-fuel`, after splitting
/// free variables. Machine-free coefficients become point intervals.
pub fn interval_snapshot(p: &Clpp, fuel: Fuel) -> Result<IntervalLp, EngineError> {
    Ok(Normalized::new(p)?.snapshot(fuel.0 as u64))
}

fn los(v: &[Interval]) -> Vec<Rational> {
    v.iter().map(|i| i.lo().clone()).collect()
}

fn his(v: &[Interval]) -> Vec<Rational> {
    v.iter().map(|i| i.hi().clone()).collect()
}

pub fn outer_inner_relax(s: &IntervalLp) -> Result<Relaxation, EngineError> {
    if let Some(j) = s.bounds.iter().position(|b| !b.nonneg) {
        return Err(EngineError::UnsignedVariable(j));
    }
    let mut outer_rows = Vec::new();
    let mut inner_rows = Vec::new();
    let mut inner_bounds = s.bounds.clone();
    let mut uncertifiable = Vec::new();

    for (i, r) in s.rows.iter().enumerate() {
        let lo = || los(&r.coeffs);
        let hi = || his(&r.coeffs);
        let le = |row, rhs: &Rational| LinearConstraint { row, rel: Relation::Le, rhs: rhs.clone() };
        let ge = |row, rhs: &Rational| LinearConstraint { row, rel: Relation::Ge, rhs: rhs.clone() };
        match r.rel {
            Relation::Le => {
                outer_rows.push(le(lo(), r.rhs.hi()));
                inner_rows.push(le(hi(), r.rhs.lo()));
            }
            Relation::Ge => {
                outer_rows.push(ge(hi(), r.rhs.lo()));
                inner_rows.push(ge(lo(), r.rhs.hi()));
            }
            Relation::Eq => {
                outer_rows.push(le(lo(), r.rhs.hi()));
                outer_rows.push(ge(hi(), r.rhs.lo()));
                if !r.rhs.is_point() {
                    uncertifiable.push(i);
                    continue;
                }
                for (j, c) in r.coeffs.iter().enumerate() {
                    if !c.is_point() {
                        let b = &mut inner_bounds[j];
                        b.upper = Some(match &b.upper {
                            Some(u) => rmin(u, &Rational::zero()),
                            None => Rational::zero(),
                        });
                    }
                }
                inner_rows.push(LinearConstraint { row: lo(), rel: Relation::Eq, rhs: r.rhs.lo().clone() });
            }
        }
    }

    let (outer_obj, inner_obj) = match s.sense {
        Sense::Max => (his(&s.objective), los(&s.objective)),
        Sense::Min => (los(&s.objective), his(&s.objective)),
    };
    let outer = RatLp { sense: s.sense, objective: outer_obj, constraints: outer_rows, bounds: s.bounds.clone() };
    let inner = uncertifiable.is_empty().then_some(RatLp {
        sense: s.sense,
        objective: inner_obj,
        constraints: inner_rows,
        bounds: inner_bounds,
    });
    Ok(Relaxation { outer, inner, uncertifiable })
}
