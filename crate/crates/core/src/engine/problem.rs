use num_traits::{One, Signed, Zero};

use super::expr::{eval_expr, CrnExpr, MachineRef};
use super::EngineError;
use crate::machines::HaltTruth;
use crate::numerics::{Crn, Interval, Rational};
use crate::simplex::{LinearConstraint, RatLp, Relation, Sense, VarBounds};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClppConstraint {
    pub row: Vec<CrnExpr>,
    pub rel: Relation,
    pub rhs: CrnExpr,
}

/// LP whose coefficients are CRN expressions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Clpp {
    pub sense: Sense,
    pub vars: Vec<String>,
    pub objective: Vec<CrnExpr>,
    pub constraints: Vec<ClppConstraint>,
    pub bounds: Vec<VarBounds>,
}

impl Clpp {
    pub fn validate(&self) -> Result<(), EngineError> {
        let n = self.vars.len();
        if self.objective.len() != n || self.bounds.len() != n {
            return Err(EngineError::Malformed(format!(
                "{n} variables but {} objective coefficients and {} bounds",
                self.objective.len(),
                self.bounds.len()
            )));
        }
        if let Some((i, c)) = self.constraints.iter().enumerate().find(|(_, c)| c.row.len() != n) {
            return Err(EngineError::Malformed(format!(
                "constraint {i} has {} coefficients, expected {n}",
                c.row.len()
            )));
        }
        Ok(())
    }

    fn exprs(&self) -> impl Iterator<Item = &CrnExpr> {
        self.objective
            .iter()
            .chain(self.constraints.iter().flat_map(|c| c.row.iter().chain(std::iter::once(&c.rhs))))
    }

    pub fn machines(&self) -> Vec<&MachineRef> {
        let mut leaves = Vec::new();
        for e in self.exprs() {
            e.leaves(&mut leaves);
        }
        let mut out: Vec<&MachineRef> = Vec::new();
        for (_, m, _) in leaves {
            if !out.iter().any(|o| o.name == m.name) {
                out.push(m);
            }
        }
        out
    }

    pub fn is_rational(&self) -> bool {
        self.exprs().all(|e| e.exact_value().is_some())
    }

    /// Instantiates every coefficient with `value`; `None` if any is unknown.
    pub fn instantiate(&self, value: &dyn Fn(&CrnExpr) -> Option<Rational>) -> Option<RatLp> {
        let objective = self.objective.iter().map(value).collect::<Option<Vec<_>>>()?;
        let constraints = self
            .constraints
            .iter()
            .map(|c| {
                Some(LinearConstraint {
                    row: c.row.iter().map(value).collect::<Option<Vec<_>>>()?,
                    rel: c.rel,
                    rhs: value(&c.rhs)?,
                })
            })
            .collect::<Option<Vec<_>>>()?;
        Some(RatLp { sense: self.sense, objective, constraints, bounds: self.bounds.clone() })
    }

    /// The exact rational LP when no coefficient depends on a machine.
    pub fn to_rat_lp(&self) -> Option<RatLp> {
        self.instantiate(&CrnExpr::exact_value)
    }

    /// The exact rational LP at the true parameter values, given halting
    /// ground truth for every referenced machine.
    pub fn ground_truth_lp(&self, truth: &dyn Fn(&MachineRef, u64) -> Option<HaltTruth>) -> Option<RatLp> {
        self.instantiate(&|e| e.limit_under(truth))
    }
}

/// A coefficient: exact when machine-free, otherwise enclosed through its CRN.
#[derive(Debug, Clone)]
pub(crate) struct Coef {
    exact: Option<Rational>,
    crn: Crn,
}

impl Coef {
    fn new(e: &CrnExpr) -> Self {
        Coef { exact: e.exact_value(), crn: eval_expr(e) }
    }

    fn exact(q: Rational) -> Self {
        Coef { crn: Crn::from_rational(q.clone()), exact: Some(q) }
    }

    pub(crate) fn enclosure(&self, t: u64) -> Interval {
        match &self.exact {
            Some(q) => Interval::point(q.clone()),
            None => self.crn.enclosure(t),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowOrigin {
    Constraint(usize),
    /// Upper bound of a free (split) variable, stated as a row.
    UpperBound(usize),
}

#[derive(Debug, Clone)]
pub(crate) struct NormRow {
    pub coeffs: Vec<Coef>,
    pub rel: Relation,
    pub rhs: Coef,
    pub origin: RowOrigin,
}

/// Sign-restricted form: every column is `>= 0`. A free variable `x` becomes
/// columns `x⁺, x⁻` with negated coefficients on `x⁻`.
#[derive(Debug, Clone)]
pub(crate) struct Normalized {
    pub sense: Sense,
    pub objective: Vec<Coef>,
    pub rows: Vec<NormRow>,
    pub bounds: Vec<VarBounds>,
    /// Column of `x⁺` (or `x`) and of `x⁻` for each original variable.
    pub columns: Vec<(usize, Option<usize>)>,
}

impl Normalized {
    pub fn new(p: &Clpp) -> Result<Self, EngineError> {
        p.validate()?;
        let mut columns = Vec::new();
        let mut bounds = Vec::new();
        for b in &p.bounds {
            let plus = bounds.len();
            if b.nonneg {
                bounds.push(b.clone());
                columns.push((plus, None));
            } else {
                bounds.push(VarBounds::nonneg());
                bounds.push(VarBounds::nonneg());
                columns.push((plus, Some(plus + 1)));
            }
        }
        let split = |row: &[CrnExpr]| -> Vec<Coef> {
            let mut out = Vec::with_capacity(bounds.len());
            for (e, (_, minus)) in row.iter().zip(&columns) {
                out.push(Coef::new(e));
                if minus.is_some() {
                    out.push(Coef::new(&CrnExpr::neg(e.clone())));
                }
            }
            out
        };
        let objective = split(&p.objective);
        let mut rows: Vec<NormRow> = p
            .constraints
            .iter()
            .enumerate()
            .map(|(i, c)| NormRow {
                coeffs: split(&c.row),
                rel: c.rel,
                rhs: Coef::new(&c.rhs),
                origin: RowOrigin::Constraint(i),
            })
            .collect();
        for (j, b) in p.bounds.iter().enumerate() {
            if let (false, Some(u)) = (b.nonneg, &b.upper) {
                let mut coeffs = vec![Coef::exact(Rational::zero()); bounds.len()];
                let (plus, minus) = columns[j];
                coeffs[plus] = Coef::exact(Rational::one());
                coeffs[minus.expect("free variable is split")] = Coef::exact(-Rational::one());
                rows.push(NormRow {
                    coeffs,
                    rel: Relation::Le,
                    rhs: Coef::exact(u.clone()),
                    origin: RowOrigin::UpperBound(j),
                });
            }
        }
        Ok(Normalized { sense: p.sense, objective, rows, bounds, columns })
    }

    pub fn width(&self) -> usize {
        self.bounds.len()
    }

    /// Maps a plan in original coordinates to columns; `None` if a
    /// sign-restricted variable is negative.
    pub fn split_plan(&self, plan: &[Rational]) -> Option<Vec<Rational>> {
        let mut out = vec![Rational::zero(); self.width()];
        for (v, &(plus, minus)) in plan.iter().zip(&self.columns) {
            match minus {
                None if v.is_negative() => return None,
                None => out[plus] = v.clone(),
                Some(m) if v.is_negative() => out[m] = -v,
                Some(_) => out[plus] = v.clone(),
            }
        }
        Some(out)
    }

    pub fn join_plan(&self, cols: &[Rational]) -> Vec<Rational> {
        self.columns
            .iter()
            .map(|&(p, m)| match m {
                Some(m) => &cols[p] - &cols[m],
                None => cols[p].clone(),
            })
            .collect()
    }
}
