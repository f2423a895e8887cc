//! Fuel-bounded semi-decision procedures.
//!
//! Every procedure sweeps precision levels `t = 0..=fuel`, builds the OUTER
//! and INNER relaxations at each level and stops at the first level that
//! yields a sound answer. Answers come only from facts that stay true at
//! higher precision, so a verdict never changes once given.

use std::cmp::Ordering;
use std::fmt;
use std::time::{Duration, Instant};

use serde::{Serialize, Serializer};

use super::problem::{Clpp, Normalized, RowOrigin};
use super::relax::{outer_inner_relax, IntervalLp};
use super::EngineError;
use crate::numerics::{serde_rational, Fuel, Interval, Rational};
use crate::simplex::{solve_rational_lp, LpOutcome, Relation, Sense, VarBounds};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Feasibility {
    Feasible,
    Infeasible,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Boundedness {
    Bounded,
    Unbounded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Diagnosis {
    Infeasible,
    Unbounded,
}

/// Answer of any procedure, as stored in traces and reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Answer {
    Feasibility(Feasibility),
    Boundedness(Boundedness),
    Holds(bool),
    Diagnosis(Diagnosis),
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Answer::Feasibility(Feasibility::Feasible) => "feasible",
            Answer::Feasibility(Feasibility::Infeasible) => "infeasible",
            Answer::Boundedness(Boundedness::Bounded) => "bounded",
            Answer::Boundedness(Boundedness::Unbounded) => "unbounded",
            Answer::Holds(true) => "true",
            Answer::Holds(false) => "false",
            Answer::Diagnosis(Diagnosis::Infeasible) => "infeasible",
            Answer::Diagnosis(Diagnosis::Unbounded) => "unbounded",
        })
    }
}

/// Evidence attached to a decided verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// OUTER has no feasible point; the phase-1 optimum is positive.
    OuterInfeasible {
        #[serde(with = "serde_rational")]
        phase1_value: Rational,
    },
    /// A point of INNER, hence of the true region.
    InnerPlan {
        #[serde(with = "serde_rational::vec")]
        plan: Vec<Rational>,
    },
    /// OUTER is bounded with this optimum, which bounds the true objective.
    OuterOptimum {
        #[serde(with = "serde_rational")]
        value: Rational,
    },
    /// INNER point and a ray along which INNER's pessimistic objective
    /// grows without limit.
    InnerRay {
        #[serde(with = "serde_rational::vec")]
        point: Vec<Rational>,
        #[serde(with = "serde_rational::vec")]
        ray: Vec<Rational>,
    },
    BoundViolated { var: usize },
    /// The row's left side is enclosed in `lhs`, disjoint from what the
    /// relation allows against `rhs`.
    RowRefuted { row: usize, lhs: Interval, rhs: Interval },
    /// Every row holds robustly over the coefficient enclosures.
    RowsCertified,
    /// Plan objective lower end (in the gain direction) reaches the OUTER
    /// optimum.
    OptimalityCertified {
        #[serde(with = "serde_rational")]
        plan_value: Rational,
        #[serde(with = "serde_rational")]
        outer_value: Rational,
    },
    /// A truly feasible plan provably better than the one checked.
    BetterPlan {
        #[serde(with = "serde_rational::vec")]
        plan: Vec<Rational>,
        #[serde(with = "serde_rational")]
        value: Rational,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SemiVerdict<A> {
    Decided { answer: A, certificate: Certificate, fuel_used: Fuel },
    Unknown { fuel: Fuel },
}

impl<A> SemiVerdict<A> {
    pub fn answer(&self) -> Option<&A> {
        match self {
            SemiVerdict::Decided { answer, .. } => Some(answer),
            SemiVerdict::Unknown { .. } => None,
        }
    }

    pub fn is_decided(&self) -> bool {
        self.answer().is_some()
    }

    fn map<B>(self, f: impl FnOnce(A) -> B) -> SemiVerdict<B> {
        match self {
            SemiVerdict::Decided { answer, certificate, fuel_used } => {
                SemiVerdict::Decided { answer: f(answer), certificate, fuel_used }
            }
            SemiVerdict::Unknown { fuel } => SemiVerdict::Unknown { fuel },
        }
    }
}

/// Extended value used for objective bounds.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Bound {
    NegInf,
    Finite(Rational),
    PosInf,
}

impl Bound {
    fn negate(self) -> Bound {
        match self {
            Bound::NegInf => Bound::PosInf,
            Bound::Finite(q) => Bound::Finite(-q),
            Bound::PosInf => Bound::NegInf,
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::NegInf => f.write_str("-inf"),
            Bound::Finite(q) => write!(f, "{q}"),
            Bound::PosInf => f.write_str("+inf"),
        }
    }
}

impl Serialize for Bound {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Enclosure of the optimal value; `None` means no information yet. When the
/// region is empty the upper end (lower end for `min`) collapses to the
/// empty supremum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValueBounds {
    pub lower: Option<Bound>,
    pub upper: Option<Bound>,
    pub fuel: Fuel,
}

impl ValueBounds {
    pub fn contains(&self, v: &Rational) -> bool {
        let v = Bound::Finite(v.clone());
        self.lower.as_ref().is_none_or(|l| *l <= v) && self.upper.as_ref().is_none_or(|u| v <= *u)
    }

    /// `self` is at least as tight as `coarser`.
    pub fn nested_in(&self, coarser: &ValueBounds) -> bool {
        let lo_ok = match (&coarser.lower, &self.lower) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some(a), Some(b)) => a <= b,
        };
        let hi_ok = match (&coarser.upper, &self.upper) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some(a), Some(b)) => b <= a,
        };
        lo_ok && hi_ok
    }
}

/// Everything computed at one precision level.
pub(crate) struct Level {
    pub snap: IntervalLp,
    pub outer: LpOutcome,
    pub inner: Option<LpOutcome>,
}

/// A CLPP prepared for repeated evaluation at increasing precision.
pub struct Analyzer {
    norm: Normalized,
    bounds: Vec<VarBounds>,
}

/// A semi-decision query answered by a sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Query {
    Feasibility,
    Boundedness,
    PlanFeasible(Vec<Rational>),
    PlanOptimal(Vec<Rational>),
    Diagnose,
}

impl Query {
    pub fn name(&self) -> &'static str {
        match self {
            Query::Feasibility => "feasibility",
            Query::Boundedness => "boundedness",
            Query::PlanFeasible(_) => "plan_feasible",
            Query::PlanOptimal(_) => "plan_optimal",
            Query::Diagnose => "diagnose",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    pub level: u32,
    pub answer: Answer,
    pub certificate: Certificate,
}

/// Result of sweeping levels `0..=cap` once for several queries.
#[derive(Debug, Clone)]
pub struct Trace {
    pub cap: Fuel,
    /// First decision of each query, in query order.
    pub decisions: Vec<Option<Decision>>,
    /// Value bounds after each level `0..=cap`.
    pub bounds: Vec<ValueBounds>,
    /// Cumulative time after each level.
    pub elapsed: Vec<Duration>,
    /// OUTER optimal plan at each level, when OUTER has an optimum.
    pub outer_plans: Vec<Option<Vec<Rational>>>,
}

impl Trace {
    /// The verdict `query` would return when run alone with `fuel <= cap`.
    pub fn verdict_at(&self, query: usize, fuel: Fuel) -> SemiVerdict<Answer> {
        assert!(fuel <= self.cap, "fuel beyond the traced cap");
        match &self.decisions[query] {
            Some(d) if d.level <= fuel.0 => SemiVerdict::Decided {
                answer: d.answer,
                certificate: d.certificate.clone(),
                fuel_used: Fuel(d.level),
            },
            _ => SemiVerdict::Unknown { fuel },
        }
    }

    pub fn bounds_at(&self, fuel: Fuel) -> &ValueBounds {
        &self.bounds[fuel.0 as usize]
    }
}

fn gain(sense: Sense, v: &Rational) -> Rational {
    match sense {
        Sense::Max => v.clone(),
        Sense::Min => -v,
    }
}

fn gain_interval(sense: Sense, i: Interval) -> Interval {
    match sense {
        Sense::Max => i,
        Sense::Min => i.neg(),
    }
}

fn dot_interval(coeffs: &[Interval], x: &[Rational]) -> Interval {
    coeffs.iter().zip(x).fold(Interval::zero(), |acc, (c, v)| acc.add(&c.scale(v)))
}

enum PlanStatus {
    Refuted(Certificate),
    Certified,
    Open,
}

impl Analyzer {
    pub fn new(p: &Clpp) -> Result<Self, EngineError> {
        Ok(Analyzer { norm: Normalized::new(p)?, bounds: p.bounds.clone() })
    }

    pub fn sense(&self) -> Sense {
        self.norm.sense
    }

    pub fn vars(&self) -> usize {
        self.bounds.len()
    }

    pub(crate) fn level(&self, t: u64) -> Level {
        let snap = self.norm.snapshot(t);
        let relax = outer_inner_relax(&snap).expect("normalized columns are sign-restricted");
        let outer = solve_rational_lp(&relax.outer).expect("relaxation is well-formed");
        let inner = relax.inner.as_ref().map(|lp| solve_rational_lp(lp).expect("relaxation is well-formed"));
        Level { snap, outer, inner }
    }

    fn check_plan_len(&self, plan: &[Rational]) -> Result<(), EngineError> {
        if plan.len() != self.vars() {
            return Err(EngineError::PlanLength { expected: self.vars(), got: plan.len() });
        }
        Ok(())
    }

    fn plan_status(&self, level: &Level, plan: &[Rational]) -> PlanStatus {
        if let Some(var) = self.bounds.iter().zip(plan).position(|(b, v)| !b.admits(v)) {
            return PlanStatus::Refuted(Certificate::BoundViolated { var });
        }
        let cols = self.norm.split_plan(plan).expect("bounds admit the plan");
        let mut certified = true;
        for (row, norm_row) in level.snap.rows.iter().zip(&self.norm.rows) {
            let lhs = dot_interval(&row.coeffs, &cols);
            let rhs = &row.rhs;
            let (refuted, holds) = match row.rel {
                Relation::Le => (rhs.strictly_below(&lhs), lhs.hi() <= rhs.lo()),
                Relation::Ge => (lhs.strictly_below(rhs), lhs.lo() >= rhs.hi()),
                Relation::Eq => (
                    lhs.strictly_below(rhs) || rhs.strictly_below(&lhs),
                    lhs.is_point() && rhs.is_point() && lhs.lo() == rhs.lo(),
                ),
            };
            if refuted {
                return PlanStatus::Refuted(match norm_row.origin {
                    RowOrigin::Constraint(i) => Certificate::RowRefuted { row: i, lhs, rhs: rhs.clone() },
                    RowOrigin::UpperBound(var) => Certificate::BoundViolated { var },
                });
            }
            certified &= holds;
        }
        if certified {
            PlanStatus::Certified
        } else {
            PlanStatus::Open
        }
    }

    /// Sweeps levels `0..=cap` once, answering every query and tracking value
    /// bounds. With `early_exit`, stops as soon as every query is decided.
    pub fn trace(&self, queries: &[Query], cap: Fuel, early_exit: bool) -> Result<Trace, EngineError> {
        for q in queries {
            if let Query::PlanFeasible(p) | Query::PlanOptimal(p) = q {
                self.check_plan_len(p)?;
            }
        }
        let mut sweeps: Vec<Box<dyn Sweep + '_>> = queries
            .iter()
            .map(|q| -> Box<dyn Sweep + '_> {
                match q {
                    Query::Feasibility => Box::new(FeasibilitySweep { an: self }),
                    Query::Boundedness => Box::new(BoundednessSweep { an: self }),
                    Query::PlanFeasible(p) => Box::new(PlanFeasibleSweep { an: self, plan: p.clone() }),
                    Query::PlanOptimal(p) => Box::new(PlanOptimalSweep::new(self, p.clone())),
                    Query::Diagnose => Box::new(DiagnoseSweep { an: self }),
                }
            })
            .collect();
        let mut decisions: Vec<Option<Decision>> = vec![None; queries.len()];
        let mut tracker = BoundsTracker::default();
        let mut bounds = Vec::new();
        let mut elapsed = Vec::new();
        let mut outer_plans = Vec::new();
        let start = Instant::now();
        for t in 0..=cap.0 {
            let level = self.level(t as u64);
            for (sweep, slot) in sweeps.iter_mut().zip(decisions.iter_mut()) {
                if slot.is_none() {
                    if let Some((answer, certificate)) = sweep.observe(&level) {
                        *slot = Some(Decision { level: t, answer, certificate });
                    }
                }
            }
            tracker.update(self, &level);
            bounds.push(tracker.value_bounds(self.sense(), Fuel(t)));
            outer_plans.push(match &level.outer {
                LpOutcome::Optimal { plan, .. } => Some(self.norm.join_plan(plan)),
                _ => None,
            });
            elapsed.push(start.elapsed());
            if early_exit && decisions.iter().all(Option::is_some) {
                break;
            }
        }
        Ok(Trace { cap, decisions, bounds, elapsed, outer_plans })
    }

    fn run(&self, query: Query, fuel: Fuel) -> Result<SemiVerdict<Answer>, EngineError> {
        let trace = self.trace(std::slice::from_ref(&query), fuel, true)?;
        Ok(trace.verdict_at(0, fuel))
    }

    pub fn value_bounds(&self, fuel: Fuel) -> ValueBounds {
        let trace = self.trace(&[], fuel, false).expect("no plans to validate");
        trace.bounds_at(fuel).clone()
    }
}

trait Sweep {
    fn observe(&mut self, level: &Level) -> Option<(Answer, Certificate)>;
}

struct FeasibilitySweep<'a> {
    an: &'a Analyzer,
}

impl Sweep for FeasibilitySweep<'_> {
    fn observe(&mut self, level: &Level) -> Option<(Answer, Certificate)> {
        if let LpOutcome::Infeasible { phase1_value } = &level.outer {
            return Some((
                Answer::Feasibility(Feasibility::Infeasible),
                Certificate::OuterInfeasible { phase1_value: phase1_value.clone() },
            ));
        }
        let point = level.inner.as_ref()?.feasible_point()?;
        Some((
            Answer::Feasibility(Feasibility::Feasible),
            Certificate::InnerPlan { plan: self.an.norm.join_plan(point) },
        ))
    }
}

struct BoundednessSweep<'a> {
    an: &'a Analyzer,
}

impl Sweep for BoundednessSweep<'_> {
    fn observe(&mut self, level: &Level) -> Option<(Answer, Certificate)> {
        let bounded = Answer::Boundedness(Boundedness::Bounded);
        match &level.outer {
            LpOutcome::Infeasible { phase1_value } => {
                Some((bounded, Certificate::OuterInfeasible { phase1_value: phase1_value.clone() }))
            }
            LpOutcome::Optimal { value, .. } => Some((bounded, Certificate::OuterOptimum { value: value.clone() })),
            LpOutcome::Unbounded { .. } => match level.inner.as_ref()? {
                LpOutcome::Unbounded { point, ray } => Some((
                    Answer::Boundedness(Boundedness::Unbounded),
                    Certificate::InnerRay {
                        point: self.an.norm.join_plan(point),
                        ray: self.an.norm.join_plan(ray),
                    },
                )),
                _ => None,
            },
        }
    }
}

struct DiagnoseSweep<'a> {
    an: &'a Analyzer,
}

impl Sweep for DiagnoseSweep<'_> {
    fn observe(&mut self, level: &Level) -> Option<(Answer, Certificate)> {
        if let LpOutcome::Infeasible { phase1_value } = &level.outer {
            return Some((
                Answer::Diagnosis(Diagnosis::Infeasible),
                Certificate::OuterInfeasible { phase1_value: phase1_value.clone() },
            ));
        }
        match level.inner.as_ref()? {
            LpOutcome::Unbounded { point, ray } => Some((
                Answer::Diagnosis(Diagnosis::Unbounded),
                Certificate::InnerRay { point: self.an.norm.join_plan(point), ray: self.an.norm.join_plan(ray) },
            )),
            _ => None,
        }
    }
}

struct PlanFeasibleSweep<'a> {
    an: &'a Analyzer,
    plan: Vec<Rational>,
}

impl Sweep for PlanFeasibleSweep<'_> {
    fn observe(&mut self, level: &Level) -> Option<(Answer, Certificate)> {
        match self.an.plan_status(level, &self.plan) {
            PlanStatus::Refuted(c) => Some((Answer::Holds(false), c)),
            PlanStatus::Certified => Some((Answer::Holds(true), Certificate::RowsCertified)),
            PlanStatus::Open => None,
        }
    }
}

/// Optimality needs facts from possibly different levels (feasibility may be
/// certified early, the OUTER optimum tightens later), so the best bounds
/// seen so far are kept.
struct PlanOptimalSweep<'a> {
    an: &'a Analyzer,
    plan: Vec<Rational>,
    feasible: bool,
    plan_low: Option<Rational>,
    plan_high: Option<Rational>,
    optimistic: Option<Bound>,
    best_inner: Option<(Rational, Vec<Rational>)>,
}

impl<'a> PlanOptimalSweep<'a> {
    fn new(an: &'a Analyzer, plan: Vec<Rational>) -> Self {
        PlanOptimalSweep { an, plan, feasible: false, plan_low: None, plan_high: None, optimistic: None, best_inner: None }
    }
}

impl Sweep for PlanOptimalSweep<'_> {
    fn observe(&mut self, level: &Level) -> Option<(Answer, Certificate)> {
        let sense = self.an.sense();
        match self.an.plan_status(level, &self.plan) {
            PlanStatus::Refuted(c) => return Some((Answer::Holds(false), c)),
            PlanStatus::Certified => self.feasible = true,
            PlanStatus::Open => {}
        }
        let outer_gain = match &level.outer {
            LpOutcome::Infeasible { phase1_value } => {
                return Some((
                    Answer::Holds(false),
                    Certificate::OuterInfeasible { phase1_value: phase1_value.clone() },
                ))
            }
            LpOutcome::Unbounded { .. } => Bound::PosInf,
            LpOutcome::Optimal { value, .. } => Bound::Finite(gain(sense, value)),
        };
        if self.optimistic.as_ref().is_none_or(|o| outer_gain < *o) {
            self.optimistic = Some(outer_gain);
        }
        match &level.inner {
            Some(LpOutcome::Unbounded { point, ray }) => {
                return Some((
                    Answer::Holds(false),
                    Certificate::InnerRay { point: self.an.norm.join_plan(point), ray: self.an.norm.join_plan(ray) },
                ))
            }
            Some(LpOutcome::Optimal { plan, value, .. }) => {
                let g = gain(sense, value);
                if self.best_inner.as_ref().is_none_or(|(b, _)| g > *b) {
                    self.best_inner = Some((g, self.an.norm.join_plan(plan)));
                }
            }
            _ => {}
        }

        let cols = self.an.norm.split_plan(&self.plan).expect("bounds admit the plan");
        let obj = gain_interval(sense, dot_interval(&level.snap.objective, &cols));
        if self.plan_low.as_ref().is_none_or(|l| obj.lo() > l) {
            self.plan_low = Some(obj.lo().clone());
        }
        if self.plan_high.as_ref().is_none_or(|h| obj.hi() < h) {
            self.plan_high = Some(obj.hi().clone());
        }
        let (low, high) = (self.plan_low.as_ref()?, self.plan_high.as_ref()?);

        if let Some((g, plan)) = &self.best_inner {
            if g > high {
                return Some((
                    Answer::Holds(false),
                    Certificate::BetterPlan { plan: plan.clone(), value: gain(sense, g) },
                ));
            }
        }
        if let (true, Some(Bound::Finite(o))) = (self.feasible, &self.optimistic) {
            if low >= o {
                return Some((
                    Answer::Holds(true),
                    Certificate::OptimalityCertified { plan_value: gain(sense, low), outer_value: gain(sense, o) },
                ));
            }
        }
        None
    }
}

/// Running optimistic (OUTER) and pessimistic (INNER) bounds in the gain
/// direction, i.e. on `max` of the objective or `max` of its negation.
#[derive(Default)]
struct BoundsTracker {
    optimistic: Option<Bound>,
    pessimistic: Option<Bound>,
}

impl BoundsTracker {
    fn update(&mut self, an: &Analyzer, level: &Level) {
        let sense = an.sense();
        let opt = match &level.outer {
            LpOutcome::Infeasible { .. } => Bound::NegInf,
            LpOutcome::Unbounded { .. } => Bound::PosInf,
            LpOutcome::Optimal { value, .. } => Bound::Finite(gain(sense, value)),
        };
        if self.optimistic.as_ref().is_none_or(|o| opt.cmp(o) == Ordering::Less) {
            self.optimistic = Some(opt);
        }
        let pess = match &level.inner {
            Some(LpOutcome::Unbounded { .. }) => Some(Bound::PosInf),
            Some(LpOutcome::Optimal { value, .. }) => Some(Bound::Finite(gain(sense, value))),
            _ => None,
        };
        if let Some(p) = pess {
            if self.pessimistic.as_ref().is_none_or(|q| p > *q) {
                self.pessimistic = Some(p);
            }
        }
    }

    fn value_bounds(&self, sense: Sense, fuel: Fuel) -> ValueBounds {
        match sense {
            Sense::Max => ValueBounds { lower: self.pessimistic.clone(), upper: self.optimistic.clone(), fuel },
            Sense::Min => ValueBounds {
                lower: self.optimistic.clone().map(Bound::negate),
                upper: self.pessimistic.clone().map(Bound::negate),
                fuel,
            },
        }
    }
}

fn unwrap_answer<A>(v: SemiVerdict<Answer>, f: impl FnOnce(Answer) -> A) -> SemiVerdict<A> {
    v.map(f)
}

/// Decides emptiness of the allowable region when a finite precision suffices.
pub fn decide_feasibility(p: &Clpp, fuel: Fuel) -> Result<SemiVerdict<Feasibility>, EngineError> {
    let v = Analyzer::new(p)?.run(Query::Feasibility, fuel)?;
    Ok(unwrap_answer(v, |a| match a {
        Answer::Feasibility(f) => f,
        _ => unreachable!(),
    }))
}

/// Bounded covers an empty region (the objective is then vacuously bounded);
/// the certificate tells the two cases apart.
pub fn decide_boundedness(p: &Clpp, fuel: Fuel) -> Result<SemiVerdict<Boundedness>, EngineError> {
    let v = Analyzer::new(p)?.run(Query::Boundedness, fuel)?;
    Ok(unwrap_answer(v, |a| match a {
        Answer::Boundedness(b) => b,
        _ => unreachable!(),
    }))
}

pub fn check_plan_feasible(p: &Clpp, plan: &[Rational], fuel: Fuel) -> Result<SemiVerdict<bool>, EngineError> {
    let v = Analyzer::new(p)?.run(Query::PlanFeasible(plan.to_vec()), fuel)?;
    Ok(unwrap_answer(v, |a| match a {
        Answer::Holds(b) => b,
        _ => unreachable!(),
    }))
}

/// `true` only for a plan certified feasible whose objective provably reaches
/// the OUTER optimum; `false` for an infeasible plan or one beaten by a
/// certified INNER plan.
pub fn check_plan_optimal(p: &Clpp, plan: &[Rational], fuel: Fuel) -> Result<SemiVerdict<bool>, EngineError> {
    let v = Analyzer::new(p)?.run(Query::PlanOptimal(plan.to_vec()), fuel)?;
    Ok(unwrap_answer(v, |a| match a {
        Answer::Holds(b) => b,
        _ => unreachable!(),
    }))
}

pub fn value_bounds(p: &Clpp, fuel: Fuel) -> Result<ValueBounds, EngineError> {
    Ok(Analyzer::new(p)?.value_bounds(fuel))
}

/// For a problem known to be unsolvable, tells an empty region from an
/// unbounded objective when the relaxations separate them.
pub fn diagnose_unsolvable(p: &Clpp, fuel: Fuel) -> Result<SemiVerdict<Diagnosis>, EngineError> {
    let v = Analyzer::new(p)?.run(Query::Diagnose, fuel)?;
    Ok(unwrap_answer(v, |a| match a {
        Answer::Diagnosis(d) => d,
        _ => unreachable!(),
    }))
}
