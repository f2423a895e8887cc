//! Runs every family over a set of machines and cross-checks each decided
//! verdict against the exact LP at the true parameter value.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::path::Path;

use clp_core::engine::{
    family, optimal_value_crn_h, Analyzer, Answer, Bound, Boundedness, Certificate, Clpp, Diagnosis,
    Feasibility, FamilyKind, MachineRef, Query, SemiVerdict, Trace, ValueBounds,
};
use clp_core::machines::{specker_limit, HaltTruth, StepMachine};
use clp_core::numerics::{coarse_locate, int, located_part, pow2_neg, Crn, Fuel, Interval, Rational};
use clp_core::simplex::{check_feasible_rational, solve_rational_lp, LpOutcome, RatLp, Sense};
use num_traits::Signed;
use rayon::prelude::*;
use serde::Serialize;

use crate::syntax::load_machine_file;

pub const DEFAULT_PROBE: u64 = 1 << 20;

/// Precision of the reported optimal value of `H`.
pub const H_VALUE_BITS: u64 = 16;

#[derive(Debug, Clone)]
pub struct MachineEntry {
    pub name: String,
    pub machine: Result<StepMachine, String>,
}

/// Every `*.json` file in `dir`, named by file stem, in name order. Files that
/// fail to load are kept as errors so the run can report them.
pub fn load_machine_dir(dir: &Path) -> std::io::Result<Vec<MachineEntry>> {
    let mut out = Vec::new();
    for entry in std::fs::read_dir(dir)? {
        let path = entry?.path();
        if path.extension().is_some_and(|e| e == "json") {
            let name = path.file_stem().unwrap_or_default().to_string_lossy().into_owned();
            out.push(MachineEntry { name, machine: load_machine_file(&path).map_err(|e| e.to_string()) });
        }
    }
    out.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct GalleryConfig {
    pub n_max: u64,
    pub fuel: Fuel,
    /// Step budget for establishing halting ground truth.
    pub probe: u64,
    pub families: Vec<FamilyKind>,
}

impl GalleryConfig {
    pub fn new(n_max: u64, fuel: Fuel) -> Self {
        GalleryConfig { n_max, fuel, probe: DEFAULT_PROBE, families: FamilyKind::ALL.to_vec() }
    }
}

/// Doubling schedule `1, 2, 4, ...` ending at `cap`; `[0]` for a zero cap.
pub fn fuel_schedule(cap: Fuel) -> Vec<Fuel> {
    if cap.0 == 0 {
        return vec![Fuel(0)];
    }
    let mut out: Vec<Fuel> = std::iter::successors(Some(1u32), |f| f.checked_mul(2))
        .take_while(|&f| f < cap.0)
        .map(Fuel)
        .collect();
    out.push(cap);
    out
}

/// Result of coarse-locating a candidate plan on the segment `x + y = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Locate {
    /// x-coordinate of the OUTER optimal plan at this fuel.
    #[serde(serialize_with = "ser_display")]
    pub point: Rational,
    pub bit: u8,
    pub part: Interval,
}

fn ser_display<S: serde::Serializer, T: std::fmt::Display>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Record {
    pub family: String,
    pub machine: String,
    pub n: u64,
    pub fuel: u32,
    pub kind: String,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds: Option<ValueBounds>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value_approx: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub locate: Option<Locate>,
    /// Expected answer from the exact LP at the true parameters.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub wall_ms: u64,
}

impl Record {
    fn new(instance: &Instance, fuel: Fuel, kind: impl Into<String>, verdict: impl Into<String>) -> Self {
        Record::bare(instance.kind.to_string(), instance.machine.name.clone(), instance.n, fuel, kind, verdict)
    }

    fn bare(
        family: String,
        machine: String,
        n: u64,
        fuel: Fuel,
        kind: impl Into<String>,
        verdict: impl Into<String>,
    ) -> Self {
        Record {
            family,
            machine,
            n,
            fuel: fuel.0,
            kind: kind.into(),
            verdict: verdict.into(),
            certificate: None,
            bounds: None,
            value_approx: None,
            locate: None,
            oracle: None,
            note: None,
            wall_ms: 0,
        }
    }

    fn sort_key(&self) -> (&str, &str, u64, u32, &str) {
        (&self.family, &self.machine, self.n, self.fuel, &self.kind)
    }
}

#[derive(Debug, Clone, Default)]
pub struct GalleryReport {
    pub records: Vec<Record>,
    /// Decided verdicts contradicting ground truth, and other broken
    /// guarantees. Must stay empty.
    pub violations: Vec<String>,
}

impl GalleryReport {
    pub fn to_json_lines(&self) -> String {
        self.records.iter().map(|r| serde_json::to_string(r).expect("record serializes") + "\n").collect()
    }
}

struct Instance {
    kind: FamilyKind,
    machine: MachineRef,
    n: u64,
}

/// The queries run for each family, with a label used as the record kind.
pub fn family_queries(kind: FamilyKind) -> Vec<(String, Query)> {
    let one = || vec![int(1)];
    let zero = || vec![int(0)];
    let mut qs = vec![("feasibility".to_string(), Query::Feasibility), ("boundedness".to_string(), Query::Boundedness)];
    let plan = |label: &str, q: Query| (label.to_string(), q);
    match kind {
        FamilyKind::P => qs.extend([
            plan("plan_feasible[x=0]", Query::PlanFeasible(zero())),
            plan("plan_feasible[x=1]", Query::PlanFeasible(one())),
            plan("plan_optimal[x=0]", Query::PlanOptimal(zero())),
            plan("plan_optimal[x=1]", Query::PlanOptimal(one())),
        ]),
        FamilyKind::H => {}
        FamilyKind::Q => qs.push(plan("plan_optimal[x=0]", Query::PlanOptimal(zero()))),
        FamilyKind::R => qs.push(plan("plan_feasible[x=1]", Query::PlanFeasible(one()))),
        FamilyKind::T => qs.push(plan("diagnose", Query::Diagnose)),
        FamilyKind::D => qs.extend([
            plan("plan_feasible[x=0]", Query::PlanFeasible(zero())),
            plan("plan_feasible[x=1]", Query::PlanFeasible(one())),
        ]),
    }
    qs
}

/// Queries that must stay undecided on a machine that never halts: each
/// would otherwise decide halting.
pub fn designated_unknown(kind: FamilyKind, label: &str) -> bool {
    matches!(
        (kind, label),
        (FamilyKind::P, "plan_feasible[x=1]")
            | (FamilyKind::P, "plan_optimal[x=0]")
            | (FamilyKind::Q, "boundedness")
            | (FamilyKind::R, "feasibility")
            | (FamilyKind::T, "diagnose")
    )
}

/// Expected answer of `query` on the exact LP, if the query is meaningful.
pub fn oracle_answer(lp: &RatLp, outcome: &LpOutcome, query: &Query) -> Option<Answer> {
    Some(match query {
        Query::Feasibility => Answer::Feasibility(if outcome.is_infeasible() {
            Feasibility::Infeasible
        } else {
            Feasibility::Feasible
        }),
        Query::Boundedness => Answer::Boundedness(match outcome {
            LpOutcome::Unbounded { .. } => Boundedness::Unbounded,
            _ => Boundedness::Bounded,
        }),
        Query::PlanFeasible(p) => Answer::Holds(check_feasible_rational(lp, p)),
        Query::PlanOptimal(p) => Answer::Holds(
            check_feasible_rational(lp, p)
                && matches!(outcome, LpOutcome::Optimal { value, .. } if *value == lp.value_of(p)),
        ),
        Query::Diagnose => Answer::Diagnosis(match outcome {
            LpOutcome::Infeasible { .. } => Diagnosis::Infeasible,
            LpOutcome::Unbounded { .. } => Diagnosis::Unbounded,
            LpOutcome::Optimal { .. } => return None,
        }),
    })
}

/// Optimal value as an extended number: the supremum (infimum for `min`) of
/// the objective over the region, so an empty region gives `-inf` (`+inf`).
pub fn oracle_value(sense: Sense, outcome: &LpOutcome) -> Bound {
    match (outcome, sense) {
        (LpOutcome::Optimal { value, .. }, _) => Bound::Finite(value.clone()),
        (LpOutcome::Infeasible { .. }, Sense::Max) | (LpOutcome::Unbounded { .. }, Sense::Min) => Bound::NegInf,
        (LpOutcome::Infeasible { .. }, Sense::Min) | (LpOutcome::Unbounded { .. }, Sense::Max) => Bound::PosInf,
    }
}

pub fn bounds_contain(b: &ValueBounds, v: &Bound) -> bool {
    b.lower.as_ref().is_none_or(|l| l <= v) && b.upper.as_ref().is_none_or(|u| v <= u)
}

fn verdict_label(v: &SemiVerdict<Answer>) -> String {
    match v {
        SemiVerdict::Decided { answer, .. } => answer.to_string(),
        SemiVerdict::Unknown { .. } => "unknown".into(),
    }
}

struct GroundTruth {
    lp: RatLp,
    outcome: LpOutcome,
    s: Rational,
}

fn ground_truth(p: &Clpp, m: &MachineRef, n: u64, probe: u64) -> Option<GroundTruth> {
    let truth = m.machine.ground_truth(n, probe)?;
    let lp = p.ground_truth_lp(&|mr, k| mr.machine.ground_truth(k, probe))?;
    let outcome = solve_rational_lp(&lp).expect("ground-truth LP is well-formed");
    Some(GroundTruth { lp, outcome, s: specker_limit(&truth) })
}

fn locate_on_unit(point: Option<Rational>) -> Option<Locate> {
    let e = Interval::new(int(0), int(1)).expect("unit interval");
    let point = point?;
    let bit = coarse_locate(&Crn::from_rational(point.clone()), &e).expect("proper interval");
    Some(Locate { part: located_part(&e, bit), point, bit })
}

fn run_instance(inst: &Instance, cfg: &GalleryConfig) -> (Vec<Record>, Vec<String>) {
    let p = family(inst.kind, &inst.machine, inst.n);
    let analyzer = Analyzer::new(&p).expect("family problems are well-formed");
    let labeled = family_queries(inst.kind);
    let queries: Vec<Query> = labeled.iter().map(|(_, q)| q.clone()).collect();
    let trace: Trace = analyzer.trace(&queries, cfg.fuel, false).expect("plans match the family");
    let truth = ground_truth(&p, &inst.machine, inst.n, cfg.probe);
    let diverges = matches!(inst.machine.machine.ground_truth(inst.n, cfg.probe), Some(HaltTruth::Diverges));
    let tag = format!("{} {} n={}", inst.kind, inst.machine.name, inst.n);
    let mut records = Vec::new();
    let mut violations = Vec::new();

    let h_value = (inst.kind == FamilyKind::H).then(|| {
        let v = optimal_value_crn_h(&inst.machine, inst.n).approx(&pow2_neg(H_VALUE_BITS));
        if let Some(gt) = &truth {
            let expected = int(1) + gt.s.abs();
            if (&v - &expected).abs() > pow2_neg(H_VALUE_BITS) {
                violations.push(format!("{tag}: optimal value approx {v} is not within 2^-{H_VALUE_BITS} of {expected}"));
            }
        }
        v
    });

    for fuel in fuel_schedule(cfg.fuel) {
        let wall_ms = trace.elapsed[fuel.0 as usize].as_millis() as u64;
        for (qi, (label, query)) in labeled.iter().enumerate() {
            let verdict = trace.verdict_at(qi, fuel);
            let mut r = Record::new(inst, fuel, label.clone(), verdict_label(&verdict));
            r.wall_ms = wall_ms;
            if inst.kind == FamilyKind::T && label == "diagnose" {
                r.note = Some("region is nonempty exactly when s_n = 0".into());
            }
            let expected = truth.as_ref().and_then(|gt| oracle_answer(&gt.lp, &gt.outcome, query));
            r.oracle = match (&truth, &expected) {
                (_, Some(a)) => Some(a.to_string()),
                (Some(_), None) => Some("solvable".into()),
                (None, _) => None,
            };
            if let SemiVerdict::Decided { answer, certificate, .. } = verdict {
                if let Some(e) = expected {
                    if e != answer {
                        violations.push(format!("{tag} fuel {}: {label} decided {answer}, truth is {e}", fuel.0));
                    }
                }
                if diverges && designated_unknown(inst.kind, label) {
                    violations.push(format!("{tag} fuel {}: {label} decided on a machine that never halts", fuel.0));
                }
                r.certificate = Some(certificate);
            }
            records.push(r);
        }

        let bounds = trace.bounds_at(fuel).clone();
        let mut r = Record::new(inst, fuel, "value_bounds", "bounds");
        r.wall_ms = wall_ms;
        if let Some(gt) = &truth {
            let v = oracle_value(p.sense, &gt.outcome);
            if !bounds_contain(&bounds, &v) {
                violations.push(format!("{tag} fuel {}: value {v} outside bounds {bounds:?}", fuel.0));
            }
            r.oracle = Some(v.to_string());
        }
        r.bounds = Some(bounds);
        if let Some(v) = &h_value {
            r.value_approx = Some(v.to_string());
            let outer_x = trace.outer_plans[fuel.0 as usize].as_ref().map(|p| p[0].clone());
            r.locate = locate_on_unit(outer_x);
            if let Some(l) = &r.locate {
                if !l.part.contains(&l.point) {
                    violations.push(format!("{tag} fuel {}: located point {} not in {}", fuel.0, l.point, l.part));
                }
            }
        }
        records.push(r);
    }
    (records, violations)
}

/// Runs the whole gallery. Machines that failed to load yield one error
/// record each.
pub fn run_gallery(machines: &[MachineEntry], cfg: &GalleryConfig) -> GalleryReport {
    let mut records = Vec::new();
    let mut instances = Vec::new();
    for entry in machines {
        match &entry.machine {
            Err(e) => {
                let mut r = Record::bare(String::new(), entry.name.clone(), 0, Fuel(0), "load", "error");
                r.note = Some(e.clone());
                records.push(r);
            }
            Ok(m) => {
                let mref = MachineRef::new(&entry.name, m.clone());
                for &kind in &cfg.families {
                    for n in 0..=cfg.n_max {
                        instances.push(Instance { kind, machine: mref.clone(), n });
                    }
                }
            }
        }
    }
    let results: Vec<(Vec<Record>, Vec<String>)> = instances.par_iter().map(|i| run_instance(i, cfg)).collect();
    let mut violations = Vec::new();
    for (r, v) in results {
        records.extend(r);
        violations.extend(v);
    }
    records.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    violations.extend(check_monotone(&records));
    violations.sort();
    GalleryReport { records, violations }
}

/// Fuel monotonicity over a sorted report: per instance and kind, a decided
/// verdict stays decided with the same answer, and bounds only tighten.
pub fn check_monotone(records: &[Record]) -> Vec<String> {
    let mut last: BTreeMap<(&str, &str, u64, &str), &Record> = BTreeMap::new();
    let mut out = Vec::new();
    let mut sorted: Vec<&Record> = records.iter().collect();
    sorted.sort_by(|a, b| (&a.family, &a.machine, a.n, &a.kind, a.fuel).cmp(&(&b.family, &b.machine, b.n, &b.kind, b.fuel)));
    for r in sorted {
        let key = (r.family.as_str(), r.machine.as_str(), r.n, r.kind.as_str());
        if let Some(prev) = last.get(&key) {
            let tag = format!("{} {} n={} {} fuel {} -> {}", r.family, r.machine, r.n, r.kind, prev.fuel, r.fuel);
            if prev.verdict != "unknown" && prev.verdict != r.verdict {
                out.push(format!("{tag}: verdict {} became {}", prev.verdict, r.verdict));
            }
            if let (Some(a), Some(b)) = (&prev.bounds, &r.bounds) {
                if !b.nested_in(a) {
                    out.push(format!("{tag}: bounds widened"));
                }
            }
            if prev.fuel.cmp(&r.fuel) != Ordering::Less {
                out.push(format!("{tag}: fuel not increasing"));
            }
        }
        last.insert(key, r);
    }
    out
}
