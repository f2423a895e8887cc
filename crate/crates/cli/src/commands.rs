use std::io::Write;
use std::path::Path;

use clp_core::engine::{eval_expr, Analyzer, Query, SemiVerdict};
use clp_core::numerics::{int, parse_rational, to_decimal, Fuel, Rational};
use clp_core::simplex::solve_rational_lp;
use num_traits::{Signed, Zero};
use serde_json::json;
use thiserror::Error;

use crate::gallery::{load_machine_dir, run_gallery, GalleryConfig};
use crate::syntax::{parse_expr, parse_plan, parse_problem, Resolver};

#[derive(Debug, Error)]
pub enum CmdError {
    /// Bad input: exit code 1.
    #[error("{0}")]
    Usage(String),
    /// A guarantee was broken: exit code 2.
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl CmdError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CmdError::Usage(_) => 1,
            CmdError::Invariant(_) => 2,
        }
    }
}

fn usage(e: impl ToString) -> CmdError {
    CmdError::Usage(e.to_string())
}

fn io(e: std::io::Error) -> CmdError {
    CmdError::Usage(format!("write failed: {e}"))
}

fn load_problem(path: &Path, machines: Option<&Path>) -> Result<clp_core::engine::Clpp, CmdError> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let resolver = Resolver {
        base_dir: path.parent().map(Path::to_path_buf),
        machines_dir: machines.map(Path::to_path_buf),
    };
    parse_problem(&text, &resolver).map_err(|e| usage(format!("{}:{e}", path.display())))
}

/// Solves a machine-free problem exactly.
pub fn solve_rational(path: &Path, out: &mut dyn Write) -> Result<(), CmdError> {
    let p = load_problem(path, None)?;
    let lp = p
        .to_rat_lp()
        .ok_or_else(|| usage("problem has machine-dependent coefficients; use `analyze`"))?;
    let outcome = solve_rational_lp(&lp).map_err(usage)?;
    let line = json!({ "vars": p.vars, "result": outcome });
    writeln!(out, "{line}").map_err(io)
}

/// Runs every semi-decider on a problem at one fuel and prints one JSON line
/// per query, then the value bounds.
pub fn analyze(path: &Path, fuel: Fuel, plan: Option<&str>, machines: Option<&Path>, out: &mut dyn Write) -> Result<(), CmdError> {
    let p = load_problem(path, machines)?;
    let mut queries = vec![Query::Feasibility, Query::Boundedness, Query::Diagnose];
    if let Some(text) = plan {
        let plan = parse_plan(text, &p.vars).map_err(usage)?;
        queries.push(Query::PlanFeasible(plan.clone()));
        queries.push(Query::PlanOptimal(plan));
    }
    let analyzer = Analyzer::new(&p).map_err(usage)?;
    let trace = analyzer.trace(&queries, fuel, false).map_err(usage)?;
    for (i, q) in queries.iter().enumerate() {
        let line = match trace.verdict_at(i, fuel) {
            SemiVerdict::Decided { answer, certificate, fuel_used } => json!({
                "query": q.name(),
                "verdict": answer.to_string(),
                "fuel_used": fuel_used,
                "certificate": certificate,
            }),
            SemiVerdict::Unknown { fuel } => json!({ "query": q.name(), "verdict": "unknown", "fuel": fuel }),
        };
        writeln!(out, "{line}").map_err(io)?;
    }
    let line = json!({ "query": "value_bounds", "vars": p.vars, "bounds": trace.bounds_at(fuel) });
    writeln!(out, "{line}").map_err(io)
}

/// Writes the gallery report as JSON Lines. Violations are listed on `err`
/// and turn into an invariant error after the report is complete.
pub fn gallery(machines: &Path, n_max: u64, fuel: Fuel, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CmdError> {
    let entries = load_machine_dir(machines).map_err(|e| usage(format!("{}: {e}", machines.display())))?;
    let report = run_gallery(&entries, &GalleryConfig::new(n_max, fuel));
    out.write_all(report.to_json_lines().as_bytes()).map_err(io)?;
    for r in report.records.iter().filter(|r| r.verdict == "error") {
        writeln!(err, "machine {}: {}", r.machine, r.note.as_deref().unwrap_or("")).map_err(io)?;
    }
    for v in &report.violations {
        writeln!(err, "{v}").map_err(io)?;
    }
    match report.violations.len() {
        0 => Ok(()),
        k => Err(CmdError::Invariant(format!("{k} gallery checks failed"))),
    }
}

/// Smallest `d` with `10^d >= 1/eps`.
pub fn decimal_digits(eps: &Rational) -> usize {
    let mut d = 0;
    let mut scaled = eps.clone();
    while scaled < int(1) {
        scaled *= int(10);
        d += 1;
    }
    d
}

pub fn approx(expr: &str, eps: &str, machines: Option<&Path>, out: &mut dyn Write) -> Result<(), CmdError> {
    let eps = parse_rational(eps).map_err(usage)?;
    if eps.is_zero() || eps.is_negative() {
        return Err(usage("eps must be positive"));
    }
    let resolver = Resolver { base_dir: None, machines_dir: machines.map(Path::to_path_buf) };
    let e = parse_expr(expr, &resolver).map_err(usage)?;
    let q = eval_expr(&e).approx(&eps);
    writeln!(out, "{q}").map_err(io)?;
    writeln!(out, "{}", to_decimal(&q, decimal_digits(&eps))).map_err(io)
}
