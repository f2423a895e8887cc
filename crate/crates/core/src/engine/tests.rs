use num_traits::Zero;

use super::*;
use crate::machines::{halts_at, never_halts};
use crate::numerics::{int, pow2_neg, rat, Fuel, Rational};
use crate::simplex::{solve_rational_lp, LinearConstraint, LpOutcome, Relation, Sense, VarBounds};

fn m(name: &str) -> MachineRef {
    match name {
        "h31" => MachineRef::new(name, halts_at(3, 1)),
        "h30" => MachineRef::new(name, halts_at(3, 0)),
        "h40" => MachineRef::new(name, halts_at(4, 0)),
        _ => MachineRef::new(name, never_halts()),
    }
}

fn rational_clpp(sense: Sense, obj: Vec<Rational>, rows: Vec<(Vec<Rational>, Relation, Rational)>, bounds: Vec<VarBounds>) -> Clpp {
    Clpp {
        sense,
        vars: (0..obj.len()).map(|i| format!("x{i}")).collect(),
        objective: obj.into_iter().map(CrnExpr::rat).collect(),
        constraints: rows
            .into_iter()
            .map(|(r, rel, b)| ClppConstraint { row: r.into_iter().map(CrnExpr::rat).collect(), rel, rhs: CrnExpr::rat(b) })
            .collect(),
        bounds,
    }
}

fn answer<A: Copy>(v: &SemiVerdict<A>) -> Option<A> {
    v.answer().copied()
}

#[test]
fn eval_expr_examples() {
    let h = m("h31");
    let e = CrnExpr::add(CrnExpr::one(), CrnExpr::specker(&h, 0));
    assert_eq!(eval_expr(&e).approx(&pow2_neg(10)), rat(9, 8));
    let n = m("never");
    let s = CrnExpr::specker(&n, 0);
    let e = CrnExpr::max(CrnExpr::add(CrnExpr::one(), s.clone()), CrnExpr::sub(CrnExpr::one(), s));
    assert_eq!(eval_expr(&e).approx(&pow2_neg(12)), int(1));
    assert_eq!(eval_expr(&CrnExpr::rat(rat(1, 2))).approx(&rat(1, 3)), rat(1, 2));
}

#[test]
fn snapshot_examples() {
    let snap = interval_snapshot(&family(FamilyKind::P, &m("never"), 0), Fuel(8)).unwrap();
    let c = &snap.rows[0].coeffs[0];
    assert!(c.contains(&Rational::zero()));
    assert!(c.width() <= pow2_neg(7));
    let snap = interval_snapshot(&family(FamilyKind::P, &m("h31"), 0), Fuel(8)).unwrap();
    assert!(snap.rows[0].coeffs[0].lo() > &Rational::zero());
    let snap = interval_snapshot(&family(FamilyKind::H, &m("h31"), 0), Fuel(3)).unwrap();
    assert!(snap.rows[0].coeffs.iter().all(|c| c.is_point()));
}

#[test]
fn relaxation_examples() {
    let snap = interval_snapshot(&family(FamilyKind::P, &m("never"), 0), Fuel(8)).unwrap();
    let r = outer_inner_relax(&snap).unwrap();
    match solve_rational_lp(&r.outer).unwrap() {
        LpOutcome::Optimal { value, .. } => assert_eq!(value, int(1)),
        o => panic!("{o:?}"),
    }
    match solve_rational_lp(r.inner.as_ref().unwrap()).unwrap() {
        LpOutcome::Optimal { plan, .. } => assert_eq!(plan, vec![int(0)]),
        o => panic!("{o:?}"),
    }
    let snap = interval_snapshot(&family(FamilyKind::R, &m("h31"), 0), Fuel(8)).unwrap();
    let r = outer_inner_relax(&snap).unwrap();
    assert!(solve_rational_lp(&r.outer).unwrap().is_infeasible());

    let p = rational_clpp(
        Sense::Max,
        vec![int(2), int(1)],
        vec![(vec![int(1), int(1)], Relation::Le, int(3))],
        vec![VarBounds::nonneg(), VarBounds::boxed(int(1))],
    );
    let r = outer_inner_relax(&interval_snapshot(&p, Fuel(0)).unwrap()).unwrap();
    assert_eq!(Some(r.outer.clone()), p.to_rat_lp());
    assert_eq!(r.inner, p.to_rat_lp());
}

#[test]
fn relaxation_rejects_free_columns() {
    let mut snap = interval_snapshot(&family(FamilyKind::Q, &m("h31"), 0), Fuel(2)).unwrap();
    snap.bounds[0] = VarBounds::free();
    assert_eq!(outer_inner_relax(&snap).unwrap_err(), EngineError::UnsignedVariable(0));
}

#[test]
fn feasibility_examples() {
    let r = family(FamilyKind::R, &m("h31"), 0);
    assert_eq!(answer(&decide_feasibility(&r, Fuel(3)).unwrap()), None);
    for f in [4, 5, 9] {
        let v = decide_feasibility(&r, Fuel(f)).unwrap();
        assert_eq!(answer(&v), Some(Feasibility::Infeasible));
        assert!(matches!(v, SemiVerdict::Decided { fuel_used: Fuel(4), .. }));
    }
    for name in ["h31", "h40", "never"] {
        let v = decide_feasibility(&family(FamilyKind::P, &m(name), 0), Fuel(0)).unwrap();
        match v {
            SemiVerdict::Decided { answer: Feasibility::Feasible, certificate: Certificate::InnerPlan { plan }, .. } => {
                assert_eq!(plan, vec![int(0)])
            }
            v => panic!("{v:?}"),
        }
    }
    let v = decide_feasibility(&family(FamilyKind::R, &m("never"), 0), Fuel(40)).unwrap();
    assert_eq!(v, SemiVerdict::Unknown { fuel: Fuel(40) });
}

#[test]
fn boundedness_examples() {
    let q = family(FamilyKind::Q, &m("h30"), 0);
    assert_eq!(answer(&decide_boundedness(&q, Fuel(3)).unwrap()), None);
    assert_eq!(answer(&decide_boundedness(&q, Fuel(4)).unwrap()), Some(Boundedness::Bounded));
    let q = family(FamilyKind::Q, &m("never"), 0);
    assert!(!decide_boundedness(&q, Fuel(40)).unwrap().is_decided());
    let lp = rational_clpp(Sense::Max, vec![int(1)], vec![(vec![int(0)], Relation::Eq, int(0))], vec![VarBounds::nonneg()]);
    assert_eq!(answer(&decide_boundedness(&lp, Fuel(0)).unwrap()), Some(Boundedness::Unbounded));
}

#[test]
fn plan_feasibility_examples() {
    let p = family(FamilyKind::P, &m("h31"), 0);
    assert_eq!(answer(&check_plan_feasible(&p, &[int(1)], Fuel(3)).unwrap()), None);
    assert_eq!(answer(&check_plan_feasible(&p, &[int(1)], Fuel(4)).unwrap()), Some(false));
    for name in ["h31", "never"] {
        let p = family(FamilyKind::P, &m(name), 0);
        assert_eq!(answer(&check_plan_feasible(&p, &[int(0)], Fuel(0)).unwrap()), Some(true));
        assert_eq!(answer(&check_plan_feasible(&p, &[int(2)], Fuel(0)).unwrap()), Some(false));
    }
    let p = family(FamilyKind::P, &m("never"), 0);
    assert!(!check_plan_feasible(&p, &[int(1)], Fuel(40)).unwrap().is_decided());
    assert_eq!(
        check_plan_feasible(&p, &[int(1), int(0)], Fuel(1)).unwrap_err(),
        EngineError::PlanLength { expected: 1, got: 2 }
    );
}

#[test]
fn plan_optimality_examples() {
    let p = family(FamilyKind::P, &m("h31"), 0);
    assert_eq!(answer(&check_plan_optimal(&p, &[int(0)], Fuel(3)).unwrap()), None);
    assert_eq!(answer(&check_plan_optimal(&p, &[int(0)], Fuel(4)).unwrap()), Some(true));
    assert_eq!(answer(&check_plan_optimal(&p, &[int(1)], Fuel(4)).unwrap()), Some(false));
    let p = family(FamilyKind::P, &m("never"), 0);
    assert!(!check_plan_optimal(&p, &[int(0)], Fuel(40)).unwrap().is_decided());
    let lp = rational_clpp(Sense::Max, vec![int(1)], vec![], vec![VarBounds::boxed(int(1))]);
    assert_eq!(answer(&check_plan_optimal(&lp, &[int(1)], Fuel(0)).unwrap()), Some(true));
    assert_eq!(answer(&check_plan_optimal(&lp, &[rat(1, 2)], Fuel(0)).unwrap()), Some(false));
    // H with a halting machine: the optimal plan x=1 is never certified, since
    // its objective enclosure always straddles the OUTER optimum
    let h = family(FamilyKind::H, &m("h31"), 0);
    assert_eq!(answer(&check_plan_optimal(&h, &[int(1), int(0)], Fuel(30)).unwrap()), None);
    assert_eq!(answer(&check_plan_optimal(&h, &[int(0), int(1)], Fuel(6)).unwrap()), Some(false));
}

#[test]
fn value_bounds_examples() {
    let b = value_bounds(&family(FamilyKind::H, &m("never"), 0), Fuel(8)).unwrap();
    let (lo, hi) = (Bound::Finite(int(1) - pow2_neg(6)), Bound::Finite(int(1) + pow2_neg(6)));
    assert!(b.lower.as_ref().unwrap() >= &lo && b.upper.as_ref().unwrap() <= &hi, "{b:?}");
    assert!(b.contains(&int(1)));
    let b = value_bounds(&family(FamilyKind::P, &m("h31"), 0), Fuel(4)).unwrap();
    assert_eq!((b.lower, b.upper), (Some(Bound::Finite(int(0))), Some(Bound::Finite(int(0)))));
    let lp = rational_clpp(
        Sense::Min,
        vec![int(1), int(2)],
        vec![(vec![int(1), int(1)], Relation::Ge, int(2))],
        vec![VarBounds::nonneg(), VarBounds::nonneg()],
    );
    let b = value_bounds(&lp, Fuel(0)).unwrap();
    assert_eq!((b.lower, b.upper), (Some(Bound::Finite(int(2))), Some(Bound::Finite(int(2)))));
    let b = value_bounds(&family(FamilyKind::R, &m("h31"), 0), Fuel(4)).unwrap();
    assert_eq!((b.lower, b.upper), (None, Some(Bound::NegInf)));
}

#[test]
fn diagnosis_examples() {
    let t = family(FamilyKind::T, &m("h31"), 0);
    assert_eq!(answer(&diagnose_unsolvable(&t, Fuel(3)).unwrap()), None);
    assert_eq!(answer(&diagnose_unsolvable(&t, Fuel(4)).unwrap()), Some(Diagnosis::Infeasible));
    let t = family(FamilyKind::T, &m("never"), 0);
    assert!(!diagnose_unsolvable(&t, Fuel(40)).unwrap().is_decided());
    let lp = rational_clpp(
        Sense::Max,
        vec![int(0), int(1)],
        vec![(vec![int(1), int(0)], Relation::Eq, int(1)), (vec![int(0), int(0)], Relation::Eq, int(0))],
        vec![VarBounds::nonneg(), VarBounds::nonneg()],
    );
    assert_eq!(answer(&diagnose_unsolvable(&lp, Fuel(0)).unwrap()), Some(Diagnosis::Unbounded));
}

#[test]
fn free_variables_are_split() {
    // min x s.t. x >= -3, x free: optimum -3 at fuel 0
    let lp = rational_clpp(Sense::Min, vec![int(1)], vec![(vec![int(1)], Relation::Ge, int(-3))], vec![VarBounds::free()]);
    let b = value_bounds(&lp, Fuel(0)).unwrap();
    assert_eq!(b.lower, Some(Bound::Finite(int(-3))));
    assert_eq!(b.upper, Some(Bound::Finite(int(-3))));
    assert_eq!(answer(&check_plan_optimal(&lp, &[int(-3)], Fuel(0)).unwrap()), Some(true));
    // free variable with an upper bound
    let mut lp = rational_clpp(Sense::Max, vec![int(1)], vec![], vec![VarBounds::free()]);
    lp.bounds[0].upper = Some(int(-2));
    assert_eq!(answer(&check_plan_feasible(&lp, &[int(-1)], Fuel(0)).unwrap()), Some(false));
    let b = value_bounds(&lp, Fuel(0)).unwrap();
    assert_eq!(b.upper, Some(Bound::Finite(int(-2))));
}

#[test]
fn h_optimal_value() {
    assert_eq!(optimal_value_crn_h(&m("never"), 0).approx(&pow2_neg(16)), int(1));
    assert_eq!(optimal_value_crn_h(&m("h31"), 0).approx(&pow2_neg(16)), rat(9, 8));
    assert_eq!(optimal_value_crn_h(&m("h40"), 0).approx(&pow2_neg(16)), rat(17, 16));
}

#[test]
fn family_shapes() {
    let h = m("h31");
    let d = family(FamilyKind::D, &h, 2);
    assert_eq!(d.constraints.len(), 1);
    assert_eq!(d.constraints[0].rhs, CrnExpr::pair_a(&h, 2));
    assert_eq!(d.bounds, vec![VarBounds::boxed(int(1))]);
    let t = family(FamilyKind::T, &h, 2);
    assert_eq!(t.vars, vec!["x", "y"]);
    assert_eq!("t".parse::<FamilyKind>().unwrap(), FamilyKind::T);
    // ground truth instantiation is an ordinary LP
    let gt = family(FamilyKind::R, &h, 0)
        .ground_truth_lp(&|mr, n| mr.machine.ground_truth(n, 100))
        .unwrap();
    assert_eq!(gt.constraints[0], LinearConstraint { row: vec![rat(1, 8)], rel: Relation::Eq, rhs: int(0) });
}

#[test]
fn trace_matches_single_runs() {
    let p = family(FamilyKind::P, &m("h31"), 0);
    let an = Analyzer::new(&p).unwrap();
    let qs = [Query::Feasibility, Query::PlanFeasible(vec![int(1)]), Query::PlanOptimal(vec![int(0)])];
    let tr = an.trace(&qs, Fuel(8), false).unwrap();
    for f in 0..=8 {
        let single = check_plan_feasible(&p, &[int(1)], Fuel(f)).unwrap();
        assert_eq!(tr.verdict_at(1, Fuel(f)).answer().is_some(), single.is_decided());
        assert_eq!(tr.bounds_at(Fuel(f)), &value_bounds(&p, Fuel(f)).unwrap());
    }
    for w in tr.bounds.windows(2) {
        assert!(w[1].nested_in(&w[0]));
    }
}
