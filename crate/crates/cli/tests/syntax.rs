use clp_cli::syntax::{format_problem, parse_expr, parse_plan, parse_problem, ParseErrorKind, Resolver};
use clp_core::engine::{family, Clpp, CrnExpr, FamilyKind, MachineRef};
use clp_core::machines::{halts_at, never_halts};
use clp_core::numerics::{int, rat, Rational};
use clp_core::simplex::{Relation, Sense, VarBounds};
use proptest::prelude::*;

fn parse(text: &str) -> Clpp {
    parse_problem(text, &Resolver::default()).unwrap_or_else(|e| panic!("{e}"))
}

fn error_kind(text: &str) -> (usize, usize, ParseErrorKind) {
    let e = parse_problem(text, &Resolver::default()).unwrap_err();
    (e.line, e.col, e.kind)
}

#[test]
fn family_p_shape() {
    let p = parse("machine M = halts_at(3, 1)\nmax x ; st s(M,5)*x = 0, x >= 0, x <= 1");
    let m = MachineRef::new("M", halts_at(3, 1));
    let mut expected = family(FamilyKind::P, &m, 5);
    expected.bounds = vec![VarBounds::boxed(int(1))];
    assert_eq!(p, expected);
}

#[test]
fn family_h_shape() {
    let p = parse("machine M = never_halts\nmax (1+s(M,2))*x + (1-s(M,2))*y ; st x+y <= 1, x>=0, y>=0");
    assert_eq!(p, family(FamilyKind::H, &MachineRef::new("M", never_halts()), 2));
}

#[test]
fn builtin_names_resolve_without_binding() {
    let p = parse("max x ; st s(never_halts, 0)*x = 0, x >= 0");
    assert_eq!(p, family(FamilyKind::Q, &MachineRef::new("never_halts", never_halts()), 0));
}

#[test]
fn zero_divisor_is_rejected() {
    assert_eq!(error_kind("max x ; st x/0 = 1").2, ParseErrorKind::ZeroDivisor);
    assert_eq!(error_kind("max x ; st 1/0*x = 1").2, ParseErrorKind::ZeroDivisor);
    assert_eq!(error_kind("max x/(0) ; st x = 1").2, ParseErrorKind::Syntax("expected a number, found \"(\"".into()));
}

#[test]
fn errors_carry_positions() {
    assert_eq!(error_kind("max x ;\n st s(Q, 1)*x = 0").0, 2);
    let (line, col, kind) = error_kind("max x ;\n st s(Q, 1)*x = 0");
    assert_eq!((line, col, kind), (2, 7, ParseErrorKind::UnboundMachine("Q".into())));
    let (line, col, _) = error_kind("max x ; st x +* 1 <= 2");
    assert_eq!((line, col), (1, 15));
    assert!(matches!(error_kind("max x*y").2, ParseErrorKind::Nonlinear(_)));
    assert!(matches!(error_kind("var x\nmax y").2, ParseErrorKind::UndeclaredVariable(_)));
    assert!(matches!(error_kind("max x ; st x <= 1 extra").2, ParseErrorKind::Syntax(_)));
    assert!(matches!(error_kind("max 1 + x").2, ParseErrorKind::Syntax(_)));
    assert!(matches!(error_kind("machine M = halts_at(0, 1)\nmax x").2, ParseErrorKind::Syntax(_)));
    assert!(matches!(
        error_kind("machine M = {\"registers\": 1, \"code\": [[\"INC\", 0]]}\nmax x").2,
        ParseErrorKind::Machine { .. }
    ));
}

#[test]
fn bounds_and_rows() {
    let p = parse("min x - y ; st x >= 0, y <= -1/2, x <= 3, x <= 2, 2*x >= 0, x >= 1");
    assert_eq!(p.sense, Sense::Min);
    assert_eq!(p.bounds[0], VarBounds::boxed(int(3)));
    assert_eq!(p.bounds[1], VarBounds { nonneg: false, upper: Some(rat(-1, 2)) });
    // second upper bound, scaled bound and nonzero lower bound stay rows
    assert_eq!(p.constraints.len(), 3);
    assert_eq!(p.constraints[0].row, vec![CrnExpr::one(), CrnExpr::zero()]);
    assert_eq!(p.constraints[0].rel, Relation::Le);
    assert_eq!(p.constraints[2].rhs, CrnExpr::one());
}

#[test]
fn variables_on_both_sides() {
    let p = parse("max x ; st x + 1 <= y - 2, x >= 0, y >= 0");
    assert_eq!(p.constraints[0].row, vec![CrnExpr::one(), CrnExpr::rat(int(-1))]);
    assert_eq!(p.constraints[0].rhs, CrnExpr::rat(int(-3)));
}

#[test]
fn expressions() {
    let r = Resolver::default();
    let e = parse_expr("1/3 + 1/6", &r).unwrap();
    assert_eq!(e, CrnExpr::rat(rat(1, 2)));
    let e = parse_expr("-2/3/-4", &r).unwrap();
    assert_eq!(e, CrnExpr::rat(rat(1, 6)));
    let e = parse_expr("max(1+s(M,1), 1-s(M,1))", &Resolver::default());
    assert!(matches!(e.unwrap_err().kind, ParseErrorKind::UnboundMachine(_)));
    let e = parse_expr("max(1 + s(halts_at_3_1, 1), 1 - s(halts_at_3_1, 1))", &r).unwrap();
    assert!(matches!(e, CrnExpr::Max(..)));
}

#[test]
fn plans() {
    let vars = vec!["x".to_string(), "y".to_string()];
    assert_eq!(parse_plan("y=-1/2", &vars).unwrap(), vec![int(0), rat(-1, 2)]);
    assert!(parse_plan("z=1", &vars).is_err());
}

#[test]
fn format_parses_back() {
    let m = MachineRef::new("M", halts_at(4, 0));
    for kind in FamilyKind::ALL {
        let p = family(kind, &m, 3);
        let text = format_problem(&p);
        assert_eq!(parse(&text), p, "{text}");
    }
}

fn machines() -> Vec<MachineRef> {
    vec![MachineRef::new("M", halts_at(3, 1)), MachineRef::new("N", never_halts())]
}

fn small_rat() -> impl Strategy<Value = Rational> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| rat(n, d))
}

fn expr() -> BoxedStrategy<CrnExpr> {
    let leaf = prop_oneof![
        small_rat().prop_map(CrnExpr::rat),
        (0usize..2, 0u64..4, 0u8..3).prop_map(|(i, n, l)| {
            let m = &machines()[i];
            match l {
                0 => CrnExpr::specker(m, n),
                1 => CrnExpr::pair_a(m, n),
                _ => CrnExpr::pair_b(m, n),
            }
        }),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| CrnExpr::add(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| CrnExpr::sub(a, b)),
            inner.clone().prop_map(CrnExpr::neg),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| CrnExpr::mul(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| CrnExpr::max(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| CrnExpr::min(a, b)),
            (inner, small_rat()).prop_map(|(a, q)| CrnExpr::div_rat(a.clone(), q).unwrap_or(a)),
        ]
    })
    .boxed()
}

fn clpp() -> impl Strategy<Value = Clpp> {
    (1usize..=3).prop_flat_map(|n| {
        let row = || prop::collection::vec(expr(), n);
        let rel = prop_oneof![Just(Relation::Le), Just(Relation::Ge), Just(Relation::Eq)];
        let bound = (any::<bool>(), prop::option::of(small_rat())).prop_map(|(nonneg, upper)| VarBounds { nonneg, upper });
        (
            any::<bool>(),
            row(),
            prop::collection::vec((row(), rel, expr()), 0..3),
            prop::collection::vec(bound, n),
        )
            .prop_map(move |(max, objective, rows, bounds)| Clpp {
                sense: if max { Sense::Max } else { Sense::Min },
                vars: (0..n).map(|i| format!("x{i}")).collect(),
                objective,
                constraints: rows
                    .into_iter()
                    .map(|(row, rel, rhs)| clp_core::engine::ClppConstraint { row, rel, rhs })
                    .collect(),
                bounds,
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn format_then_parse_is_identity(p in clpp()) {
        let text = format_problem(&p);
        let back = parse_problem(&text, &Resolver::default()).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
        prop_assert_eq!(&back, &p, "{}", text);
    }

    #[test]
    fn expression_display_reparses(e in expr()) {
        let mut text = e.to_string();
        for m in machines() {
            // machine names resolve through builtins in this test
            text = text.replace(&format!("({}, ", m.name), &format!("({}, ", if m.name == "M" { "halts_at_3_1" } else { "never_halts" }));
        }
        let back = parse_expr(&text, &Resolver::default()).map_err(|err| TestCaseError::fail(format!("{err}\n{text}")))?;
        prop_assert_eq!(back.to_string(), text);
    }
}
