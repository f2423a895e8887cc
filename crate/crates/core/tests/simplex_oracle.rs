mod common;

use clp_core::numerics::{rat, Rational};
use clp_core::simplex::{
    check_feasible_rational, check_improving_ray, enumerate_vertices, solve_rational_lp,
    solve_with_stats, LpOutcome, RatLp, Sense,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn best_vertex(lp: &RatLp) -> Option<Rational> {
    let vs = enumerate_vertices(lp).unwrap();
    let values = vs.into_iter().map(|v| v.value);
    match lp.sense {
        Sense::Max => values.max(),
        Sense::Min => values.min(),
    }
}

#[test]
fn simplex_agrees_with_vertex_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let (mut opt, mut inf, mut unb) = (0, 0, 0);
    for case in 0..500 {
        let lp = common::random_lp(&mut rng);
        let sol = solve_with_stats(&lp).unwrap();
        let cols = 3 * lp.vars() + 2 * lp.constraints.len() + lp.vars();
        let rows = lp.constraints.len() + lp.vars();
        assert!(
            sol.pivots as u128 <= common::basis_subsets(cols, rows).max(1) * 2,
            "case {case}: {} pivots",
            sol.pivots
        );
        let best = best_vertex(&lp);
        match &sol.outcome {
            LpOutcome::Optimal { plan, value, .. } => {
                opt += 1;
                assert!(check_feasible_rational(&lp, plan), "case {case}");
                assert_eq!(value, &lp.value_of(plan));
                assert_eq!(Some(value.clone()), best, "case {case}: {lp:?}");
            }
            LpOutcome::Infeasible { phase1_value } => {
                inf += 1;
                assert!(*phase1_value > rat(0, 1));
                assert_eq!(best, None, "case {case}: {lp:?}");
            }
            LpOutcome::Unbounded { point, ray } => {
                unb += 1;
                assert!(lp.bounds.iter().all(|b| b.upper.is_none()), "box cannot be unbounded");
                assert!(check_feasible_rational(&lp, point), "case {case}");
                assert!(check_improving_ray(&lp, ray), "case {case}");
                assert!(best.is_some());
            }
        }
    }
    // the generator should exercise every outcome class
    assert!(opt > 50 && inf > 50 && unb > 10, "{opt} {inf} {unb}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn row_scaling_preserves_outcome(seed in any::<u64>(), k in 1i64..=7, d in 1i64..=5, pick in any::<usize>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lp = common::random_lp(&mut rng);
        prop_assume!(!lp.constraints.is_empty());
        let mut scaled = lp.clone();
        let i = pick % lp.constraints.len();
        let f = rat(k, d);
        let c = &mut scaled.constraints[i];
        c.row.iter_mut().for_each(|a| *a *= &f);
        c.rhs *= &f;
        let a = solve_rational_lp(&lp).unwrap();
        let b = solve_rational_lp(&scaled).unwrap();
        prop_assert_eq!(a.class(), b.class());
        if let (LpOutcome::Optimal { value: va, .. }, LpOutcome::Optimal { value: vb, .. }) = (&a, &b) {
            prop_assert_eq!(va, vb);
        }
    }
}
