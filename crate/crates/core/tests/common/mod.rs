#![allow(dead_code)]

use clp_core::numerics::{rat, Rational};
use clp_core::simplex::{LinearConstraint, RatLp, Relation, Sense, VarBounds};
use rand::Rng;

pub fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    rat(rng.gen_range(-3..=3), rng.gen_range(1..=4))
}

/// Random LP with at most 4 nonnegative variables and 6 rows; entries in
/// {-3..3}/{1..4}. Half of the instances carry a box on every variable.
pub fn random_lp<R: Rng>(rng: &mut R) -> RatLp {
    let n = rng.gen_range(1..=4);
    let m = rng.gen_range(0..=6);
    let boxed = rng.gen_bool(0.5);
    let constraints = (0..m)
        .map(|_| LinearConstraint {
            row: (0..n).map(|_| small_rational(rng)).collect(),
            rel: match rng.gen_range(0..3) {
                0 => Relation::Le,
                1 => Relation::Ge,
                _ => Relation::Eq,
            },
            rhs: small_rational(rng),
        })
        .collect();
    RatLp {
        sense: if rng.gen_bool(0.5) { Sense::Max } else { Sense::Min },
        objective: (0..n).map(|_| small_rational(rng)).collect(),
        constraints,
        bounds: (0..n)
            .map(|_| {
                if boxed {
                    VarBounds::boxed(rat(rng.gen_range(1..=5), 1))
                } else {
                    VarBounds::nonneg()
                }
            })
            .collect(),
    }
}

/// Number of ways to choose a basis; an upper bound on distinct bases.
pub fn basis_subsets(cols: usize, rows: usize) -> u128 {
    let k = rows.min(cols);
    (0..k).fold(1u128, |acc, i| acc.saturating_mul((cols - i) as u128) / (i as u128 + 1))
}
