//! Brute-force vertex enumeration, used as an independent oracle for the
//! simplex solver on small instances.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use super::{check_feasible_rational, LpError, RatLp};
use crate::numerics::Rational;

pub const MAX_VERTEX_VARS: usize = 6;
pub const MAX_VERTEX_ROWS: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub plan: Vec<Rational>,
    pub value: Rational,
}

/// All basic feasible solutions: every choice of `n` tight hyperplanes among
/// the rows and the bound planes, solved exactly and filtered by exact
/// feasibility. Sorted by plan.
pub fn enumerate_vertices(lp: &RatLp) -> Result<Vec<Vertex>, LpError> {
    lp.validate()?;
    let n = lp.vars();
    if n > MAX_VERTEX_VARS || lp.constraints.len() > MAX_VERTEX_ROWS {
        return Err(LpError::TooLarge);
    }
    let mut planes: Vec<(Vec<Rational>, Rational)> =
        lp.constraints.iter().map(|c| (c.row.clone(), c.rhs.clone())).collect();
    for (j, b) in lp.bounds.iter().enumerate() {
        let unit: Vec<Rational> =
            (0..n).map(|k| if k == j { Rational::one() } else { Rational::zero() }).collect();
        if b.nonneg {
            planes.push((unit.clone(), Rational::zero()));
        }
        if let Some(u) = &b.upper {
            planes.push((unit, u.clone()));
        }
    }

    let mut found = BTreeSet::new();
    for subset in combinations(planes.len(), n) {
        let a: Vec<Vec<Rational>> = subset.iter().map(|&i| planes[i].0.clone()).collect();
        let b: Vec<Rational> = subset.iter().map(|&i| planes[i].1.clone()).collect();
        if let Some(x) = solve_square(a, b) {
            if check_feasible_rational(lp, &x) {
                found.insert(x);
            }
        }
    }
    Ok(found
        .into_iter()
        .map(|plan| {
            let value = lp.value_of(&plan);
            Vertex { plan, value }
        })
        .collect())
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Gauss-Jordan elimination; `None` when the system is singular.
fn solve_square(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, p);
        b.swap(col, p);
        let inv = Rational::one() / &a[col][col];
        for v in a[col].iter_mut() {
            *v *= &inv;
        }
        b[col] *= &inv;
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            let pivot_row = a[col].clone();
            for (v, pv) in a[r].iter_mut().zip(&pivot_row) {
                *v -= &f * pv;
            }
            let bc = b[col].clone();
            b[r] -= &f * bc;
        }
    }
    Some(b)
}
