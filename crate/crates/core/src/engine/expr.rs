use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::machines::{
    pair_limits, specker_crn, specker_limit, split_pair_crn, HaltTruth, StepMachine,
};
use crate::numerics::{rmax, rmin, Crn, Rational};

/// A named machine, resolved when the expression is built.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MachineRef {
    pub name: String,
    pub machine: Arc<StepMachine>,
}

impl MachineRef {
    pub fn new(name: impl Into<String>, machine: StepMachine) -> Self {
        MachineRef { name: name.into(), machine: Arc::new(machine) }
    }
}

/// Which halting-derived sequence a leaf denotes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Leaf {
    /// `s_n`
    Specker,
    /// `a_n`, weight of output 0
    PairA,
    /// `b_n`, weight of output 1
    PairB,
}

/// Symbolic CRN coefficient.
///
/// The lowercase constructors fold rational subterms and drop neutral
/// elements; the parser builds expressions only through them, so parsed and
/// constructed expressions share one normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CrnExpr {
    Rat(Rational),
    Seq(Leaf, MachineRef, u64),
    Add(Box<CrnExpr>, Box<CrnExpr>),
    Neg(Box<CrnExpr>),
    Mul(Box<CrnExpr>, Box<CrnExpr>),
    Max(Box<CrnExpr>, Box<CrnExpr>),
    Min(Box<CrnExpr>, Box<CrnExpr>),
    /// Division by a nonzero rational.
    DivRat(Box<CrnExpr>, Rational),
}

impl From<Rational> for CrnExpr {
    fn from(q: Rational) -> Self {
        CrnExpr::Rat(q)
    }
}

impl CrnExpr {
    pub fn rat(q: Rational) -> Self {
        CrnExpr::Rat(q)
    }

    pub fn zero() -> Self {
        CrnExpr::Rat(Rational::zero())
    }

    pub fn one() -> Self {
        CrnExpr::Rat(Rational::one())
    }

    pub fn specker(m: &MachineRef, n: u64) -> Self {
        CrnExpr::Seq(Leaf::Specker, m.clone(), n)
    }

    pub fn pair_a(m: &MachineRef, n: u64) -> Self {
        CrnExpr::Seq(Leaf::PairA, m.clone(), n)
    }

    pub fn pair_b(m: &MachineRef, n: u64) -> Self {
        CrnExpr::Seq(Leaf::PairB, m.clone(), n)
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            CrnExpr::Rat(q) => Some(q),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.as_rational().is_some_and(Zero::is_zero)
    }

    pub fn add(a: CrnExpr, b: CrnExpr) -> CrnExpr {
        match (a, b) {
            (CrnExpr::Rat(x), CrnExpr::Rat(y)) => CrnExpr::Rat(x + y),
            (CrnExpr::Rat(x), e) | (e, CrnExpr::Rat(x)) if x.is_zero() => e,
            (a, b) => CrnExpr::Add(Box::new(a), Box::new(b)),
        }
    }

    pub fn sub(a: CrnExpr, b: CrnExpr) -> CrnExpr {
        CrnExpr::add(a, CrnExpr::neg(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(a: CrnExpr) -> CrnExpr {
        match a {
            CrnExpr::Rat(x) => CrnExpr::Rat(-x),
            CrnExpr::Neg(e) => *e,
            e => CrnExpr::Neg(Box::new(e)),
        }
    }

    pub fn mul(a: CrnExpr, b: CrnExpr) -> CrnExpr {
        match (a, b) {
            (CrnExpr::Rat(x), CrnExpr::Rat(y)) => CrnExpr::Rat(x * y),
            (CrnExpr::Rat(x), _) | (_, CrnExpr::Rat(x)) if x.is_zero() => CrnExpr::zero(),
            (CrnExpr::Rat(x), e) | (e, CrnExpr::Rat(x)) if x.is_one() => e,
            (a, b) => CrnExpr::Mul(Box::new(a), Box::new(b)),
        }
    }

    pub fn max(a: CrnExpr, b: CrnExpr) -> CrnExpr {
        match (a, b) {
            (CrnExpr::Rat(x), CrnExpr::Rat(y)) => CrnExpr::Rat(rmax(&x, &y)),
            (a, b) => CrnExpr::Max(Box::new(a), Box::new(b)),
        }
    }

    pub fn min(a: CrnExpr, b: CrnExpr) -> CrnExpr {
        match (a, b) {
            (CrnExpr::Rat(x), CrnExpr::Rat(y)) => CrnExpr::Rat(rmin(&x, &y)),
            (a, b) => CrnExpr::Min(Box::new(a), Box::new(b)),
        }
    }

    /// `None` when `q` is zero.
    pub fn div_rat(a: CrnExpr, q: Rational) -> Option<CrnExpr> {
        if q.is_zero() {
            return None;
        }
        Some(match a {
            _ if q.is_one() => a,
            CrnExpr::Rat(x) => CrnExpr::Rat(x / q),
            CrnExpr::DivRat(e, p) => {
                let r = p * q;
                if r.is_one() {
                    *e
                } else {
                    CrnExpr::DivRat(e, r)
                }
            }
            e => CrnExpr::DivRat(Box::new(e), q),
        })
    }

    /// Visits every machine leaf.
    pub fn leaves<'a>(&'a self, out: &mut Vec<(Leaf, &'a MachineRef, u64)>) {
        match self {
            CrnExpr::Rat(_) => {}
            CrnExpr::Seq(l, m, n) => out.push((*l, m, *n)),
            CrnExpr::Neg(a) | CrnExpr::DivRat(a, _) => a.leaves(out),
            CrnExpr::Add(a, b) | CrnExpr::Mul(a, b) | CrnExpr::Max(a, b) | CrnExpr::Min(a, b) => {
                a.leaves(out);
                b.leaves(out);
            }
        }
    }

    /// Exact value of a machine-free expression.
    pub fn exact_value(&self) -> Option<Rational> {
        self.limit_with(&|_, _, _| None)
    }

    /// Exact limit given the value of every machine leaf; `None` when some
    /// leaf is unknown.
    pub fn limit_with(&self, leaf: &dyn Fn(Leaf, &MachineRef, u64) -> Option<Rational>) -> Option<Rational> {
        Some(match self {
            CrnExpr::Rat(q) => q.clone(),
            CrnExpr::Seq(l, m, n) => leaf(*l, m, *n)?,
            CrnExpr::Add(a, b) => a.limit_with(leaf)? + b.limit_with(leaf)?,
            CrnExpr::Neg(a) => -a.limit_with(leaf)?,
            CrnExpr::Mul(a, b) => a.limit_with(leaf)? * b.limit_with(leaf)?,
            CrnExpr::Max(a, b) => rmax(&a.limit_with(leaf)?, &b.limit_with(leaf)?),
            CrnExpr::Min(a, b) => rmin(&a.limit_with(leaf)?, &b.limit_with(leaf)?),
            CrnExpr::DivRat(a, q) => a.limit_with(leaf)? / q,
        })
    }

    /// Exact limit when each machine's halting behaviour on its input is known.
    pub fn limit_under(&self, truth: &dyn Fn(&MachineRef, u64) -> Option<HaltTruth>) -> Option<Rational> {
        self.limit_with(&|l, m, n| {
            let t = truth(m, n)?;
            Some(match l {
                Leaf::Specker => specker_limit(&t),
                Leaf::PairA => pair_limits(&t).0,
                Leaf::PairB => pair_limits(&t).1,
            })
        })
    }
}

/// Structural evaluation to a CRN.
pub fn eval_expr(e: &CrnExpr) -> Crn {
    match e {
        CrnExpr::Rat(q) => Crn::from_rational(q.clone()),
        CrnExpr::Seq(Leaf::Specker, m, n) => specker_crn(m.machine.clone(), *n),
        CrnExpr::Seq(Leaf::PairA, m, n) => split_pair_crn(m.machine.clone(), *n).0,
        CrnExpr::Seq(Leaf::PairB, m, n) => split_pair_crn(m.machine.clone(), *n).1,
        CrnExpr::Add(a, b) => eval_expr(a).add(&eval_expr(b)),
        CrnExpr::Neg(a) => eval_expr(a).neg(),
        CrnExpr::Mul(a, b) => eval_expr(a).mul(&eval_expr(b)),
        CrnExpr::Max(a, b) => eval_expr(a).max(&eval_expr(b)),
        CrnExpr::Min(a, b) => eval_expr(a).min(&eval_expr(b)),
        CrnExpr::DivRat(a, q) => eval_expr(a).div_rational(q).expect("divisor is nonzero"),
    }
}

fn is_atomic(e: &CrnExpr) -> bool {
    match e {
        CrnExpr::Rat(q) => !q.is_negative() && q.is_integer(),
        CrnExpr::Seq(..) | CrnExpr::Max(..) | CrnExpr::Min(..) => true,
        _ => false,
    }
}

struct Wrapped<'a>(&'a CrnExpr);

impl fmt::Display for Wrapped<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if is_atomic(self.0) {
            write!(f, "{}", self.0)
        } else {
            write!(f, "({})", self.0)
        }
    }
}

/// Prints in the problem-file expression grammar; output reparses to the
/// same expression.
impl fmt::Display for CrnExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CrnExpr::Rat(q) => write!(f, "{q}"),
            CrnExpr::Seq(l, m, n) => {
                let tag = match l {
                    Leaf::Specker => "s",
                    Leaf::PairA => "a",
                    Leaf::PairB => "b",
                };
                write!(f, "{tag}({}, {n})", m.name)
            }
            CrnExpr::Add(a, b) => {
                match a.as_ref() {
                    CrnExpr::Add(..) => write!(f, "{a}")?,
                    _ => write!(f, "{}", Wrapped(a))?,
                }
                match b.as_ref() {
                    CrnExpr::Neg(inner) => write!(f, " - {}", Wrapped(inner)),
                    _ => write!(f, " + {}", Wrapped(b)),
                }
            }
            CrnExpr::Neg(a) => write!(f, "-{}", Wrapped(a)),
            CrnExpr::Mul(a, b) => write!(f, "{}*{}", Wrapped(a), Wrapped(b)),
            CrnExpr::Max(a, b) => write!(f, "max({a}, {b})"),
            CrnExpr::Min(a, b) => write!(f, "min({a}, {b})"),
            CrnExpr::DivRat(a, q) => write!(f, "{}/{q}", Wrapped(a)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machines::{halts_at, never_halts};
    use crate::numerics::{int, pow2_neg, rat};

    #[test]
    fn smart_constructors_fold() {
        assert_eq!(CrnExpr::add(int(1).into(), rat(1, 2).into()), CrnExpr::Rat(rat(3, 2)));
        let m = MachineRef::new("M", never_halts());
        let s = CrnExpr::specker(&m, 0);
        assert_eq!(CrnExpr::add(CrnExpr::zero(), s.clone()), s);
        assert_eq!(CrnExpr::mul(s.clone(), CrnExpr::one()), s);
        assert_eq!(CrnExpr::mul(s.clone(), CrnExpr::zero()), CrnExpr::zero());
        assert_eq!(CrnExpr::neg(CrnExpr::neg(s.clone())), s);
        assert_eq!(CrnExpr::div_rat(s.clone(), int(0)), None);
        let d = CrnExpr::div_rat(CrnExpr::div_rat(s.clone(), int(2)).unwrap(), int(3)).unwrap();
        assert_eq!(d, CrnExpr::DivRat(Box::new(s.clone()), int(6)));
        assert_eq!(CrnExpr::div_rat(d, int(6).recip()), Some(s));
    }

    #[test]
    fn evaluation() {
        assert_eq!(eval_expr(&CrnExpr::Rat(rat(1, 2))).approx(&pow2_neg(30)), rat(1, 2));

        let m = MachineRef::new("M", halts_at(3, 1));
        let e = CrnExpr::add(CrnExpr::one(), CrnExpr::specker(&m, 4));
        for k in 0..20 {
            let eps = pow2_neg(k);
            assert!((eval_expr(&e).approx(&eps) - rat(9, 8)).abs() <= eps);
        }

        let z = MachineRef::new("N", never_halts());
        let s = CrnExpr::specker(&z, 1);
        let e = CrnExpr::max(
            CrnExpr::add(CrnExpr::one(), s.clone()),
            CrnExpr::sub(CrnExpr::one(), s),
        );
        let x = eval_expr(&e);
        for k in 0..20 {
            let eps = pow2_neg(k);
            assert!((x.approx(&eps) - int(1)).abs() <= eps);
        }
    }

    #[test]
    fn limits() {
        let m = MachineRef::new("M", halts_at(4, 0));
        let e = CrnExpr::add(CrnExpr::pair_a(&m, 0), CrnExpr::pair_b(&m, 0));
        let truth = |m: &MachineRef, n| m.machine.ground_truth(n, 100);
        assert_eq!(e.limit_under(&truth), Some(rat(1, 16)));
        assert_eq!(CrnExpr::specker(&m, 0).limit_under(&truth), Some(rat(-1, 16)));
        assert_eq!(CrnExpr::specker(&m, 0).exact_value(), None);
        assert_eq!(CrnExpr::Rat(int(2)).exact_value(), Some(int(2)));
    }

    #[test]
    fn display() {
        let m = MachineRef::new("M", never_halts());
        let s = CrnExpr::specker(&m, 2);
        let e = CrnExpr::max(CrnExpr::add(CrnExpr::one(), s.clone()), CrnExpr::sub(CrnExpr::one(), s.clone()));
        assert_eq!(e.to_string(), "max(1 + s(M, 2), 1 - s(M, 2))");
        let e = CrnExpr::mul(CrnExpr::Rat(rat(-1, 2)), CrnExpr::neg(s));
        assert_eq!(e.to_string(), "(-1/2)*(-s(M, 2))");
    }
}
