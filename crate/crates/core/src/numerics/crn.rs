//! Constructive real numbers: a fundamental sequence of rationals together
//! with a convergence regulator.
//!
//! The regulator contract used throughout: for every positive rational `eps`
//! and all `m, n > reg(eps)`, `|fund(m) - fund(n)| <= eps`. Passing to the
//! limit gives `|x - fund(n)| <= eps` for `n > reg(eps)`, which is what
//! [`Crn::approx`] relies on.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::interval::Interval;
use super::rational::{int, pow2_neg, rmax, rmin, Rational};
use super::NumericsError;

type FundFn = dyn Fn(u64) -> Rational + Send + Sync;
type RegFn = dyn Fn(&Rational) -> u64 + Send + Sync;

/// Unified work budget: precision `2^-t` and machine step budget `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Fuel(pub u32);

impl Fuel {
    pub fn precision(self) -> Rational {
        pow2_neg(self.0 as u64)
    }
}

impl fmt::Display for Fuel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Clone)]
pub struct Crn {
    fund: Arc<FundFn>,
    reg: Arc<RegFn>,
}

impl fmt::Debug for Crn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Crn").field("approx_2^-16", &self.approx(&pow2_neg(16)).to_string()).finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CrnOp {
    Add,
    Neg,
    Mul,
    Max,
    Min,
    Abs,
}

impl CrnOp {
    pub fn is_binary(self) -> bool {
        matches!(self, CrnOp::Add | CrnOp::Mul | CrnOp::Max | CrnOp::Min)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrderVerdict {
    Less,
    Greater,
    Unknown(Fuel),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Apart {
    Less,
    Greater,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LeqVerdict {
    Refuted,
    Unknown(Fuel),
}

impl Crn {
    /// Builds a CRN from raw algorithms. The caller is responsible for the
    /// regulator contract.
    pub fn new<F, R>(fund: F, reg: R) -> Self
    where
        F: Fn(u64) -> Rational + Send + Sync + 'static,
        R: Fn(&Rational) -> u64 + Send + Sync + 'static,
    {
        Crn { fund: Arc::new(fund), reg: Arc::new(reg) }
    }

    /// Constant sequence with the trivial regulator `reg(eps) = 1`.
    pub fn from_rational(q: Rational) -> Self {
        Crn::new(move |_| q.clone(), |_| 1)
    }

    pub fn zero() -> Self {
        Crn::from_rational(Rational::zero())
    }

    pub fn fund(&self, n: u64) -> Rational {
        (self.fund)(n)
    }

    pub fn reg(&self, eps: &Rational) -> u64 {
        assert!(eps.is_positive(), "tolerance must be positive");
        (self.reg)(eps)
    }

    /// `fund(reg(eps) + 1)`, within `eps` of the limit.
    pub fn approx(&self, eps: &Rational) -> Rational {
        self.fund(self.reg(eps) + 1)
    }

    /// `[q - 2^-t, q + 2^-t]` with `q = approx(2^-t)`; always contains the limit.
    pub fn enclosure(&self, t: u64) -> Interval {
        let eps = pow2_neg(t);
        Interval::ball(&self.approx(&eps), &eps)
    }

    pub fn add(&self, other: &Crn) -> Crn {
        let (a, b) = (self.clone(), other.clone());
        let (ra, rb) = (self.clone(), other.clone());
        Crn::new(
            move |n| a.fund(n) + b.fund(n),
            move |e| {
                let h = e / int(2);
                ra.reg(&h).max(rb.reg(&h))
            },
        )
    }

    pub fn neg(&self) -> Crn {
        let (a, ra) = (self.clone(), self.clone());
        Crn::new(move |n| -a.fund(n), move |e| ra.reg(&(e / int(2))))
    }

    pub fn abs(&self) -> Crn {
        let (a, ra) = (self.clone(), self.clone());
        Crn::new(move |n| a.fund(n).abs(), move |e| ra.reg(&(e / int(2))))
    }

    pub fn max(&self, other: &Crn) -> Crn {
        self.lattice(other, rmax)
    }

    pub fn min(&self, other: &Crn) -> Crn {
        self.lattice(other, rmin)
    }

    fn lattice(&self, other: &Crn, pick: fn(&Rational, &Rational) -> Rational) -> Crn {
        let (a, b) = (self.clone(), other.clone());
        let (ra, rb) = (self.clone(), other.clone());
        Crn::new(
            move |n| pick(&a.fund(n), &b.fund(n)),
            move |e| {
                let h = e / int(2);
                ra.reg(&h).max(rb.reg(&h))
            },
        )
    }

    /// Product with bounds `B = |approx(1)| + 1` taken once at construction.
    /// Terms past `reg(1)` are bounded by `B`, so `reg(1)` joins the maximum.
    pub fn mul(&self, other: &Crn) -> Crn {
        let one = Rational::one();
        let bx = self.approx(&one).abs() + &one;
        let by = other.approx(&one).abs() + &one;
        let floor = self.reg(&one).max(other.reg(&one));
        let (a, b) = (self.clone(), other.clone());
        let (ra, rb) = (self.clone(), other.clone());
        Crn::new(
            move |n| a.fund(n) * b.fund(n),
            move |e| {
                let ex = e / (int(2) * &by);
                let ey = e / (int(2) * &bx);
                ra.reg(&ex).max(rb.reg(&ey)).max(floor)
            },
        )
    }

    /// Division by a nonzero rational: `fund(n) / q`, `reg(eps * |q|)`.
    pub fn div_rational(&self, q: &Rational) -> Result<Crn, NumericsError> {
        if q.is_zero() {
            return Err(NumericsError::DivisionByZero);
        }
        let (a, ra) = (self.clone(), self.clone());
        let (qa, qr) = (q.clone(), q.abs());
        Ok(Crn::new(move |n| a.fund(n) / &qa, move |e| ra.reg(&(e * &qr))))
    }
}

/// Operation dispatch; `y` must be present exactly for binary operations.
pub fn crn_arith(op: CrnOp, x: &Crn, y: Option<&Crn>) -> Result<Crn, NumericsError> {
    match (op.is_binary(), y) {
        (true, None) | (false, Some(_)) => Err(NumericsError::Arity(op)),
        (true, Some(y)) => Ok(match op {
            CrnOp::Add => x.add(y),
            CrnOp::Mul => x.mul(y),
            CrnOp::Max => x.max(y),
            CrnOp::Min => x.min(y),
            CrnOp::Neg | CrnOp::Abs => unreachable!(),
        }),
        (false, None) => Ok(match op {
            CrnOp::Neg => x.neg(),
            CrnOp::Abs => x.abs(),
            _ => unreachable!(),
        }),
    }
}

/// Compares the enclosures of `x` and `y` at one precision level `2^-t`.
pub fn compare_at_level(x: &Crn, y: &Crn, t: u64) -> Option<Apart> {
    let xi = x.enclosure(t);
    let yi = y.enclosure(t);
    if xi.strictly_below(&yi) {
        Some(Apart::Less)
    } else if yi.strictly_below(&xi) {
        Some(Apart::Greater)
    } else {
        None
    }
}

/// Sweeps precisions `2^0 .. 2^-fuel` and reports the first separation.
pub fn crn_compare_fuel(x: &Crn, y: &Crn, fuel: Fuel) -> OrderVerdict {
    for t in 0..=fuel.0 as u64 {
        match compare_at_level(x, y, t) {
            Some(Apart::Less) => return OrderVerdict::Less,
            Some(Apart::Greater) => return OrderVerdict::Greater,
            None => {}
        }
    }
    OrderVerdict::Unknown(fuel)
}

/// Decides the order of two CRNs promised to be apart.
///
/// Diverges when `x = y`; callers that cannot vouch for the promise should
/// use [`order_of_apart_capped`].
pub fn crn_order_of_apart(x: &Crn, y: &Crn) -> Apart {
    let mut t = 0;
    loop {
        if let Some(a) = compare_at_level(x, y, t) {
            return a;
        }
        t += 1;
    }
}

pub fn order_of_apart_capped(x: &Crn, y: &Crn, cap: Fuel) -> Option<Apart> {
    (0..=cap.0 as u64).find_map(|t| compare_at_level(x, y, t))
}

/// `x <= y` is refutable exactly when `y < x` shows up at some precision.
pub fn crn_refute_leq(x: &Crn, y: &Crn, fuel: Fuel) -> LeqVerdict {
    match crn_compare_fuel(y, x, fuel) {
        OrderVerdict::Less => LeqVerdict::Refuted,
        _ => LeqVerdict::Unknown(fuel),
    }
}

/// Coarse two-way locator for a CRN promised to lie in `e`.
///
/// Returns 0 when `x` lies in the left two thirds of `e` and 1 when it lies
/// in the right two thirds. Not extensional: equal CRNs near the middle may
/// get different bits.
pub fn coarse_locate(x: &Crn, e: &Interval) -> Result<u8, NumericsError> {
    let len = e.width();
    if !len.is_positive() {
        return Err(NumericsError::DegenerateInterval);
    }
    let q = x.approx(&(&len / int(6)));
    Ok(if q <= e.midpoint() { 0 } else { 1 })
}

/// The sub-interval `E_b` certified by [`coarse_locate`] returning `b`.
pub fn located_part(e: &Interval, bit: u8) -> Interval {
    let two_thirds = e.width() * int(2) / int(3);
    let (lo, hi) = if bit == 0 {
        (e.lo().clone(), e.lo() + two_thirds)
    } else {
        (e.hi() - two_thirds, e.hi().clone())
    };
    Interval::new(lo, hi).expect("sub-interval of a proper interval")
}
