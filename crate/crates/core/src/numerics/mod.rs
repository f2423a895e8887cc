//! Exact rationals, constructive real numbers and their order semantics.

mod crn;
mod interval;
mod rational;

use thiserror::Error;

pub use crn::{
    coarse_locate, compare_at_level, crn_arith, crn_compare_fuel, crn_order_of_apart,
    crn_refute_leq, located_part, order_of_apart_capped, Apart, Crn, CrnOp, Fuel, LeqVerdict,
    OrderVerdict,
};
pub use interval::Interval;
pub use rational::{
    ceil_log2_inv, int, parse_rational, pow2_neg, rat, rat_arith, rmax, rmin, serde_rational,
    to_decimal, ArithOp, Rational,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumericsError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("malformed rational literal {0:?}")]
    BadRational(String),
    #[error("empty interval [{lo}, {hi}]")]
    EmptyInterval { lo: Rational, hi: Rational },
    #[error("interval has zero length")]
    DegenerateInterval,
    #[error("wrong number of operands for {0:?}")]
    Arity(CrnOp),
}
