//! Halting-derived CRNs.
//!
//! `s_n(k)` is 0 while the machine is still running at step `k`, and
//! `-2^-m` / `+2^-m` once it has halted with output 0 / 1 at step `m`. The
//! pair `(a_n, b_n)` splits the same information by output bit. All three
//! change value at most once, from 0 to `±2^-m`, which gives the regulator
//! `reg(eps) = min { t : 2^-t <= eps }`.

use std::sync::{Arc, Mutex};

use num_traits::Zero;

use super::{HaltTruth, MachineState, RunStatus, StepMachine};
use crate::numerics::{ceil_log2_inv, pow2_neg, Crn, Rational};

pub fn specker_term(machine: &StepMachine, n: u64, k: u64) -> Rational {
    match machine.run_bounded(n, k) {
        RunStatus::Running(_) => Rational::zero(),
        RunStatus::Halted { output, step } => signed_weight(output, step),
    }
}

/// `(a_n(k), b_n(k))`.
pub fn split_pair_terms(machine: &StepMachine, n: u64, k: u64) -> (Rational, Rational) {
    match machine.run_bounded(n, k) {
        RunStatus::Running(_) => (Rational::zero(), Rational::zero()),
        RunStatus::Halted { output, step } => pair_weight(output, step),
    }
}

fn signed_weight(output: u8, step: u64) -> Rational {
    let w = pow2_neg(step);
    if output == 0 {
        -w
    } else {
        w
    }
}

fn pair_weight(output: u8, step: u64) -> (Rational, Rational) {
    if output == 0 {
        (pow2_neg(step), Rational::zero())
    } else {
        (Rational::zero(), pow2_neg(step))
    }
}

/// Limit of `s_n` under known halting behaviour.
pub fn specker_limit(truth: &HaltTruth) -> Rational {
    match *truth {
        HaltTruth::Halts { output, step } => signed_weight(output, step),
        HaltTruth::Diverges => Rational::zero(),
    }
}

/// Limits of `(a_n, b_n)` under known halting behaviour.
pub fn pair_limits(truth: &HaltTruth) -> (Rational, Rational) {
    match *truth {
        HaltTruth::Halts { output, step } => pair_weight(output, step),
        HaltTruth::Diverges => (Rational::zero(), Rational::zero()),
    }
}

/// Resumable run shared by the terms of one `(machine, n)` sequence. Queries
/// only ever advance the saved configuration, so answers do not depend on
/// query order.
struct HaltProbe {
    machine: Arc<StepMachine>,
    state: Mutex<MachineState>,
}

impl HaltProbe {
    fn new(machine: Arc<StepMachine>, n: u64) -> Self {
        let state = Mutex::new(machine.initial_state(n));
        HaltProbe { machine, state }
    }

    /// `Some((output, m))` if the machine halted at some step `m <= k`.
    fn halted_by(&self, k: u64) -> Option<(u8, u64)> {
        let mut st = self.state.lock().expect("probe lock");
        if st.halted().is_none() && st.steps() < k {
            self.machine.advance_to(&mut st, k);
        }
        match st.halted() {
            Some(out) if st.steps() <= k => Some((out, st.steps())),
            _ => None,
        }
    }
}

pub fn specker_crn(machine: Arc<StepMachine>, n: u64) -> Crn {
    let probe = HaltProbe::new(machine, n);
    Crn::new(
        move |k| match probe.halted_by(k) {
            Some((out, m)) => signed_weight(out, m),
            None => Rational::zero(),
        },
        ceil_log2_inv,
    )
}

pub fn split_pair_crn(machine: Arc<StepMachine>, n: u64) -> (Crn, Crn) {
    let probe = Arc::new(HaltProbe::new(machine, n));
    let pa = probe.clone();
    let a = Crn::new(
        move |k| pa.halted_by(k).map(|(o, m)| pair_weight(o, m).0).unwrap_or_else(Rational::zero),
        ceil_log2_inv,
    );
    let b = Crn::new(
        move |k| probe.halted_by(k).map(|(o, m)| pair_weight(o, m).1).unwrap_or_else(Rational::zero),
        ceil_log2_inv,
    );
    (a, b)
}
