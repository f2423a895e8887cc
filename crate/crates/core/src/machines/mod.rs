//! Minsky-style counter machines and the halting-derived CRN sequences.
//!
//! A machine reads its input `n` in register 0 and stops with `HALT0` or
//! `HALT1`. Steps are counted from 1; a `HALT` executed as the `m`-th
//! instruction yields `Halted { output, step: m }`.

mod specker;
mod spec_file;

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

pub use specker::{
    pair_limits, specker_crn, specker_limit, specker_term, split_pair_crn, split_pair_terms,
};
pub use spec_file::MachineSpec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MachineError {
    #[error("machine declares no registers; register 0 holds the input")]
    NoRegisters,
    #[error("machine has no instructions")]
    EmptyProgram,
    #[error("instruction {at} uses register {register} but only {declared} are declared")]
    RegisterOutOfRange { at: usize, register: usize, declared: usize },
    #[error("instruction {at} jumps to {target}, outside the program")]
    LabelOutOfRange { at: usize, target: usize },
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("the last instruction must be HALT0 or HALT1 so execution cannot run off the end")]
    OpenEnd,
    #[error("malformed machine spec: {0}")]
    Spec(String),
    #[error("machine already halted")]
    AlreadyHalted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Instr {
    Inc(usize),
    /// Jump to the target when the register is zero, otherwise decrement.
    DecJz(usize, usize),
    Halt0,
    Halt1,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StepMachine {
    registers: usize,
    code: Vec<Instr>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MachineState {
    pc: usize,
    regs: Vec<u64>,
    steps: u64,
    halted: Option<u8>,
}

impl MachineState {
    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn pc(&self) -> usize {
        self.pc
    }

    pub fn registers(&self) -> &[u64] {
        &self.regs
    }

    pub fn halted(&self) -> Option<u8> {
        self.halted
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RunStatus {
    Running(MachineState),
    Halted { output: u8, step: u64 },
}

impl RunStatus {
    pub fn is_running(&self) -> bool {
        matches!(self, RunStatus::Running(_))
    }
}

/// Halting behaviour established by a finite probe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HaltTruth {
    Halts { output: u8, step: u64 },
    /// The machine revisited a configuration, so it never halts.
    Diverges,
}

impl StepMachine {
    pub fn new(registers: usize, code: Vec<Instr>) -> Result<Self, MachineError> {
        if registers == 0 {
            return Err(MachineError::NoRegisters);
        }
        if code.is_empty() {
            return Err(MachineError::EmptyProgram);
        }
        for (at, ins) in code.iter().enumerate() {
            let reg = match *ins {
                Instr::Inc(r) => Some(r),
                Instr::DecJz(r, target) => {
                    if target >= code.len() {
                        return Err(MachineError::LabelOutOfRange { at, target });
                    }
                    Some(r)
                }
                Instr::Halt0 | Instr::Halt1 => None,
            };
            if let Some(register) = reg {
                if register >= registers {
                    return Err(MachineError::RegisterOutOfRange { at, register, declared: registers });
                }
            }
        }
        if !matches!(code.last(), Some(Instr::Halt0 | Instr::Halt1)) {
            return Err(MachineError::OpenEnd);
        }
        Ok(StepMachine { registers, code })
    }

    pub fn registers(&self) -> usize {
        self.registers
    }

    pub fn code(&self) -> &[Instr] {
        &self.code
    }

    pub fn initial_state(&self, n: u64) -> MachineState {
        let mut regs = vec![0; self.registers];
        regs[0] = n;
        MachineState { pc: 0, regs, steps: 0, halted: None }
    }

    /// Executes one instruction.
    pub fn step(&self, state: &mut MachineState) -> Result<(), MachineError> {
        if state.halted.is_some() {
            return Err(MachineError::AlreadyHalted);
        }
        state.steps += 1;
        match self.code[state.pc] {
            Instr::Inc(r) => {
                state.regs[r] += 1;
                state.pc += 1;
            }
            Instr::DecJz(r, target) => {
                if state.regs[r] == 0 {
                    state.pc = target;
                } else {
                    state.regs[r] -= 1;
                    state.pc += 1;
                }
            }
            Instr::Halt0 => state.halted = Some(0),
            Instr::Halt1 => state.halted = Some(1),
        }
        Ok(())
    }

    /// Advances `state` until it halts or has executed `k` steps in total.
    pub fn advance_to(&self, state: &mut MachineState, k: u64) {
        while state.halted.is_none() && state.steps < k {
            self.step(state).expect("not halted");
        }
    }

    /// Runs at most `k` steps on input `n`.
    pub fn run_bounded(&self, n: u64, k: u64) -> RunStatus {
        let mut state = self.initial_state(n);
        self.advance_to(&mut state, k);
        status_of(state)
    }

    /// Runs up to `probe` steps looking for a halt or a repeated configuration
    /// (Brent's cycle detection). `None` when neither shows up in budget.
    pub fn ground_truth(&self, n: u64, probe: u64) -> Option<HaltTruth> {
        let mut tortoise = self.initial_state(n);
        let mut hare = tortoise.clone();
        let mut power = 1u64;
        let mut lam = 0u64;
        loop {
            if let Some(output) = hare.halted {
                return Some(HaltTruth::Halts { output, step: hare.steps });
            }
            if hare.steps >= probe {
                return None;
            }
            self.step(&mut hare).expect("not halted");
            lam += 1;
            if hare.halted.is_none() && hare.pc == tortoise.pc && hare.regs == tortoise.regs {
                return Some(HaltTruth::Diverges);
            }
            if lam == power {
                tortoise = hare.clone();
                power *= 2;
                lam = 0;
            }
        }
    }
}

fn status_of(state: MachineState) -> RunStatus {
    match state.halted {
        Some(output) => RunStatus::Halted { output, step: state.steps },
        None => RunStatus::Running(state),
    }
}

/// Halts at exactly step `m >= 1` with `output`, whatever the input.
pub fn halts_at(m: u64, output: u8) -> StepMachine {
    assert!(m >= 1, "halt step is counted from 1");
    assert!(output <= 1);
    let mut code = vec![Instr::Inc(1); (m - 1) as usize];
    code.push(if output == 0 { Instr::Halt0 } else { Instr::Halt1 });
    StepMachine::new(2, code).expect("well-formed")
}

/// A one-instruction self loop guarded by an always-zero register.
pub fn never_halts() -> StepMachine {
    StepMachine::new(2, vec![Instr::DecJz(1, 0), Instr::Halt0]).expect("well-formed")
}

/// Outputs `n mod 2` after roughly `3n/2` steps.
pub fn parity() -> StepMachine {
    StepMachine::new(
        2,
        vec![
            Instr::DecJz(0, 3),
            Instr::DecJz(0, 4),
            Instr::DecJz(1, 0),
            Instr::Halt0,
            Instr::Halt1,
        ],
    )
    .expect("well-formed")
}

/// Counts register 0 down and outputs 1 after `2n + 2` steps.
pub fn countdown() -> StepMachine {
    StepMachine::new(2, vec![Instr::DecJz(0, 2), Instr::DecJz(1, 0), Instr::Halt1])
        .expect("well-formed")
}

/// Loops forever on input 0, outputs 1 on every other input.
pub fn zero_loops() -> StepMachine {
    StepMachine::new(1, vec![Instr::DecJz(0, 0), Instr::Halt1]).expect("well-formed")
}

/// Resolves built-in machine names: `never_halts`, `parity`, `countdown`,
/// `zero_loops` and `halts_at_<m>_<bit>`.
pub fn builtin(name: &str) -> Option<StepMachine> {
    match name {
        "never_halts" => Some(never_halts()),
        "parity" => Some(parity()),
        "countdown" => Some(countdown()),
        "zero_loops" => Some(zero_loops()),
        _ => {
            let rest = name.strip_prefix("halts_at_")?;
            let (m, b) = rest.split_once('_')?;
            let m: u64 = m.parse().ok()?;
            let b: u8 = b.parse().ok()?;
            (m >= 1 && b <= 1 && m <= 1 << 20).then(|| halts_at(m, b))
        }
    }
}

pub type MachineEnv = BTreeMap<String, Arc<StepMachine>>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_malformed_programs() {
        assert_eq!(StepMachine::new(0, vec![Instr::Halt0]), Err(MachineError::NoRegisters));
        assert_eq!(StepMachine::new(1, vec![]), Err(MachineError::EmptyProgram));
        assert!(matches!(
            StepMachine::new(1, vec![Instr::Inc(1), Instr::Halt0]),
            Err(MachineError::RegisterOutOfRange { .. })
        ));
        assert!(matches!(
            StepMachine::new(1, vec![Instr::DecJz(0, 5), Instr::Halt0]),
            Err(MachineError::LabelOutOfRange { .. })
        ));
        assert_eq!(StepMachine::new(1, vec![Instr::Inc(0)]), Err(MachineError::OpenEnd));
    }

    #[test]
    fn bounded_runs() {
        let m = halts_at(3, 1);
        for n in [0, 7] {
            assert!(m.run_bounded(n, 2).is_running());
            assert_eq!(m.run_bounded(n, 3), RunStatus::Halted { output: 1, step: 3 });
            assert_eq!(m.run_bounded(n, 50), RunStatus::Halted { output: 1, step: 3 });
        }
        assert!(never_halts().run_bounded(4, 100_000).is_running());
        assert_eq!(halts_at(1, 0).run_bounded(0, 1), RunStatus::Halted { output: 0, step: 1 });
    }

    #[test]
    fn stepping_a_halted_machine_is_an_error() {
        let m = halts_at(1, 1);
        let mut s = m.initial_state(0);
        m.step(&mut s).unwrap();
        assert_eq!(s.halted(), Some(1));
        assert_eq!(m.step(&mut s), Err(MachineError::AlreadyHalted));
    }

    #[test]
    fn library_machines() {
        for n in 0..20 {
            match parity().run_bounded(n, 1000) {
                RunStatus::Halted { output, .. } => assert_eq!(output as u64, n % 2),
                r => panic!("parity did not halt: {r:?}"),
            }
            assert_eq!(
                countdown().run_bounded(n, 1000),
                RunStatus::Halted { output: 1, step: 2 * n + 2 }
            );
        }
        assert!(zero_loops().run_bounded(0, 1000).is_running());
        assert_eq!(zero_loops().run_bounded(3, 10), RunStatus::Halted { output: 1, step: 2 });
    }

    #[test]
    fn ground_truth_probe() {
        assert_eq!(
            halts_at(10, 1).ground_truth(0, 100),
            Some(HaltTruth::Halts { output: 1, step: 10 })
        );
        assert_eq!(halts_at(10, 1).ground_truth(0, 5), None);
        assert_eq!(never_halts().ground_truth(3, 100), Some(HaltTruth::Diverges));
        assert_eq!(zero_loops().ground_truth(0, 100), Some(HaltTruth::Diverges));
        // unbounded growth has no repeated configuration
        let grow = StepMachine::new(2, vec![Instr::Inc(0), Instr::DecJz(1, 0), Instr::Halt0]).unwrap();
        assert_eq!(grow.ground_truth(0, 10_000), None);
    }

    #[test]
    fn builtins_by_name() {
        assert_eq!(builtin("halts_at_4_0"), Some(halts_at(4, 0)));
        assert_eq!(builtin("never_halts"), Some(never_halts()));
        assert_eq!(builtin("halts_at_0_1"), None);
        assert_eq!(builtin("halts_at_3_2"), None);
        assert_eq!(builtin("nope"), None);
    }
}
