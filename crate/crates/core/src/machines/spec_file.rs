//! JSON machine spec files:
//!
//! ```json
//! {"registers": 2,
//!  "code": [["DECJZ", 0, "done"], ["DECJZ", 1, "start"], ["HALT1"]],
//!  "labels": {"start": 0, "done": 2}}
//! ```
//!
//! A `DECJZ` target is a label name; a bare integer index is also accepted.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{Instr, MachineError, StepMachine};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MachineSpec {
    pub registers: usize,
    pub code: Vec<Vec<Value>>,
    #[serde(default)]
    pub labels: BTreeMap<String, usize>,
}

fn spec_err(msg: impl Into<String>) -> MachineError {
    MachineError::Spec(msg.into())
}

fn as_index(v: &Value, what: &str, at: usize) -> Result<usize, MachineError> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| spec_err(format!("instruction {at}: {what} must be a nonnegative integer")))
}

impl MachineSpec {
    pub fn from_json(text: &str) -> Result<Self, MachineError> {
        serde_json::from_str(text).map_err(|e| spec_err(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("spec serializes")
    }

    pub fn build(&self) -> Result<StepMachine, MachineError> {
        let mut code = Vec::with_capacity(self.code.len());
        for (at, ins) in self.code.iter().enumerate() {
            let op = ins
                .first()
                .and_then(Value::as_str)
                .ok_or_else(|| spec_err(format!("instruction {at}: missing opcode")))?;
            let arity = match op {
                "INC" => 2,
                "DECJZ" => 3,
                "HALT0" | "HALT1" => 1,
                other => return Err(spec_err(format!("instruction {at}: unknown opcode {other:?}"))),
            };
            if ins.len() != arity {
                return Err(spec_err(format!(
                    "instruction {at}: {op} takes {} operand(s)",
                    arity - 1
                )));
            }
            code.push(match op {
                "INC" => Instr::Inc(as_index(&ins[1], "register", at)?),
                "DECJZ" => {
                    let target = match &ins[2] {
                        Value::String(name) => *self
                            .labels
                            .get(name)
                            .ok_or_else(|| MachineError::UnknownLabel(name.clone()))?,
                        v => as_index(v, "label", at)?,
                    };
                    Instr::DecJz(as_index(&ins[1], "register", at)?, target)
                }
                "HALT0" => Instr::Halt0,
                _ => Instr::Halt1,
            });
        }
        StepMachine::new(self.registers, code)
    }
}

impl From<&StepMachine> for MachineSpec {
    /// Jump targets become labels named `L<index>`.
    fn from(m: &StepMachine) -> Self {
        let mut labels = BTreeMap::new();
        let code = m
            .code()
            .iter()
            .map(|ins| match *ins {
                Instr::Inc(r) => vec![Value::from("INC"), Value::from(r)],
                Instr::DecJz(r, t) => {
                    let name = format!("L{t}");
                    labels.insert(name.clone(), t);
                    vec![Value::from("DECJZ"), Value::from(r), Value::from(name)]
                }
                Instr::Halt0 => vec![Value::from("HALT0")],
                Instr::Halt1 => vec![Value::from("HALT1")],
            })
            .collect();
        MachineSpec { registers: m.registers(), code, labels }
    }
}

impl StepMachine {
    pub fn from_spec_json(text: &str) -> Result<Self, MachineError> {
        MachineSpec::from_json(text)?.build()
    }

    pub fn to_spec_json(&self) -> String {
        MachineSpec::from(self).to_json()
    }
}

#[cfg(test)]
mod tests {
    use super::super::{countdown, halts_at, never_halts, parity, zero_loops};
    use super::*;

    #[test]
    fn parses_named_labels() {
        let m = StepMachine::from_spec_json(
            r#"{"registers": 2,
                "code": [["DECJZ", 0, "done"], ["DECJZ", 1, "start"], ["HALT1"]],
                "labels": {"start": 0, "done": 2}}"#,
        )
        .unwrap();
        assert_eq!(m, countdown());
    }

    #[test]
    fn rejects_bad_specs() {
        let cases = [
            r#"{"registers": 1, "code": [["HALT0"]], "extra": 1}"#,
            r#"{"registers": 1, "code": [["JMP", 0], ["HALT0"]]}"#,
            r#"{"registers": 1, "code": [["INC"], ["HALT0"]]}"#,
            r#"{"registers": 1, "code": [["DECJZ", 0, "nowhere"], ["HALT0"]]}"#,
            r#"{"registers": 1, "code": [["INC", 3], ["HALT0"]]}"#,
            r#"{"registers": 1, "code": [["INC", 0]]}"#,
            r#"{"registers": 1, "code": [["INC", -1], ["HALT0"]]}"#,
            r#"not json"#,
        ];
        for c in cases {
            assert!(StepMachine::from_spec_json(c).is_err(), "{c}");
        }
    }

    #[test]
    fn spec_round_trip() {
        for m in [halts_at(5, 0), never_halts(), parity(), countdown(), zero_loops()] {
            assert_eq!(StepMachine::from_spec_json(&m.to_spec_json()).unwrap(), m);
        }
    }
}
