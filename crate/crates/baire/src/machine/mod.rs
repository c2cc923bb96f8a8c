//! The instrumented oracle-machine model.
//!
//! A program is a finite instruction graph over string tapes: every node is
//! one primitive (move a head, write a symbol, pose the oracle query, branch
//! on the scanned symbol, halt) and carries its successor(s) explicitly, so
//! the machine is deterministic by construction — exactly one successor per
//! (instruction, scanned symbol).
//!
//! Cost model: executing any instruction costs exactly one step, including
//! the query. Entering the query state replaces the oracle-tape content `b`
//! (cells 0 up to the first blank) with the oracle's answer `φ(b)` in that
//! single step, and no head moves. These are the only costs; control flow is
//! paid for by the branch instructions that realize it.
//!
//! Tapes are one-way infinite with a third blank symbol. Input is read-only
//! with its content at cells 0.., the output is read up to the first blank,
//! and the oracle tape is a single combined query/answer tape. Machines may
//! diverge, so every run carries a fuel bound; running out of fuel is an
//! ordinary outcome, not an error.
//!
//! Programs are usually written against the structured assembler in [`asm`]
//! and the macro library in [`macros`]; the graph form is what runs,
//! transforms, and serializes.

pub mod asm;
pub mod interp;
pub mod macros;
pub mod text;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::poly::{Description, UniPoly};

/// Tape selector. `Work` indices must stay below the program's tape count.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Tape {
    Input,
    Output,
    Oracle,
    Work(u8),
}

impl fmt::Display for Tape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tape::Input => write!(f, "input"),
            Tape::Output => write!(f, "output"),
            Tape::Oracle => write!(f, "oracle"),
            Tape::Work(i) => write!(f, "w{i}"),
        }
    }
}

impl std::str::FromStr for Tape {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "input" => Ok(Tape::Input),
            "output" => Ok(Tape::Output),
            "oracle" => Ok(Tape::Oracle),
            _ => s
                .strip_prefix('w')
                .and_then(|n| n.parse().ok())
                .map(Tape::Work)
                .ok_or_else(|| format!("unknown tape {s:?}")),
        }
    }
}

impl Serialize for Tape {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Tape {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Tape symbol: the binary alphabet plus blank.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sym {
    Zero,
    One,
    Blank,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Dir {
    Left,
    Right,
}

/// Program counter: an index into the instruction graph.
pub type Pc = u32;

/// One instruction node. Successors are explicit.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum Op {
    Move { tape: Tape, dir: Dir, next: Pc },
    Write { tape: Tape, sym: Sym, next: Pc },
    Query { next: Pc },
    Branch { tape: Tape, zero: Pc, one: Pc, blank: Pc },
    Halt,
}

/// Validation errors for programs and machine files.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BuildError {
    #[error("program is empty")]
    Empty,
    #[error("instruction {0} jumps to {1}, past the end of the program")]
    BadSuccessor(Pc, Pc),
    #[error("entry point {0} is out of range")]
    BadEntry(Pc),
    #[error("instruction {0} writes to the read-only input tape")]
    InputWrite(Pc),
    #[error("instruction {0} uses work tape {1} but the program declares {2}")]
    TapeOutOfRange(Pc, u8, u8),
    #[error("label {0} was never bound")]
    UnboundLabel(usize),
    #[error("label {0} is bound past the end of the program")]
    LabelAtEnd(usize),
    #[error("goto chain at instruction {0} never reaches an instruction")]
    GotoCycle(usize),
    #[error("control falls through the end of the program")]
    FallsThrough,
    #[error("malformed macro: {0}")]
    MalformedMacro(String),
}

/// A validated instruction graph.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "ProgramRepr", into = "ProgramRepr")]
pub struct Program {
    work_tapes: u8,
    entry: Pc,
    ops: Vec<Op>,
}

#[derive(Serialize, Deserialize)]
struct ProgramRepr {
    work_tapes: u8,
    #[serde(default)]
    entry: Pc,
    ops: Vec<Op>,
}

impl TryFrom<ProgramRepr> for Program {
    type Error = BuildError;
    fn try_from(r: ProgramRepr) -> Result<Self, BuildError> {
        Program::new(r.work_tapes, r.entry, r.ops)
    }
}

impl From<Program> for ProgramRepr {
    fn from(p: Program) -> Self {
        ProgramRepr {
            work_tapes: p.work_tapes,
            entry: p.entry,
            ops: p.ops,
        }
    }
}

impl Program {
    pub fn new(work_tapes: u8, entry: Pc, ops: Vec<Op>) -> Result<Self, BuildError> {
        if ops.is_empty() {
            return Err(BuildError::Empty);
        }
        let len = ops.len() as Pc;
        if entry >= len {
            return Err(BuildError::BadEntry(entry));
        }
        let check_tape = |pc: Pc, t: Tape| match t {
            Tape::Work(i) if i >= work_tapes => Err(BuildError::TapeOutOfRange(pc, i, work_tapes)),
            _ => Ok(()),
        };
        let check_succ = |pc: Pc, next: Pc| {
            if next >= len {
                Err(BuildError::BadSuccessor(pc, next))
            } else {
                Ok(())
            }
        };
        for (i, op) in ops.iter().enumerate() {
            let pc = i as Pc;
            match op {
                Op::Move { tape, next, .. } => {
                    check_tape(pc, *tape)?;
                    check_succ(pc, *next)?;
                }
                Op::Write { tape, next, .. } => {
                    if *tape == Tape::Input {
                        return Err(BuildError::InputWrite(pc));
                    }
                    check_tape(pc, *tape)?;
                    check_succ(pc, *next)?;
                }
                Op::Query { next } => check_succ(pc, *next)?,
                Op::Branch { tape, zero, one, blank } => {
                    check_tape(pc, *tape)?;
                    check_succ(pc, *zero)?;
                    check_succ(pc, *one)?;
                    check_succ(pc, *blank)?;
                }
                Op::Halt => {}
            }
        }
        Ok(Program {
            work_tapes,
            entry,
            ops,
        })
    }

    pub fn work_tapes(&self) -> u8 {
        self.work_tapes
    }

    pub fn entry(&self) -> Pc {
        self.entry
    }

    pub fn ops(&self) -> &[Op] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }
}

/// Resource bounds a machine claims for itself. Claims are inputs to the
/// checkers in [`crate::resources`]; nothing here is trusted.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct DeclaredBounds {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub step_count: Option<UniPoly>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub revision_bound: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub running_time: Option<Description>,
}

/// A named program with optional declared bounds.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Machine {
    pub name: String,
    pub program: Program,
    #[serde(default)]
    pub declared: DeclaredBounds,
}

impl Machine {
    pub fn new(name: impl Into<String>, program: Program) -> Self {
        Machine {
            name: name.into(),
            program,
            declared: DeclaredBounds::default(),
        }
    }

    pub fn with_declared(mut self, declared: DeclaredBounds) -> Self {
        self.declared = declared;
        self
    }
}
