//! Machine file formats.
//!
//! Two interchangeable bodies live under one JSON roof: the raw instruction
//! graph (what the interpreter runs and what transformers emit) and the
//! structured macro form (what humans write). Loading a macro body expands
//! it through the assembler; the expanded size is whatever
//! [`Program::len`] then reports.
//!
//! The macro statements carry exact expansion costs, frozen here as
//! functions of operand lengths and pinned by measurement tests: for example
//! a [`MacroStmt::Copy`] of an `n`-symbol value costs exactly
//! [`cost_copy`]`(n)` steps every time it runs.

use serde::{Deserialize, Serialize};

use super::asm::Asm;
use super::macros as m;
use super::{BuildError, DeclaredBounds, Dir, Machine, Program, Sym, Tape};
use crate::bits::BitString;

/// Structured, serializable program body.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "do", rename_all = "snake_case")]
pub enum MacroStmt {
    Move {
        tape: Tape,
        dir: Dir,
    },
    Write {
        tape: Tape,
        sym: Sym,
    },
    Query,
    Halt,
    If {
        tape: Tape,
        #[serde(default)]
        zero: Vec<MacroStmt>,
        #[serde(default)]
        one: Vec<MacroStmt>,
        #[serde(default)]
        blank: Vec<MacroStmt>,
    },
    While {
        tape: Tape,
        on: Vec<Sym>,
        body: Vec<MacroStmt>,
    },
    /// Write a literal at the current head, moving right.
    WriteLit {
        tape: Tape,
        bits: BitString,
    },
    /// Copy one parked value tape onto another (which must be empty).
    Copy {
        src: Tape,
        dst: Tape,
    },
    /// Erase a parked value tape.
    Erase {
        tape: Tape,
    },
    /// Binary increment of a parked counter.
    Inc {
        tape: Tape,
    },
    /// Binary decrement; sets `flag` instead if the counter was zero.
    Dec {
        tape: Tape,
        flag: Tape,
    },
    /// Set `flag` iff the content of `a` is longer than the content of `b`.
    CmpLonger {
        a: Tape,
        b: Tape,
        flag: Tape,
    },
    /// Run the body `counter` times, counting the binary counter down to
    /// zero. `flag` must be clear before and is clear after.
    RepeatN {
        counter: Tape,
        flag: Tape,
        body: Vec<MacroStmt>,
    },
}

fn expand_seq(a: &mut Asm, stmts: &[MacroStmt]) {
    for s in stmts {
        expand(a, s);
    }
}

fn expand(a: &mut Asm, stmt: &MacroStmt) {
    match stmt {
        MacroStmt::Move { tape, dir } => a.move_(*tape, *dir),
        MacroStmt::Write { tape, sym } => a.write(*tape, *sym),
        MacroStmt::Query => a.query(),
        MacroStmt::Halt => a.halt(),
        MacroStmt::If { tape, zero, one, blank } => a.if3(
            *tape,
            |a| expand_seq(a, zero),
            |a| expand_seq(a, one),
            |a| expand_seq(a, blank),
        ),
        MacroStmt::While { tape, on, body } => {
            a.while_in(*tape, on, |a| expand_seq(a, body))
        }
        MacroStmt::WriteLit { tape, bits } => {
            let syms: Vec<Sym> = bits
                .bits()
                .iter()
                .map(|&b| if b { Sym::One } else { Sym::Zero })
                .collect();
            m::write_lit(a, *tape, &syms);
        }
        MacroStmt::Copy { src, dst } => m::copy_value(a, *src, *dst),
        MacroStmt::Erase { tape } => m::erase_value(a, *tape),
        MacroStmt::Inc { tape } => m::bin_inc(a, *tape),
        MacroStmt::Dec { tape, flag } => m::bin_dec_or_flag(a, *tape, *flag),
        MacroStmt::CmpLonger { a: x, b: y, flag } => m::unary_len_gt(a, *x, *y, *flag),
        MacroStmt::RepeatN { counter, flag, body } => {
            let top = a.new_label();
            let done = a.new_label();
            a.bind(top);
            m::bin_dec_or_flag(a, *counter, *flag);
            m::if_flag(
                a,
                *flag,
                |a| {
                    m::flag_clear(a, *flag);
                    a.goto(done);
                },
                |_| {},
            );
            expand_seq(a, body);
            a.goto(top);
            a.bind(done);
        }
    }
}

/// Expand a macro body into a validated program. A trailing halt is appended
/// so bodies may fall off their end.
pub fn build(work_tapes: u8, body: &[MacroStmt]) -> Result<Program, BuildError> {
    let mut a = Asm::new();
    expand_seq(&mut a, body);
    a.halt();
    a.finish(work_tapes)
}

/// On-disk machine representation: either an instruction graph or a macro
/// body, plus the declared bounds.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MachineFile {
    pub name: String,
    #[serde(default)]
    pub declared: DeclaredBounds,
    #[serde(flatten)]
    pub body: MachineBody,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MachineBody {
    Graph { program: Program },
    Macros { work_tapes: u8, macros: Vec<MacroStmt> },
}

impl MachineFile {
    pub fn into_machine(self) -> Result<Machine, BuildError> {
        let program = match self.body {
            MachineBody::Graph { program } => program,
            MachineBody::Macros { work_tapes, macros } => build(work_tapes, &macros)?,
        };
        Ok(Machine {
            name: self.name,
            program,
            declared: self.declared,
        })
    }

    /// Serialize a machine in (expanded) graph form.
    pub fn from_machine(machine: &Machine) -> MachineFile {
        MachineFile {
            name: machine.name.clone(),
            declared: machine.declared.clone(),
            body: MachineBody::Graph {
                program: machine.program.clone(),
            },
        }
    }
}

// =============================================================================
// Frozen expansion costs
// =============================================================================
//
// Each cost is the exact number of steps one macro invocation takes, as a
// function of its operand length, measured once on the interpreter and
// asserted by the regression tests below.

/// Steps for `WriteLit` of `n` symbols.
pub fn cost_write_lit(n: u64) -> u64 {
    2 * n
}

/// Steps for `Copy` of an `n`-symbol value.
pub fn cost_copy(n: u64) -> u64 {
    9 * n + 7
}

/// Steps for `Erase` of an `n`-symbol value.
pub fn cost_erase(n: u64) -> u64 {
    5 * n + 4
}

/// Steps for `Inc` when the counter starts with `k` low one-bits (the carry
/// run).
pub fn cost_inc(k: u64) -> u64 {
    5 * k + 5
}

/// Steps for `Dec` when the counter starts with `k` low zero-bits, not
/// counting a zero-valued counter (which instead costs the undo walk plus
/// the flag).
pub fn cost_dec(k: u64) -> u64 {
    5 * k + 6
}

/// Steps for `CmpLonger` on contents of lengths `la > lb` (the true case).
pub fn cost_cmp_longer_true(lb: u64) -> u64 {
    8 * lb + 14
}
