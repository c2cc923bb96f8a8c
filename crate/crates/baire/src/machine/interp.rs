//! The interpreter: deterministic execution with exact step accounting.

use serde::{Deserialize, Serialize};

use super::{Dir, Machine, Op, Sym, Tape};
use crate::bits::BitString;
use crate::oracle::OracleSource;
use crate::resources::{QueryEvent, Trace};

/// Default fuel for library entry points that do not take one explicitly.
pub const DEFAULT_FUEL: u64 = 10_000_000;

const CELL_ZERO: u8 = 0;
const CELL_ONE: u8 = 1;
const CELL_BLANK: u8 = 2;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Halted,
    FuelExhausted,
}

/// Result of one run: status, the output-tape content up to the first blank,
/// and the full cost trace.
#[derive(Clone, Debug)]
pub struct RunOutcome {
    pub status: Status,
    pub output: BitString,
    pub trace: Trace,
}

impl RunOutcome {
    pub fn halted(&self) -> bool {
        self.status == Status::Halted
    }
}

struct TapeBuf {
    cells: Vec<u8>,
    head: usize,
}

impl TapeBuf {
    fn new() -> Self {
        TapeBuf {
            cells: Vec::new(),
            head: 0,
        }
    }

    fn from_bits(s: &BitString) -> Self {
        TapeBuf {
            cells: s.bits().iter().map(|&b| if b { CELL_ONE } else { CELL_ZERO }).collect(),
            head: 0,
        }
    }

    #[inline]
    fn read(&self) -> u8 {
        self.cells.get(self.head).copied().unwrap_or(CELL_BLANK)
    }

    #[inline]
    fn write(&mut self, s: u8) {
        if self.head >= self.cells.len() {
            if s == CELL_BLANK {
                return;
            }
            self.cells.resize(self.head + 1, CELL_BLANK);
        }
        self.cells[self.head] = s;
    }

    #[inline]
    fn step(&mut self, dir: Dir) {
        match dir {
            // One-way infinite: moving left on cell 0 leaves the head there.
            Dir::Left => self.head = self.head.saturating_sub(1),
            Dir::Right => self.head += 1,
        }
    }

    /// Content from cell 0 up to the first blank.
    fn prefix_content(&self) -> BitString {
        let mut bits = Vec::new();
        for &c in &self.cells {
            match c {
                CELL_ZERO => bits.push(false),
                CELL_ONE => bits.push(true),
                _ => break,
            }
        }
        BitString::from_bits(bits)
    }

    /// Replace the prefix content with `answer`, blanking what the old
    /// content occupied beyond it. The head does not move.
    fn replace_prefix(&mut self, answer: &BitString) {
        let old_end = self
            .cells
            .iter()
            .position(|&c| c == CELL_BLANK)
            .unwrap_or(self.cells.len());
        let new_len = answer.len();
        if self.cells.len() < new_len {
            self.cells.resize(new_len, CELL_BLANK);
        }
        for (i, &b) in answer.bits().iter().enumerate() {
            self.cells[i] = if b { CELL_ONE } else { CELL_ZERO };
        }
        for i in new_len..old_end {
            self.cells[i] = CELL_BLANK;
        }
    }
}

fn sym_to_cell(s: Sym) -> u8 {
    match s {
        Sym::Zero => CELL_ZERO,
        Sym::One => CELL_ONE,
        Sym::Blank => CELL_BLANK,
    }
}

/// Final state of one tape, for inspection in tests and the CLI.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TapeSnapshot {
    /// Rendered cells up to the last non-blank, `.` for blank.
    pub content: String,
    pub head: usize,
}

impl TapeBuf {
    fn snapshot(&self) -> TapeSnapshot {
        let last = self
            .cells
            .iter()
            .rposition(|&c| c != CELL_BLANK)
            .map(|p| p + 1)
            .unwrap_or(0);
        let content = self.cells[..last]
            .iter()
            .map(|&c| match c {
                CELL_ZERO => '0',
                CELL_ONE => '1',
                _ => '.',
            })
            .collect();
        TapeSnapshot {
            content,
            head: self.head,
        }
    }
}

/// Run a machine against an oracle on the given input with a fuel bound.
pub fn run(
    machine: &Machine,
    oracle: &mut dyn OracleSource,
    input: &BitString,
    fuel: u64,
) -> RunOutcome {
    run_recording(machine, oracle, input, fuel, false)
}

/// As [`run`], optionally recording the query and answer strings in the
/// trace (needed by adversary constructions that replay runs).
pub fn run_recording(
    machine: &Machine,
    oracle: &mut dyn OracleSource,
    input: &BitString,
    fuel: u64,
    record_queries: bool,
) -> RunOutcome {
    exec(machine, oracle, input, fuel, record_queries).0
}

/// As [`run`], additionally returning a snapshot of every tape in tape-index
/// order (input, output, oracle, work tapes). Used by macro-level tests that
/// need to see heads and cell contents.
pub fn run_debug(
    machine: &Machine,
    oracle: &mut dyn OracleSource,
    input: &BitString,
    fuel: u64,
) -> (RunOutcome, Vec<TapeSnapshot>) {
    let (out, tapes) = exec(machine, oracle, input, fuel, false);
    (out, tapes.iter().map(TapeBuf::snapshot).collect())
}

fn exec(
    machine: &Machine,
    oracle: &mut dyn OracleSource,
    input: &BitString,
    fuel: u64,
    record_queries: bool,
) -> (RunOutcome, Vec<TapeBuf>) {
    let program = &machine.program;
    let ntapes = 3 + program.work_tapes() as usize;
    let mut tapes: Vec<TapeBuf> = (0..ntapes).map(|_| TapeBuf::new()).collect();
    tapes[0] = TapeBuf::from_bits(input);

    let tape_index = |t: Tape| -> usize {
        match t {
            Tape::Input => 0,
            Tape::Output => 1,
            Tape::Oracle => 2,
            Tape::Work(i) => 3 + i as usize,
        }
    };

    let ops = program.ops();
    let mut pc = program.entry() as usize;
    let mut time: u64 = 0;
    let mut queries: Vec<QueryEvent> = Vec::new();
    let mut query_log: Option<Vec<(BitString, BitString)>> =
        if record_queries { Some(Vec::new()) } else { None };

    let status = loop {
        if time == fuel {
            break Status::FuelExhausted;
        }
        time += 1;
        match &ops[pc] {
            Op::Move { tape, dir, next } => {
                tapes[tape_index(*tape)].step(*dir);
                pc = *next as usize;
            }
            Op::Write { tape, sym, next } => {
                tapes[tape_index(*tape)].write(sym_to_cell(*sym));
                pc = *next as usize;
            }
            Op::Query { next } => {
                let q = tapes[2].prefix_content();
                let answer = oracle.answer(&q);
                tapes[2].replace_prefix(&answer);
                queries.push(QueryEvent {
                    step: time,
                    query_len: q.len() as u64,
                    answer_len: answer.len() as u64,
                });
                if let Some(log) = query_log.as_mut() {
                    log.push((q, answer));
                }
                pc = *next as usize;
            }
            Op::Branch { tape, zero, one, blank } => {
                pc = match tapes[tape_index(*tape)].read() {
                    CELL_ZERO => *zero as usize,
                    CELL_ONE => *one as usize,
                    _ => *blank as usize,
                } as usize;
            }
            Op::Halt => break Status::Halted,
        }
    };

    let outcome = RunOutcome {
        status,
        output: tapes[1].prefix_content(),
        trace: Trace {
            input_length: input.len() as u64,
            time,
            queries,
            query_log,
        },
    };
    (outcome, tapes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machine::Program;
    use crate::oracle::Oracle;

    fn halt_machine() -> Machine {
        Machine::new("halt", Program::new(0, 0, vec![Op::Halt]).unwrap())
    }

    #[test]
    fn halt_immediately_costs_one_step() {
        let m = halt_machine();
        let mut o = Oracle::constant("");
        let out = run(&m, &mut o, &BitString::new(), 100);
        assert_eq!(out.status, Status::Halted);
        assert_eq!(out.output, BitString::new());
        assert_eq!(out.trace.time, 1);
    }

    #[test]
    fn fuel_zero_exhausts_with_empty_trace() {
        let m = halt_machine();
        let mut o = Oracle::constant("");
        let out = run(&m, &mut o, &"01".parse().unwrap(), 0);
        assert_eq!(out.status, Status::FuelExhausted);
        assert_eq!(out.trace.time, 0);
        assert!(out.trace.queries.is_empty());
    }

    #[test]
    fn query_step_semantics() {
        // Write "0" on the oracle tape, query, halt. With the table oracle
        // {"0" -> "11"} the query costs one step, the tape is replaced by the
        // answer, and the head has not moved.
        let ops = vec![
            Op::Write { tape: Tape::Oracle, sym: Sym::Zero, next: 1 },
            Op::Query { next: 2 },
            // Head is still on cell 0; branch to prove it reads the answer's
            // first symbol (a one), then halt either way.
            Op::Branch { tape: Tape::Oracle, zero: 3, one: 4, blank: 3 },
            Op::Halt,
            Op::Write { tape: Tape::Output, sym: Sym::One, next: 3 },
        ];
        let m = Machine::new("probe", Program::new(0, 0, ops).unwrap());
        let mut o = Oracle::table(vec![("0", "11")], "");
        let out = run(&m, &mut o, &BitString::new(), 100);
        assert_eq!(out.status, Status::Halted);
        assert_eq!(out.output.to_string(), "1");
        assert_eq!(out.trace.queries.len(), 1);
        let ev = out.trace.queries[0];
        assert_eq!((ev.step, ev.query_len, ev.answer_len), (2, 1, 2));
    }

    #[test]
    fn shorter_answer_blanks_the_rest() {
        // Query replaces "11" with "0": the leftover cell must be blank.
        let ops = vec![
            Op::Write { tape: Tape::Oracle, sym: Sym::One, next: 1 },
            Op::Move { tape: Tape::Oracle, dir: Dir::Right, next: 2 },
            Op::Write { tape: Tape::Oracle, sym: Sym::One, next: 3 },
            Op::Query { next: 4 },
            // Head sits on cell 1, which must now be blank.
            Op::Branch { tape: Tape::Oracle, zero: 5, one: 5, blank: 6 },
            Op::Halt,
            Op::Write { tape: Tape::Output, sym: Sym::Zero, next: 5 },
        ];
        let m = Machine::new("blanking", Program::new(0, 0, ops).unwrap());
        let mut o = Oracle::table(vec![("11", "0")], "");
        let out = run(&m, &mut o, &BitString::new(), 100);
        assert_eq!(out.output.to_string(), "0");
    }

    #[test]
    fn determinism_byte_for_byte() {
        let ops = vec![
            Op::Write { tape: Tape::Oracle, sym: Sym::Zero, next: 1 },
            Op::Query { next: 2 },
            Op::Query { next: 3 },
            Op::Halt,
        ];
        let m = Machine::new("twice", Program::new(0, 0, ops).unwrap());
        let input: BitString = "010".parse().unwrap();
        let mut o1 = Oracle::doubling();
        let mut o2 = Oracle::doubling();
        let a = run_recording(&m, &mut o1, &input, 1000, true);
        let b = run_recording(&m, &mut o2, &input, 1000, true);
        assert_eq!(a.trace, b.trace);
        assert_eq!(a.output, b.output);
    }
}
