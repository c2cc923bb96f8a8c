//! A structured assembler for instruction graphs.
//!
//! Code is emitted linearly; control flow uses labels and pseudo-gotos. A
//! goto never becomes an instruction: `finish` resolves every successor
//! through goto chains, so structured constructs compile to pure branch
//! wiring and the unit-cost accounting of the graph is undisturbed.

use super::{BuildError, Dir, Op, Pc, Program, Sym, Tape};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Label(usize);

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Target {
    /// The next emitted instruction.
    Next,
    L(Label),
}

enum RawOp {
    Move(Tape, Dir),
    Write(Tape, Sym),
    Query,
    Halt,
    Branch(Tape, Target, Target, Target),
    Goto(Target),
}

#[derive(Default)]
pub struct Asm {
    raw: Vec<RawOp>,
    labels: Vec<Option<usize>>,
}

impl Asm {
    pub fn new() -> Self {
        Asm::default()
    }

    pub fn new_label(&mut self) -> Label {
        self.labels.push(None);
        Label(self.labels.len() - 1)
    }

    /// Bind a label to the position of the next emitted instruction.
    pub fn bind(&mut self, l: Label) {
        assert!(self.labels[l.0].is_none(), "label bound twice");
        self.labels[l.0] = Some(self.raw.len());
    }

    pub fn move_(&mut self, t: Tape, d: Dir) {
        self.raw.push(RawOp::Move(t, d));
    }

    pub fn write(&mut self, t: Tape, s: Sym) {
        self.raw.push(RawOp::Write(t, s));
    }

    pub fn query(&mut self) {
        self.raw.push(RawOp::Query);
    }

    pub fn halt(&mut self) {
        self.raw.push(RawOp::Halt);
    }

    pub fn goto(&mut self, l: Label) {
        self.raw.push(RawOp::Goto(Target::L(l)));
    }

    pub fn branch(&mut self, t: Tape, zero: Target, one: Target, blank: Target) {
        self.raw.push(RawOp::Branch(t, zero, one, blank));
    }

    /// Read the scanned symbol of `t` (one step) and run one of three arms.
    pub fn if3(
        &mut self,
        t: Tape,
        on_zero: impl FnOnce(&mut Asm),
        on_one: impl FnOnce(&mut Asm),
        on_blank: impl FnOnce(&mut Asm),
    ) {
        let (lz, lo, lb, lend) = (
            self.new_label(),
            self.new_label(),
            self.new_label(),
            self.new_label(),
        );
        self.branch(t, Target::L(lz), Target::L(lo), Target::L(lb));
        self.bind(lz);
        on_zero(self);
        self.goto(lend);
        self.bind(lo);
        on_one(self);
        self.goto(lend);
        self.bind(lb);
        on_blank(self);
        self.bind(lend);
    }

    /// Loop while the scanned symbol of `t` is in `syms`. The guard costs one
    /// step per evaluation, including the final failing one.
    pub fn while_in(&mut self, t: Tape, syms: &[Sym], body: impl FnOnce(&mut Asm)) {
        let head = self.new_label();
        let lbody = self.new_label();
        let exit = self.new_label();
        let arm = |s: Sym| {
            if syms.contains(&s) {
                Target::L(lbody)
            } else {
                Target::L(exit)
            }
        };
        self.bind(head);
        self.branch(t, arm(Sym::Zero), arm(Sym::One), arm(Sym::Blank));
        self.bind(lbody);
        body(self);
        self.goto(head);
        self.bind(exit);
    }

    /// Resolve labels, splice out gotos, validate, and produce the program.
    pub fn finish(self, work_tapes: u8) -> Result<Program, BuildError> {
        let n = self.raw.len();
        // Where a raw position leads once gotos are followed.
        let position_of = |t: Target, at: usize| -> Result<usize, BuildError> {
            match t {
                Target::Next => Ok(at + 1),
                Target::L(l) => self.labels[l.0].ok_or(BuildError::UnboundLabel(l.0)),
            }
        };
        let entry_of = |mut pos: usize| -> Result<usize, BuildError> {
            let mut hops = 0usize;
            loop {
                if pos >= n {
                    return Err(BuildError::FallsThrough);
                }
                match &self.raw[pos] {
                    RawOp::Goto(t) => {
                        hops += 1;
                        if hops > n {
                            return Err(BuildError::GotoCycle(pos));
                        }
                        pos = position_of(*t, pos)?;
                    }
                    _ => return Ok(pos),
                }
            }
        };
        // Final indices for non-goto instructions.
        let mut final_index = vec![u32::MAX; n];
        let mut count: u32 = 0;
        for (i, op) in self.raw.iter().enumerate() {
            if !matches!(op, RawOp::Goto(_)) {
                final_index[i] = count;
                count += 1;
            }
        }
        let resolve = |t: Target, at: usize| -> Result<Pc, BuildError> {
            Ok(final_index[entry_of(position_of(t, at)?)?])
        };
        let mut ops: Vec<Op> = Vec::with_capacity(count as usize);
        for (i, raw) in self.raw.iter().enumerate() {
            let op = match raw {
                RawOp::Goto(_) => continue,
                RawOp::Move(t, d) => Op::Move {
                    tape: *t,
                    dir: *d,
                    next: resolve(Target::Next, i)?,
                },
                RawOp::Write(t, s) => Op::Write {
                    tape: *t,
                    sym: *s,
                    next: resolve(Target::Next, i)?,
                },
                RawOp::Query => Op::Query {
                    next: resolve(Target::Next, i)?,
                },
                RawOp::Halt => Op::Halt,
                RawOp::Branch(t, z, o, b) => Op::Branch {
                    tape: *t,
                    zero: resolve(*z, i)?,
                    one: resolve(*o, i)?,
                    blank: resolve(*b, i)?,
                },
            };
            ops.push(op);
        }
        if ops.is_empty() {
            return Err(BuildError::Empty);
        }
        let entry = final_index[entry_of(0)?];
        Program::new(work_tapes, entry, ops)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::BitString;
    use crate::machine::interp::{run, Status};
    use crate::machine::Machine;
    use crate::oracle::Oracle;

    #[test]
    fn structured_loop_compiles_and_runs() {
        // Copy the input to the output, then halt.
        let mut a = Asm::new();
        a.while_in(Tape::Input, &[Sym::Zero, Sym::One], |a| {
            a.if3(
                Tape::Input,
                |a| a.write(Tape::Output, Sym::Zero),
                |a| a.write(Tape::Output, Sym::One),
                |_| {},
            );
            a.move_(Tape::Input, Dir::Right);
            a.move_(Tape::Output, Dir::Right);
        });
        a.halt();
        let m = Machine::new("copy", a.finish(0).unwrap());
        let input: BitString = "1011".parse().unwrap();
        let out = run(&m, &mut Oracle::constant(""), &input, 1000);
        assert_eq!(out.status, Status::Halted);
        assert_eq!(out.output, input);
        // Guard 5x, body 4x(2 reads + 2 writes... read+write+2 moves), halt:
        // exact count asserted to pin the cost model.
        assert_eq!(out.trace.time, 5 + 4 * 4 + 1);
    }

    #[test]
    fn goto_chains_are_spliced_out() {
        let mut a = Asm::new();
        let l1 = a.new_label();
        let l2 = a.new_label();
        a.goto(l1);
        a.bind(l1);
        a.goto(l2);
        a.bind(l2);
        a.halt();
        let p = a.finish(0).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p.entry(), 0);
    }

    #[test]
    fn goto_cycle_is_rejected() {
        let mut a = Asm::new();
        let l = a.new_label();
        a.bind(l);
        a.goto(l);
        a.halt();
        assert!(matches!(a.finish(0), Err(BuildError::GotoCycle(_))));
    }

    #[test]
    fn fallthrough_is_rejected() {
        let mut a = Asm::new();
        a.move_(Tape::Input, Dir::Right);
        assert!(matches!(a.finish(0), Err(BuildError::FallsThrough)));
    }
}
