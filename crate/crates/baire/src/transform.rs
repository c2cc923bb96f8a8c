//! Machine-to-machine and oracle-to-oracle constructions.
//!
//! All three machine transformers are honest program-to-program rewrites:
//! the result is an ordinary instruction graph that runs, traces, and
//! serializes like any hand-written machine. Bookkeeping lives on fresh work
//! tapes appended after the wrapped machine's own.
//!
//! * [`compose_machines`] builds the machine for `a ↦ M^(N^φ)(a)`: `M`'s
//!   oracle tape is redirected to a work tape, and every query of `M` runs an
//!   inlined, tape-remapped copy of `N` on that content against the real
//!   oracle, resuming `M` with `N`'s output as the answer.
//! * [`clock_finite_revision`] wraps a machine with a revision counter
//!   (start `N`) and a step budget (start `p(|a|)`). Each simulated step
//!   costs one budget unit; a query is blocked — the machine halts with `ε`
//!   — once the revision counter is exhausted; a length revision decrements
//!   the counter, re-records the length maximum, and extends the budget by
//!   `p(new) − p(old)`. On *every* oracle the result stays within `N`
//!   revisions and a step-count built from `(p, N)`; whenever the wrapped
//!   machine itself respects budget and revisions, the outputs agree.
//! * [`clock_with_majorant`] takes a claimed running-time tree `T`, extracts
//!   its majorant `(N, p)`, and pre-computes the budget by probing: `m`
//!   starts at `|a|` and `N` times becomes `max(m, |φ(0^(p(m)))|)`; the
//!   budget is then `p(m)`, which on length-monotone oracles dominates
//!   `T(|φ|, |a|)`. The simulation aborts with `ε` on budget exhaustion or
//!   on any further length revision, so the wrapper is revision-bounded and
//!   step-count-bounded on all oracles while agreeing with the wrapped
//!   machine on length-monotone oracles that `T` really covers.
//! * [`retract_to_reg`] maps any pure oracle onto a length-monotone one by
//!   cutting every answer to the running maximum `m(|a|) = max{|φ(0^k)| :
//!   k <= |a|}` (truncate and zero-pad). The running maximum — rather than
//!   the bare `|φ(0^|a|)|`, kept available as the `printed` variant — makes
//!   the image monotone in all cases, and on oracles that already are
//!   length-monotone the retraction is the identity.

use crate::bits::BitString;
use crate::frozen;
use crate::machine::asm::{Asm, Label, Target};
use crate::machine::interp::run;
use crate::machine::macros as m;
use crate::machine::{BuildError, DeclaredBounds, Dir, Machine, Op, Sym, Tape};
use crate::oracle::{Oracle, OracleSource};
use crate::poly::{Description, PolyError, UniPoly};

use Sym::{One, Zero};

const BITS: [Sym; 2] = [Zero, One];

#[derive(Debug, Clone, thiserror::Error)]
pub enum TransformError {
    #[error("retraction requires a pure (table or pattern) oracle")]
    NotPure,
    #[error("the construction needs {0} work tapes, more than a program may have")]
    TooManyTapes(usize),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Build(#[from] BuildError),
}

// =============================================================================
// Retraction onto the length-monotone oracles
// =============================================================================

/// Retract a pure oracle onto the length-monotone fragment using the
/// repaired (running-maximum) rule.
pub fn retract_to_reg(o: &Oracle) -> Result<Oracle, TransformError> {
    retract(o, false)
}

/// The unrepaired variant that cuts to `|φ(0^|a|)|` exactly as printed; its
/// image need not be length-monotone. Kept for comparison.
pub fn retract_printed(o: &Oracle) -> Result<Oracle, TransformError> {
    retract(o, true)
}

fn retract(o: &Oracle, printed: bool) -> Result<Oracle, TransformError> {
    if !o.is_pure() {
        return Err(TransformError::NotPure);
    }
    Ok(Oracle::Retract {
        base: Box::new(o.clone()),
        printed,
    })
}

// =============================================================================
// Shared instrumentation helpers
// =============================================================================

fn shadow_update(a: &mut Asm, stack: Tape, dir: Dir) {
    match dir {
        Dir::Right => m::stack_push0(a, stack),
        Dir::Left => m::stack_pop(a, stack),
    }
}

/// Measure the oracle answer (head on cell 0) into the empty binary counter
/// `alen` without destroying it, using `mir` as a transient unary mirror.
/// Post: oracle head on cell 0, answer intact, `mir` empty.
fn measure_answer_keep(a: &mut Asm, alen: Tape, mir: Tape) {
    let o = Tape::Oracle;
    a.while_in(o, &BITS, |a| {
        a.move_(mir, Dir::Right);
        a.write(mir, Zero);
        m::bin_inc(a, alen);
        a.move_(o, Dir::Right);
    });
    a.while_in(mir, &BITS, |a| {
        a.write(mir, Sym::Blank);
        a.move_(mir, Dir::Left);
        a.move_(o, Dir::Left);
    });
}

/// Emit the shared abort path: rewind the output head along its shadow,
/// erase the output, halt with `ε`.
fn emit_abort(a: &mut Asm, abort: Label, po: Tape) {
    a.bind(abort);
    m::stack_drain(a, po, Tape::Output, Dir::Left);
    m::erase_prefix(a, Tape::Output);
    a.halt();
}

// =============================================================================
// Finite-revision clock
// =============================================================================

/// Wrap `machine` with a revision counter of `revisions` and a step budget
/// governed by the polynomial `p`. See the module docs for the exact
/// semantics and guarantees.
pub fn clock_finite_revision(
    machine: &Machine,
    revisions: u64,
    p: &UniPoly,
) -> Result<Machine, TransformError> {
    let wm = machine.program.work_tapes() as usize;
    if wm + 12 > u8::MAX as usize {
        return Err(TransformError::TooManyTapes(wm + 12));
    }
    let w = |k: usize| Tape::Work((wm + k) as u8);
    let (bud, rev, rec, prev) = (w(0), w(1), w(2), w(3));
    let (alen, f) = (w(4), w(5));
    let (s1, s2, s3) = (w(6), w(7), w(8));
    let (pos, mir, po) = (w(9), w(10), w(11));

    let mut a = Asm::new();
    let labels: Vec<Label> = machine.program.ops().iter().map(|_| a.new_label()).collect();
    let abort = a.new_label();

    m::stack_init(&mut a, pos);
    m::stack_init(&mut a, po);
    m::measure_input(&mut a, mir, rec);
    m::eval_unipoly(&mut a, p, rec, bud, s1, s2);
    m::copy_value(&mut a, bud, prev);
    m::bin_write_lit(&mut a, rev, revisions);
    a.goto(labels[machine.program.entry() as usize]);

    for (i, op) in machine.program.ops().iter().enumerate() {
        a.bind(labels[i]);
        // One budget unit per simulated step.
        m::bin_dec_or_flag(&mut a, bud, f);
        m::if_flag(&mut a, f, |a| a.goto(abort), |_| {});
        match op {
            Op::Move { tape, dir, next } => {
                a.move_(*tape, *dir);
                if *tape == Tape::Oracle {
                    shadow_update(&mut a, pos, *dir);
                }
                if *tape == Tape::Output {
                    shadow_update(&mut a, po, *dir);
                }
                a.goto(labels[*next as usize]);
            }
            Op::Write { tape, sym, next } => {
                a.write(*tape, *sym);
                a.goto(labels[*next as usize]);
            }
            Op::Branch { tape, zero, one, blank } => {
                a.branch(
                    *tape,
                    Target::L(labels[*zero as usize]),
                    Target::L(labels[*one as usize]),
                    Target::L(labels[*blank as usize]),
                );
            }
            Op::Halt => a.halt(),
            Op::Query { next } => {
                // A query with the revision allowance exhausted is refused
                // outright: the wrapper cannot afford the answer it might get.
                m::bin_is_zero(&mut a, rev, f);
                m::if_flag(&mut a, f, |a| a.goto(abort), |_| {});
                a.query();
                m::shadow_walk(&mut a, pos, Tape::Oracle, Dir::Left);
                measure_answer_keep(&mut a, alen, mir);
                m::bin_cmp_gt(&mut a, alen, rec, f);
                m::if_flag(
                    &mut a,
                    f,
                    |a| {
                        // Length revision: spend one allowance, re-record the
                        // maximum, extend the budget by p(new) − p(old).
                        m::flag_clear(a, f);
                        m::bin_dec_or_flag(a, rev, f);
                        m::erase_value(a, rec);
                        m::copy_value(a, alen, rec);
                        m::eval_unipoly(a, p, rec, s3, s1, s2);
                        m::bin_sub(a, prev, s3);
                        m::bin_add(a, s3, bud);
                        m::bin_add(a, s3, prev);
                        m::erase_value(a, s3);
                    },
                    |_| {},
                );
                m::erase_value(&mut a, alen);
                m::shadow_walk(&mut a, pos, Tape::Oracle, Dir::Right);
                a.goto(labels[*next as usize]);
            }
        }
    }
    emit_abort(&mut a, abort, po);

    let program = a.finish((wm + 12) as u8)?;
    Ok(Machine {
        name: format!("flr-clock({}, N={revisions})", machine.name),
        program,
        declared: DeclaredBounds {
            step_count: Some(frozen::clock_revision_step_count(p)?),
            revision_bound: Some(revisions),
            running_time: None,
        },
    })
}

// =============================================================================
// Majorant clock
// =============================================================================

/// Wrap `machine` with the budget pre-computation derived from the majorant
/// of the claimed running time `t`. See the module docs.
pub fn clock_with_majorant(machine: &Machine, t: &Description) -> Result<Machine, TransformError> {
    let majorant = t.majorant();
    let p = &majorant.bound;
    let height = majorant.height;

    let wm = machine.program.work_tapes() as usize;
    if wm + 11 > u8::MAX as usize {
        return Err(TransformError::TooManyTapes(wm + 11));
    }
    let w = |k: usize| Tape::Work((wm + k) as u8);
    let (bud, rec, alen, f) = (w(0), w(1), w(2), w(3));
    let (s1, s2, s3, s4) = (w(4), w(5), w(6), w(7));
    let (pos, mir, po) = (w(8), w(9), w(10));

    let mut a = Asm::new();
    let labels: Vec<Label> = machine.program.ops().iter().map(|_| a.new_label()).collect();
    let abort = a.new_label();

    m::stack_init(&mut a, pos);
    m::stack_init(&mut a, po);
    m::measure_input(&mut a, mir, rec);
    for _ in 0..height {
        // One probe round: m := max(m, |φ(0^(p(m)))|).
        m::eval_unipoly(&mut a, p, rec, s3, s1, s2);
        m::copy_value(&mut a, s3, s4);
        let wloop = a.new_label();
        let wdone = a.new_label();
        a.bind(wloop);
        m::bin_dec_or_flag(&mut a, s3, f);
        m::if_flag(
            &mut a,
            f,
            |a| {
                m::flag_clear(a, f);
                a.goto(wdone);
            },
            |_| {},
        );
        a.write(Tape::Oracle, Zero);
        a.move_(Tape::Oracle, Dir::Right);
        a.goto(wloop);
        a.bind(wdone);
        a.query();
        let bloop = a.new_label();
        let bdone = a.new_label();
        a.bind(bloop);
        m::bin_dec_or_flag(&mut a, s4, f);
        m::if_flag(
            &mut a,
            f,
            |a| {
                m::flag_clear(a, f);
                a.goto(bdone);
            },
            |_| {},
        );
        a.move_(Tape::Oracle, Dir::Left);
        a.goto(bloop);
        a.bind(bdone);
        m::measure_and_erase_answer(&mut a, alen);
        m::bin_cmp_gt(&mut a, alen, rec, f);
        m::if_flag(
            &mut a,
            f,
            |a| {
                m::flag_clear(a, f);
                m::erase_value(a, rec);
                m::copy_value(a, alen, rec);
            },
            |_| {},
        );
        m::erase_value(&mut a, alen);
        m::erase_value(&mut a, s3);
        m::erase_value(&mut a, s4);
    }
    m::eval_unipoly(&mut a, p, rec, bud, s1, s2);
    a.goto(labels[machine.program.entry() as usize]);

    for (i, op) in machine.program.ops().iter().enumerate() {
        a.bind(labels[i]);
        m::bin_dec_or_flag(&mut a, bud, f);
        m::if_flag(&mut a, f, |a| a.goto(abort), |_| {});
        match op {
            Op::Move { tape, dir, next } => {
                a.move_(*tape, *dir);
                if *tape == Tape::Oracle {
                    shadow_update(&mut a, pos, *dir);
                }
                if *tape == Tape::Output {
                    shadow_update(&mut a, po, *dir);
                }
                a.goto(labels[*next as usize]);
            }
            Op::Write { tape, sym, next } => {
                a.write(*tape, *sym);
                a.goto(labels[*next as usize]);
            }
            Op::Branch { tape, zero, one, blank } => {
                a.branch(
                    *tape,
                    Target::L(labels[*zero as usize]),
                    Target::L(labels[*one as usize]),
                    Target::L(labels[*blank as usize]),
                );
            }
            Op::Halt => a.halt(),
            Op::Query { next } => {
                a.query();
                m::shadow_walk(&mut a, pos, Tape::Oracle, Dir::Left);
                measure_answer_keep(&mut a, alen, mir);
                // Any further length revision means the oracle escaped the
                // probed budget: give up.
                m::bin_cmp_gt(&mut a, alen, rec, f);
                m::if_flag(&mut a, f, |a| a.goto(abort), |_| {});
                m::erase_value(&mut a, alen);
                m::shadow_walk(&mut a, pos, Tape::Oracle, Dir::Right);
                a.goto(labels[*next as usize]);
            }
        }
    }
    emit_abort(&mut a, abort, po);

    let program = a.finish((wm + 11) as u8)?;
    Ok(Machine {
        name: format!("majorant-clock({})", machine.name),
        program,
        declared: DeclaredBounds {
            step_count: Some(frozen::clock_majorant_step_count(p, height)?),
            revision_bound: Some(height + 1),
            running_time: None,
        },
    })
}

// =============================================================================
// Composition
// =============================================================================

/// Build the machine computing `a ↦ outer^(inner^φ)(a)`.
///
/// The inner machine must follow the library's tape discipline: work-tape
/// heads parked on their sentinels at halt, output written contiguously from
/// cell 0. All gallery machines and everything built from the macro library
/// qualifies.
pub fn compose_machines(outer: &Machine, inner: &Machine) -> Result<Machine, TransformError> {
    let wm = outer.program.work_tapes() as usize;
    let wn = inner.program.work_tapes() as usize;
    if wm + wn + 8 > u8::MAX as usize {
        return Err(TransformError::TooManyTapes(wm + wn + 8));
    }
    let qw = Tape::Work(wm as u8);
    let ni = Tape::Work((wm + 1) as u8);
    let shadow = Tape::Work((wm + 2) as u8);
    let mir = Tape::Work((wm + 3) as u8);
    let wo = Tape::Work((wm + 4) as u8);
    let inner_work = |j: u8| Tape::Work((wm + 5) as u8 + j);
    let pni = Tape::Work((wm + 5 + wn) as u8);
    let pno = Tape::Work((wm + 6 + wn) as u8);
    let pnq = Tape::Work((wm + 7 + wn) as u8);

    let remap_outer = |t: Tape| match t {
        Tape::Oracle => qw,
        other => other,
    };
    let remap_inner = |t: Tape| match t {
        Tape::Input => ni,
        Tape::Output => wo,
        Tape::Oracle => Tape::Oracle,
        Tape::Work(j) => inner_work(j),
    };

    let mut a = Asm::new();
    let m_labels: Vec<Label> = outer.program.ops().iter().map(|_| a.new_label()).collect();

    m::stack_init(&mut a, shadow);
    m::stack_init(&mut a, pni);
    m::stack_init(&mut a, pno);
    m::stack_init(&mut a, pnq);
    a.goto(m_labels[outer.program.entry() as usize]);

    for (i, op) in outer.program.ops().iter().enumerate() {
        a.bind(m_labels[i]);
        match op {
            Op::Move { tape, dir, next } => {
                a.move_(remap_outer(*tape), *dir);
                if *tape == Tape::Oracle {
                    shadow_update(&mut a, shadow, *dir);
                }
                a.goto(m_labels[*next as usize]);
            }
            Op::Write { tape, sym, next } => {
                a.write(remap_outer(*tape), *sym);
                a.goto(m_labels[*next as usize]);
            }
            Op::Branch { tape, zero, one, blank } => {
                a.branch(
                    remap_outer(*tape),
                    Target::L(m_labels[*zero as usize]),
                    Target::L(m_labels[*one as usize]),
                    Target::L(m_labels[*blank as usize]),
                );
            }
            Op::Halt => a.halt(),
            Op::Query { next } => {
                // The outer machine entered its query state: hand the tape
                // content to a fresh inlined run of the inner machine.
                m::shadow_walk(&mut a, shadow, qw, Dir::Left);
                m::copy_prefix_and_return(&mut a, qw, ni, mir);

                let n_labels: Vec<Label> =
                    inner.program.ops().iter().map(|_| a.new_label()).collect();
                let n_done = a.new_label();
                a.goto(n_labels[inner.program.entry() as usize]);
                for (j, nop) in inner.program.ops().iter().enumerate() {
                    a.bind(n_labels[j]);
                    match nop {
                        Op::Move { tape, dir, next } => {
                            a.move_(remap_inner(*tape), *dir);
                            match tape {
                                Tape::Input => shadow_update(&mut a, pni, *dir),
                                Tape::Output => shadow_update(&mut a, pno, *dir),
                                Tape::Oracle => shadow_update(&mut a, pnq, *dir),
                                Tape::Work(_) => {}
                            }
                            a.goto(n_labels[*next as usize]);
                        }
                        Op::Write { tape, sym, next } => {
                            a.write(remap_inner(*tape), *sym);
                            a.goto(n_labels[*next as usize]);
                        }
                        Op::Branch { tape, zero, one, blank } => {
                            a.branch(
                                remap_inner(*tape),
                                Target::L(n_labels[*zero as usize]),
                                Target::L(n_labels[*one as usize]),
                                Target::L(n_labels[*blank as usize]),
                            );
                        }
                        Op::Query { next } => {
                            a.query();
                            a.goto(n_labels[*next as usize]);
                        }
                        Op::Halt => a.goto(n_done),
                    }
                }
                a.bind(n_done);

                // Tear the inner run down and deliver its output as the
                // oracle answer the outer machine is waiting for.
                m::stack_drain(&mut a, pni, ni, Dir::Left);
                m::erase_prefix(&mut a, ni);
                m::stack_drain(&mut a, pnq, Tape::Oracle, Dir::Left);
                m::erase_prefix(&mut a, Tape::Oracle);
                m::stack_drain(&mut a, pno, wo, Dir::Left);
                m::erase_prefix(&mut a, qw);
                m::copy_prefix_and_return(&mut a, wo, qw, mir);
                m::erase_prefix(&mut a, wo);
                for j in 0..wn {
                    m::erase_value(&mut a, inner_work(j as u8));
                }
                m::shadow_walk(&mut a, shadow, qw, Dir::Right);
                a.goto(m_labels[*next as usize]);
            }
        }
    }

    let program = a.finish((wm + wn + 8) as u8)?;
    Ok(Machine::new(
        format!("compose({}, {})", outer.name, inner.name),
        program,
    ))
}

/// The oracle `b ↦ inner^φ(b)`: the reference point that composition is
/// tested against. The base oracle must be pure.
pub struct DerivedOracle {
    pub machine: Machine,
    pub base: Oracle,
    pub fuel: u64,
}

impl OracleSource for DerivedOracle {
    fn answer(&mut self, query: &BitString) -> BitString {
        let mut base = self.base.clone();
        run(&self.machine, &mut base, query, self.fuel).output
    }
}
