//! Executable witnesses: concrete machines and the adversarial oracle
//! constructions that defeat them.
//!
//! The machines:
//!
//! * [`iterated_apply_machine`] computes `φ^|a|(0)` — it has a small
//!   polynomial *step-count* (time is always justified by evidence on the
//!   tape) yet maps a polynomial-time oracle to output of exponential
//!   length, so no description-tree running time can bound it.
//! * [`max_length_machine`] computes `0^max{|φ(0^k)| : k <= |a|}` — it has a
//!   genuine running-time bound of shape `C(n + n l(n)) + C`, but every
//!   query can raise the running maximum, so its number of length revisions
//!   is unbounded.
//! * [`bruteforce_length_machine`] computes `0^|φ|(|a|)` by querying every
//!   string of length at most `|a|` — exponential everywhere, yet on oracles
//!   whose size function spikes on the tower values the budget
//!   `C l(l(3(n+2))) + C` dominates the enumeration.
//! * [`abort_early_machine`] is the brute force with the classic escape
//!   hatch: give up once the query count exceeds twice the largest answer
//!   seen. It agrees with the brute force on exponentially growing oracles
//!   and returns `ε` on small ones — and is exactly the heuristic that the
//!   delayed-growth oracles starve.
//!
//! The adversaries:
//!
//! * [`flr_stress`] answers every fresh query with an ever-longer string of
//!   zeros, forcing a length revision per fresh query; afterwards it plants
//!   a value longer than the whole observed run on some unqueried `0^k`, so
//!   a machine that stopped querying early is provably wrong on the
//!   finalized oracle.
//! * [`delayed_growth_adversary`] replays a machine to fixpoint against a
//!   growing table, planting a tower-sized answer whenever the machine
//!   exhausts a watched length class, and finalizes to a member of the
//!   delayed-growth class on which the machine's output can be compared
//!   with the true length functional.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::bits::BitString;
use crate::frozen;
use crate::machine::asm::Asm;
use crate::machine::interp::{run, run_recording, RunOutcome};
use crate::machine::macros as m;
use crate::machine::{DeclaredBounds, Dir, Machine, Sym, Tape};
use crate::oracle::{
    in_class_a, size_fn, tower_answer_len, tower_query_len, Adaptive, AdaptivePolicy, Oracle,
    OracleError, TableOracle,
};
use crate::resources::Verdict;

use Sym::{One, Zero};
use Tape::{Input, Oracle as OTape, Output};

const BITS: [Sym; 2] = [Zero, One];

#[derive(Debug, Clone, thiserror::Error)]
pub enum GalleryError {
    #[error("machine {0} ran out of fuel during the {1} phase")]
    FuelExhausted(String, &'static str),
    #[error("adversary construction failed: {0}")]
    AdversaryStuck(String),
    #[error("tower depth {0} exceeds the adversary's desk scale (max {1})")]
    DepthTooLarge(u32, u32),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

// =============================================================================
// Machines
// =============================================================================

/// `F(φ)(a) = φ^|a|(0)`: write `0` on the oracle tape, query once per input
/// symbol (the combined tape already holds the previous answer), and copy the
/// final answer out.
pub fn iterated_apply_machine() -> Machine {
    let w0 = Tape::Work(0);
    let mut a = Asm::new();
    // Copy the input onto w0, head left on the last content cell.
    a.while_in(Input, &BITS, |a| {
        a.move_(w0, Dir::Right);
        a.if3(Input, |a| a.write(w0, Zero), |a| a.write(w0, One), |_| {});
        a.move_(Input, Dir::Right);
    });
    a.write(OTape, Zero);
    let top = a.new_label();
    let out = a.new_label();
    a.bind(top);
    let countdown = |a: &mut Asm| {
        a.write(w0, Sym::Blank);
        a.move_(w0, Dir::Left);
        a.query();
        a.goto(top);
    };
    a.if3(w0, countdown, countdown, |a| a.goto(out));
    a.bind(out);
    a.while_in(OTape, &BITS, |a| {
        a.if3(OTape, |a| a.write(Output, Zero), |a| a.write(Output, One), |_| {});
        a.move_(OTape, Dir::Right);
        a.move_(Output, Dir::Right);
    });
    a.halt();
    Machine::new("iterated-apply", a.finish(1).expect("program assembles")).with_declared(
        DeclaredBounds {
            step_count: Some(frozen::iterated_apply_step_count()),
            ..DeclaredBounds::default()
        },
    )
}

/// `F(φ)(a) = 0^max{|φ(0^k)| : k <= |a|}`: query `0^0 .. 0^|a|`, keep the
/// answer-length maximum in unary, and print it as zeros.
pub fn max_length_machine() -> Machine {
    let max = Tape::Work(0);
    let query = Tape::Work(1);
    let mut a = Asm::new();
    let top = a.new_label();
    let done = a.new_label();
    a.bind(top);
    m::query_from_value(&mut a, query);
    m::absorb_answer_max(&mut a, max);
    let advance = |a: &mut Asm| {
        a.move_(Input, Dir::Right);
        m::append_zero_value(a, query);
        a.goto(top);
    };
    a.if3(Input, advance, advance, |a| a.goto(done));
    a.bind(done);
    m::copy_value_to_prefix(&mut a, max, Output);
    a.halt();
    Machine::new("max-length", a.finish(2).expect("program assembles")).with_declared(
        DeclaredBounds {
            running_time: Some(frozen::max_length_running_time()),
            ..DeclaredBounds::default()
        },
    )
}

/// `F(φ)(a) = 0^|φ|(|a|)`: enumerate every string of length at most `|a|`,
/// query each, track the longest answer, print it as zeros.
pub fn bruteforce_length_machine() -> Machine {
    let counter = Tape::Work(0);
    let len = Tape::Work(1);
    let max = Tape::Work(2);
    let flag = Tape::Work(3);
    let mut a = Asm::new();
    a.while_in(Input, &BITS, |a| {
        a.move_(len, Dir::Right);
        a.write(len, Zero);
        a.move_(Input, Dir::Right);
    });
    m::rewind(&mut a, len);
    let top = a.new_label();
    let done = a.new_label();
    a.bind(top);
    m::unary_len_gt(&mut a, counter, len, flag);
    m::if_flag(&mut a, flag, |a| a.goto(done), |_| {});
    m::query_from_value(&mut a, counter);
    m::absorb_answer_max(&mut a, max);
    m::enum_inc(&mut a, counter);
    a.goto(top);
    a.bind(done);
    m::copy_value_to_prefix(&mut a, max, Output);
    a.halt();
    Machine::new("bruteforce-length", a.finish(4).expect("program assembles")).with_declared(
        DeclaredBounds {
            running_time: Some(frozen::bruteforce_restricted_time()),
            ..DeclaredBounds::default()
        },
    )
}

/// Brute force with the abort rule: before each query, give up (output `ε`)
/// once the number of queries asked exceeds twice the largest answer length
/// seen so far.
pub fn abort_early_machine() -> Machine {
    let counter = Tape::Work(0);
    let len = Tape::Work(1);
    let max = Tape::Work(2);
    let flag = Tape::Work(3);
    let asked = Tape::Work(4);
    let mut a = Asm::new();
    a.while_in(Input, &BITS, |a| {
        a.move_(len, Dir::Right);
        a.write(len, Zero);
        a.move_(Input, Dir::Right);
    });
    m::rewind(&mut a, len);
    let top = a.new_label();
    let done = a.new_label();
    let abort = a.new_label();
    a.bind(top);
    m::unary_len_gt(&mut a, counter, len, flag);
    m::if_flag(&mut a, flag, |a| a.goto(done), |_| {});
    m::count_gt_double(&mut a, asked, max, flag);
    m::if_flag(&mut a, flag, |a| a.goto(abort), |_| {});
    m::query_from_value(&mut a, counter);
    m::absorb_answer_max(&mut a, max);
    m::append_zero_value(&mut a, asked);
    m::enum_inc(&mut a, counter);
    a.goto(top);
    a.bind(done);
    m::copy_value_to_prefix(&mut a, max, Output);
    a.halt();
    a.bind(abort);
    a.halt();
    Machine::new("abort-early", a.finish(5).expect("program assembles"))
}

/// The identity functional `F(φ) = φ`: copy the input to the oracle tape,
/// query, copy the answer to the output.
pub fn identity_machine() -> Machine {
    let w0 = Tape::Work(0);
    let mut a = Asm::new();
    m::copy_prefix_to_value(&mut a, Input, w0);
    m::query_from_value(&mut a, w0);
    a.while_in(OTape, &BITS, |a| {
        a.if3(OTape, |a| a.write(Output, Zero), |a| a.write(Output, One), |_| {});
        a.move_(OTape, Dir::Right);
        a.move_(Output, Dir::Right);
    });
    a.halt();
    Machine::new("identity", a.finish(1).expect("program assembles")).with_declared(
        DeclaredBounds {
            running_time: Some(frozen::identity_running_time()),
            ..DeclaredBounds::default()
        },
    )
}

/// The constant functional: ignore oracle and input, print `value`.
pub fn constant_machine(value: &BitString) -> Machine {
    let mut a = Asm::new();
    let syms: Vec<Sym> = value
        .bits()
        .iter()
        .map(|&b| if b { One } else { Zero })
        .collect();
    m::write_lit(&mut a, Output, &syms);
    a.halt();
    Machine::new(
        format!("constant:{value}"),
        a.finish(0).expect("program assembles"),
    )
    .with_declared(DeclaredBounds {
        running_time: Some(crate::poly::Description::leaf(
            crate::poly::UniPoly::constant(2 * value.len() as u64 + 1),
        )),
        ..DeclaredBounds::default()
    })
}

pub const MACHINE_NAMES: &[&str] = &[
    "iterated-apply",
    "max-length",
    "bruteforce-length",
    "abort-early",
    "identity",
];

/// Look a gallery machine up by name; `constant:<bits>` builds the constant
/// machine for the given output.
pub fn by_name(name: &str) -> Option<Machine> {
    match name {
        "iterated-apply" => Some(iterated_apply_machine()),
        "max-length" => Some(max_length_machine()),
        "bruteforce-length" => Some(bruteforce_length_machine()),
        "abort-early" => Some(abort_early_machine()),
        "identity" => Some(identity_machine()),
        _ => name
            .strip_prefix("constant:")
            .and_then(|bits| bits.parse().ok())
            .map(|b: BitString| constant_machine(&b)),
    }
}

// =============================================================================
// Adversary: escalating answers against finite length revision
// =============================================================================

/// Outcome of one [`flr_stress`] round.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum StressOutcome {
    /// The machine revised more than `bound` times: it cannot have finite
    /// length revision with this bound.
    RevisionOverflow,
    /// The machine stayed within the bound, so the planted answer on an
    /// unqueried `0^k` makes its output wrong for the max-length functional.
    WrongOutput { got: BitString, expected: BitString },
    /// Neither happened (not expected for machines bounded on all oracles).
    Consistent { output: BitString },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StressReport {
    pub bound: u64,
    pub input: BitString,
    pub revisions: u64,
    pub observed_time: u64,
    pub outcome: StressOutcome,
    /// The finalized oracle (memoized answers plus the plant), when the run
    /// stayed within the revision bound.
    pub finalized: Option<TableOracle>,
}

/// Drive a machine with the escalating adversary on input `0^bound`: the
/// i-th fresh query is answered `0^(bound+i)`, so every fresh query revises.
/// If the machine stays within `bound` revisions, finalize the oracle by
/// planting `0^(time+1)` on an unqueried `0^k` and compare the machine's
/// output against the max-length functional of the finalized oracle.
pub fn flr_stress(machine: &Machine, bound: u64, fuel: u64) -> Result<StressReport, GalleryError> {
    let input = BitString::zeros(bound as usize);
    let mut oracle = Oracle::Adaptive(Adaptive::new(AdaptivePolicy::Escalating { start: bound }));
    let out = run_recording(machine, &mut oracle, &input, fuel, true);
    if !out.halted() {
        return Err(GalleryError::FuelExhausted(machine.name.clone(), "stress run"));
    }
    let revisions = out.trace.revision_counts().strict_increases;
    if revisions > bound {
        return Ok(StressReport {
            bound,
            input,
            revisions,
            observed_time: out.trace.time,
            outcome: StressOutcome::RevisionOverflow,
            finalized: None,
        });
    }
    let memo = match &oracle {
        Oracle::Adaptive(a) => a.memo.clone(),
        _ => unreachable!("stress oracle is adaptive"),
    };
    // Every fresh query forced a revision, so at most `bound` distinct
    // strings were asked and one of the bound+1 zero strings is free.
    let free = (0..=bound as usize)
        .map(BitString::zeros)
        .find(|s| !memo.contains_key(s))
        .ok_or_else(|| {
            GalleryError::AdversaryStuck("no unqueried zero string after a bounded run".into())
        })?;
    let mut entries = memo;
    entries.insert(free, BitString::zeros(out.trace.time as usize + 1));
    let finalized = TableOracle {
        entries,
        default: BitString::new(),
    };
    // Deterministic replay: the finalized oracle agrees on every asked query.
    let mut replay_oracle = Oracle::Table(finalized.clone());
    let replay = run(machine, &mut replay_oracle, &input, fuel);
    if !replay.halted() {
        return Err(GalleryError::FuelExhausted(machine.name.clone(), "replay"));
    }
    let true_len = (0..=bound as usize)
        .map(|k| finalized.lookup(&BitString::zeros(k)).len())
        .max()
        .unwrap_or(0);
    let expected = BitString::zeros(true_len);
    let outcome = if replay.output != expected {
        StressOutcome::WrongOutput {
            got: replay.output,
            expected,
        }
    } else {
        StressOutcome::Consistent {
            output: replay.output,
        }
    };
    Ok(StressReport {
        bound,
        input,
        revisions,
        observed_time: out.trace.time,
        outcome,
        finalized: Some(finalized),
    })
}

// =============================================================================
// Adversary: delayed growth against clocked machines
// =============================================================================

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DelayedGrowthReport {
    pub depth: u32,
    pub input: BitString,
    pub converged: bool,
    pub rounds: u64,
    /// Watched query length and the tower index it was bound to.
    pub watched: Vec<(u64, u32)>,
    /// Planted strings with their answer lengths.
    pub plants: Vec<(BitString, u64)>,
    pub finalized: TableOracle,
    pub in_class: Verdict,
    /// Output of the driven machine on the finalized oracle.
    pub machine_output: BitString,
    /// The true length functional value `0^|φ|(|a|)` on the finalized oracle.
    pub true_value: BitString,
    pub output_differs: bool,
    /// The truncated companion: the finalized oracle with every spike above
    /// the top watched length removed.
    pub companion: TableOracle,
    /// Steps of the driven machine on the companion.
    pub time_on_companion: u64,
}

/// The supported adversary depths: inputs of length `2^(2^(depth+1)) - 1`
/// (3 and 15), watched lengths `2^(2^m)` for `m <= depth`.
pub const MAX_ADVERSARY_DEPTH: u32 = 1;

/// Replay-to-fixpoint construction of a delayed-growth oracle defeating the
/// given (typically clocked) machine.
///
/// Each round runs the machine from scratch against the current table. The
/// round's query log is scanned in order; the first query that completes a
/// watched length class — all strings of that length asked, all answered
/// `ε` so far — receives a planted answer of the tower size for that length,
/// and the construction restarts. When no new plant arises the table is
/// finalized: any watched length still without a spike gets one planted on a
/// string the final run never asked, which cannot change that run.
pub fn delayed_growth_adversary(
    machine: &Machine,
    depth: u32,
    fuel: u64,
) -> Result<DelayedGrowthReport, GalleryError> {
    if depth > MAX_ADVERSARY_DEPTH {
        return Err(GalleryError::DepthTooLarge(depth, MAX_ADVERSARY_DEPTH));
    }
    let input_len = tower_query_len(depth + 1) - 1;
    let input = BitString::zeros(input_len as usize);
    let watched: Vec<(u64, u32)> = (0..=depth).map(|i| (tower_query_len(i), i)).collect();
    let mut plants: Vec<(BitString, u64)> = Vec::new();
    let mut last_log: Vec<(BitString, BitString)> = Vec::new();

    let table_of = |plants: &[(BitString, u64)]| TableOracle {
        entries: plants
            .iter()
            .map(|(s, alen)| (s.clone(), BitString::zeros(*alen as usize)))
            .collect(),
        default: BitString::new(),
    };

    let max_rounds = watched.len() as u64 + 2;
    let mut rounds = 0;
    let mut converged = false;
    while rounds < max_rounds {
        rounds += 1;
        let mut oracle = Oracle::Table(table_of(&plants));
        let out = run_recording(machine, &mut oracle, &input, fuel, true);
        if !out.halted() {
            return Err(GalleryError::FuelExhausted(
                machine.name.clone(),
                "adversary round",
            ));
        }
        let log = out.trace.query_log.clone().unwrap_or_default();
        let mut planted_this_round = false;
        let mut seen: BTreeSet<BitString> = BTreeSet::new();
        for (q, answer) in &log {
            let qlen = q.len() as u64;
            if let Some((_, tower_idx)) = watched.iter().find(|(w, _)| *w == qlen) {
                let no_spike_yet = !plants.iter().any(|(s, _)| s.len() as u64 == qlen);
                if no_spike_yet && answer.is_empty() {
                    let mut class_seen =
                        seen.iter().filter(|s| s.len() as u64 == qlen).count() as u64;
                    if !seen.contains(q) {
                        class_seen += 1;
                    }
                    if class_seen == 1u64 << qlen {
                        plants.push((q.clone(), tower_answer_len(*tower_idx)));
                        planted_this_round = true;
                        break;
                    }
                }
            }
            seen.insert(q.clone());
        }
        last_log = log;
        if !planted_this_round {
            converged = true;
            break;
        }
    }

    // Finalize: give every watched length its spike on a string the final
    // run never asked.
    let asked: BTreeSet<BitString> = last_log.iter().map(|(q, _)| q.clone()).collect();
    for (w, tower_idx) in &watched {
        if plants.iter().any(|(s, _)| s.len() as u64 == *w) {
            continue;
        }
        let free = BitString::all_of_length(*w as usize)
            .find(|s| !asked.contains(s))
            .ok_or_else(|| {
                GalleryError::AdversaryStuck(format!(
                    "every string of watched length {w} was asked without a plant trigger"
                ))
            })?;
        plants.push((free, tower_answer_len(*tower_idx)));
    }

    let finalized = table_of(&plants);
    let in_class = in_class_a(&Oracle::Table(finalized.clone()), depth)?;

    let mut final_oracle = Oracle::Table(finalized.clone());
    let final_run = run(machine, &mut final_oracle, &input, fuel);
    if !final_run.halted() {
        return Err(GalleryError::FuelExhausted(machine.name.clone(), "final run"));
    }
    let (true_len, _) = size_fn(&Oracle::Table(finalized.clone()), input_len);
    let true_value = BitString::zeros(true_len as usize);
    let output_differs = final_run.output != true_value;

    // Companion: truncate spikes above the top watched length.
    let top = tower_query_len(depth);
    let companion = TableOracle {
        entries: finalized
            .entries
            .iter()
            .filter(|(k, _)| k.len() as u64 <= top)
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect(),
        default: BitString::new(),
    };
    let mut comp_oracle = Oracle::Table(companion.clone());
    let comp_run = run(machine, &mut comp_oracle, &input, fuel);
    if !comp_run.halted() {
        return Err(GalleryError::FuelExhausted(
            machine.name.clone(),
            "companion run",
        ));
    }

    Ok(DelayedGrowthReport {
        depth,
        input,
        converged,
        rounds,
        watched,
        plants: plants.clone(),
        finalized,
        in_class,
        machine_output: final_run.output,
        true_value,
        output_differs,
        companion,
        time_on_companion: comp_run.trace.time,
    })
}

/// Convenience wrapper used by the CLI.
pub fn run_gallery(
    machine: &Machine,
    oracle: &mut Oracle,
    input: &BitString,
    fuel: u64,
) -> RunOutcome {
    run(machine, oracle, input, fuel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machine::interp::DEFAULT_FUEL;
    use crate::oracle::size_fn_exhaustive;

    fn zeros(n: usize) -> BitString {
        BitString::zeros(n)
    }

    #[test]
    fn iterated_apply_doubles() {
        let mch = iterated_apply_machine();
        let out = run(&mch, &mut Oracle::doubling(), &zeros(3), DEFAULT_FUEL);
        assert!(out.halted());
        assert_eq!(out.output, zeros(8));
        // Fixed point of the constant-"0" oracle.
        let out = run(&mch, &mut Oracle::constant("0"), &zeros(4), DEFAULT_FUEL);
        assert_eq!(out.output, zeros(1));
        // Zero iterations of anything is the initial "0".
        let out = run(&mch, &mut Oracle::doubling(), &BitString::new(), DEFAULT_FUEL);
        assert_eq!(out.output, zeros(1));
    }

    #[test]
    fn iterated_apply_time_exceeds_output_length() {
        let mch = iterated_apply_machine();
        for k in 1..=8 {
            let out = run(&mch, &mut Oracle::doubling(), &zeros(k), DEFAULT_FUEL);
            assert!(out.halted());
            assert_eq!(out.output.len(), 1 << k);
            assert!(out.trace.time >= 1 << k, "k={k}: {}", out.trace.time);
        }
    }

    #[test]
    fn max_length_examples() {
        let mch = max_length_machine();
        let mut o = Oracle::table(vec![("", "1"), ("0", "111"), ("00", "10")], "");
        let out = run(&mch, &mut o, &"11".parse().unwrap(), DEFAULT_FUEL);
        assert!(out.halted());
        assert_eq!(out.output, zeros(3));
        assert_eq!(out.trace.queries.len(), 3);
        // Empty input: a single query to φ(ε).
        let mut o = Oracle::table(vec![("", "1011")], "");
        let out = run(&mch, &mut o, &BitString::new(), DEFAULT_FUEL);
        assert_eq!(out.output, zeros(4));
        assert_eq!(out.trace.queries.len(), 1);
    }

    #[test]
    fn bruteforce_matches_size_fn() {
        let mch = bruteforce_length_machine();
        let o = Oracle::table(vec![("0", "111"), ("11", "1"), ("101", "101010")], "1");
        for n in 0..=4usize {
            let mut oracle = o.clone();
            let out = run(&mch, &mut oracle, &zeros(n), DEFAULT_FUEL);
            assert!(out.halted());
            let want = size_fn_exhaustive(&o, n as u64, 16).unwrap();
            assert_eq!(out.output.len() as u64, want, "n={n}");
            // Every string of length <= n is queried, so time grows with 2^n.
            assert_eq!(out.trace.queries.len() as u64, (1u64 << (n + 1)) - 1);
            assert!(out.trace.time >= 1 << n);
        }
        // The constant-ε oracle gives the empty output.
        let out = run(&mch, &mut Oracle::constant(""), &zeros(3), DEFAULT_FUEL);
        assert_eq!(out.output, BitString::new());
    }

    #[test]
    fn abort_early_behaviour() {
        let abort = abort_early_machine();
        // On the constant-ε oracle it aborts almost immediately with ε.
        let out = run(&abort, &mut Oracle::constant(""), &zeros(6), DEFAULT_FUEL);
        assert!(out.halted());
        assert_eq!(out.output, BitString::new());
        assert!(out.trace.queries.len() <= 2);
        // On exponentially growing oracles it never aborts and agrees with
        // the brute force.
        let brute = bruteforce_length_machine();
        let exp = Oracle::Pattern(crate::oracle::Pattern::Exponential { cap: 20 });
        for n in 0..=5usize {
            let a = run(&abort, &mut exp.clone(), &zeros(n), DEFAULT_FUEL);
            let b = run(&brute, &mut exp.clone(), &zeros(n), DEFAULT_FUEL);
            assert!(a.halted() && b.halted());
            assert_eq!(a.output, b.output, "n={n}");
        }
        // On the delayed-growth oracle it aborts while the true value is
        // big: a witness input of length 2 suffices.
        let dg = crate::oracle::make_delayed_growth(1).unwrap();
        let witness = run(&abort, &mut dg.clone(), &zeros(2), DEFAULT_FUEL);
        let true_len = size_fn(&dg, 2).0;
        assert_eq!(true_len, 4);
        assert_ne!(witness.output.len() as u64, true_len);
    }

    #[test]
    fn identity_and_constant_machines() {
        let id = identity_machine();
        let out = run(&id, &mut Oracle::doubling(), &"011".parse().unwrap(), DEFAULT_FUEL);
        assert_eq!(out.output.to_string(), "011011");
        let c = constant_machine(&"101".parse().unwrap());
        let out = run(&c, &mut Oracle::doubling(), &"0".parse().unwrap(), DEFAULT_FUEL);
        assert_eq!(out.output.to_string(), "101");
    }

    #[test]
    fn stress_overflows_the_eager_machine() {
        let mch = max_length_machine();
        let report = flr_stress(&mch, 3, DEFAULT_FUEL).unwrap();
        // The machine asks 0^0..0^3: four fresh queries, four revisions.
        assert_eq!(report.revisions, 4);
        assert_eq!(report.outcome, StressOutcome::RevisionOverflow);
    }

    #[test]
    fn stress_zero_bound() {
        // With bound 0 the very first fresh query already over-revises.
        let mch = max_length_machine();
        let report = flr_stress(&mch, 0, DEFAULT_FUEL).unwrap();
        assert_eq!(report.outcome, StressOutcome::RevisionOverflow);
    }

    #[test]
    fn gallery_by_name() {
        for name in MACHINE_NAMES {
            assert!(by_name(name).is_some(), "{name}");
        }
        assert!(by_name("constant:01").is_some());
        assert!(by_name("nonsense").is_none());
    }
}
