//! Run traces and the resource predicates over them.
//!
//! A [`Trace`] is the complete cost record of one machine run: the input
//! length, the total number of unit-cost steps, and the position and lengths
//! of every oracle interaction. Everything this module checks is a statement
//! about a trace, never about a machine as a whole — a pass verdict certifies
//! one run, a fail verdict carries a concrete witness step.
//!
//! The central derived object is the *length-revision profile* `o`: the
//! step-indexed running maximum of the input length and all oracle answer
//! lengths seen so far. A step where `o` strictly increases is a *length
//! revision* — the moment the run learns its oracle is bigger than all
//! previous evidence. Three bounds are checked against a trace:
//!
//! * a **step-count** `t` requires `n <= t(o(n))` for every prefix length `n`
//!   of the run, charging time against the evidence available at that point;
//! * an **opt bound** `t` requires only `time <= t(m)` where `m` is the final
//!   profile value, so an expensive early phase may be justified
//!   retroactively by one late big answer;
//! * a **running-time bound** is a description tree `T` requiring
//!   `time <= T(l, |a|)` where `l` is the size function of the run's oracle.

use serde::{Deserialize, Serialize};

use crate::bits::BitString;
use crate::poly::{Description, LengthFn, PolyError, UniPoly};

/// Outcome of a single check, with a witness on failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail { witness: u64, detail: String },
}

impl Verdict {
    pub fn fail(witness: u64, detail: impl Into<String>) -> Self {
        Verdict::Fail {
            witness,
            detail: detail.into(),
        }
    }

    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass)
    }
}

/// Whether a reported size-function value is exact or only a lower bound
/// (adaptive oracles can only report what they have already answered).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Exactness {
    Exact,
    LowerBound,
}

/// Errors from trace checkers.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CheckError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("size function is only a lower bound: refusing to certify a pass (only refutations are conclusive here)")]
    LowerBoundInconclusive,
    #[error("malformed trace file: {0}")]
    MalformedTrace(String),
}

/// One oracle interaction: the 1-based step index at which the query was
/// answered, and the lengths of query and answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueryEvent {
    pub step: u64,
    pub query_len: u64,
    pub answer_len: u64,
}

/// The cost record of one run. Plain steps are not stored individually; the
/// trace keeps the total time and the query events, which together determine
/// the full step-indexed event list.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Trace {
    pub input_length: u64,
    pub time: u64,
    pub queries: Vec<QueryEvent>,
    /// Query and answer strings, recorded only when the run was asked to.
    pub query_log: Option<Vec<(BitString, BitString)>>,
}

/// Event kinds for trace construction in tests and for the text format.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Event {
    Plain,
    Query { query_len: u64, answer_len: u64 },
}

impl Trace {
    pub fn from_events(input_length: u64, events: &[Event]) -> Trace {
        let mut queries = Vec::new();
        for (i, ev) in events.iter().enumerate() {
            if let Event::Query {
                query_len,
                answer_len,
            } = *ev
            {
                queries.push(QueryEvent {
                    step: i as u64 + 1,
                    query_len,
                    answer_len,
                });
            }
        }
        Trace {
            input_length,
            time: events.len() as u64,
            queries,
            query_log: None,
        }
    }

    /// The length-revision profile `o(0) ..= o(time)`: `o(0)` is the input
    /// length and `o(k+1) = max(o(k), answer length at step k+1)`.
    pub fn revision_profile(&self) -> Vec<u64> {
        let mut profile = Vec::with_capacity(self.time as usize + 1);
        let mut value = self.input_length;
        profile.push(value);
        let mut qi = 0;
        for step in 1..=self.time {
            if qi < self.queries.len() && self.queries[qi].step == step {
                value = value.max(self.queries[qi].answer_len);
                qi += 1;
            }
            profile.push(value);
        }
        profile
    }

    /// Number of strict increases of the profile, which equals the size of
    /// its range minus one. Both counts are exposed.
    pub fn revision_counts(&self) -> RevisionCounts {
        let mut value = self.input_length;
        let mut increases = 0;
        for q in &self.queries {
            if q.answer_len > value {
                value = q.answer_len;
                increases += 1;
            }
        }
        RevisionCounts {
            strict_increases: increases,
            range_size: increases + 1,
        }
    }

    /// The final profile value `m = max(input length, all answer lengths)`.
    pub fn final_profile_value(&self) -> u64 {
        self.queries
            .iter()
            .map(|q| q.answer_len)
            .fold(self.input_length, u64::max)
    }

    /// Render the line-per-event text format.
    pub fn to_text(&self, halted: bool) -> String {
        let mut out = String::new();
        out.push_str(&format!("input_length {}\n", self.input_length));
        out.push_str(&format!("time {}\n", self.time));
        let mut qi = 0;
        for step in 1..=self.time {
            if qi < self.queries.len() && self.queries[qi].step == step {
                let q = &self.queries[qi];
                out.push_str(&format!("{} query {} {}\n", step, q.query_len, q.answer_len));
                qi += 1;
            } else if step == self.time && halted {
                out.push_str(&format!("{} halt\n", step));
            } else {
                out.push_str(&format!("{} plain\n", step));
            }
        }
        out
    }

    /// Parse the line-per-event text format.
    pub fn parse_text(text: &str) -> Result<Trace, CheckError> {
        let bad = |m: &str| CheckError::MalformedTrace(m.to_string());
        let mut input_length = None;
        let mut time = None;
        let mut queries = Vec::new();
        let mut seen_events = 0u64;
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            match fields.as_slice() {
                ["input_length", v] => {
                    input_length = Some(v.parse().map_err(|_| bad("bad input_length"))?)
                }
                ["time", v] => time = Some(v.parse().map_err(|_| bad("bad time"))?),
                [step, "plain"] | [step, "halt"] => {
                    let s: u64 = step.parse().map_err(|_| bad("bad step index"))?;
                    if s != seen_events + 1 {
                        return Err(bad("non-consecutive step index"));
                    }
                    seen_events = s;
                }
                [step, "query", q, a] => {
                    let s: u64 = step.parse().map_err(|_| bad("bad step index"))?;
                    if s != seen_events + 1 {
                        return Err(bad("non-consecutive step index"));
                    }
                    seen_events = s;
                    queries.push(QueryEvent {
                        step: s,
                        query_len: q.parse().map_err(|_| bad("bad query length"))?,
                        answer_len: a.parse().map_err(|_| bad("bad answer length"))?,
                    });
                }
                _ => return Err(bad(line)),
            }
        }
        let input_length = input_length.ok_or_else(|| bad("missing input_length"))?;
        let time = time.ok_or_else(|| bad("missing time"))?;
        if seen_events != time {
            return Err(bad("event count does not match declared time"));
        }
        Ok(Trace {
            input_length,
            time,
            queries,
            query_log: None,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RevisionCounts {
    pub strict_increases: u64,
    pub range_size: u64,
}

/// Check the step-count condition `n <= t(o(n))` for every prefix length
/// `n <= time`. On failure the witness is the least violating `n`.
///
/// The profile is constant between queries, so only the last prefix of each
/// constant segment needs checking; the witness is still reported exactly.
/// A bound value that overflows checked arithmetic exceeds any representable
/// prefix length and therefore holds.
pub fn check_step_count(trace: &Trace, t: &UniPoly) -> Result<Verdict, PolyError> {
    let mut segment_start = 0u64;
    let mut value = trace.input_length;
    let check_segment = |start: u64, end: u64, value: u64| -> Result<Option<u64>, PolyError> {
        // Prefixes n in [start, end] all see profile `value`.
        let bound = match t.eval(value) {
            Ok(b) => b,
            Err(PolyError::Overflow) => return Ok(None),
            Err(e) => return Err(e),
        };
        if end > bound {
            let first_bad = bound.saturating_add(1).max(start);
            return Ok(Some(first_bad));
        }
        Ok(None)
    };
    for q in &trace.queries {
        // Segment of prefixes strictly before this query step.
        if q.step > segment_start {
            if let Some(n) = check_segment(segment_start, q.step - 1, value)? {
                return Ok(Verdict::fail(n, format!("{} > t(o({}))", n, n)));
            }
        }
        value = value.max(q.answer_len);
        segment_start = q.step;
    }
    if let Some(n) = check_segment(segment_start, trace.time, value)? {
        return Ok(Verdict::fail(n, format!("{} > t(o({}))", n, n)));
    }
    Ok(Verdict::Pass)
}

/// Check the opt-style bound `time <= t(m)` with `m` the final profile
/// value. As with [`check_step_count`], a bound beyond checked arithmetic
/// holds vacuously.
pub fn check_opt(trace: &Trace, t: &UniPoly) -> Result<Verdict, PolyError> {
    let m = trace.final_profile_value();
    let bound = match t.eval(m) {
        Ok(b) => b,
        Err(PolyError::Overflow) => return Ok(Verdict::Pass),
        Err(e) => return Err(e),
    };
    if trace.time <= bound {
        Ok(Verdict::Pass)
    } else {
        Ok(Verdict::fail(
            trace.time,
            format!("time {} > t(m) = t({}) = {}", trace.time, m, bound),
        ))
    }
}

/// Check the running-time bound `time <= T(l, input_length)`.
///
/// `l` must be the size function of the run's oracle. If `l` is only a lower
/// bound (adaptive oracle), a fail verdict is still conclusive — the memoized
/// answers with the default completion realize exactly that size function, so
/// the violated run exists — but a pass verdict is not, and is refused.
pub fn check_running_time(
    trace: &Trace,
    t: &Description,
    l: &LengthFn,
    exactness: Exactness,
) -> Result<Verdict, CheckError> {
    let bound = t.eval(l, trace.input_length)?;
    if trace.time <= bound {
        match exactness {
            Exactness::Exact => Ok(Verdict::Pass),
            Exactness::LowerBound => Err(CheckError::LowerBoundInconclusive),
        }
    } else {
        Ok(Verdict::fail(
            trace.time,
            format!("time {} > T(l, {}) = {}", trace.time, trace.input_length, bound),
        ))
    }
}

/// The budget `(p ∘ (l + id))^N (p(n))`: the running time that a polynomial
/// step-count `p` and at most `N` length revisions imply. Each revision can
/// enlarge the evidence to at most `l(previous budget) + previous budget`, and
/// the step-count converts evidence back into allowed steps.
pub fn revision_budget(
    p: &UniPoly,
    revisions: u64,
    l: &LengthFn,
    n: u64,
) -> Result<u64, PolyError> {
    let mut x = p.eval(n)?;
    for _ in 0..revisions {
        let fed = l
            .eval(x)?
            .checked_add(x)
            .ok_or(PolyError::Overflow)?;
        x = p.eval(fed)?;
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trace_with_answers(input_length: u64, total: u64, answers: &[(u64, u64)]) -> Trace {
        let mut events = vec![Event::Plain; total as usize];
        for &(step, alen) in answers {
            events[step as usize - 1] = Event::Query {
                query_len: 1,
                answer_len: alen,
            };
        }
        Trace::from_events(input_length, &events)
    }

    #[test]
    fn profile_follows_the_recursion() {
        // Input length 2; answers of lengths 1, 3, 2 at steps 4, 7, 9.
        let tr = trace_with_answers(2, 10, &[(4, 1), (7, 3), (9, 2)]);
        let profile = tr.revision_profile();
        assert_eq!(profile[0], 2);
        assert_eq!(&profile[1..], &[2, 2, 2, 2, 2, 2, 3, 3, 3, 3]);
        // The jump happens exactly at step 7.
        assert_eq!(profile[6], 2);
        assert_eq!(profile[7], 3);
        let counts = tr.revision_counts();
        assert_eq!(counts.strict_increases, 1);
        assert_eq!(counts.range_size, 2);
    }

    #[test]
    fn no_queries_means_constant_profile() {
        let tr = trace_with_answers(5, 4, &[]);
        assert_eq!(tr.revision_profile(), vec![5; 5]);
        assert_eq!(tr.revision_counts().strict_increases, 0);
        assert_eq!(tr.final_profile_value(), 5);
    }

    #[test]
    fn step_count_boundary() {
        let t = UniPoly::from_coeffs(vec![1, 0, 1]); // m^2 + 1
        let ok = trace_with_answers(2, 5, &[]);
        assert!(check_step_count(&ok, &t).unwrap().passed());
        let bad = trace_with_answers(2, 6, &[]);
        match check_step_count(&bad, &t).unwrap() {
            Verdict::Fail { witness, .. } => assert_eq!(witness, 6),
            Verdict::Pass => panic!("expected failure"),
        }
    }

    #[test]
    fn opt_is_weaker_than_step_count() {
        let t = UniPoly::x();
        // Five plain steps, then one query answered with length 10.
        let tr = trace_with_answers(1, 6, &[(6, 10)]);
        assert!(check_opt(&tr, &t).unwrap().passed());
        match check_step_count(&tr, &t).unwrap() {
            Verdict::Fail { witness, .. } => assert_eq!(witness, 2),
            Verdict::Pass => panic!("late answers must not justify early steps"),
        }
    }

    #[test]
    fn opt_example_values() {
        let t = UniPoly::from_coeffs(vec![1, 0, 1]);
        let tr = trace_with_answers(2, 5, &[]);
        assert!(check_opt(&tr, &t).unwrap().passed());
    }

    #[test]
    fn running_time_lower_bound_rules() {
        use crate::poly::UniPoly;
        let t = Description::leaf(UniPoly::constant(10));
        let l = LengthFn::constant(0);
        let short = trace_with_answers(1, 5, &[]);
        let long = trace_with_answers(1, 50, &[]);
        assert!(
            check_running_time(&short, &t, &l, Exactness::Exact).unwrap().passed()
        );
        assert!(matches!(
            check_running_time(&short, &t, &l, Exactness::LowerBound),
            Err(CheckError::LowerBoundInconclusive)
        ));
        assert!(!check_running_time(&long, &t, &l, Exactness::LowerBound)
            .unwrap()
            .passed());
    }

    #[test]
    fn trace_text_roundtrip() {
        let tr = trace_with_answers(2, 6, &[(3, 4)]);
        let text = tr.to_text(true);
        let back = Trace::parse_text(&text).unwrap();
        assert_eq!(back, tr);
        assert!(Trace::parse_text("time 3\n1 plain\n2 plain\n3 plain\n").is_err());
    }

    #[test]
    fn revision_budget_iterates() {
        let p = UniPoly::from_coeffs(vec![0, 2]); // 2m
        let l = LengthFn::identity();
        // x0 = 2*3 = 6; x1 = p(l(6) + 6) = p(12) = 24.
        assert_eq!(revision_budget(&p, 0, &l, 3).unwrap(), 6);
        assert_eq!(revision_budget(&p, 1, &l, 3).unwrap(), 24);
    }
}
