//! Worst-case fits behind the frozen constants.
//!
//! Every constant in [`crate::frozen`] is produced by one of these
//! procedures: run a fixed seeded sweep, take the worst observed ratio
//! between measured cost and bound shape, round up, and double for slack.
//! The doubling means a frozen constant is not invalidated by incidental
//! cost shifts, while the regression tests (which assert the fit still
//! *equals* the frozen value) catch any real change to the interpreter's
//! accounting or to the machines' programs.

use rand::Rng;

use crate::bits::BitString;
use crate::gallery::{
    bruteforce_length_machine, constant_machine, identity_machine, iterated_apply_machine,
    max_length_machine,
};
use crate::machine::interp::{run, DEFAULT_FUEL};
use crate::machine::Machine;
use crate::oracle::{make_delayed_growth, size_length_fn, Adaptive, AdaptivePolicy, Oracle};
use crate::poly::UniPoly;
use crate::resources::Trace;
use crate::sample;
use crate::transform::{clock_finite_revision, clock_with_majorant, compose_machines};

/// Worst `ceil(n / shape(o(n)))` over all prefixes of a trace, exploiting
/// that the profile is constant between queries.
fn worst_prefix_ratio(trace: &Trace, shape: impl Fn(u64) -> u64) -> u64 {
    let mut worst = 0u64;
    let mut segment_start = 0u64;
    let mut value = trace.input_length;
    let mut check = |end: u64, value: u64| {
        let s = shape(value).max(1);
        let ratio = end.div_ceil(s);
        if ratio > worst {
            worst = ratio;
        }
    };
    for q in &trace.queries {
        if q.step > segment_start {
            check(q.step - 1, value);
        }
        value = value.max(q.answer_len);
        segment_start = q.step;
    }
    check(trace.time, value);
    worst
}

fn double(x: u64) -> u64 {
    2 * x.max(1)
}

/// Fit for [`frozen::ITERATED_APPLY_A`]: sweep the iterated-apply machine
/// over mixed oracles and inputs, shape `(m + 1)^2`.
pub fn fit_iterated_apply_a() -> u64 {
    let machine = iterated_apply_machine();
    let mut worst = 0u64;
    let mut r = sample::rng(101);
    for _ in 0..300 {
        let mut oracle = if r.gen_bool(0.5) {
            sample::gen_reg_oracle(&mut r)
        } else {
            sample::gen_table_oracle(&mut r, 4, 6)
        };
        let input = sample::gen_bits(&mut r, 8);
        let out = run(&machine, &mut oracle, &input, DEFAULT_FUEL);
        assert!(out.halted());
        worst = worst.max(worst_prefix_ratio(&out.trace, |m| (m + 1) * (m + 1)));
    }
    for k in 0..=8 {
        let out = run(
            &machine,
            &mut Oracle::doubling(),
            &BitString::zeros(k),
            DEFAULT_FUEL,
        );
        worst = worst.max(worst_prefix_ratio(&out.trace, |m| (m + 1) * (m + 1)));
    }
    double(worst)
}

/// Fit for [`frozen::MAX_LENGTH_C`]: sweep the max-length machine over
/// length-monotone oracles, shape `n + n l(n) + 1` at the input length.
pub fn fit_max_length_c() -> u64 {
    let machine = max_length_machine();
    let mut worst = 0u64;
    let mut r = sample::rng(103);
    for _ in 0..400 {
        let oracle = sample::gen_reg_oracle(&mut r);
        let input = sample::gen_bits(&mut r, 8);
        let (l, _) = size_length_fn(&oracle).expect("pure oracle");
        let out = run(&machine, &mut oracle.clone(), &input, DEFAULT_FUEL);
        assert!(out.halted());
        let n = input.len() as u64;
        let shape = n + n * l.eval(n).expect("small values") + 1;
        worst = worst.max(out.trace.time.div_ceil(shape));
    }
    double(worst)
}

/// Fit for [`frozen::IDENTITY_C`]: shape `n + l(n) + 1`.
pub fn fit_identity_c() -> u64 {
    let machine = identity_machine();
    let mut worst = 0u64;
    let mut r = sample::rng(104);
    for _ in 0..400 {
        let oracle = sample::gen_reg_oracle(&mut r);
        let input = sample::gen_bits(&mut r, 8);
        let (l, _) = size_length_fn(&oracle).expect("pure oracle");
        let out = run(&machine, &mut oracle.clone(), &input, DEFAULT_FUEL);
        assert!(out.halted());
        let n = input.len() as u64;
        let shape = n + l.eval(n).expect("small values") + 1;
        worst = worst.max(out.trace.time.div_ceil(shape));
    }
    double(worst)
}

/// Fit for [`frozen::BRUTEFORCE_RESTRICTED_C`]: run the brute force on the
/// full-depth desk member of the delayed-growth class, shape
/// `l(l(3(n+2))) + 1`.
///
/// The budget only dominates the enumeration when the oracle actually has
/// the towers the chain `l(l(3(n+2))) >= 2^n` leans on, so the sweep uses
/// the deepest desk oracle and the tower-aligned inputs `0^(2^(2^d) - 1)`
/// together with the small inputs below the first tower.
pub fn fit_bruteforce_restricted_c() -> u64 {
    let machine = bruteforce_length_machine();
    let oracle = make_delayed_growth(2).expect("desk depth");
    let (l, _) = size_length_fn(&oracle).expect("pattern oracle");
    let mut worst = 0u64;
    for n in [0u64, 1, 2, 3, 15] {
        let out = run(
            &machine,
            &mut oracle.clone(),
            &BitString::zeros(n as usize),
            100_000_000,
        );
        assert!(out.halted());
        let inner = l.eval(3 * (n + 2)).expect("tower values fit");
        let shape = l.eval(inner).expect("tower values fit") + 1;
        worst = worst.max(out.trace.time.div_ceil(shape));
    }
    double(worst)
}

/// Fit for [`frozen::BRUTEFORCE_CLASS_BUDGET_C`]: same runs, same shape —
/// kept separate because it freezes the *measured-time* claim rather than a
/// declared running time.
pub fn fit_bruteforce_class_budget_c() -> u64 {
    fit_bruteforce_restricted_c()
}

/// The generous wrapper budget used by the clock calibration sweeps and the
/// acceptance suite: dominates the max-length machine's step needs on the
/// sampled oracles.
pub fn generous_step_poly() -> UniPoly {
    UniPoly::from_coeffs(vec![250, 50, 50])
}

/// Fit for [`frozen::CLOCK_REVISION_K`]: wrap the max-length machine, drive
/// it over length-monotone oracles and escalating adversaries, shape
/// `(p(m) + m + 1)^2`.
pub fn fit_clock_revision_k() -> u64 {
    let machine = max_length_machine();
    let p = generous_step_poly();
    let shape = |m: u64| {
        let pm = p.eval(m).unwrap_or(u64::MAX);
        let base = pm.saturating_add(m).saturating_add(1);
        base.saturating_mul(base)
    };
    let mut worst = 0u64;
    let mut r = sample::rng(107);
    for i in 0..200 {
        let clocked = clock_finite_revision(&machine, (i % 8) + 1, &p).expect("clock builds");
        let mut oracle = if r.gen_bool(0.5) {
            sample::gen_reg_oracle(&mut r)
        } else {
            Oracle::Adaptive(Adaptive::new(AdaptivePolicy::Escalating {
                start: r.gen_range(0..6),
            }))
        };
        let input = sample::gen_bits(&mut r, 6);
        let out = run(&clocked, &mut oracle, &input, DEFAULT_FUEL);
        assert!(out.halted());
        worst = worst.max(worst_prefix_ratio(&out.trace, shape));
    }
    double(worst)
}

/// Fit for [`frozen::CLOCK_MAJORANT_K`]: wrap the gallery machines with
/// their declared running times, shape `(N + 1)(p(m) + m + 1)^2`.
pub fn fit_clock_majorant_k() -> u64 {
    let mut worst = 0u64;
    let mut r = sample::rng(109);
    let subjects: Vec<Machine> = vec![
        max_length_machine(),
        constant_machine(&"101".parse().unwrap()),
    ];
    for machine in &subjects {
        let t = machine
            .declared
            .running_time
            .clone()
            .expect("gallery machines declare running times");
        let majorant = t.majorant();
        let p = majorant.bound.clone();
        let clocked = clock_with_majorant(machine, &t).expect("clock builds");
        let shape = |m: u64| {
            let pm = p.eval(m).unwrap_or(u64::MAX);
            let base = pm.saturating_add(m).saturating_add(1);
            (majorant.height + 1).saturating_mul(base.saturating_mul(base))
        };
        for _ in 0..150 {
            let mut oracle = if r.gen_bool(0.5) {
                sample::gen_reg_oracle(&mut r)
            } else {
                Oracle::Adaptive(Adaptive::new(AdaptivePolicy::Escalating {
                    start: r.gen_range(0..6),
                }))
            };
            let input = sample::gen_bits(&mut r, 6);
            let out = run(&clocked, &mut oracle, &input, DEFAULT_FUEL);
            assert!(out.halted());
            worst = worst.max(worst_prefix_ratio(&out.trace, shape));
        }
    }
    double(worst)
}

/// Fit for [`frozen::COMPOSE_C`]: compose the max-length machine with the
/// identity machine, shape `e1 + S(l, e1) e1 + 1` where `e1 = T(S(l,·), n)`.
pub fn fit_compose_c() -> u64 {
    let outer = max_length_machine();
    let inner = identity_machine();
    let composite = compose_machines(&outer, &inner).expect("compose builds");
    let t = outer.declared.running_time.clone().expect("declared");
    let s = inner.declared.running_time.clone().expect("declared");
    let outer_of_inner = t.subst_fn(&s).expect("composition in range");
    let mut worst = 0u64;
    let mut r = sample::rng(113);
    for _ in 0..150 {
        let oracle = sample::gen_reg_oracle(&mut r);
        let input = sample::gen_bits(&mut r, 5);
        let (l, _) = size_length_fn(&oracle).expect("pure oracle");
        let out = run(&composite, &mut oracle.clone(), &input, DEFAULT_FUEL);
        assert!(out.halted());
        let n = input.len() as u64;
        let e1 = outer_of_inner.eval(&l, n).expect("in range");
        let e2 = s.eval(&l, e1).expect("in range");
        let shape = e1.saturating_add(e2.saturating_mul(e1)).saturating_add(1);
        worst = worst.max(out.trace.time.div_ceil(shape));
    }
    double(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frozen;

    // The regression gate: each documented fit must still produce exactly
    // the value frozen in the repository.
    #[test]
    fn frozen_constants_match_their_fits() {
        assert_eq!(fit_iterated_apply_a(), frozen::ITERATED_APPLY_A, "iterated-apply A");
        assert_eq!(fit_max_length_c(), frozen::MAX_LENGTH_C, "max-length C");
        assert_eq!(fit_identity_c(), frozen::IDENTITY_C, "identity C");
        assert_eq!(
            fit_bruteforce_restricted_c(),
            frozen::BRUTEFORCE_RESTRICTED_C,
            "bruteforce C"
        );
        assert_eq!(fit_clock_revision_k(), frozen::CLOCK_REVISION_K, "revision clock K");
        assert_eq!(fit_clock_majorant_k(), frozen::CLOCK_MAJORANT_K, "majorant clock K");
        assert_eq!(fit_compose_c(), frozen::COMPOSE_C, "compose C");
    }
}
