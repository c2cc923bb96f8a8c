//! Machine-level invariants: determinism, oracle-prefix stability, trace
//! arithmetic, and the relation between step-counts and opt bounds.

use baire::bits::BitString;
use baire::gallery;
use baire::machine::interp::{run_recording, DEFAULT_FUEL};
use baire::machine::text::{MachineBody, MachineFile};
use baire::machine::{DeclaredBounds, Machine};
use baire::oracle::{Oracle, TableOracle};
use baire::resources::{check_opt, check_step_count, Event, Trace};
use baire::sample;
use rand::Rng;

fn sample_machine(r: &mut sample::SampleRng) -> Machine {
    match r.gen_range(0..3) {
        0 => gallery::iterated_apply_machine(),
        1 => gallery::max_length_machine(),
        _ => gallery::bruteforce_length_machine(),
    }
}

/// Two oracles that agree on every query actually asked produce identical
/// runs: replay against the table built from the query log.
#[test]
fn oracle_prefix_stability() {
    let mut r = sample::rng(301);
    for i in 0..120 {
        let machine = sample_machine(&mut r);
        let mut oracle = sample::gen_reg_oracle(&mut r);
        let input = sample::gen_bits(&mut r, 5);
        let original = run_recording(&machine, &mut oracle, &input, DEFAULT_FUEL, true);
        assert!(original.halted());
        let log = original.trace.query_log.clone().unwrap();
        let table = TableOracle::new(log.clone(), BitString::new());
        let mut replay_oracle = Oracle::Table(table);
        let replay = run_recording(&machine, &mut replay_oracle, &input, DEFAULT_FUEL, true);
        assert_eq!(replay.output, original.output, "sample {i}");
        assert_eq!(replay.trace, original.trace, "sample {i}");
    }
}

#[test]
fn identical_runs_are_byte_identical() {
    let machine = gallery::max_length_machine();
    let input: BitString = "0101".parse().unwrap();
    let text: Vec<String> = (0..2)
        .map(|_| {
            let mut oracle = Oracle::doubling();
            let out = run_recording(&machine, &mut oracle, &input, DEFAULT_FUEL, false);
            out.trace.to_text(out.halted())
        })
        .collect();
    assert_eq!(text[0], text[1]);
}

#[test]
fn trace_profile_invariants() {
    let mut r = sample::rng(302);
    for _ in 0..100 {
        let machine = sample_machine(&mut r);
        let mut oracle = sample::gen_table_oracle(&mut r, 3, 5);
        let input = sample::gen_bits(&mut r, 4);
        let out = run_recording(&machine, &mut oracle, &input, DEFAULT_FUEL, false);
        assert!(out.halted());
        let profile = out.trace.revision_profile();
        assert_eq!(profile.len() as u64, out.trace.time + 1);
        assert_eq!(profile[0], out.trace.input_length);
        assert!(profile.windows(2).all(|w| w[0] <= w[1]), "o non-decreasing");
        assert_eq!(
            *profile.last().unwrap(),
            out.trace.final_profile_value(),
            "o(time) = m"
        );
        let counts = out.trace.revision_counts();
        assert_eq!(counts.range_size, counts.strict_increases + 1);
    }
}

/// A step-count justifies every prefix, so in particular the whole run: any
/// trace passing the step-count check passes the opt check with the same
/// polynomial.
#[test]
fn step_count_pass_implies_opt_pass() {
    let mut r = sample::rng(303);
    for _ in 0..300 {
        // Synthetic traces: random plain/query events.
        let len = r.gen_range(0..40usize);
        let events: Vec<Event> = (0..len)
            .map(|_| {
                if r.gen_bool(0.3) {
                    Event::Query {
                        query_len: r.gen_range(0..6),
                        answer_len: r.gen_range(0..12),
                    }
                } else {
                    Event::Plain
                }
            })
            .collect();
        let trace = Trace::from_events(r.gen_range(0..6), &events);
        let t = sample::gen_unipoly(&mut r, 2, 4);
        if check_step_count(&trace, &t).unwrap().passed() {
            assert!(
                check_opt(&trace, &t).unwrap().passed(),
                "step-count pass must imply opt pass"
            );
        }
    }
}

#[test]
fn macro_machine_files_expand_and_run() {
    // A machine written in the macro file format behaves like its expansion.
    let json = r#"{
        "name": "echo-first",
        "work_tapes": 1,
        "macros": [
            {"do": "if", "tape": "input",
             "zero": [{"do": "write", "tape": "output", "sym": "zero"}],
             "one":  [{"do": "write", "tape": "output", "sym": "one"}],
             "blank": []},
            {"do": "halt"}
        ]
    }"#;
    let file: MachineFile = serde_json::from_str(json).unwrap();
    let machine = file.into_machine().unwrap();
    let out = run_recording(
        &machine,
        &mut Oracle::constant(""),
        &"10".parse().unwrap(),
        1000,
        false,
    );
    assert_eq!(out.output.to_string(), "1");

    // Graph form round-trips through serialization.
    let graph = MachineFile::from_machine(&machine);
    let json2 = serde_json::to_string(&graph).unwrap();
    let parsed: MachineFile = serde_json::from_str(&json2).unwrap();
    let machine2 = parsed.into_machine().unwrap();
    assert_eq!(machine2.program, machine.program);
    match MachineFile::from_machine(&machine2).body {
        MachineBody::Graph { program } => assert!(program.len() > 0),
        MachineBody::Macros { .. } => panic!("expanded form expected"),
    }
}

#[test]
fn declared_bounds_serialize_with_machines() {
    let machine = gallery::iterated_apply_machine();
    let file = MachineFile::from_machine(&machine);
    let json = serde_json::to_string_pretty(&file).unwrap();
    let back: MachineFile = serde_json::from_str(&json).unwrap();
    let restored = back.into_machine().unwrap();
    assert_eq!(
        restored.declared,
        DeclaredBounds {
            step_count: machine.declared.step_count.clone(),
            revision_bound: None,
            running_time: None,
        }
    );
}
