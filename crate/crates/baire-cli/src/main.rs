//! `baire` — run resource-accounted oracle machines, check declared bounds
//! against traces, manipulate polynomial description trees, and drive the
//! adversary constructions.
//!
//! Exit codes: 0 on success / pass verdicts, 1 on fail verdicts, 2 on usage
//! or malformed inputs, 3 when a run exhausts its fuel.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use baire::bits::BitString;
use baire::gallery;
use baire::machine::interp::{run_recording, RunOutcome, Status, DEFAULT_FUEL};
use baire::machine::text::MachineFile;
use baire::machine::Machine;
use baire::oracle::{size_length_fn, Oracle};
use baire::poly::{check_majorant_bound, Description, LengthFn, Tail, UniPoly};
use baire::resources::{check_opt, check_running_time, check_step_count, Trace, Verdict};
use baire::sample;
use baire::transform;
use rand::Rng;

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_FUEL: u8 = 3;

#[derive(Parser)]
#[command(name = "baire", version, about = "oracle-machine workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a machine against an oracle and report outcome and trace.
    Run(RunArgs),
    /// Check a resource bound against a trace or a fresh run.
    #[command(subcommand)]
    Check(CheckCmd),
    /// Operate on polynomial description trees.
    #[command(subcommand)]
    Poly(PolyCmd),
    /// List or export the built-in machines.
    #[command(subcommand)]
    Gallery(GalleryCmd),
    /// Build derived machines and oracles.
    #[command(subcommand)]
    Transform(TransformCmd),
    /// Drive the adversarial oracle constructions.
    #[command(subcommand)]
    Adversary(AdversaryCmd),
}

#[derive(Args)]
struct RunArgs {
    /// Gallery name (e.g. `max-length`, `constant:01`) or machine file.
    #[arg(long)]
    machine: String,
    /// Builtin oracle (`doubling`, `constant:BITS`, `exponential`,
    /// `delayed-growth:D`) or oracle file.
    #[arg(long)]
    oracle: String,
    /// Input string over {0,1}; may be empty.
    #[arg(long, default_value = "")]
    input: String,
    #[arg(long, default_value_t = DEFAULT_FUEL)]
    fuel: u64,
    /// Write the line-per-event trace here.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Write a JSON outcome report here.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Subcommand)]
enum CheckCmd {
    /// `n <= t(o(n))` for every prefix of a recorded trace.
    StepCount {
        #[arg(long)]
        trace: PathBuf,
        /// JSON file with `{"coeffs": [c0, c1, ...]}`.
        #[arg(long)]
        poly: PathBuf,
    },
    /// `time <= t(m)` for a recorded trace.
    Opt {
        #[arg(long)]
        trace: PathBuf,
        #[arg(long)]
        poly: PathBuf,
    },
    /// `time <= T(l, |a|)` for a fresh run against a pure oracle.
    RunningTime {
        #[arg(long)]
        machine: String,
        #[arg(long)]
        oracle: String,
        #[arg(long, default_value = "")]
        input: String,
        /// Description-tree file; defaults to the machine's declared bound.
        #[arg(long)]
        bound: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: u64,
    },
    /// Seeded random sweep of the majorant bound.
    Majorant {
        #[arg(long, default_value_t = 1000)]
        samples: u32,
        #[arg(long, default_value_t = 1001)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum PolyCmd {
    /// Evaluate a description tree at a length function and scalar.
    Eval {
        #[arg(long)]
        desc: PathBuf,
        /// Comma-separated table of values at 0..k.
        #[arg(long, default_value = "0,1,2,3,4,5,6,7,8")]
        table: String,
        /// `const` or `affine:SLOPE`.
        #[arg(long, default_value = "affine:1")]
        tail: String,
        #[arg(long)]
        n: u64,
    },
    /// Pointwise sum of two trees.
    Sum(PolyPair),
    /// Pointwise product of two trees.
    Product(PolyPair),
    /// Wrap a tree with the length argument.
    Plus {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Substitute the second tree into the scalar argument of the first.
    SubstSecond(PolyPair),
    /// Substitute the second tree into the function argument of the first.
    SubstFn(PolyPair),
    /// Extract the majorant of a tree.
    Majorant {
        #[arg(long)]
        a: PathBuf,
    },
}

#[derive(Args)]
struct PolyPair {
    #[arg(long)]
    a: PathBuf,
    #[arg(long)]
    b: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum GalleryCmd {
    /// Names of the built-in machines.
    List,
    /// Export a machine (expanded instruction graph) as JSON.
    Dump {
        #[arg(long)]
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum TransformCmd {
    /// Wrap a machine with the finite-revision clock.
    ClockRevision {
        #[arg(long)]
        machine: String,
        #[arg(long)]
        revisions: u64,
        /// Step-budget polynomial file; defaults to the machine's declared
        /// step-count.
        #[arg(long)]
        poly: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Wrap a machine with the majorant clock for a claimed running time.
    ClockMajorant {
        #[arg(long)]
        machine: String,
        /// Description-tree file; defaults to the declared running time.
        #[arg(long)]
        bound: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compose two machines (outer queries answered by inner runs).
    Compose {
        #[arg(long)]
        outer: String,
        #[arg(long)]
        inner: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Retract a pure oracle onto the length-monotone fragment.
    Retract {
        #[arg(long)]
        oracle: String,
        /// Use the unrepaired truncate-to-`|φ(0^n)|` rule.
        #[arg(long)]
        printed: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum AdversaryCmd {
    /// Escalating-answer adversary against a revision bound.
    FlrStress {
        #[arg(long)]
        machine: String,
        #[arg(long)]
        revisions: u64,
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: u64,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Delayed-growth replay adversary at a tower depth.
    DelayedGrowth {
        #[arg(long)]
        machine: String,
        #[arg(long, default_value_t = 0)]
        depth: u32,
        #[arg(long, default_value_t = 200_000_000)]
        fuel: u64,
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

/// Any error that should exit with the usage code.
struct UsageError(String);

type CliResult<T> = Result<T, UsageError>;

fn usage<E: std::fmt::Display>(context: &str) -> impl FnOnce(E) -> UsageError + '_ {
    move |e| UsageError(format!("{context}: {e}"))
}

fn load_machine(spec: &str) -> CliResult<Machine> {
    if let Some(machine) = gallery::by_name(spec) {
        return Ok(machine);
    }
    let text = fs::read_to_string(spec).map_err(usage(spec))?;
    let file: MachineFile = serde_json::from_str(&text).map_err(usage(spec))?;
    file.into_machine().map_err(usage(spec))
}

fn load_oracle(spec: &str) -> CliResult<Oracle> {
    match spec {
        "doubling" => return Ok(Oracle::doubling()),
        "empty" => return Ok(Oracle::constant("")),
        "exponential" => {
            return Ok(Oracle::Pattern(baire::oracle::Pattern::Exponential {
                cap: 20,
            }))
        }
        _ => {}
    }
    if let Some(bits) = spec.strip_prefix("constant:") {
        let value: BitString = bits.parse().map_err(usage(spec))?;
        return Ok(Oracle::Pattern(baire::oracle::Pattern::Constant { value }));
    }
    if let Some(d) = spec.strip_prefix("delayed-growth:") {
        let depth: u32 = d.parse().map_err(usage(spec))?;
        return baire::oracle::make_delayed_growth(depth).map_err(usage(spec));
    }
    let text = fs::read_to_string(spec).map_err(usage(spec))?;
    serde_json::from_str(&text).map_err(usage(spec))
}

fn load_desc(path: &Path) -> CliResult<Description> {
    let text = fs::read_to_string(path).map_err(usage(&path.display().to_string()))?;
    serde_json::from_str(&text).map_err(usage(&path.display().to_string()))
}

fn load_poly(path: &Path) -> CliResult<UniPoly> {
    let text = fs::read_to_string(path).map_err(usage(&path.display().to_string()))?;
    serde_json::from_str(&text).map_err(usage(&path.display().to_string()))
}

fn load_trace(path: &Path) -> CliResult<Trace> {
    let text = fs::read_to_string(path).map_err(usage(&path.display().to_string()))?;
    Trace::parse_text(&text).map_err(usage(&path.display().to_string()))
}

fn parse_input(s: &str) -> CliResult<BitString> {
    s.parse().map_err(usage("--input"))
}

fn parse_length_fn(table: &str, tail: &str) -> CliResult<LengthFn> {
    let values: Vec<u64> = table
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse().map_err(usage("--table")))
        .collect::<CliResult<_>>()?;
    let tail = if tail == "const" {
        Tail::Constant
    } else if let Some(slope) = tail.strip_prefix("affine:") {
        Tail::Affine {
            slope: slope.parse().map_err(usage("--tail"))?,
        }
    } else {
        return Err(UsageError(format!("--tail: expected const or affine:SLOPE, got {tail}")));
    };
    LengthFn::new(values, tail).map_err(usage("--table"))
}

fn write_or_print(out: &Option<PathBuf>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => {
            fs::write(path, text).map_err(usage(&path.display().to_string()))?;
        }
        None => println!("{text}"),
    }
    Ok(())
}

fn verdict_report(verdict: &Verdict) -> (String, u8) {
    let json = serde_json::to_string_pretty(verdict).expect("verdicts serialize");
    let code = if verdict.passed() { 0 } else { EXIT_FAIL };
    (json, code)
}

fn outcome_json(machine: &Machine, input: &BitString, out: &RunOutcome) -> String {
    let counts = out.trace.revision_counts();
    serde_json::json!({
        "machine": machine.name,
        "input": input.to_string(),
        "status": match out.status { Status::Halted => "halted", Status::FuelExhausted => "fuel-exhausted" },
        "output": out.output.to_string(),
        "time": out.trace.time,
        "queries": out.trace.queries.len(),
        "revisions": counts.strict_increases,
        "final_profile": out.trace.final_profile_value(),
    })
    .to_string()
}

fn cmd_run(args: RunArgs) -> CliResult<u8> {
    let machine = load_machine(&args.machine)?;
    let mut oracle = load_oracle(&args.oracle)?;
    let input = parse_input(&args.input)?;
    let out = run_recording(&machine, &mut oracle, &input, args.fuel, false);
    if let Some(path) = &args.trace {
        fs::write(path, out.trace.to_text(out.halted()))
            .map_err(usage(&path.display().to_string()))?;
    }
    let report = outcome_json(&machine, &input, &out);
    match &args.report {
        Some(path) => fs::write(path, &report).map_err(usage(&path.display().to_string()))?,
        None => println!("{report}"),
    }
    Ok(match out.status {
        Status::Halted => 0,
        Status::FuelExhausted => EXIT_FUEL,
    })
}

fn cmd_check(cmd: CheckCmd) -> CliResult<u8> {
    match cmd {
        CheckCmd::StepCount { trace, poly } => {
            let trace = load_trace(&trace)?;
            let poly = load_poly(&poly)?;
            let verdict = check_step_count(&trace, &poly).map_err(usage("step-count"))?;
            let (json, code) = verdict_report(&verdict);
            println!("{json}");
            Ok(code)
        }
        CheckCmd::Opt { trace, poly } => {
            let trace = load_trace(&trace)?;
            let poly = load_poly(&poly)?;
            let verdict = check_opt(&trace, &poly).map_err(usage("opt"))?;
            let (json, code) = verdict_report(&verdict);
            println!("{json}");
            Ok(code)
        }
        CheckCmd::RunningTime { machine, oracle, input, bound, fuel } => {
            let machine = load_machine(&machine)?;
            let oracle = load_oracle(&oracle)?;
            let input = parse_input(&input)?;
            let bound = match bound {
                Some(path) => load_desc(&path)?,
                None => machine.declared.running_time.clone().ok_or_else(|| {
                    UsageError("machine declares no running time; pass --bound".into())
                })?,
            };
            let (l, exactness) = size_length_fn(&oracle).map_err(usage("size function"))?;
            let mut oracle = oracle;
            let out = run_recording(&machine, &mut oracle, &input, fuel, false);
            if !out.halted() {
                eprintln!("run exhausted its fuel");
                return Ok(EXIT_FUEL);
            }
            let verdict = check_running_time(&out.trace, &bound, &l, exactness)
                .map_err(usage("running-time"))?;
            let (json, code) = verdict_report(&verdict);
            println!("{json}");
            Ok(code)
        }
        CheckCmd::Majorant { samples, seed } => {
            let mut r = sample::rng(seed);
            for i in 0..samples {
                let t = sample::gen_description(&mut r, 4);
                let l = sample::gen_length_fn_bounded(&mut r, 64);
                let n = r.gen_range(0..=16u64);
                let verdict = check_majorant_bound(&t, &l, n).map_err(usage("majorant"))?;
                if !verdict.passed() {
                    println!("sample {i}: {verdict:?}");
                    return Ok(EXIT_FAIL);
                }
            }
            println!("majorant bound holds on {samples} samples (seed {seed})");
            Ok(0)
        }
    }
}

fn cmd_poly(cmd: PolyCmd) -> CliResult<u8> {
    fn emit(result: &Description, out: &Option<PathBuf>, l: Option<(&LengthFn, u64)>) -> CliResult<()> {
        let json = serde_json::to_string_pretty(result).expect("descriptions serialize");
        write_or_print(out, &json)?;
        if let Some((l, n)) = l {
            match result.eval(l, n) {
                Ok(v) => println!("eval at n={n}: {v}"),
                Err(e) => println!("eval at n={n}: {e}"),
            }
        }
        Ok(())
    }
    match cmd {
        PolyCmd::Eval { desc, table, tail, n } => {
            let t = load_desc(&desc)?;
            let l = parse_length_fn(&table, &tail)?;
            let value = t.eval(&l, n).map_err(usage("eval"))?;
            println!("{value}");
            Ok(0)
        }
        PolyCmd::Sum(p) => {
            let result = load_desc(&p.a)?.sum(&load_desc(&p.b)?).map_err(usage("sum"))?;
            emit(&result, &p.out, None)?;
            Ok(0)
        }
        PolyCmd::Product(p) => {
            let result = load_desc(&p.a)?
                .product(&load_desc(&p.b)?)
                .map_err(usage("product"))?;
            emit(&result, &p.out, None)?;
            Ok(0)
        }
        PolyCmd::Plus { a, out } => {
            let result = load_desc(&a)?.plus();
            emit(&result, &out, None)?;
            Ok(0)
        }
        PolyCmd::SubstSecond(p) => {
            let result = load_desc(&p.a)?
                .subst_second(&load_desc(&p.b)?)
                .map_err(usage("subst-second"))?;
            emit(&result, &p.out, None)?;
            Ok(0)
        }
        PolyCmd::SubstFn(p) => {
            let result = load_desc(&p.a)?
                .subst_fn(&load_desc(&p.b)?)
                .map_err(usage("subst-fn"))?;
            emit(&result, &p.out, None)?;
            Ok(0)
        }
        PolyCmd::Majorant { a } => {
            let m = load_desc(&a)?.majorant();
            println!(
                "{}",
                serde_json::to_string_pretty(&m).expect("majorants serialize")
            );
            Ok(0)
        }
    }
}

fn cmd_gallery(cmd: GalleryCmd) -> CliResult<u8> {
    match cmd {
        GalleryCmd::List => {
            for name in gallery::MACHINE_NAMES {
                println!("{name}");
            }
            println!("constant:<bits>");
            Ok(0)
        }
        GalleryCmd::Dump { name, out } => {
            let machine = gallery::by_name(&name)
                .ok_or_else(|| UsageError(format!("unknown gallery machine {name:?}")))?;
            let file = MachineFile::from_machine(&machine);
            let json = serde_json::to_string_pretty(&file).expect("machines serialize");
            write_or_print(&out, &json)?;
            eprintln!("expanded size: {} instructions", machine.program.len());
            Ok(0)
        }
    }
}

fn cmd_transform(cmd: TransformCmd) -> CliResult<u8> {
    fn emit_machine(machine: &Machine, out: &Option<PathBuf>) -> CliResult<()> {
        let file = MachineFile::from_machine(machine);
        let json = serde_json::to_string_pretty(&file).expect("machines serialize");
        write_or_print(out, &json)?;
        eprintln!("expanded size: {} instructions", machine.program.len());
        Ok(())
    }
    match cmd {
        TransformCmd::ClockRevision { machine, revisions, poly, out } => {
            let machine = load_machine(&machine)?;
            let p = match poly {
                Some(path) => load_poly(&path)?,
                None => machine.declared.step_count.clone().ok_or_else(|| {
                    UsageError("machine declares no step-count; pass --poly".into())
                })?,
            };
            let clocked = transform::clock_finite_revision(&machine, revisions, &p)
                .map_err(usage("clock-revision"))?;
            emit_machine(&clocked, &out)?;
            Ok(0)
        }
        TransformCmd::ClockMajorant { machine, bound, out } => {
            let machine = load_machine(&machine)?;
            let t = match bound {
                Some(path) => load_desc(&path)?,
                None => machine.declared.running_time.clone().ok_or_else(|| {
                    UsageError("machine declares no running time; pass --bound".into())
                })?,
            };
            let clocked =
                transform::clock_with_majorant(&machine, &t).map_err(usage("clock-majorant"))?;
            emit_machine(&clocked, &out)?;
            Ok(0)
        }
        TransformCmd::Compose { outer, inner, out } => {
            let outer = load_machine(&outer)?;
            let inner = load_machine(&inner)?;
            let composite =
                transform::compose_machines(&outer, &inner).map_err(usage("compose"))?;
            emit_machine(&composite, &out)?;
            Ok(0)
        }
        TransformCmd::Retract { oracle, printed, out } => {
            let oracle = load_oracle(&oracle)?;
            let retracted = if printed {
                transform::retract_printed(&oracle)
            } else {
                transform::retract_to_reg(&oracle)
            }
            .map_err(usage("retract"))?;
            let json = serde_json::to_string_pretty(&retracted).expect("oracles serialize");
            write_or_print(&out, &json)?;
            Ok(0)
        }
    }
}

fn cmd_adversary(cmd: AdversaryCmd) -> CliResult<u8> {
    match cmd {
        AdversaryCmd::FlrStress { machine, revisions, fuel, report } => {
            let machine = load_machine(&machine)?;
            let result =
                gallery::flr_stress(&machine, revisions, fuel).map_err(usage("flr-stress"))?;
            let json = serde_json::to_string_pretty(&result).expect("reports serialize");
            write_or_print(&report, &json)?;
            Ok(0)
        }
        AdversaryCmd::DelayedGrowth { machine, depth, fuel, report } => {
            let machine = load_machine(&machine)?;
            let result = gallery::delayed_growth_adversary(&machine, depth, fuel)
                .map_err(usage("delayed-growth"))?;
            let json = serde_json::to_string_pretty(&result).expect("reports serialize");
            write_or_print(&report, &json)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Check(cmd) => cmd_check(cmd),
        Command::Poly(cmd) => cmd_poly(cmd),
        Command::Gallery(cmd) => cmd_gallery(cmd),
        Command::Transform(cmd) => cmd_transform(cmd),
        Command::Adversary(cmd) => cmd_adversary(cmd),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
