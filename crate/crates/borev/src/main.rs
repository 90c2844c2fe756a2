//! Command-line surface over the library: load a belief state from a
//! problem file, then revise, check suites, extract, classify, transform or
//! generate. Exit codes are part of the contract: 0 for a positive result,
//! 1 for a semantically expected negative (inconsistent revision, failing
//! suite), 2 for parse errors, 3 for invariant violations.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use borev::canonical::{classify_black_box, extract_canonical};
use borev::logic::{canonical_formula, models, parse_formula, AtomTable, Valuation, WorldSet};
use borev::npr::{is_credible, npr_revise, NprState};
use borev::orders::{interpretation_of, random_interpretation, GenClass};
use borev::postulates::{
    check_suite, CheckMode, CheckReport, OperatorUnderTest, Suite, Verdict,
};
use borev::problem::{render, ProblemFile};
use borev::revision::{classify_operator_class, revise, strongest_class, BeliefState, OperatorClass};

#[derive(Parser)]
#[command(name = "borev", version, about = "Belief revision over interval orders and biorders")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Revise the file's belief state by a sentence.
    Revise {
        file: PathBuf,
        formula: String,
        /// Non-prioritised mode: an input whose revision would be
        /// inconsistent is ignored and the prior beliefs are kept.
        #[arg(long)]
        npr: bool,
        #[arg(long)]
        json: bool,
    },
    /// Check a postulate suite against the file's operator. NPR suites run
    /// against the non-prioritised operator of the state automatically.
    Check {
        file: PathBuf,
        /// agm, iob, bob, ztbob, tbob, bob-npr, ztbob-npr or tbob-npr.
        #[arg(long)]
        suite: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
        mode: ModeArg,
        /// Sampling seed (sampled mode only).
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Tuples per postulate (sampled mode only).
        #[arg(long, default_value_t = 256)]
        count: usize,
        #[arg(long)]
        json: bool,
    },
    /// Rebuild the state's interpretation from its operator alone and print
    /// it as a problem file.
    Canonical {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Report which operator classes the state inhabits, read off the ranks
    /// and rediscovered from the operator as a black box.
    Classify {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Rewrite the state's relation into a target shape with the same
    /// revision behaviour where the theory allows it.
    Transform {
        file: PathBuf,
        #[arg(long, value_enum)]
        target: TargetArg,
        #[arg(long)]
        json: bool,
    },
    /// Generate a seeded random belief state anchored on a formula.
    Random {
        /// Comma-separated atom names, e.g. `p,q`.
        #[arg(long)]
        atoms: String,
        /// Formula whose models the state must be anchored on.
        #[arg(long)]
        anchor: String,
        #[arg(long, value_enum)]
        class: ClassArg,
        #[arg(long, default_value_t = 3)]
        max_rank: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Sampled,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TargetArg {
    Interval,
    TotalPreorder,
    Sphere,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ClassArg {
    Bob,
    Ztbob,
    Tbob,
    Iob,
    TotalPreorder,
}

impl ClassArg {
    fn generation(self) -> (GenClass, OperatorClass) {
        match self {
            ClassArg::Bob => (GenClass::Biorder, OperatorClass::Bob),
            ClassArg::Ztbob => (GenClass::ZTransitive, OperatorClass::Ztbob),
            ClassArg::Tbob => (GenClass::Transitive, OperatorClass::Tbob),
            ClassArg::Iob => (GenClass::Interval, OperatorClass::Iob),
            ClassArg::TotalPreorder => (GenClass::TotalPreorder, OperatorClass::Tbob),
        }
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn parse(message: impl ToString) -> Failure {
        Failure { code: 2, message: message.to_string() }
    }

    fn invariant(message: impl ToString) -> Failure {
        Failure { code: 3, message: message.to_string() }
    }
}

impl From<borev::problem::ProblemError> for Failure {
    fn from(e: borev::problem::ProblemError) -> Failure {
        match e {
            borev::problem::ProblemError::Parse { .. } => Failure::parse(e),
            borev::problem::ProblemError::Invariant { .. } => Failure::invariant(e),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Revise { file, formula, npr, json } => cmd_revise(&file, &formula, npr, json),
        Command::Check { file, suite, mode, seed, count, json } => {
            cmd_check(&file, &suite, mode, seed, count, json)
        }
        Command::Canonical { file, json } => cmd_canonical(&file, json),
        Command::Classify { file, json } => cmd_classify(&file, json),
        Command::Transform { file, target, json } => cmd_transform(&file, target, json),
        Command::Random { atoms, anchor, class, max_rank, seed, json } => {
            cmd_random(&atoms, &anchor, class, max_rank, seed, json)
        }
    }
}

fn load(path: &PathBuf) -> Result<(ProblemFile, BeliefState), Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::parse(format!("{}: {e}", path.display())))?;
    let pf = ProblemFile::parse(&text)?;
    let state = pf.state()?;
    Ok((pf, state))
}

fn formula_of(set: &WorldSet, table: &AtomTable) -> String {
    canonical_formula(set, table).display(table).to_string()
}

fn cmd_revise(path: &PathBuf, formula: &str, npr: bool, json: bool) -> Result<u8, Failure> {
    let (pf, state) = load(path)?;
    let table = pf.table();
    let input = models(&parse_formula(formula, table).map_err(Failure::parse)?, table);

    let (result, retained) = if npr {
        let nstate = NprState::new(state.clone());
        let retained = !is_credible(&nstate, &input);
        (npr_revise(&nstate, &input), retained)
    } else {
        (revise(&state, &input).models, false)
    };
    let consistent = !result.is_empty();

    if json {
        println!(
            "{}",
            json!({
                "command": "revise",
                "npr": npr,
                "input": formula,
                "input_models": input.bitstrings(),
                "consistent": consistent,
                "retained": retained,
                "models": result.bitstrings(),
                "formula": formula_of(&result, table),
            })
        );
    } else {
        println!(
            "K: {}  {}",
            formula_of(state.belief_models(), table),
            state.belief_models().barred(table)
        );
        println!("input: {formula}");
        if !consistent {
            println!("inconsistent (destabilising input)");
        } else {
            if retained {
                println!("input incredible: retained K");
            }
            println!("models: {}", result.barred(table));
            println!("formula: {}", formula_of(&result, table));
        }
    }
    Ok(if consistent { 0 } else { 1 })
}

fn cmd_check(
    path: &PathBuf,
    suite_name: &str,
    mode: ModeArg,
    seed: u64,
    count: usize,
    json: bool,
) -> Result<u8, Failure> {
    let (pf, state) = load(path)?;
    let table = pf.table();
    let suite: Suite = suite_name.parse().map_err(Failure::parse)?;
    let non_prioritised = matches!(suite, Suite::BobNpr | Suite::ZtbobNpr | Suite::TbobNpr);
    let op = if non_prioritised {
        OperatorUnderTest::from_npr(&NprState::new(state))
    } else {
        OperatorUnderTest::from_revision(&state)
    };
    let check_mode = match mode {
        ModeArg::Exhaustive => CheckMode::Exhaustive,
        ModeArg::Sampled => CheckMode::Sampled { seed, count },
    };
    let reports = check_suite(&op, suite, check_mode).map_err(Failure::invariant)?;
    let failures = reports.iter().filter(|r| !r.verdict.ok()).count();

    if json {
        println!(
            "{}",
            json!({
                "command": "check",
                "suite": suite.name(),
                "npr": non_prioritised,
                "mode": mode_json(check_mode),
                "all_hold": failures == 0,
                "reports": reports.iter().map(|r| r.to_json(table)).collect::<Vec<_>>(),
            })
        );
    } else {
        let mode_note = match check_mode {
            CheckMode::Exhaustive => "exhaustive".to_string(),
            CheckMode::Sampled { seed, count } => format!("sampled seed={seed} count={count}"),
        };
        let operator_note = if non_prioritised { ", npr operator" } else { "" };
        println!("suite {} ({mode_note}{operator_note})", suite.name());
        for report in &reports {
            print!("{}", describe_report(report, table));
        }
        if failures == 0 {
            println!("suite {}: all {} hold", suite.name(), reports.len());
        } else {
            println!("suite {}: {failures} of {} fail", suite.name(), reports.len());
        }
    }
    Ok(if failures == 0 { 0 } else { 1 })
}

fn mode_json(mode: CheckMode) -> serde_json::Value {
    match mode {
        CheckMode::Exhaustive => json!("exhaustive"),
        CheckMode::Sampled { seed, count } => json!({ "seed": seed, "count": count }),
    }
}

fn describe_report(report: &CheckReport, table: &AtomTable) -> String {
    let mut out = String::new();
    writeln!(out, "  {:<16} {}", report.postulate.code(), report.verdict.label()).unwrap();
    if report.verdict == Verdict::Fails {
        if let Some(w) = &report.witness {
            writeln!(out, "      alpha: {}", formula_of(&w.alpha, table)).unwrap();
            if let Some(beta) = &w.beta {
                writeln!(out, "      beta: {}", formula_of(beta, table)).unwrap();
            }
            writeln!(
                out,
                "      lhs: {}  rhs: {}",
                w.lhs_models.barred(table),
                w.rhs_models.barred(table)
            )
            .unwrap();
        }
    }
    out
}

fn cmd_canonical(path: &PathBuf, json: bool) -> Result<u8, Failure> {
    let (pf, state) = load(path)?;
    let table = pf.table();
    let op = OperatorUnderTest::from_revision(&state);
    let trace = extract_canonical(&op).map_err(Failure::invariant)?;
    let out_state = BeliefState::new(trace.result.clone(), strongest_class(&trace.result))
        .map_err(Failure::invariant)?;
    let file = render(&out_state, table);

    if json {
        println!(
            "{}",
            json!({
                "command": "canonical",
                "trace": trace.to_json(),
                "file": file,
            })
        );
    } else {
        let row = |seq: &[WorldSet]| {
            seq.iter().map(|s| s.barred(table)).collect::<Vec<_>>().join(", ")
        };
        println!("# u: {}", row(&trace.u_seq));
        println!("# v: {}", row(&trace.v_seq));
        print!("{file}");
    }
    Ok(0)
}

fn cmd_classify(path: &PathBuf, json: bool) -> Result<u8, Failure> {
    let (_, state) = load(path)?;
    let rank_classes: Vec<&str> =
        classify_operator_class(state.interpretation()).iter().map(|c| c.name()).collect();
    let op = OperatorUnderTest::from_revision(&state);
    let observed = classify_black_box(&op).map_err(Failure::invariant)?;
    let black_box: Vec<&str> = observed.classes.iter().map(|c| c.name()).collect();

    if json {
        println!(
            "{}",
            json!({
                "command": "classify",
                "rank_classes": rank_classes,
                "black_box_classes": black_box,
                "roundtrip_holds": observed.roundtrip.holds,
                "mismatches": observed.roundtrip.mismatches.len(),
            })
        );
    } else {
        println!("rank classes: {}", rank_classes.join(", "));
        println!("black-box classes: {}", black_box.join(", "));
        if observed.roundtrip.holds {
            println!("round-trip: holds");
        } else {
            println!("round-trip: fails ({} classes)", observed.roundtrip.mismatches.len());
        }
    }
    Ok(0)
}

fn cmd_transform(path: &PathBuf, target: TargetArg, json: bool) -> Result<u8, Failure> {
    let (pf, state) = load(path)?;
    let table = pf.table();
    let n = table.len();
    let relation = state.interpretation().relation();

    let (out_state, note, extra) = match target {
        TargetArg::Interval | TargetArg::TotalPreorder => {
            if target == TargetArg::TotalPreorder && !relation.is_transitive() {
                return Err(Failure::invariant(
                    "the relation is not transitive, so no equivalent total preorder exists",
                ));
            }
            let rewritten = relation.to_interval_order().map_err(|e| match e {
                borev::orders::OrdersError::NotZTransitive { u, v, z } => {
                    Failure::invariant(format!(
                        "the relation is not z-transitive at ({}, {}, {})",
                        Valuation(u).bitstring(n),
                        Valuation(v).bitstring(n),
                        Valuation(z).bitstring(n)
                    ))
                }
                other => Failure::invariant(other),
            })?;
            if target == TargetArg::TotalPreorder && !rewritten.is_total_preorder() {
                return Err(Failure::invariant(
                    "the rewritten relation is not a total preorder",
                ));
            }
            let interp = interpretation_of(&rewritten)
                .expect("interval orders are reflexive Ferrers relations");
            let class = if target == TargetArg::Interval {
                OperatorClass::Iob
            } else {
                OperatorClass::Tbob
            };
            let out_state = BeliefState::new(interp, class).map_err(Failure::invariant)?;
            let pairs: Vec<String> = rewritten
                .pairs()
                .map(|(v, u)| format!("{}<={}", v.bitstring(n), u.bitstring(n)))
                .collect();
            let note = format!("# pairs: {}\n", pairs.join(" "));
            let extra = json!({
                "pairs": rewritten
                    .pairs()
                    .map(|(v, u)| json!([v.bitstring(n), u.bitstring(n)]))
                    .collect::<Vec<_>>(),
            });
            (out_state, note, extra)
        }
        TargetArg::Sphere => {
            let compressed = interpretation_of(&relation)
                .expect("rank-induced relations are Ferrers");
            let ranking = compressed.to_sphere_ranking().map_err(Failure::invariant)?;
            let mut note = String::new();
            let mut spheres = Vec::new();
            for rank in 0..=ranking.max_rank() {
                let worlds = ranking.members(rank);
                let tag = if ranking.is_impossible(rank) { " (impossible)" } else { "" };
                writeln!(note, "# sphere {rank}: {}{tag}", worlds.barred(table)).unwrap();
                spheres.push(json!({
                    "rank": rank,
                    "worlds": worlds.bitstrings(),
                    "impossible": ranking.is_impossible(rank),
                }));
            }
            let interp = ranking.to_interpretation();
            let out_state =
                BeliefState::new(interp, OperatorClass::Tbob).map_err(Failure::invariant)?;
            (out_state, note, json!({ "spheres": spheres }))
        }
    };

    let file = render(&out_state, table);
    if json {
        let mut payload = json!({
            "command": "transform",
            "target": match target {
                TargetArg::Interval => "interval",
                TargetArg::TotalPreorder => "total-preorder",
                TargetArg::Sphere => "sphere",
            },
            "file": file,
        });
        for (k, v) in extra.as_object().unwrap() {
            payload[k] = v.clone();
        }
        println!("{payload}");
    } else {
        print!("{note}{file}");
    }
    Ok(0)
}

fn cmd_random(
    atoms: &str,
    anchor: &str,
    class: ClassArg,
    max_rank: u32,
    seed: u64,
    json: bool,
) -> Result<u8, Failure> {
    let table = AtomTable::new(atoms.split(',').map(str::trim)).map_err(Failure::parse)?;
    let anchor_models = models(&parse_formula(anchor, &table).map_err(Failure::parse)?, &table);
    let (gen_class, op_class) = class.generation();
    let interp = random_interpretation(table.len(), &anchor_models, gen_class, max_rank, seed)
        .map_err(Failure::invariant)?;
    let state = BeliefState::new(interp, op_class).map_err(Failure::invariant)?;
    let file = render(&state, &table);

    if json {
        println!(
            "{}",
            json!({
                "command": "random",
                "seed": seed,
                "class": op_class.name(),
                "file": file,
            })
        );
    } else {
        print!("{file}");
    }
    Ok(0)
}
