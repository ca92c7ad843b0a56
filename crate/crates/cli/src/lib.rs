//! Command-line front end for `mitl-synth`.
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use mitl_synth::bench::scheduling_instance;
use mitl_synth::dcm::{encode_omega, encode_plant, parse_dcm, ChannelMachine};
use mitl_synth::logic::{evaluate, parse_formula, parse_formula_with, Formula, TimedWord};
use mitl_synth::plant::{parse_sts, print_sts, sts_to_dot, Granularity, Sts};
use mitl_synth::synth::{synthesise, verify_controller, SynthOptions, SynthResult, Verdict};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAPPED: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "mitl-synth", version, about = "Bounded-resources MITL synthesis over finite timed words")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Synthesise a controller for a plant and a formula.
    Synth {
        plant: PathBuf,
        formula: PathBuf,
        /// Controller clock names, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "")]
        clocks: Vec<String>,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long = "K", default_value_t = 1)]
        k: u32,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Evaluate a formula on a timed word.
    Mc { formula: PathBuf, word: PathBuf },
    /// Check a controller against a plant and formula up to a depth.
    Verify {
        controller: PathBuf,
        plant: PathBuf,
        formula: PathBuf,
        #[arg(long, default_value_t = 6)]
        depth: usize,
    },
    /// Generated benchmark families.
    Bench {
        #[command(subcommand)]
        family: BenchCommand,
    },
    /// Deterministic channel machines and their encodings.
    Dcm {
        #[command(subcommand)]
        action: DcmCommand,
    },
}

#[derive(Args, Debug, Clone)]
pub struct RunArgs {
    #[arg(long, default_value_t = 1_000_000)]
    pub node_budget: usize,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    #[arg(long)]
    pub merge_bound: Option<usize>,
    /// Directory for the controller and the JSON summary.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum BenchCommand {
    /// Job scheduling: duration, machines, controller clocks.
    Sched {
        duration: u32,
        machines: usize,
        clocks: usize,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Subcommand, Debug)]
pub enum DcmCommand {
    Simulate {
        machine: PathBuf,
        #[arg(long, default_value_t = 1000)]
        max: usize,
    },
    EncodeOmega {
        machine: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    EncodePlant {
        machine: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    ValidatePlay { machine: PathBuf, word: PathBuf },
}

#[derive(Debug, Clone, Serialize)]
pub struct RunSummary {
    pub verdict: String,
    pub nodes: usize,
    pub depth: usize,
    pub losing_leaves: usize,
    pub repeat_leaves: usize,
    pub merge_bound: usize,
    pub wall_ms: u128,
    pub controller: Option<PathBuf>,
}

/// Parses `args` (program name first) and runs the command, writing to `out`.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = write!(out, "{e}");
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(out, "error: {e:#}");
            EXIT_USAGE
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_plant(path: &Path) -> Result<Sts> {
    parse_sts(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn load_machine(path: &Path) -> Result<ChannelMachine> {
    parse_dcm(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn load_formula(path: &Path, plant: Option<&Sts>) -> Result<Formula> {
    let text = read(path)?;
    let parsed = match plant {
        Some(p) => parse_formula_with(&text, &p.alphabet()),
        None => parse_formula(&text),
    };
    parsed.with_context(|| format!("parsing {}", path.display()))
}

fn load_word(path: &Path) -> Result<TimedWord> {
    TimedWord::parse(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Synth { plant, formula, clocks, m, k, run } => {
            let plant = load_plant(&plant)?;
            let phi = load_formula(&formula, Some(&plant))?;
            let clocks: Vec<String> = clocks.into_iter().filter(|c| !c.is_empty()).collect();
            anyhow::ensure!(m > 0, "--m must be positive");
            synth_and_report(&plant, &phi, &Granularity::new(clocks, m, k), &run, out)
        }
        Command::Mc { formula, word } => {
            let phi = load_formula(&formula, None)?;
            let w = load_word(&word)?;
            let holds = evaluate(&w, &phi);
            writeln!(out, "{holds}")?;
            Ok(if holds { EXIT_OK } else { EXIT_NO })
        }
        Command::Verify { controller, plant, formula, depth } => {
            let ctrl = load_plant(&controller)?;
            let plant = load_plant(&plant)?;
            let phi = load_formula(&formula, Some(&plant))?;
            let report = verify_controller(&ctrl, &plant, &phi, depth);
            if report.ok {
                writeln!(out, "OK: {} closed-loop words up to depth {depth}", report.checked)?;
                Ok(EXIT_OK)
            } else {
                writeln!(out, "VIOLATED after {} words", report.checked)?;
                if let Some(w) = report.counterexample {
                    writeln!(out, "counterexample: {w}")?;
                }
                Ok(EXIT_NO)
            }
        }
        Command::Bench { family: BenchCommand::Sched { duration, machines, clocks, run } } => {
            anyhow::ensure!(machines > 0, "at least one machine is needed");
            let (plant, phi, mu) = scheduling_instance(duration, machines, clocks);
            writeln!(out, "instance: T={duration} n={machines} clocks={clocks}")?;
            synth_and_report(&plant, &phi, &mu, &run, out)
        }
        Command::Dcm { action } => dcm(action, out),
    }
}

fn synth_and_report(plant: &Sts, phi: &Formula, mu: &Granularity, run: &RunArgs, out: &mut dyn Write) -> Result<i32> {
    let options = SynthOptions {
        node_budget: run.node_budget,
        threads: run.threads.max(1),
        merge_bound: run.merge_bound,
        explicit_tree: false,
    };
    let start = Instant::now();
    let result = synthesise(plant, phi, mu, &options)?;
    let wall_ms = start.elapsed().as_millis();
    let controller = match (&run.out, &result.controller) {
        (Some(dir), Some(c)) => Some(write_controller(dir, c)?),
        _ => None,
    };
    let summary = summary(&result, wall_ms, controller);
    write_text(&summary, out)?;
    let json = serde_json::to_string_pretty(&summary)?;
    match &run.out {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            fs::write(dir.join("summary.json"), format!("{json}\n"))?;
        }
        None => {
            writeln!(out, "{json}")?;
            if let Some(c) = &result.controller {
                writeln!(out, "{}", print_sts(c))?;
            }
        }
    }
    Ok(match result.verdict {
        Verdict::Realisable => EXIT_OK,
        Verdict::Unrealisable => EXIT_NO,
        Verdict::ResourceCapped => EXIT_CAPPED,
    })
}

fn summary(result: &SynthResult, wall_ms: u128, controller: Option<PathBuf>) -> RunSummary {
    RunSummary {
        verdict: result.verdict.to_string().replace('-', "_"),
        nodes: result.nodes,
        depth: result.depth,
        losing_leaves: result.losing_leaves,
        repeat_leaves: result.repeat_leaves,
        merge_bound: result.merge_bound,
        wall_ms,
        controller,
    }
}

fn write_text(s: &RunSummary, out: &mut dyn Write) -> Result<()> {
    writeln!(out, "verdict: {}", s.verdict)?;
    writeln!(out, "nodes: {} (depth {}, {} losing, {} repeat)", s.nodes, s.depth, s.losing_leaves, s.repeat_leaves)?;
    writeln!(out, "merge bound: {}", s.merge_bound)?;
    writeln!(out, "time: {} ms", s.wall_ms)?;
    if let Some(p) = &s.controller {
        writeln!(out, "controller: {}", p.display())?;
    }
    Ok(())
}

fn write_controller(dir: &Path, c: &Sts) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = dir.join("controller.sts");
    fs::write(&path, print_sts(c))?;
    fs::write(dir.join("controller.dot"), sts_to_dot(c))?;
    Ok(path)
}

fn dcm(action: DcmCommand, out: &mut dyn Write) -> Result<i32> {
    match action {
        DcmCommand::Simulate { machine, max } => {
            let s = load_machine(&machine)?;
            let sim = s.simulate(max);
            writeln!(out, "{:?}, N={}", sim.outcome, sim.max_occupancy)?;
            Ok(EXIT_OK)
        }
        DcmCommand::EncodeOmega { machine, out: dir } => {
            let e = encode_omega(&load_machine(&machine)?);
            let join = |s: &std::collections::BTreeSet<String>| s.iter().cloned().collect::<Vec<_>>().join(" ");
            let files = [
                ("controllable.txt", join(&e.controllable)),
                ("environment.txt", join(&e.environment)),
                ("omega.mitl", e.omega.to_string()),
                ("omega_prime.mitl", e.omega_prime.to_string()),
            ];
            emit(dir.as_deref(), &files, out)?;
            Ok(EXIT_OK)
        }
        DcmCommand::EncodePlant { machine, out: dir } => {
            let e = encode_plant(&load_machine(&machine)?)?;
            let files = [
                ("plant.sts", print_sts(&e.plant)),
                ("psi0.mitl", e.psi0.to_string()),
                ("psi0_prime.mitl", e.psi0_prime.to_string()),
            ];
            emit(dir.as_deref(), &files, out)?;
            Ok(EXIT_OK)
        }
        DcmCommand::ValidatePlay { machine, word } => {
            let s = load_machine(&machine)?;
            let w = load_word(&word)?;
            let r = mitl_synth::dcm::validate_play(&s, &w);
            for (name, ok) in [("C1", r.c1), ("C2", r.c2), ("C3", r.c3), ("C4", r.c4)] {
                writeln!(out, "{name}: {}", if ok { "ok" } else { "violated" })?;
            }
            writeln!(out, "{}", serde_json::to_string(&r)?)?;
            Ok(if r.all() { EXIT_OK } else { EXIT_NO })
        }
    }
}

fn emit(dir: Option<&Path>, files: &[(&str, String)], out: &mut dyn Write) -> Result<()> {
    match dir {
        Some(d) => {
            fs::create_dir_all(d)?;
            for (name, body) in files {
                let path = d.join(name);
                fs::write(&path, format!("{}\n", body.trim_end()))?;
                writeln!(out, "wrote {}", path.display())?;
            }
        }
        None => {
            for (name, body) in files {
                writeln!(out, "# {name}")?;
                writeln!(out, "{}", body.trim_end())?;
            }
        }
    }
    Ok(())
}
