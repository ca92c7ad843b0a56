//! One PASS/FAIL line per acceptance criterion; exits non-zero when any fails.
mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use common::*;
use mitl_synth::bench::{scheduling_instance, TABLE};
use mitl_synth::dcm::{encode_omega, parse_dcm, validate_play};
use mitl_synth::logic::{evaluate, Formula};
use mitl_synth::ocata::{accepts_classical, accepts_interval, merge_bound, step_interval, translate, IntervalConfig};
use mitl_synth::plant::{example_plant, print_sts, trivial_plant, Granularity, Sts};
use mitl_synth::synth::{synthesise, verify_controller, SynthOptions, Verdict};
use mitl_synth::Q;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const EXAMPLE3_BUDGET: Duration = Duration::from_secs(10);
const TABLE_BUDGET: Duration = Duration::from_secs(300);
const ORACLE_BUDGET: Duration = Duration::from_secs(120);
const VERIFY_DEPTH: usize = 6;
const FORMULAS: usize = 200;
const WORDS: usize = 20;
const PAIRS: usize = 100;

struct Report {
    lines: Vec<(bool, String)>,
}

impl Report {
    fn record(&mut self, n: usize, ok: bool, detail: String) {
        let line = format!("{} criterion {n}: {detail}", if ok { "PASS" } else { "FAIL" });
        println!("{line}");
        self.lines.push((ok, line));
    }
}

fn z11() -> Granularity {
    Granularity { clocks: vec!["z".into()], m: 1, k: 1 }
}

fn example3(report: &mut Report) {
    let phi = example3_formula();
    let start = Instant::now();
    let pos = synthesise(&example_plant(), &phi, &z11(), &SynthOptions::default()).unwrap();
    let pos_time = start.elapsed();
    let verified = pos.controller.as_ref().is_some_and(|c| verify_controller(c, &example_plant(), &phi, VERIFY_DEPTH).ok);
    let start = Instant::now();
    let neg = synthesise(&trivial_plant(), &phi, &z11(), &SynthOptions::default()).unwrap();
    let neg_time = start.elapsed();
    let ok = pos.verdict == Verdict::Realisable
        && verified
        && neg.verdict == Verdict::Unrealisable
        && pos_time < EXAMPLE3_BUDGET
        && neg_time < EXAMPLE3_BUDGET;
    report.record(
        1,
        ok,
        format!(
            "example plant {} (verified at depth {VERIFY_DEPTH}: {verified}, {:.2?}), trivial plant {} ({:.2?})",
            pos.verdict, pos_time, neg.verdict, neg_time
        ),
    );
}

fn table(report: &mut Report) {
    let mut ok = true;
    let mut parts = Vec::new();
    for ((t, n, k), expected) in TABLE {
        let (plant, phi, mu) = scheduling_instance(t, n, k);
        let start = Instant::now();
        let r = synthesise(&plant, &phi, &mu, &SynthOptions::default()).unwrap();
        let elapsed = start.elapsed();
        let want = if expected { Verdict::Realisable } else { Verdict::Unrealisable };
        ok &= r.verdict == want && elapsed < TABLE_BUDGET;
        parts.push(format!("({t},{n},{k}) {}", r.verdict));
    }
    report.record(2, ok, parts.join(", "));
}

fn sigma() -> BTreeSet<String> {
    LETTERS.iter().map(|s| s.to_string()).collect()
}

fn oracles(report: &mut Report) {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let start = Instant::now();
    let (mut classical_bad, mut interval_bad, mut checks) = (0, 0, 0);
    for _ in 0..FORMULAS {
        let phi = random_formula(&mut rng, 3, 2);
        let a = translate(&phi, &sigma()).unwrap();
        let m = merge_bound(&phi, None);
        for _ in 0..WORDS {
            let w = random_word(&mut rng, 5);
            let classical = accepts_classical(&a, &w);
            classical_bad += usize::from(classical != evaluate(&w, &phi));
            interval_bad += usize::from(accepts_interval(&a, &w, m) != classical);
            checks += 1;
        }
    }
    let elapsed = start.elapsed();
    report.record(
        3,
        classical_bad == 0 && elapsed < ORACLE_BUDGET,
        format!("{classical_bad} discrepancies between automaton and evaluator over {checks} checks ({elapsed:.2?})"),
    );
    report.record(4, interval_bad == 0, format!("{interval_bad} discrepancies between interval and classical semantics"));
}

fn worked_example(report: &mut Report) {
    let q = Q::new;
    let a = response();
    let b = step_interval(&a, &start(), q(1, 10), "b", 3);
    let b_ok = b == vec![IntervalConfig::from_items([(0, q(3, 20), q(3, 5))])];
    let mut s = step_interval(&a, &start(), q(1, 10), "a", 3);
    s.sort();
    let mut expected = vec![
        IntervalConfig::from_items([(0, q(3, 20), q(3, 5)), (1, q(0, 1), q(1, 2)), (1, q(3, 5), q(1, 1))]),
        IntervalConfig::from_items([(0, q(3, 20), q(3, 5)), (1, q(0, 1), q(0, 1)), (1, q(1, 5), q(1, 2)), (1, q(3, 5), q(1, 1))]),
    ];
    expected.sort();
    let a_ok = s == expected;
    report.record(5, b_ok && a_ok, format!("b successor exact: {b_ok}, both a successors exact: {a_ok}"));
}

fn bisimulation(report: &mut Report) {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let games = [
        example3_game(),
        game_for(trivial_plant(), &example3_formula(), z11()),
        game_for(example_plant(), &mitl_synth::logic::parse_formula("wG (a -> wF[1,2] b)").unwrap(), Granularity { clocks: vec!["z".into()], m: 2, k: 2 }),
        {
            let (p, f, mu) = scheduling_instance(2, 1, 1);
            game_for(p, &f, mu)
        },
    ];
    let mut labels = Vec::new();
    let per_game = PAIRS / games.len();
    let mut bad = 0;
    for g in &games {
        let ls = reachable_labels(g, per_game);
        bad += bisimulation_violations(g, &ls, &mut rng);
        labels.push(ls.len());
    }
    let total: usize = labels.iter().sum();
    report.record(6, bad == 0 && total >= PAIRS, format!("{bad} violations over {total} label-equal pairs"));
}

fn channel_machines(report: &mut Report) {
    let mut ok = true;
    let mut perturbations = 0;
    for text in DCM_MACHINES {
        let m = parse_dcm(text).unwrap();
        let enc = encode_omega(&m);
        let Some((w, reads)) = faithful_play(&m, Q::new(1, 8)) else {
            ok = false;
            continue;
        };
        ok &= validate_play(&m, &w).all() && evaluate(&w, &Formula::and(enc.big_phi.clone(), enc.big_psi.clone()));
        for k in reads {
            for delta in [Q::new(1, 10), Q::new(-1, 10)] {
                let cheat = perturb_and_append(&w, k, delta, "CheckL").expect("monotone perturbation");
                ok &= !evaluate(&cheat, &enc.psi[6]);
                perturbations += 1;
            }
        }
    }
    report.record(7, ok, format!("{} faithful plays satisfy the encoding, {perturbations} perturbations falsify the check", DCM_MACHINES.len()));
}

fn corpus() -> Vec<(Sts, Formula, Granularity)> {
    let mut v = vec![(example_plant(), example3_formula(), z11()), (trivial_plant(), example3_formula(), z11())];
    v.extend(TABLE.iter().map(|((t, n, k), _)| scheduling_instance(*t, *n, *k)));
    v
}

fn determinism(report: &mut Report) {
    let mut ok = true;
    for (plant, phi, mu) in corpus() {
        let outputs: Vec<(Verdict, Option<String>)> = [1, 1, 4, 4]
            .iter()
            .map(|&threads| {
                let r = synthesise(&plant, &phi, &mu, &SynthOptions { threads, ..Default::default() }).unwrap();
                (r.verdict, r.controller.as_ref().map(print_sts))
            })
            .collect();
        ok &= outputs.windows(2).all(|w| w[0] == w[1]);
    }
    report.record(8, ok, "identical verdicts and controllers across repeated runs and 1 vs 4 threads".into());
}

fn main() {
    let mut report = Report { lines: Vec::new() };
    example3(&mut report);
    table(&mut report);
    oracles(&mut report);
    worked_example(&mut report);
    bisimulation(&mut report);
    channel_machines(&mut report);
    determinism(&mut report);
    let failed = report.lines.iter().filter(|(ok, _)| !ok).count();
    println!("acceptance: {} of {} criteria pass", report.lines.len() - failed, report.lines.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
