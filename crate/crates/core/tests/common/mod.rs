#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use mitl_synth::dcm::{ChannelMachine, DcmOutcome, Op};
use mitl_synth::grid::Region;
use mitl_synth::logic::{Formula, Interval, TimedWord};
use mitl_synth::ocata::{merge_bound, translate, CmpOp, IntervalConfig, Ocata, Term};
use mitl_synth::plant::{example_plant, Granularity, Sts};
use mitl_synth::regions::{ClockId, Configuration, NodeLabel, RegionWord, Subject, SymbolicGame, Tuple};
use mitl_synth::Q;
use rand::Rng;

pub const LETTERS: [&str; 2] = ["a", "b"];

pub fn random_interval<R: Rng>(rng: &mut R, max_const: u32) -> Interval {
    loop {
        let lower = rng.gen_range(0..=max_const);
        let upper = if rng.gen_bool(0.3) { None } else { Some(rng.gen_range(lower..=max_const)) };
        if upper == Some(lower) {
            continue;
        }
        if let Ok(i) = Interval::new(lower, upper, rng.gen_bool(0.5), rng.gen_bool(0.5)) {
            return i;
        }
    }
}

/// Random non-singular formula over `a`, `b` of the given maximum depth.
pub fn random_formula<R: Rng>(rng: &mut R, depth: usize, max_const: u32) -> Formula {
    if depth <= 1 {
        return match rng.gen_range(0..6) {
            0 => Formula::True,
            1 => Formula::False,
            2 | 3 => Formula::atom("a"),
            _ => Formula::atom("b"),
        };
    }
    let sub = |rng: &mut R| {
        let d = rng.gen_range(1..depth);
        random_formula(rng, d, max_const)
    };
    match rng.gen_range(0..14) {
        0 => Formula::not(sub(rng)),
        1 => Formula::and(sub(rng), sub(rng)),
        2 => Formula::or(sub(rng), sub(rng)),
        3 => Formula::until(sub(rng), sub(rng), random_interval(rng, max_const)),
        4 => Formula::dual_until(sub(rng), sub(rng), random_interval(rng, max_const)),
        5 => Formula::next(random_interval(rng, max_const), sub(rng)),
        6 => Formula::finally(random_interval(rng, max_const), sub(rng)),
        7 => Formula::globally(random_interval(rng, max_const), sub(rng)),
        8 => Formula::weak_until(sub(rng), sub(rng), random_interval(rng, max_const)),
        9 => Formula::weak_finally(random_interval(rng, max_const), sub(rng)),
        10 => Formula::weak_globally(random_interval(rng, max_const), sub(rng)),
        11 => Formula::implies(sub(rng), sub(rng)),
        12 => Formula::until(sub(rng), sub(rng), random_interval(rng, max_const)),
        _ => Formula::finally(random_interval(rng, max_const), sub(rng)),
    }
}

/// Random word of length `1..=max_len` with timestamps whose denominators are at most 4.
pub fn random_word<R: Rng>(rng: &mut R, max_len: usize) -> TimedWord {
    let len = rng.gen_range(1..=max_len);
    let mut t = Q::from_integer(0);
    let mut w = TimedWord::empty();
    for _ in 0..len {
        let den = rng.gen_range(1..=4);
        t += Q::new(rng.gen_range(0..=2 * den), den);
        w.push(LETTERS[rng.gen_range(0..2)], t).unwrap();
    }
    w
}

pub fn word(pairs: &[(&str, (i64, i64))]) -> TimedWord {
    TimedWord::from_pairs(pairs.iter().map(|(l, (n, d))| (*l, Q::new(*n, *d)))).unwrap()
}

pub fn example3_formula() -> Formula {
    mitl_synth::logic::parse_formula("wG (a -> wF[0,1] b)").unwrap()
}

/// Game for `plant` against the negation of `phi` with granularity `mu`.
pub fn game_for(plant: Sts, phi: &Formula, mu: Granularity) -> SymbolicGame {
    let neg = Formula::not(phi.clone());
    let ocata = translate(&neg, &plant.alphabet()).unwrap();
    let bound = merge_bound(&neg, None);
    SymbolicGame::new(plant, ocata, mu, bound)
}

pub fn example3_game() -> SymbolicGame {
    let mu = Granularity { clocks: vec!["z".into()], m: 1, k: 1 };
    game_for(example_plant(), &example3_formula(), mu)
}

/// Breadth-first labels reachable from the initial label, at most `limit` of them.
pub fn reachable_labels(game: &SymbolicGame, limit: usize) -> Vec<NodeLabel> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::from([game.initial_label()]);
    let mut out = Vec::new();
    while let Some(l) = queue.pop_front() {
        if out.len() >= limit {
            break;
        }
        if !seen.insert(l.clone()) {
            continue;
        }
        for (_, s) in game.successors(&l) {
            if !s.words.is_empty() {
                queue.push_back(s);
            }
        }
        out.push(l);
    }
    out
}

/// A concrete tuple with the region word `w` but random fractions and random values
/// above the grid.
pub fn perturbed<R: Rng>(game: &SymbolicGame, w: &RegionWord, rng: &mut R) -> Tuple {
    let p = w.letters.len() - usize::from(w.has_zero_class());
    let mut fracs: BTreeSet<i64> = BTreeSet::new();
    while fracs.len() < p {
        fracs.insert(rng.gen_range(1..1000));
    }
    let fracs: Vec<Q> = fracs.into_iter().map(|n| Q::new(n, 1000)).collect();
    let above: Vec<Q> = (0..64).map(|_| Q::new(rng.gen_range(0..1000), 1000)).collect();
    let grid = game.grid;
    game.realise_with(w, &|e, class, _| match e.region {
        Region::Point(a) => Q::new(a, grid.den),
        Region::Open(a) => (Q::from_integer(a) + fracs[class - 1]) / Q::from_integer(grid.den),
        Region::Above => {
            let salt = match e.subject {
                Subject::Clock(ClockId::Ctrl(x)) => x,
                Subject::Clock(ClockId::Plant(x)) => 8 + x,
                Subject::Inf(l, k) | Subject::Sup(l, k) => 16 + 3 * l + k,
            };
            let base = if matches!(e.subject, Subject::Sup(..)) { 2 } else { 1 };
            grid.max() + base + above[salt % 64]
        }
    })
}

/// Number of label-equal pairs whose concrete successor sets differ from the lifted ones.
pub fn bisimulation_violations<R: Rng>(game: &SymbolicGame, labels: &[NodeLabel], rng: &mut R) -> usize {
    let mut bad = 0;
    for l in labels {
        let c = Configuration { location: l.location, tuples: l.words.iter().map(|w| perturbed(game, w, rng)).collect() };
        if game.abstract_config(&c) != *l || game.concrete_successors(&c) != game.successors(l) {
            bad += 1;
        }
    }
    bad
}

pub const DCM_MACHINES: [&str; 3] = [
    "states s0 s1 shalt\ninitial s0\nhalt shalt\nmessages m\ns0 -m!-> s1\ns1 -m?-> shalt\n",
    "states s0 s1 s2 s3 shalt\ninitial s0\nhalt shalt\nmessages a b\n\
     s0 -a!-> s1\ns1 -b!-> s2\ns2 -a?-> s3\ns2 -b?-> s2\ns3 -b?-> shalt\n",
    "states s0 s1 s2 s3 s4 s5 shalt\ninitial s0\nhalt shalt\nmessages a b\n\
     s0 -a!-> s1\ns1 -a?-> s2\ns2 -a!-> s3\ns3 -b!-> s4\ns4 -a?-> s5\ns5 -b?-> shalt\ns5 -a?-> s5\n",
];

/// Play encoding the halting computation of `s`: states without delay after each
/// channel action, reads exactly one time unit after their writes, consecutive actions
/// at least `gap` apart and unread writes less than one unit before the end. Write
/// times come from a shortest-path solution of the difference constraints. Returns the
/// word and the event indices of the reads.
pub fn faithful_play(s: &ChannelMachine, gap: Q) -> Option<(TimedWord, Vec<usize>)> {
    let sim = s.simulate(64);
    if !matches!(sim.outcome, DcmOutcome::Halted(_)) {
        return None;
    }
    // Step k happens at x[var] + offset; variable 0 is the origin.
    let mut writes = VecDeque::new();
    let mut at: Vec<(usize, i64)> = Vec::new();
    let mut nvars = 1;
    for &t in &sim.steps {
        match s.transitions[t].op {
            Op::Write(_) => {
                writes.push_back(nvars);
                at.push((nvars, 0));
                nvars += 1;
            }
            Op::Read(_) => at.push((writes.pop_front()?, 1)),
        }
    }
    // Edge (u, v, c) encodes x[v] - x[u] <= c.
    let mut edges: Vec<(usize, usize, Q)> = Vec::new();
    let mut prev = (0usize, 0i64);
    for &(v, o) in &at {
        edges.push((v, prev.0, Q::from_integer(o - prev.1) - gap));
        prev = (v, o);
    }
    for &u in &writes {
        edges.push((u, prev.0, Q::from_integer(1 - prev.1) - gap));
    }
    edges.push((0, 0, Q::from_integer(0)));
    let mut dist = vec![Q::from_integer(0); nvars];
    for _ in 0..=nvars {
        let mut changed = false;
        for &(u, v, c) in &edges {
            if dist[u] + c < dist[v] {
                dist[v] = dist[u] + c;
                changed = true;
            }
        }
        if !changed {
            let origin = dist[0];
            let time = |(v, o): (usize, i64)| dist[v] - origin + Q::from_integer(o);
            let mut events = vec![(s.states[s.initial].clone(), Q::from_integer(0))];
            let mut reads = Vec::new();
            for (k, &t) in sim.steps.iter().enumerate() {
                let tr = &s.transitions[t];
                if matches!(tr.op, Op::Read(_)) {
                    reads.push(events.len());
                }
                events.push((s.op_letter(tr.op), time(at[k])));
                events.push((s.states[tr.target].clone(), time(at[k])));
            }
            let w = TimedWord::from_pairs(events.iter().map(|(a, t)| (a.as_str(), *t))).ok()?;
            return Some((w, reads));
        }
    }
    None
}

/// `w` cut after event `k`, whose time moves by `delta`, followed by `letter` at that time.
pub fn perturb_and_append(w: &TimedWord, k: usize, delta: Q, letter: &str) -> Option<TimedWord> {
    let ev = w.events();
    let t = ev[k].time + delta;
    let mut pairs: Vec<(&str, Q)> = ev[..k].iter().map(|e| (e.letter.as_str(), e.time)).collect();
    pairs.push((ev[k].letter.as_str(), t));
    pairs.push((letter, t));
    TimedWord::from_pairs(pairs).ok()
}

/// Hand-built two-location automaton for the response property "every a is answered by b within 1".
pub fn response() -> Ocata {
    let delta = [
        ((0, "b".to_string()), Term::Loc(0)),
        ((0, "a".to_string()), Term::and(Term::Loc(0), Term::reset(Term::Loc(1)))),
        ((1, "a".to_string()), Term::Loc(1)),
        ((1, "b".to_string()), Term::Cmp(CmpOp::Le, 1)),
    ];
    Ocata::new(
        vec!["l0".into(), "l1".into()],
        0,
        [0].into(),
        vec!["a".into(), "b".into()],
        delta,
    )
}

/// Configuration of the worked interval-semantics example.
pub fn start() -> IntervalConfig {
    IntervalConfig::from_items([
        (0, Q::new(1, 20), Q::new(1, 2)),
        (1, Q::new(1, 10), Q::new(2, 5)),
        (1, Q::new(1, 2), Q::new(9, 10)),
    ])
}

