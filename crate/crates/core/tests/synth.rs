mod common;

use common::*;
use mitl_synth::bench::{scheduling_instance, TABLE};
use mitl_synth::logic::{evaluate, parse_formula, Formula, TimedWord};
use mitl_synth::plant::{example_plant, parse_sts, trivial_plant, Granularity, Sts};
use mitl_synth::regions::{SymbolicGame, Tuple};
use mitl_synth::synth::{
    build_graph, build_tree, closed_loop_words, expand, extract_controller, solve, synthesise, verify_controller, LeafKind,
    SynthOptions, SynthTree, Verdict,
};
use mitl_synth::Q;

const FIG2B: &str = "\
alphabet C: b; E: a
clocks z
locations l0,l1
initial l0
final l0,l1
l0 -b-> l0
l0 -a/reset z-> l1
l1 -a-> l1
l1 -b[z=1]-> l0
";

fn z11() -> Granularity {
    Granularity { clocks: vec!["z".into()], m: 1, k: 1 }
}

fn is_granular(c: &Sts, mu: &Granularity) -> bool {
    c.transitions.iter().flat_map(|t| &t.guard.constraints).filter(|k| k.clock < mu.clocks.len()).all(|k| {
        let scaled = k.value * Q::from_integer(mu.m as i64);
        scaled.is_integer() && scaled <= Q::from_integer(mu.k as i64)
    })
}

fn run(plant: &Sts, phi: &Formula, mu: &Granularity) -> mitl_synth::synth::SynthResult {
    synthesise(plant, phi, mu, &SynthOptions::default()).unwrap()
}

#[test]
fn example3_realisable_and_verified() {
    let phi = example3_formula();
    let r = run(&example_plant(), &phi, &z11());
    assert_eq!(r.verdict, Verdict::Realisable);
    let c = r.controller.unwrap();
    assert!(c.is_time_deterministic());
    assert!(is_granular(&c, &z11()));
    let rep = verify_controller(&c, &example_plant(), &phi, 6);
    assert!(rep.ok, "{:?}", rep.counterexample);
    assert!(rep.checked > 0);
}

#[test]
fn example3_trivial_plant_unrealisable() {
    let r = run(&trivial_plant(), &example3_formula(), &z11());
    assert_eq!(r.verdict, Verdict::Unrealisable);
    assert!(r.controller.is_none());
}

#[test]
fn true_specification_needs_no_proposals() {
    let r = run(&example_plant(), &Formula::True, &z11());
    assert_eq!(r.verdict, Verdict::Realisable);
    assert_eq!(r.losing_leaves, 0);
    let c = r.controller.unwrap();
    assert!(c.transitions.iter().all(|t| !c.is_controllable(&t.action)));
    assert!(verify_controller(&c, &example_plant(), &Formula::True, 4).ok);
}

#[test]
fn figure_controller_verifies_and_broken_one_fails() {
    let phi = example3_formula();
    let fig = parse_sts(FIG2B).unwrap();
    assert!(verify_controller(&fig, &example_plant(), &phi, 6).ok);
    let broken = parse_sts("alphabet C: b; E: a\nclocks z\ninitial l0\nfinal l0\nl0 -a-> l0\n").unwrap();
    let rep = verify_controller(&broken, &example_plant(), &phi, 3);
    assert!(!rep.ok);
    let w = rep.counterexample.unwrap();
    assert!(example_plant().membership(&w) && !evaluate(&w, &phi));
}

#[test]
fn closed_loop_words_follow_the_rules() {
    let fig = parse_sts(FIG2B).unwrap();
    let words = closed_loop_words(&fig, &example_plant(), 2);
    assert!(words.contains(&TimedWord::empty()));
    assert!(words.contains(&word(&[("a", (1, 2)), ("b", (3, 2))])));
    assert!(words.contains(&word(&[("a", (0, 1)), ("b", (1, 1))])));
    assert!(words.iter().all(|w| example_plant().run(w).is_some()));
    assert!(!words.contains(&word(&[("a", (0, 1)), ("b", (1, 2))])));

    let env_plant = parse_sts("alphabet C: b; E: a\nclocks x\ninitial q\nfinal q\nq -a[x<1]/reset x-> q\nq -a[x>=1]-> q\n").unwrap();
    let silent = parse_sts("alphabet C: b; E: a\nclocks\ninitial s\nfinal s\ns -a-> s\n").unwrap();
    let words = closed_loop_words(&silent, &env_plant, 3);
    let mut counts = [0usize; 4];
    for w in &words {
        counts[w.len()] += 1;
    }
    assert_eq!(counts[0], 1);
    assert!(counts[1] > 0 && counts[2] > counts[1] && counts[3] > counts[2]);
    let all_plant = closed_loop_words(&parse_sts("alphabet C: b; E: a\nclocks\ninitial s\nfinal s\n").unwrap(), &env_plant, 3);
    assert_eq!(words.len(), all_plant.len());
}

#[test]
fn environment_only_node_has_one_action_set() {
    let plant = parse_sts("alphabet C: b; E: a\nclocks\ninitial q\nfinal q\nq -a-> q\n").unwrap();
    let game = game_for(plant, &Formula::True, z11());
    let exp = expand(&game, &game.initial_label()).unwrap();
    assert_eq!(exp.options.len(), 1);
    let (ctrl, groups) = &exp.options[0];
    assert!(ctrl.is_none());
    assert!(!groups.is_empty());
    assert!(groups.iter().all(|g| g.len() == 2));
}

#[test]
fn proposing_requires_earlier_environment_groups() {
    let plant = parse_sts("alphabet C: b; E: a\nclocks x\ninitial q\nfinal q\nq -b[x=1]-> q\nq -a[x<1]-> q\n").unwrap();
    let game = game_for(plant, &Formula::True, z11());
    let exp = expand(&game, &game.initial_label()).unwrap();
    let a = game.action("a").unwrap();
    let with_ctrl: Vec<_> = exp.options.iter().filter(|(c, _)| c.is_some()).collect();
    assert!(!with_ctrl.is_empty());
    for (_, groups) in with_ctrl {
        assert!(groups.iter().any(|g| {
            let l = &exp.children[g[0]].0;
            l.action == a && l.ctrl == [mitl_synth::grid::Region::Open(0)]
        }));
    }
}

#[test]
fn nothing_fireable_is_a_safe_deadlock() {
    let plant = parse_sts("alphabet C: b; E: a\nclocks\ninitial q\nfinal q\n").unwrap();
    let game = game_for(plant, &Formula::True, z11());
    assert!(expand(&game, &game.initial_label()).is_none());
    let tree = build_tree(&game, 10, 1).unwrap();
    assert_eq!(tree.len(), 1);
    assert_eq!(tree.nodes[0].leaf, Some(LeafKind::Deadlock));
    assert!(solve(&tree).root_winning());
}

#[test]
fn scheduling_table_verdicts() {
    for ((t, n, k), expected) in TABLE {
        let (plant, phi, mu) = scheduling_instance(t, n, k);
        let r = run(&plant, &phi, &mu);
        let want = if expected { Verdict::Realisable } else { Verdict::Unrealisable };
        assert_eq!(r.verdict, want, "({t},{n},{k})");
        if let Some(c) = r.controller {
            assert!(c.is_time_deterministic() && is_granular(&c, &mu));
            assert!(verify_controller(&c, &plant, &phi, 6).ok, "({t},{n},{k})");
        }
    }
}

fn small_instances() -> Vec<(Sts, Formula, Granularity)> {
    let mut v = vec![
        (example_plant(), example3_formula(), z11()),
        (trivial_plant(), example3_formula(), z11()),
        (example_plant(), Formula::True, z11()),
        (example_plant(), parse_formula("wG (b -> wF[0,1] a)").unwrap(), z11()),
    ];
    for ((t, n, k), _) in TABLE.iter().take(2) {
        v.push(scheduling_instance(*t, *n, *k));
    }
    v
}

#[test]
fn tree_and_graph_agree() {
    for (plant, phi, mu) in small_instances() {
        let game = game_for(plant, &phi, mu);
        let graph = build_graph(&game, 100_000, 1).unwrap();
        let Ok(tree) = build_tree(&game, 200_000, 1) else { continue };
        assert_eq!(solve(&graph).root_winning(), solve(&tree).root_winning(), "{phi}");
        for (i, n) in tree.nodes.iter().enumerate() {
            let mut a = i;
            let mut seen = std::collections::HashSet::new();
            if let Some(LeafKind::Repeat(anc)) = n.leaf {
                assert_eq!(tree.nodes[anc].label, n.label);
                a = n.parent.unwrap();
            }
            loop {
                assert!(seen.insert(tree.nodes[a].label.clone()));
                match tree.nodes[a].parent {
                    Some(p) => a = p,
                    None => break,
                }
            }
        }
    }
}

#[test]
fn verdicts_independent_of_threads() {
    for (plant, phi, mu) in small_instances() {
        let one = synthesise(&plant, &phi, &mu, &SynthOptions { threads: 1, ..Default::default() }).unwrap();
        let four = synthesise(&plant, &phi, &mu, &SynthOptions { threads: 4, ..Default::default() }).unwrap();
        assert_eq!(one.verdict, four.verdict);
        assert_eq!(one.nodes, four.nodes);
        assert_eq!(one.controller, four.controller);
    }
}

#[test]
fn more_resources_keep_realisability() {
    for (plant, phi, mu) in small_instances() {
        if run(&plant, &phi, &mu).verdict != Verdict::Realisable {
            continue;
        }
        let mut more = mu.clone();
        more.clocks.push("w".into());
        assert_eq!(run(&plant, &phi, &more).verdict, Verdict::Realisable);
        let finer = Granularity { clocks: mu.clocks.clone(), m: 2 * mu.m, k: 2 * mu.k };
        assert_eq!(run(&plant, &phi, &finer).verdict, Verdict::Realisable);
    }
}

#[test]
fn tiny_budget_is_reported_as_capped() {
    let r = synthesise(&example_plant(), &example3_formula(), &z11(), &SynthOptions { node_budget: 3, ..Default::default() }).unwrap();
    assert_eq!(r.verdict, Verdict::ResourceCapped);
    assert!(r.controller.is_none());
}

/// Concrete word leading to graph node `target`: replays the letters on the BFS path,
/// keeping tuples whose abstraction lies in the next label.
fn witness(game: &SymbolicGame, graph: &SynthTree, target: usize) -> Option<TimedWord> {
    let mut path = vec![target];
    while let Some(p) = graph.nodes[*path.last().unwrap()].parent {
        path.push(p);
    }
    path.reverse();
    fn go(game: &SymbolicGame, graph: &SynthTree, path: &[usize], t: &Tuple, events: &mut Vec<(String, Q)>, now: Q) -> bool {
        let here = &graph.nodes[path[0]];
        if path.len() == 1 {
            return t.ocata.locations().iter().all(|l| game.ocata.is_final(*l));
        }
        let next = &graph.nodes[path[1]];
        let letter = next.letter.as_ref().unwrap();
        for s in game.concrete_steps(here.label.location, t) {
            let Some(nt) = s.tuple.filter(|nt| s.letter == *letter && next.label.words.contains(&game.abstract_tuple(nt))) else { continue };
            events.push((game.actions[letter.action].clone(), now + s.delay));
            if go(game, graph, &path[1..], &nt, events, now + s.delay) {
                return true;
            }
            events.pop();
        }
        false
    }
    let init = &game.initial_configuration().tuples[0];
    let mut events = Vec::new();
    go(game, graph, &path, init, &mut events, Q::from_integer(0))
        .then(|| TimedWord::from_pairs(events.iter().map(|(a, t)| (a.as_str(), *t))).unwrap())
}

#[test]
fn losing_leaves_have_violating_witnesses() {
    for (plant, phi, mu) in small_instances() {
        let game = game_for(plant.clone(), &phi, mu);
        let graph = build_graph(&game, 100_000, 1).unwrap();
        let losing: Vec<usize> = (0..graph.len()).filter(|i| graph.nodes[*i].leaf == Some(LeafKind::Losing)).take(5).collect();
        for i in losing {
            let w = witness(&game, &graph, i).expect("witness word");
            assert!(plant.membership(&w), "{w}");
            assert!(!evaluate(&w, &phi), "{w}");
        }
    }
}

#[test]
fn extraction_follows_strategy_nodes() {
    let game = example3_game();
    let graph = build_graph(&game, 10_000, 1).unwrap();
    let sol = solve(&graph);
    let c = extract_controller(&game, &graph, &sol).unwrap();
    assert_eq!(c.locations[c.initial], "c0");
    assert!(c.transitions.iter().any(|t| c.is_controllable(&t.action)));
}
