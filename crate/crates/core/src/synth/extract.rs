use std::collections::{BTreeMap, VecDeque};

use super::solve::Solution;
use super::tree::{LeafKind, SynthTree};
use crate::plant::{Sts, Transition};
use crate::regions::{Letter, SymbolicGame};

/// Controller following the strategy: one location per strategy node, repeats
/// redirected to their ancestor. Guards range over the controller clocks followed by
/// the plant clocks as read clocks.
pub fn extract_controller(game: &SymbolicGame, tree: &SynthTree, solution: &Solution) -> Option<Sts> {
    if !solution.root_winning() {
        return None;
    }
    let resolve = |i: usize| match tree.nodes[i].leaf {
        Some(LeafKind::Repeat(a)) => a,
        _ => i,
    };
    let mut ids: BTreeMap<usize, usize> = BTreeMap::new();
    let mut order = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    ids.insert(0, 0);
    order.push(0);
    let mut edges: Vec<(usize, Letter, usize)> = Vec::new();
    while let Some(n) = queue.pop_front() {
        let Some(choice) = &solution.strategy[n] else { continue };
        for pos in choice.ctrl.iter().chain(&choice.groups) {
            let (letter, child) = &tree.nodes[n].children[*pos];
            let target = resolve(*child);
            let next = ids.len();
            ids.entry(target).or_insert_with(|| {
                order.push(target);
                queue.push_back(target);
                next
            });
            edges.push((ids[&n], letter.clone(), *child));
        }
    }
    let transitions = edges
        .into_iter()
        .map(|(src, letter, child)| {
            Transition {
                source: src,
                action: game.actions[letter.action].clone(),
                guard: game.letter_guard(&letter),
                resets: game.letter_resets(&letter),
                target: ids[&resolve(child)],
            }
        })
        .collect();
    Some(Sts {
        clocks: game.mu.clocks.clone(),
        reads: game.plant.clocks.clone(),
        locations: (0..order.len()).map(|i| format!("c{i}")).collect(),
        initial: 0,
        finals: (0..order.len()).collect(),
        transitions,
        controllable: game.plant.controllable.clone(),
        environment: game.plant.environment.clone(),
    })
}
