use std::collections::BTreeSet;

use super::{Model, Ocata};
use crate::logic::TimedWord;
use crate::Q;

/// A classical configuration: a finite set of (location, clock value) copies.
pub type ClassicalConfig = BTreeSet<(usize, Q)>;

pub fn initial_classical(a: &Ocata) -> ClassicalConfig {
    [(a.initial, Q::from_integer(0))].into()
}

/// All successors after letting `delay` elapse and reading `letter`.
pub fn step_classical(a: &Ocata, config: &ClassicalConfig, delay: Q, letter: &str) -> Vec<ClassicalConfig> {
    let mut partial: Vec<ClassicalConfig> = vec![ClassicalConfig::new()];
    for (loc, v) in config {
        let v = *v + delay;
        let models: Vec<Model> = a
            .delta(*loc, letter)
            .models(&|op, c| op.holds(&v, &Q::from_integer(c as i64)));
        let mut next = BTreeSet::new();
        for p in &partial {
            for m in &models {
                let mut c = p.clone();
                c.extend(m.iter().map(|(l, r)| (*l, if *r { Q::from_integer(0) } else { v })));
                next.insert(c);
            }
        }
        partial = next.into_iter().collect();
        if partial.is_empty() {
            break;
        }
    }
    partial
}

/// Acceptance in the classical semantics: some run ends with every copy final.
pub fn accepts_classical(a: &Ocata, word: &TimedWord) -> bool {
    let mut frontier: Vec<ClassicalConfig> = vec![initial_classical(a)];
    let mut last = Q::from_integer(0);
    for e in word.events() {
        let delay = e.time - last;
        last = e.time;
        let mut next: BTreeSet<ClassicalConfig> = BTreeSet::new();
        for c in &frontier {
            next.extend(step_classical(a, c, delay, &e.letter));
        }
        frontier = antichain(next);
        if frontier.is_empty() {
            return false;
        }
    }
    frontier.iter().any(|c| c.iter().all(|(l, _)| a.is_final(*l)))
}

/// Keeps only inclusion-minimal configurations; acceptance is monotone in the set of copies.
fn antichain(configs: BTreeSet<ClassicalConfig>) -> Vec<ClassicalConfig> {
    let mut sorted: Vec<ClassicalConfig> = configs.into_iter().collect();
    sorted.sort_by_key(|c| c.len());
    let mut kept: Vec<ClassicalConfig> = Vec::new();
    for c in sorted {
        if !kept.iter().any(|k| k.is_subset(&c)) {
            kept.push(c);
        }
    }
    kept
}
