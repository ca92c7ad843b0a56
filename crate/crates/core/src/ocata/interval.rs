use std::collections::BTreeSet;
use std::fmt::Write as _;

use super::{Model, Ocata};
use crate::logic::TimedWord;
use crate::rational::fmt_q;
use crate::Q;

/// Location-interval pairs, sorted, with disjoint intervals per location.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntervalConfig {
    items: Vec<(usize, Q, Q)>,
}

/// Extra abstractions applied after each step.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StepOptions {
    /// Copies in locations that never read the clock are kept at `[0,0]`.
    pub collapse_untimed: bool,
    /// Endpoints beyond this constant are replaced by the constant plus one.
    pub clamp_above: Option<Q>,
}

impl IntervalConfig {
    pub fn initial(a: &Ocata) -> IntervalConfig {
        IntervalConfig { items: vec![(a.initial, Q::from_integer(0), Q::from_integer(0))] }
    }

    /// Normalises arbitrary pairs: overlapping same-location intervals are united.
    pub fn from_items(items: impl IntoIterator<Item = (usize, Q, Q)>) -> IntervalConfig {
        let mut v: Vec<(usize, Q, Q)> = items.into_iter().collect();
        v.sort();
        let mut out: Vec<(usize, Q, Q)> = Vec::with_capacity(v.len());
        for (l, lo, hi) in v {
            match out.last_mut() {
                Some((pl, _, phi)) if *pl == l && lo <= *phi => {
                    if hi > *phi {
                        *phi = hi;
                    }
                }
                _ => out.push((l, lo, hi)),
            }
        }
        IntervalConfig { items: out }
    }

    pub fn items(&self) -> &[(usize, Q, Q)] {
        &self.items
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn locations(&self) -> BTreeSet<usize> {
        self.items.iter().map(|(l, _, _)| *l).collect()
    }

    pub fn is_accepting(&self, a: &Ocata) -> bool {
        self.items.iter().all(|(l, _, _)| a.is_final(*l))
    }

    pub fn max_per_location(&self) -> usize {
        let mut best = 0;
        let mut run = 0;
        let mut prev = None;
        for (l, _, _) in &self.items {
            run = if prev == Some(*l) { run + 1 } else { 1 };
            prev = Some(*l);
            best = best.max(run);
        }
        best
    }

    pub fn display(&self, a: &Ocata) -> String {
        let mut s = String::from("{");
        for (i, (l, lo, hi)) in self.items.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            let _ = write!(s, "({},[{},{}])", a.names[*l], fmt_q(lo), fmt_q(hi));
        }
        s.push('}');
        s
    }
}

pub fn step_interval(a: &Ocata, config: &IntervalConfig, delay: Q, letter: &str, bound: usize) -> Vec<IntervalConfig> {
    step_interval_with(a, config, delay, letter, bound, &StepOptions::default())
}

/// Successors under the interval semantics. A transition fires from an interval only
/// when every comparison it relies on holds at both endpoints. Besides merges forced
/// by `bound`, a fresh `[0,0]` copy may optionally be merged with its neighbour.
pub fn step_interval_with(
    a: &Ocata,
    config: &IntervalConfig,
    delay: Q,
    letter: &str,
    bound: usize,
    opts: &StepOptions,
) -> Vec<IntervalConfig> {
    let zero = Q::from_integer(0);
    let mut partial: BTreeSet<Vec<(usize, Q, Q)>> = [Vec::new()].into();
    for (loc, lo, hi) in &config.items {
        let (lo, hi) = (*lo + delay, *hi + delay);
        let models: Vec<Model> = a.delta(*loc, letter).models(&|op, c| {
            let c = Q::from_integer(c as i64);
            op.holds(&lo, &c) && op.holds(&hi, &c)
        });
        let mut next = BTreeSet::new();
        for p in &partial {
            for m in &models {
                let mut v = p.clone();
                v.extend(m.iter().map(|(l, r)| if *r { (*l, zero, zero) } else { (*l, lo, hi) }));
                next.insert(v);
            }
        }
        partial = next;
        if partial.is_empty() {
            return Vec::new();
        }
    }
    let mut out = BTreeSet::new();
    for raw in partial {
        let adjusted = raw.into_iter().map(|(l, lo, hi)| {
            if opts.collapse_untimed && !a.is_timed(l) {
                return (l, zero, zero);
            }
            match &opts.clamp_above {
                Some(c) => {
                    let cap = *c + 1;
                    (l, if lo > *c { cap } else { lo }, if hi > *c { cap } else { hi })
                }
                None => (l, lo, hi),
            }
        });
        let normal = IntervalConfig::from_items(adjusted);
        out.extend(merge_variants(&normal, bound));
    }
    out.into_iter().collect()
}

fn merge_variants(config: &IntervalConfig, bound: usize) -> Vec<IntervalConfig> {
    let zero = Q::from_integer(0);
    let mut per_loc: Vec<(usize, Vec<(Q, Q)>)> = Vec::new();
    for (l, lo, hi) in &config.items {
        match per_loc.last_mut() {
            Some((pl, v)) if pl == l => v.push((*lo, *hi)),
            _ => per_loc.push((*l, vec![(*lo, *hi)])),
        }
    }
    let mut combos: Vec<Vec<(usize, Q, Q)>> = vec![Vec::new()];
    for (l, ivs) in per_loc {
        let mut variants = vec![ivs.clone()];
        if ivs.len() >= 2 && ivs[0] == (zero, zero) {
            let mut merged = vec![(zero, ivs[1].1)];
            merged.extend_from_slice(&ivs[2..]);
            variants.push(merged);
        }
        let mut choices: Vec<Vec<(Q, Q)>> = Vec::new();
        for v in variants {
            if v.len() <= bound {
                choices.push(v);
            } else {
                choices.extend(partitions(&v, bound));
            }
        }
        choices.sort();
        choices.dedup();
        let mut next = Vec::with_capacity(combos.len() * choices.len());
        for c in &combos {
            for ch in &choices {
                let mut v = c.clone();
                v.extend(ch.iter().map(|(lo, hi)| (l, *lo, *hi)));
                next.push(v);
            }
        }
        combos = next;
    }
    combos.into_iter().map(|items| IntervalConfig { items }).collect()
}

/// Every way to cover `ivs` by exactly `blocks` contiguous merged groups.
fn partitions(ivs: &[(Q, Q)], blocks: usize) -> Vec<Vec<(Q, Q)>> {
    let n = ivs.len();
    let mut out = Vec::new();
    let mut cuts = Vec::with_capacity(blocks);
    fn rec(
        ivs: &[(Q, Q)],
        start: usize,
        left: usize,
        cuts: &mut Vec<usize>,
        out: &mut Vec<Vec<(Q, Q)>>,
    ) {
        let n = ivs.len();
        if left == 1 {
            let mut groups = Vec::with_capacity(cuts.len() + 1);
            let mut s = 0;
            for &c in cuts.iter() {
                groups.push((ivs[s].0, ivs[c - 1].1));
                s = c;
            }
            groups.push((ivs[s].0, ivs[n - 1].1));
            out.push(groups);
            return;
        }
        for c in start + 1..=n - left + 1 {
            cuts.push(c);
            rec(ivs, c, left - 1, cuts, out);
            cuts.pop();
        }
    }
    if blocks == 0 || n == 0 {
        return out;
    }
    rec(ivs, 0, blocks.min(n), &mut cuts, &mut out);
    out
}

/// Acceptance in the interval semantics with at most `bound` intervals per location.
pub fn accepts_interval(a: &Ocata, word: &TimedWord, bound: usize) -> bool {
    let mut frontier: BTreeSet<IntervalConfig> = [IntervalConfig::initial(a)].into();
    let mut last = Q::from_integer(0);
    for e in word.events() {
        let delay = e.time - last;
        last = e.time;
        let mut next = BTreeSet::new();
        for c in &frontier {
            next.extend(step_interval(a, c, delay, &e.letter, bound));
        }
        frontier = next;
        if frontier.is_empty() {
            return false;
        }
    }
    frontier.iter().any(|c| c.is_accepting(a))
}
