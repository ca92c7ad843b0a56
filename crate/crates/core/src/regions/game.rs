use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;
use std::sync::Arc;

use parking_lot::Mutex;

use super::word::{ClockId, Entry, NodeLabel, RegionWord, Subject};
use crate::grid::{Grid, Region};
use crate::ocata::{step_interval_with, IntervalConfig, Ocata, StepOptions};
use crate::plant::{Granularity, Guard, Sts};
use crate::Q;

/// Region grid shared by controller clocks, plant clocks and automaton copies: the
/// denominator is the lcm of `m` and the plant's constant denominators, the bound the
/// largest of `K/m`, the plant constants and the automaton constants.
pub fn joint_granularity(mu: &Granularity, plant: &Sts, ocata: &Ocata) -> Grid {
    let (pmax, pden) = plant.constants();
    let den = num_integer::lcm(mu.m as i64, pden);
    let cmax = Q::new(mu.k as i64, mu.m as i64)
        .max(pmax)
        .max(Q::from_integer(ocata.max_constant() as i64));
    Grid::new(den, (cmax * Q::from_integer(den)).ceil().to_integer())
}

/// One element of a knowledge set: controller clocks, plant clocks, automaton state.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tuple {
    pub ctrl: Vec<Q>,
    pub plant: Vec<Q>,
    pub ocata: IntervalConfig,
}

/// Plant location with the set of tuples consistent with the observations so far.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    pub location: usize,
    pub tuples: Vec<Tuple>,
}

/// Symbolic letter: action, controller-clock regions on the granularity grid,
/// plant-clock regions on the joint grid, and the controller clocks reset (bitmask).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub action: usize,
    pub ctrl: Vec<Region>,
    pub plant: Vec<Region>,
    pub resets: u32,
}

impl Letter {
    /// The letter without its reset choice.
    pub fn group(&self) -> (usize, &[Region], &[Region]) {
        (self.action, &self.ctrl, &self.plant)
    }
}

/// Outcome of one letter from one region word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Move {
    pub letter: Letter,
    pub target: usize,
    pub words: BTreeSet<RegionWord>,
    /// First and last delay class (in time order) at which the letter fires.
    pub first: usize,
    pub last: usize,
}

/// One concrete successor: the letter, the index and value of its delay class, and the
/// successor tuple, `None` when the automaton has no successor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub letter: Letter,
    pub class: usize,
    pub delay: Q,
    pub target: usize,
    pub tuple: Option<Tuple>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WordMoves {
    pub moves: Vec<Move>,
}

/// Plant, specification automaton and controller granularity, with the region
/// abstraction over their joint configurations.
pub struct SymbolicGame {
    pub plant: Sts,
    pub ocata: Ocata,
    pub mu: Granularity,
    pub grid: Grid,
    pub ctrl_grid: Grid,
    pub bound: usize,
    pub actions: Vec<String>,
    options: StepOptions,
    cache: Mutex<HashMap<(usize, RegionWord), Arc<WordMoves>>>,
}

impl SymbolicGame {
    pub fn new(plant: Sts, ocata: Ocata, mu: Granularity, bound: usize) -> SymbolicGame {
        let grid = joint_granularity(&mu, &plant, &ocata);
        let ctrl_grid = mu.grid();
        let actions: Vec<String> = plant.alphabet().into_iter().collect();
        let options = StepOptions { collapse_untimed: true, clamp_above: Some(grid.max()) };
        SymbolicGame { plant, ocata, mu, grid, ctrl_grid, bound, actions, options, cache: Mutex::new(HashMap::new()) }
    }

    pub fn action(&self, name: &str) -> Option<usize> {
        self.actions.iter().position(|a| a == name)
    }

    pub fn is_controllable(&self, letter: &Letter) -> bool {
        self.plant.is_controllable(&self.actions[letter.action])
    }

    pub fn initial_configuration(&self) -> Configuration {
        let zero = Q::from_integer(0);
        Configuration {
            location: self.plant.initial,
            tuples: vec![Tuple {
                ctrl: vec![zero; self.mu.clocks.len()],
                plant: vec![zero; self.plant.clocks.len()],
                ocata: IntervalConfig::initial(&self.ocata),
            }],
        }
    }

    pub fn initial_label(&self) -> NodeLabel {
        self.abstract_config(&self.initial_configuration())
    }

    fn subjects(&self, t: &Tuple) -> Vec<(Subject, Q)> {
        let mut v: Vec<(Subject, Q)> = Vec::new();
        v.extend(t.ctrl.iter().enumerate().map(|(i, x)| (Subject::Clock(ClockId::Ctrl(i)), *x)));
        v.extend(t.plant.iter().enumerate().map(|(i, x)| (Subject::Clock(ClockId::Plant(i)), *x)));
        let mut prev = None;
        let mut k = 0;
        for (l, lo, hi) in t.ocata.items() {
            k = if prev == Some(*l) { k + 1 } else { 1 };
            prev = Some(*l);
            v.push((Subject::Inf(*l, k), *lo));
            v.push((Subject::Sup(*l, k), *hi));
        }
        v
    }

    pub fn abstract_tuple(&self, t: &Tuple) -> RegionWord {
        let subjects = self.subjects(t);
        let values: Vec<Q> = subjects.iter().map(|(_, v)| *v).collect();
        let (regions, classes, p) = self.grid.classify(&values);
        let mut letters: Vec<Vec<Entry>> = vec![Vec::new(); p + 1];
        for (i, (s, _)) in subjects.iter().enumerate() {
            letters[classes[i]].push(Entry { subject: *s, region: regions[i] });
        }
        letters.iter_mut().for_each(|l| l.sort());
        if letters[0].is_empty() {
            letters.remove(0);
        }
        RegionWord { letters }
    }

    pub fn abstract_config(&self, c: &Configuration) -> NodeLabel {
        NodeLabel { location: c.location, words: c.tuples.iter().map(|t| self.abstract_tuple(t)).collect() }
    }

    /// Concrete tuple for `word`, choosing each value with `value(entry, class, classes)`.
    pub fn realise_with(&self, word: &RegionWord, value: &dyn Fn(&Entry, usize, usize) -> Q) -> Tuple {
        let zero_first = word.has_zero_class();
        let p = word.letters.len() - usize::from(zero_first);
        let mut ctrl = vec![Q::from_integer(0); self.mu.clocks.len()];
        let mut plant = vec![Q::from_integer(0); self.plant.clocks.len()];
        let mut bounds: BTreeMap<(usize, usize), (Q, Q)> = BTreeMap::new();
        for (i, letter) in word.letters.iter().enumerate() {
            let class = if zero_first { i } else { i + 1 };
            for e in letter {
                let v = value(e, class, p);
                match e.subject {
                    Subject::Clock(ClockId::Ctrl(x)) => ctrl[x] = v,
                    Subject::Clock(ClockId::Plant(x)) => plant[x] = v,
                    Subject::Inf(l, k) => bounds.entry((l, k)).or_insert((v, v)).0 = v,
                    Subject::Sup(l, k) => bounds.entry((l, k)).or_insert((v, v)).1 = v,
                }
            }
        }
        let ocata = IntervalConfig::from_items(bounds.into_iter().map(|((l, _), (lo, hi))| (l, lo, hi)));
        Tuple { ctrl, plant, ocata }
    }

    /// Canonical tuple: exact grid points, evenly spaced fractions, `max + 1` above.
    pub fn realise(&self, word: &RegionWord) -> Tuple {
        self.realise_with(word, &|e, class, p| self.grid.representative(e.region, class, p))
    }

    pub fn representative(&self, label: &NodeLabel) -> Configuration {
        Configuration { location: label.location, tuples: label.words.iter().map(|w| self.realise(w)).collect() }
    }

    /// Concrete successors of `(location, tuple)`, one delay per region class.
    pub fn concrete_steps(&self, location: usize, t: &Tuple) -> Vec<Step> {
        let values: Vec<Q> = self.subjects(t).into_iter().map(|(_, v)| v).collect();
        let nctrl = self.mu.clocks.len();
        let mut out = Vec::new();
        for (class, delay) in self.grid.delay_classes(&values).into_iter().enumerate() {
            let ctrl: Vec<Q> = t.ctrl.iter().map(|v| *v + delay).collect();
            let plant: Vec<Q> = t.plant.iter().map(|v| *v + delay).collect();
            let cregs: Vec<Region> = ctrl.iter().map(|v| self.ctrl_grid.region(v)).collect();
            let pregs: Vec<Region> = plant.iter().map(|v| self.grid.region(v)).collect();
            for (ti, tr) in self.plant.outgoing(location) {
                if !tr.guard.holds(&plant) {
                    continue;
                }
                let action = self.action(&tr.action).expect("plant action in alphabet");
                let succ = step_interval_with(&self.ocata, &t.ocata, delay, &tr.action, self.bound, &self.options);
                let mut next_plant = plant.clone();
                self.plant.apply_resets(&mut next_plant, ti);
                for resets in 0..(1u32 << nctrl) {
                    let next_ctrl: Vec<Q> = ctrl
                        .iter()
                        .enumerate()
                        .map(|(x, v)| if resets & (1 << x) != 0 { Q::from_integer(0) } else { *v })
                        .collect();
                    let letter = Letter { action, ctrl: cregs.clone(), plant: pregs.clone(), resets };
                    if succ.is_empty() {
                        out.push(Step { letter: letter.clone(), class, delay, target: tr.target, tuple: None });
                    }
                    for c in &succ {
                        out.push(Step {
                            letter: letter.clone(),
                            class,
                            delay,
                            target: tr.target,
                            tuple: Some(Tuple { ctrl: next_ctrl.clone(), plant: next_plant.clone(), ocata: c.clone() }),
                        });
                    }
                }
            }
        }
        out
    }

    /// Every letter fireable from `(location, tuple)` with its successor region words.
    pub fn tuple_moves(&self, location: usize, t: &Tuple) -> WordMoves {
        let mut out: BTreeMap<Letter, Move> = BTreeMap::new();
        for s in self.concrete_steps(location, t) {
            let m = out.entry(s.letter.clone()).or_insert_with(|| Move {
                letter: s.letter.clone(),
                target: s.target,
                words: BTreeSet::new(),
                first: s.class,
                last: s.class,
            });
            m.last = s.class;
            if let Some(t) = &s.tuple {
                m.words.insert(self.abstract_tuple(t));
            }
        }
        WordMoves { moves: out.into_values().collect() }
    }

    /// Memoised [`Self::tuple_moves`] on the canonical tuple of `word`.
    pub fn word_moves(&self, location: usize, word: &RegionWord) -> Arc<WordMoves> {
        let key = (location, word.clone());
        if let Some(m) = self.cache.lock().get(&key) {
            return m.clone();
        }
        let m = Arc::new(self.tuple_moves(location, &self.realise(word)));
        self.cache.lock().entry(key).or_insert(m).clone()
    }

    pub fn cached_words(&self) -> usize {
        self.cache.lock().len()
    }

    /// Lifted successor relation: per letter, the union over all words of the label.
    pub fn successors(&self, label: &NodeLabel) -> Vec<(Letter, NodeLabel)> {
        let mut out: BTreeMap<Letter, NodeLabel> = BTreeMap::new();
        for w in &label.words {
            for m in &self.word_moves(label.location, w).moves {
                out.entry(m.letter.clone())
                    .or_insert_with(|| NodeLabel { location: m.target, words: BTreeSet::new() })
                    .words
                    .extend(m.words.iter().cloned());
            }
        }
        out.into_iter().collect()
    }

    /// Successors computed directly from a concrete configuration.
    pub fn concrete_successors(&self, c: &Configuration) -> Vec<(Letter, NodeLabel)> {
        let mut out: BTreeMap<Letter, NodeLabel> = BTreeMap::new();
        for t in &c.tuples {
            for m in self.tuple_moves(c.location, t).moves {
                out.entry(m.letter)
                    .or_insert_with(|| NodeLabel { location: m.target, words: BTreeSet::new() })
                    .words
                    .extend(m.words);
            }
        }
        out.into_iter().collect()
    }

    /// A final plant location together with a word whose automaton copies are all final.
    pub fn is_losing(&self, label: &NodeLabel) -> bool {
        self.plant.finals.contains(&label.location)
            && label.words.iter().any(|w| w.locations().iter().all(|l| self.ocata.is_final(*l)))
    }

    /// Guard of `letter` over controller clocks followed by plant clocks.
    pub fn letter_guard(&self, letter: &Letter) -> Guard {
        let nctrl = self.mu.clocks.len();
        let mut g = Guard::top();
        for (x, r) in letter.ctrl.iter().enumerate() {
            g = g.and(&Guard::from_region(x, *r, &self.ctrl_grid));
        }
        for (x, r) in letter.plant.iter().enumerate() {
            g = g.and(&Guard::from_region(nctrl + x, *r, &self.grid));
        }
        g
    }

    pub fn letter_resets(&self, letter: &Letter) -> Vec<usize> {
        (0..self.mu.clocks.len()).filter(|x| letter.resets & (1 << x) != 0).collect()
    }

    pub fn display_letter(&self, letter: &Letter) -> String {
        let mut names = self.mu.clocks.clone();
        names.extend(self.plant.clocks.iter().cloned());
        let mut s = format!("({}, {}", self.actions[letter.action], self.letter_guard(letter).display(&names));
        let resets: Vec<&str> = self.letter_resets(letter).into_iter().map(|x| self.mu.clocks[x].as_str()).collect();
        let _ = write!(s, ", {{{}}})", resets.join(","));
        s
    }
}
