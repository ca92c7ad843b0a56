use std::collections::{BTreeSet, HashSet};

use thiserror::Error;

use super::guard::{Guard, TimeInterval};
use crate::grid::Grid;
use crate::logic::TimedWord;
use crate::Q;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StsError {
    #[error("not time-deterministic: transitions {0} and {1} overlap")]
    NotTimeDeterministic(usize, usize),
    #[error("blocking: location `{0}` can be entered without any enabled action")]
    Blocking(String),
    #[error("action `{0}` is neither controllable nor environment")]
    UnknownAction(String),
    #[error("actions `{0}` is both controllable and environment")]
    SharedAction(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Transition {
    pub source: usize,
    pub action: String,
    pub guard: Guard,
    /// Indices into the system's own clocks.
    pub resets: Vec<usize>,
    pub target: usize,
}

/// Finite symbolic transition system (timed automaton). Guards range over `clocks`
/// followed by `reads`, clocks owned by another component that are observed only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sts {
    pub clocks: Vec<String>,
    pub reads: Vec<String>,
    pub locations: Vec<String>,
    pub initial: usize,
    pub finals: BTreeSet<usize>,
    pub transitions: Vec<Transition>,
    pub controllable: BTreeSet<String>,
    pub environment: BTreeSet<String>,
}

/// Clock valuation, indexed like the clock list.
pub type Valuation = Vec<Q>;

/// One enabled transition and the delays that enable it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enabled {
    pub transition: usize,
    pub delays: TimeInterval,
}

impl Sts {
    pub fn alphabet(&self) -> BTreeSet<String> {
        self.controllable.union(&self.environment).cloned().collect()
    }

    /// Own clocks followed by read clocks, the index space of guards.
    pub fn guard_clocks(&self) -> Vec<String> {
        let mut v = self.clocks.clone();
        v.extend(self.reads.iter().cloned());
        v
    }

    pub fn location(&self, name: &str) -> Option<usize> {
        self.locations.iter().position(|l| l == name)
    }

    pub fn is_controllable(&self, action: &str) -> bool {
        self.controllable.contains(action)
    }

    pub fn outgoing(&self, loc: usize) -> impl Iterator<Item = (usize, &Transition)> {
        self.transitions.iter().enumerate().filter(move |(_, t)| t.source == loc)
    }

    /// Largest guard constant and lcm of constant denominators.
    pub fn constants(&self) -> (Q, i64) {
        self.transitions.iter().fold((Q::from_integer(0), 1), |(m, d), t| {
            let (tm, td) = t.guard.constants();
            (m.max(tm), num_integer::lcm(d, td))
        })
    }

    pub fn grid(&self) -> Grid {
        let (max, den) = self.constants();
        Grid::new(den, (max * Q::from_integer(den)).ceil().to_integer())
    }

    pub fn check_alphabet(&self) -> Result<(), StsError> {
        if let Some(a) = self.controllable.intersection(&self.environment).next() {
            return Err(StsError::SharedAction(a.clone()));
        }
        match self.transitions.iter().find(|t| !self.controllable.contains(&t.action) && !self.environment.contains(&t.action)) {
            Some(t) => Err(StsError::UnknownAction(t.action.clone())),
            None => Ok(()),
        }
    }

    /// First pair of same-source, same-action transitions with jointly satisfiable guards.
    pub fn time_determinism_violation(&self) -> Option<(usize, usize)> {
        for (i, a) in self.transitions.iter().enumerate() {
            for (j, b) in self.transitions.iter().enumerate().skip(i + 1) {
                if a.source == b.source && a.action == b.action && a.guard.and(&b.guard).is_satisfiable() {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_time_deterministic(&self) -> bool {
        self.time_determinism_violation().is_none()
    }

    /// Per outgoing transition of `loc`, the delays after which it is enabled from `nu`.
    /// `nu` covers own clocks followed by read clocks.
    pub fn enabled(&self, loc: usize, nu: &[Q]) -> Vec<Enabled> {
        self.outgoing(loc)
            .filter_map(|(i, t)| {
                let d = t.guard.delays(nu);
                (!d.is_empty()).then_some(Enabled { transition: i, delays: d })
            })
            .collect()
    }

    /// Transition taken from `(loc, nu)` on `action` (at most one when time-deterministic).
    pub fn step(&self, loc: usize, nu: &[Q], action: &str) -> Option<usize> {
        self.outgoing(loc).find(|(_, t)| t.action == action && t.guard.holds(nu)).map(|(i, _)| i)
    }

    pub fn apply_resets(&self, nu: &mut [Q], transition: usize) {
        for &x in &self.transitions[transition].resets {
            nu[x] = Q::from_integer(0);
        }
    }

    /// Deterministic run over `word` from the initial location and zero valuation; the
    /// system must not read foreign clocks.
    pub fn run(&self, word: &TimedWord) -> Option<(usize, Valuation)> {
        let mut loc = self.initial;
        let mut nu: Valuation = vec![Q::from_integer(0); self.clocks.len() + self.reads.len()];
        let mut last = Q::from_integer(0);
        for e in word.events() {
            let d = e.time - last;
            last = e.time;
            nu.iter_mut().for_each(|v| *v += d);
            let t = self.step(loc, &nu, &e.letter)?;
            self.apply_resets(&mut nu, t);
            loc = self.transitions[t].target;
        }
        Some((loc, nu))
    }

    pub fn membership(&self, word: &TimedWord) -> bool {
        self.run(word).is_some_and(|(l, _)| self.finals.contains(&l))
    }

    /// Every state entered by a transition (or initially) has some action enabled after
    /// some delay. Explores reachable region states of the system's own clocks.
    pub fn blocking_location(&self) -> Option<usize> {
        let grid = self.grid();
        let clamp = |v: &mut Valuation| {
            for x in v.iter_mut() {
                if *x > grid.max() {
                    *x = grid.max() + 1;
                }
            }
        };
        let start: Valuation = vec![Q::from_integer(0); self.clocks.len()];
        let mut seen: HashSet<(usize, Valuation)> = HashSet::new();
        let mut stack = vec![(self.initial, start)];
        while let Some((loc, nu)) = stack.pop() {
            let nu = grid.canonicalise(&nu);
            if !seen.insert((loc, nu.clone())) {
                continue;
            }
            let mut any = false;
            for t in grid.delay_classes(&nu) {
                let moved: Valuation = nu.iter().map(|v| *v + t).collect();
                for (i, tr) in self.outgoing(loc) {
                    if tr.guard.holds(&moved) {
                        any = true;
                        let mut next = moved.clone();
                        self.apply_resets(&mut next, i);
                        clamp(&mut next);
                        stack.push((tr.target, next));
                    }
                }
            }
            if !any {
                return Some(loc);
            }
        }
        None
    }

    pub fn is_non_blocking(&self) -> bool {
        self.blocking_location().is_none()
    }

    /// Checks the conditions required of a plant.
    pub fn validate_plant(&self) -> Result<(), StsError> {
        self.check_alphabet()?;
        if let Some((i, j)) = self.time_determinism_violation() {
            return Err(StsError::NotTimeDeterministic(i, j));
        }
        if let Some(l) = self.blocking_location() {
            return Err(StsError::Blocking(self.locations[l].clone()));
        }
        Ok(())
    }
}
