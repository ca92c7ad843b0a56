use std::collections::HashSet;

use crate::grid::{Grid, Region};
use crate::logic::{evaluate, Formula, TimedWord};
use crate::plant::Sts;
use crate::Q;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub ok: bool,
    /// Closed-loop words accepted by the plant and checked against the formula.
    pub checked: usize,
    pub counterexample: Option<TimedWord>,
}

#[derive(Clone)]
struct State {
    events: Vec<(String, Q)>,
    now: Q,
    /// Controller location and clocks; `None` once the controller has lost track.
    ctrl: Option<(usize, Vec<Q>)>,
    plant: usize,
    nu: Vec<Q>,
}

type Key = (Vec<String>, Option<usize>, usize, Vec<Region>, Vec<usize>);

struct Loop<'a> {
    ctrl: &'a Sts,
    plant: &'a Sts,
    grid: Grid,
    /// Plant clock index per controller read clock.
    reads: Vec<usize>,
}

impl Loop<'_> {
    fn ctrl_view(&self, cv: &[Q], nu: &[Q]) -> Vec<Q> {
        let mut v = cv.to_vec();
        v.extend(self.reads.iter().map(|&i| nu[i]));
        v
    }

    fn values(&self, s: &State) -> Vec<Q> {
        let mut v: Vec<Q> = s.ctrl.as_ref().map(|(_, c)| c.clone()).unwrap_or_default();
        v.extend(s.nu.iter().copied());
        v.push(s.now);
        v.extend(s.events.iter().map(|(_, t)| s.now - *t));
        v
    }

    fn key(&self, s: &State) -> Key {
        let (regions, classes, _) = self.grid.classify(&self.values(s));
        (s.events.iter().map(|(a, _)| a.clone()).collect(), s.ctrl.as_ref().map(|c| c.0), s.plant, regions, classes)
    }

    fn fire(&self, s: &State, d: Q, pt: usize, ctrl: Option<Option<usize>>) -> State {
        let tr = &self.plant.transitions[pt];
        let mut nu: Vec<Q> = s.nu.iter().map(|v| *v + d).collect();
        self.plant.apply_resets(&mut nu, pt);
        let ctrl = match ctrl {
            Some(Some(ct)) => {
                let (_, cv) = s.ctrl.as_ref().unwrap();
                let mut cv: Vec<Q> = cv.iter().map(|v| *v + d).collect();
                self.ctrl.apply_resets(&mut cv, ct);
                Some((self.ctrl.transitions[ct].target, cv))
            }
            _ => None,
        };
        let mut events = s.events.clone();
        events.push((tr.action.clone(), s.now + d));
        State { events, now: s.now + d, ctrl, plant: tr.target, nu }
    }

    fn ctrl_step(&self, s: &State, d: Q, action: &str) -> Option<usize> {
        let (loc, cv) = s.ctrl.as_ref()?;
        let cv: Vec<Q> = cv.iter().map(|v| *v + d).collect();
        let nu: Vec<Q> = s.nu.iter().map(|v| *v + d).collect();
        self.ctrl.step(*loc, &self.ctrl_view(&cv, &nu), action)
    }

    fn successors(&self, s: &State) -> Vec<State> {
        let delays = self.grid.delay_classes(&self.values(s));
        let plant_at = |d: Q| -> Vec<usize> {
            let nu: Vec<Q> = s.nu.iter().map(|v| *v + d).collect();
            self.plant.outgoing(s.plant).filter(|(_, t)| t.guard.holds(&nu)).map(|(i, _)| i).collect()
        };
        let mut out = Vec::new();
        if s.ctrl.is_some() {
            let proposals: Vec<Vec<(usize, usize)>> = delays
                .iter()
                .map(|d| {
                    plant_at(*d)
                        .into_iter()
                        .filter(|pt| self.plant.is_controllable(&self.plant.transitions[*pt].action))
                        .filter_map(|pt| self.ctrl_step(s, *d, &self.plant.transitions[pt].action).map(|ct| (pt, ct)))
                        .collect()
                })
                .collect();
            let last = proposals.iter().rposition(|p| !p.is_empty());
            let env_any = delays.iter().any(|d| plant_at(*d).iter().any(|pt| !self.plant.is_controllable(&self.plant.transitions[*pt].action)));
            if last.is_some() || env_any {
                let horizon = last.unwrap_or(delays.len() - 1);
                for (i, d) in delays.iter().enumerate() {
                    for &(pt, ct) in &proposals[i] {
                        out.push(self.fire(s, *d, pt, Some(Some(ct))));
                    }
                    if i > horizon {
                        continue;
                    }
                    for pt in plant_at(*d) {
                        let action = &self.plant.transitions[pt].action;
                        if !self.plant.is_controllable(action) {
                            out.push(self.fire(s, *d, pt, Some(self.ctrl_step(s, *d, action))));
                        }
                    }
                }
                return out;
            }
        }
        for d in &delays {
            for pt in plant_at(*d) {
                out.push(self.fire(s, *d, pt, None));
            }
        }
        out
    }
}

fn loop_grid(ctrl: &Sts, plant: &Sts, extra: u32) -> Grid {
    let (cm, cd) = ctrl.constants();
    let (pm, pd) = plant.constants();
    let den = num_integer::lcm(cd, pd);
    let max = cm.max(pm).max(Q::from_integer(extra as i64));
    Grid::new(den, (max * Q::from_integer(den)).ceil().to_integer())
}

/// Visits the closed-loop words of `ctrl` and `plant` up to `depth` events at region
/// resolution for constants up to `extra`, with whether the plant accepts each.
fn explore(ctrl: &Sts, plant: &Sts, extra: u32, depth: usize, f: &mut dyn FnMut(&TimedWord, bool) -> bool) {
    let lp = Loop {
        ctrl,
        plant,
        grid: loop_grid(ctrl, plant, extra),
        reads: ctrl.reads.iter().map(|r| plant.clocks.iter().position(|c| c == r).expect("read clock is a plant clock")).collect(),
    };
    let zero = Q::from_integer(0);
    let init = State {
        events: vec![],
        now: zero,
        ctrl: Some((ctrl.initial, vec![zero; ctrl.clocks.len()])),
        plant: plant.initial,
        nu: vec![zero; plant.clocks.len()],
    };
    let word = |s: &State| TimedWord::from_pairs(s.events.iter().map(|(a, t)| (a.as_str(), *t))).expect("monotone timestamps");
    if !f(&word(&init), plant.finals.contains(&init.plant)) {
        return;
    }
    let mut level = vec![init];
    for _ in 0..depth {
        let mut seen: HashSet<Key> = HashSet::new();
        let mut next = Vec::new();
        for s in &level {
            for n in lp.successors(s) {
                if seen.insert(lp.key(&n)) {
                    if !f(&word(&n), plant.finals.contains(&n.plant)) {
                        return;
                    }
                    next.push(n);
                }
            }
        }
        level = next;
    }
}

/// Closed-loop words up to `depth` events, one per region class, including the empty word.
pub fn closed_loop_words(ctrl: &Sts, plant: &Sts, depth: usize) -> Vec<TimedWord> {
    let mut out = Vec::new();
    explore(ctrl, plant, 0, depth, &mut |w, _| {
        out.push(w.clone());
        true
    });
    out
}

/// Checks every plant-accepted closed-loop word up to `depth` events against `phi`.
pub fn verify_controller(ctrl: &Sts, plant: &Sts, phi: &Formula, depth: usize) -> VerifyReport {
    let mut checked = 0;
    let mut counterexample = None;
    explore(ctrl, plant, phi.max_constant(), depth, &mut |w, accepted| {
        if !accepted || w.is_empty() {
            return true;
        }
        checked += 1;
        if evaluate(w, phi) {
            true
        } else {
            counterexample = Some(w.clone());
            false
        }
    });
    VerifyReport { ok: counterexample.is_none(), checked, counterexample }
}
