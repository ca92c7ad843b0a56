use std::fmt;


use crate::grid::{Grid, Region};
use crate::ocata::CmpOp;
use crate::rational::fmt_q;
use crate::Q;

/// Atomic clock constraint `clock op value`; `clock` indexes a clock list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Constraint {
    pub clock: usize,
    pub op: CmpOp,
    pub value: Q,
}

/// Conjunction of constraints; the empty guard is `true`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Guard {
    pub constraints: Vec<Constraint>,
}

/// Set of non-negative reals `lo..hi` with endpoint flags; `hi = None` is unbounded.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TimeInterval {
    pub lo: Q,
    pub lo_closed: bool,
    pub hi: Option<Q>,
    pub hi_closed: bool,
}

impl TimeInterval {
    pub fn all() -> TimeInterval {
        TimeInterval { lo: Q::from_integer(0), lo_closed: true, hi: None, hi_closed: false }
    }

    pub fn is_empty(&self) -> bool {
        match self.hi {
            None => false,
            Some(h) => h < self.lo || (h == self.lo && !(self.lo_closed && self.hi_closed)),
        }
    }

    pub fn contains(&self, t: &Q) -> bool {
        let lo_ok = if self.lo_closed { *t >= self.lo } else { *t > self.lo };
        let hi_ok = match self.hi {
            None => true,
            Some(h) => {
                if self.hi_closed {
                    *t <= h
                } else {
                    *t < h
                }
            }
        };
        lo_ok && hi_ok
    }

    pub fn intersect(&self, other: &TimeInterval) -> TimeInterval {
        let (lo, lo_closed) = match self.lo.cmp(&other.lo) {
            std::cmp::Ordering::Greater => (self.lo, self.lo_closed),
            std::cmp::Ordering::Less => (other.lo, other.lo_closed),
            std::cmp::Ordering::Equal => (self.lo, self.lo_closed && other.lo_closed),
        };
        let (hi, hi_closed) = match (self.hi, other.hi) {
            (None, None) => (None, false),
            (Some(h), None) => (Some(h), self.hi_closed),
            (None, Some(h)) => (Some(h), other.hi_closed),
            (Some(a), Some(b)) => match a.cmp(&b) {
                std::cmp::Ordering::Less => (Some(a), self.hi_closed),
                std::cmp::Ordering::Greater => (Some(b), other.hi_closed),
                std::cmp::Ordering::Equal => (Some(a), self.hi_closed && other.hi_closed),
            },
        };
        TimeInterval { lo, lo_closed, hi, hi_closed }
    }

    /// The interval of values `v + t` for `t` in `self`.
    pub fn shift(&self, v: &Q) -> TimeInterval {
        TimeInterval { lo: self.lo + v, lo_closed: self.lo_closed, hi: self.hi.map(|h| h + v), hi_closed: self.hi_closed }
    }
}

impl fmt::Display for TimeInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let open = if self.lo_closed { '[' } else { '(' };
        match self.hi {
            None => write!(f, "{}{},inf)", open, fmt_q(&self.lo)),
            Some(h) => write!(f, "{}{},{}{}", open, fmt_q(&self.lo), fmt_q(&h), if self.hi_closed { ']' } else { ')' }),
        }
    }
}

impl Constraint {
    pub fn holds(&self, valuation: &[Q]) -> bool {
        self.op.holds(&valuation[self.clock], &self.value)
    }

    /// Values of the constrained clock satisfying the constraint.
    pub fn values(&self) -> TimeInterval {
        let zero = Q::from_integer(0);
        let v = self.value;
        match self.op {
            CmpOp::Lt => TimeInterval { lo: zero, lo_closed: true, hi: Some(v), hi_closed: false },
            CmpOp::Le => TimeInterval { lo: zero, lo_closed: true, hi: Some(v), hi_closed: true },
            CmpOp::Eq => TimeInterval { lo: v, lo_closed: true, hi: Some(v), hi_closed: true },
            CmpOp::Ge => TimeInterval { lo: v, lo_closed: true, hi: None, hi_closed: false },
            CmpOp::Gt => TimeInterval { lo: v, lo_closed: false, hi: None, hi_closed: false },
        }
    }
}

impl Guard {
    pub fn top() -> Guard {
        Guard::default()
    }

    pub fn new(constraints: Vec<Constraint>) -> Guard {
        Guard { constraints }
    }

    pub fn and(&self, other: &Guard) -> Guard {
        let mut c = self.constraints.clone();
        c.extend(other.constraints.iter().cloned());
        Guard { constraints: c }
    }

    pub fn holds(&self, valuation: &[Q]) -> bool {
        self.constraints.iter().all(|c| c.holds(valuation))
    }

    /// Allowed values of `clock` (intersection of its constraints).
    pub fn clock_values(&self, clock: usize) -> TimeInterval {
        self.constraints
            .iter()
            .filter(|c| c.clock == clock)
            .fold(TimeInterval::all(), |acc, c| acc.intersect(&c.values()))
    }

    pub fn clocks(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.constraints.iter().map(|c| c.clock).collect();
        v.sort();
        v.dedup();
        v
    }

    /// Delays `t` such that `valuation + t` satisfies the guard.
    pub fn delays(&self, valuation: &[Q]) -> TimeInterval {
        let zero = Q::from_integer(0);
        self.clocks().into_iter().fold(TimeInterval::all(), |acc, x| {
            let vals = self.clock_values(x);
            acc.intersect(&vals.shift(&-valuation[x]))
        })
        .intersect(&TimeInterval { lo: zero, lo_closed: true, hi: None, hi_closed: false })
    }

    pub fn is_satisfiable(&self) -> bool {
        self.clocks().into_iter().all(|x| !self.clock_values(x).is_empty())
    }

    /// Largest constant and the lcm of constant denominators.
    pub fn constants(&self) -> (Q, i64) {
        let mut max = Q::from_integer(0);
        let mut den = 1i64;
        for c in &self.constraints {
            max = max.max(c.value);
            den = num_integer::lcm(den, *c.value.denom());
        }
        (max, den)
    }

    /// Constraint pinning `clock` to `region` of `grid`.
    pub fn from_region(clock: usize, region: Region, grid: &Grid) -> Guard {
        let c = |op, value| Constraint { clock, op, value };
        match region {
            Region::Point(a) => Guard::new(vec![c(CmpOp::Eq, Q::new(a, grid.den))]),
            Region::Open(a) => Guard::new(vec![c(CmpOp::Gt, Q::new(a, grid.den)), c(CmpOp::Lt, Q::new(a + 1, grid.den))]),
            Region::Above => Guard::new(vec![c(CmpOp::Gt, grid.max())]),
        }
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> GuardDisplay<'a> {
        GuardDisplay { guard: self, names }
    }
}

pub struct GuardDisplay<'a> {
    guard: &'a Guard,
    names: &'a [String],
}

impl fmt::Display for GuardDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.guard.constraints.is_empty() {
            return write!(f, "true");
        }
        for (i, c) in self.guard.constraints.iter().enumerate() {
            if i > 0 {
                write!(f, " & ")?;
            }
            let name = self.names.get(c.clock).map_or("?", |s| s.as_str());
            write!(f, "{}{}{}", name, c.op.symbol(), fmt_q(&c.value))?;
        }
        Ok(())
    }
}

/// Controller resources: clocks, constants of the form `a/m` with `a <= k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Granularity {
    pub clocks: Vec<String>,
    pub m: u32,
    pub k: u32,
}

impl Granularity {
    pub fn new(clocks: Vec<String>, m: u32, k: u32) -> Granularity {
        assert!(m >= 1, "granularity denominator must be positive");
        Granularity { clocks, m, k }
    }

    pub fn grid(&self) -> Grid {
        Grid::new(self.m as i64, self.k as i64)
    }
}

/// The atomic `(X,m,K)`-granular guards: per clock `x=a/m` (a <= K),
/// `a/m < x < (a+1)/m` (a < K) and `x > K/m`, combined across clocks.
pub fn atomic_guards(mu: &Granularity) -> Vec<Guard> {
    let grid = mu.grid();
    let mut out = vec![Guard::top()];
    for x in 0..mu.clocks.len() {
        let mut next = Vec::new();
        for g in &out {
            for r in grid.all_regions() {
                next.push(g.and(&Guard::from_region(x, r, &grid)));
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atomic_guard_counts() {
        assert_eq!(atomic_guards(&Granularity::new(vec!["z".into()], 1, 1)).len(), 4);
        let g = atomic_guards(&Granularity::new(vec!["x".into()], 2, 3));
        assert_eq!(g.len(), 8);
        let names = vec!["x".to_string()];
        let shown: Vec<String> = g.iter().map(|g| g.display(&names).to_string()).collect();
        assert_eq!(shown[1], "x>0 & x<1/2");
        assert_eq!(shown[7], "x>3/2");
        assert_eq!(atomic_guards(&Granularity::new(vec![], 1, 0)), vec![Guard::top()]);
    }

    #[test]
    fn delays_of_a_guard() {
        let g = Guard::new(vec![Constraint { clock: 0, op: CmpOp::Eq, value: Q::from_integer(1) }]);
        let d = g.delays(&[Q::new(3, 10)]);
        assert_eq!(d, TimeInterval { lo: Q::new(7, 10), lo_closed: true, hi: Some(Q::new(7, 10)), hi_closed: true });
        assert_eq!(Guard::top().delays(&[]), TimeInterval::all());
        let lt = Guard::new(vec![Constraint { clock: 0, op: CmpOp::Lt, value: Q::from_integer(1) }]);
        assert!(lt.delays(&[Q::from_integer(2)]).is_empty());
    }
}
