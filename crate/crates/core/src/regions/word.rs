use std::collections::BTreeSet;
use std::fmt;

use crate::grid::Region;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClockId {
    Ctrl(usize),
    Plant(usize),
}

/// What a region-word entry describes: a clock, or the lower (`Inf`) or upper (`Sup`)
/// endpoint of the `k`-th interval (from 1) of an automaton location.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Subject {
    Clock(ClockId),
    Inf(usize, usize),
    Sup(usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Entry {
    pub subject: Subject,
    pub region: Region,
}

/// Letters of entries sharing a fractional class. Integer-grid and unbounded entries,
/// when present, form the first letter; the others follow by increasing fraction.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RegionWord {
    pub letters: Vec<Vec<Entry>>,
}

impl RegionWord {
    pub fn entries(&self) -> impl Iterator<Item = &Entry> {
        self.letters.iter().flatten()
    }

    /// Automaton locations holding at least one interval.
    pub fn locations(&self) -> BTreeSet<usize> {
        self.entries()
            .filter_map(|e| match e.subject {
                Subject::Inf(l, _) | Subject::Sup(l, _) => Some(l),
                Subject::Clock(_) => None,
            })
            .collect()
    }

    /// Whether the first letter is the integer class; later letters are fractional.
    pub fn has_zero_class(&self) -> bool {
        self.letters
            .first()
            .is_some_and(|l| l.iter().all(|e| !matches!(e.region, Region::Open(_))))
    }

    /// Number of distinct intervals recorded for location `loc`.
    pub fn interval_count(&self, loc: usize) -> usize {
        self.entries().filter(|e| matches!(e.subject, Subject::Inf(l, _) if l == loc)).count()
    }
}

/// Plant location plus the region words of every tuple of the knowledge set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeLabel {
    pub location: usize,
    pub words: BTreeSet<RegionWord>,
}

impl fmt::Display for Subject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subject::Clock(ClockId::Ctrl(i)) => write!(f, "c{i}"),
            Subject::Clock(ClockId::Plant(i)) => write!(f, "p{i}"),
            Subject::Inf(l, k) => write!(f, "l{l}.{k}-"),
            Subject::Sup(l, k) => write!(f, "l{l}.{k}+"),
        }
    }
}

impl fmt::Display for RegionWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for letter in &self.letters {
            write!(f, "[")?;
            for (i, e) in letter.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}{}", e.subject, e.region)?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

impl fmt::Display for NodeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q{} {{", self.location)?;
        for (i, w) in self.words.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, "}}")
    }
}
