use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use super::Interval;

/// MTL/MITL abstract syntax. Derived modalities are kept as their own nodes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    True,
    False,
    Atom(String),
    Not(Arc<Formula>),
    And(Arc<Formula>, Arc<Formula>),
    Or(Arc<Formula>, Arc<Formula>),
    Until(Arc<Formula>, Arc<Formula>, Interval),
    DualUntil(Arc<Formula>, Arc<Formula>, Interval),
    Next(Interval, Arc<Formula>),
    Finally(Interval, Arc<Formula>),
    Globally(Interval, Arc<Formula>),
    WeakUntil(Arc<Formula>, Arc<Formula>, Interval),
    WeakFinally(Interval, Arc<Formula>),
    WeakGlobally(Interval, Arc<Formula>),
}

use Formula::*;

impl Formula {
    pub fn atom(name: impl Into<String>) -> Formula {
        Atom(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Not(Arc::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        And(Arc::new(a), Arc::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Or(Arc::new(a), Arc::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::or(Formula::not(a), b)
    }

    pub fn until(a: Formula, b: Formula, i: Interval) -> Formula {
        Until(Arc::new(a), Arc::new(b), i)
    }

    pub fn dual_until(a: Formula, b: Formula, i: Interval) -> Formula {
        DualUntil(Arc::new(a), Arc::new(b), i)
    }

    pub fn weak_until(a: Formula, b: Formula, i: Interval) -> Formula {
        WeakUntil(Arc::new(a), Arc::new(b), i)
    }

    pub fn next(i: Interval, f: Formula) -> Formula {
        Next(i, Arc::new(f))
    }

    pub fn finally(i: Interval, f: Formula) -> Formula {
        Finally(i, Arc::new(f))
    }

    pub fn globally(i: Interval, f: Formula) -> Formula {
        Globally(i, Arc::new(f))
    }

    pub fn weak_finally(i: Interval, f: Formula) -> Formula {
        WeakFinally(i, Arc::new(f))
    }

    pub fn weak_globally(i: Interval, f: Formula) -> Formula {
        WeakGlobally(i, Arc::new(f))
    }

    /// Conjunction of all items, `True` when empty.
    pub fn all(items: impl IntoIterator<Item = Formula>) -> Formula {
        items.into_iter().reduce(Formula::and).unwrap_or(True)
    }

    /// Disjunction of all items, `False` when empty.
    pub fn any(items: impl IntoIterator<Item = Formula>) -> Formula {
        items.into_iter().reduce(Formula::or).unwrap_or(False)
    }

    pub fn children(&self) -> Vec<&Formula> {
        match self {
            True | False | Atom(_) => vec![],
            Not(a) | Next(_, a) | Finally(_, a) | Globally(_, a) | WeakFinally(_, a) | WeakGlobally(_, a) => {
                vec![a]
            }
            And(a, b) | Or(a, b) | Until(a, b, _) | DualUntil(a, b, _) | WeakUntil(a, b, _) => vec![a, b],
        }
    }

    pub fn interval(&self) -> Option<&Interval> {
        match self {
            Until(_, _, i) | DualUntil(_, _, i) | WeakUntil(_, _, i) => Some(i),
            Next(i, _) | Finally(i, _) | Globally(i, _) | WeakFinally(i, _) | WeakGlobally(i, _) => Some(i),
            _ => None,
        }
    }

    pub fn is_modal(&self) -> bool {
        self.interval().is_some()
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self.children().iter().map(|c| c.depth()).max().unwrap_or(0)
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        if let Atom(a) = self {
            out.insert(a.clone());
        }
        for c in self.children() {
            c.collect_atoms(out);
        }
    }

    /// Largest finite interval endpoint occurring in the formula.
    pub fn max_constant(&self) -> u32 {
        let own = self.interval().map_or(0, |i| i.max_constant());
        self.children().iter().map(|c| c.max_constant()).fold(own, u32::max)
    }

    /// True when no modality occurs (a propositional formula).
    pub fn is_propositional(&self) -> bool {
        !self.is_modal() && self.children().iter().all(|c| c.is_propositional())
    }

    /// True when every modality carries `[0,inf)`.
    pub fn is_untimed(&self) -> bool {
        self.interval().map_or(true, |i| i.is_full()) && self.children().iter().all(|c| c.is_untimed())
    }

    /// Replaces every occurrence of atom `from` by atom `to`.
    pub fn rename_atom(&self, from: &str, to: &str) -> Formula {
        let r = |f: &Arc<Formula>| Arc::new(f.rename_atom(from, to));
        match self {
            Atom(a) if a == from => Atom(to.to_string()),
            True | False | Atom(_) => self.clone(),
            Not(a) => Not(r(a)),
            And(a, b) => And(r(a), r(b)),
            Or(a, b) => Or(r(a), r(b)),
            Until(a, b, i) => Until(r(a), r(b), *i),
            DualUntil(a, b, i) => DualUntil(r(a), r(b), *i),
            WeakUntil(a, b, i) => WeakUntil(r(a), r(b), *i),
            Next(i, a) => Next(*i, r(a)),
            Finally(i, a) => Finally(*i, r(a)),
            Globally(i, a) => Globally(*i, r(a)),
            WeakFinally(i, a) => WeakFinally(*i, r(a)),
            WeakGlobally(i, a) => WeakGlobally(*i, r(a)),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Or(..) => 1,
            And(..) => 2,
            Until(..) | DualUntil(..) | WeakUntil(..) => 3,
            Not(_) | Next(..) | Finally(..) | Globally(..) | WeakFinally(..) | WeakGlobally(..) => 4,
            True | False | Atom(_) => 5,
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            write!(f, "(")?;
            self.fmt_at(f, 0)?;
            return write!(f, ")");
        }
        let suffix = |i: &Interval| if i.is_full() { String::new() } else { i.to_string() };
        match self {
            True => write!(f, "true"),
            False => write!(f, "false"),
            Atom(a) => write!(f, "{a}"),
            Not(a) => {
                write!(f, "~")?;
                a.fmt_at(f, 4)
            }
            And(a, b) => {
                a.fmt_at(f, 2)?;
                write!(f, " & ")?;
                b.fmt_at(f, 3)
            }
            Or(a, b) => {
                a.fmt_at(f, 1)?;
                write!(f, " | ")?;
                b.fmt_at(f, 2)
            }
            Until(a, b, i) | DualUntil(a, b, i) | WeakUntil(a, b, i) => {
                let op = match self {
                    Until(..) => "U",
                    DualUntil(..) => "uU",
                    _ => "wU",
                };
                a.fmt_at(f, 4)?;
                write!(f, " {op}{} ", suffix(i))?;
                b.fmt_at(f, 3)
            }
            Next(i, a) | Finally(i, a) | Globally(i, a) | WeakFinally(i, a) | WeakGlobally(i, a) => {
                let op = match self {
                    Next(..) => "X",
                    Finally(..) => "F",
                    Globally(..) => "G",
                    WeakFinally(..) => "wF",
                    _ => "wG",
                };
                write!(f, "{op}{} ", suffix(i))?;
                a.fmt_at(f, 4)
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}
