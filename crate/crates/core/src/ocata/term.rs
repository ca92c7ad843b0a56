use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::Q;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CmpOp {
    Lt,
    Le,
    Eq,
    Ge,
    Gt,
}

impl CmpOp {
    pub fn holds(self, lhs: &Q, rhs: &Q) -> bool {
        match self {
            CmpOp::Lt => lhs < rhs,
            CmpOp::Le => lhs <= rhs,
            CmpOp::Eq => lhs == rhs,
            CmpOp::Ge => lhs >= rhs,
            CmpOp::Gt => lhs > rhs,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            CmpOp::Lt => "<",
            CmpOp::Le => "<=",
            CmpOp::Eq => "=",
            CmpOp::Ge => ">=",
            CmpOp::Gt => ">",
        }
    }
}

/// Positive boolean combination of locations, resets and clock comparisons.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    True,
    False,
    Loc(usize),
    Reset(Box<Term>),
    Cmp(CmpOp, u32),
    Or(Box<Term>, Box<Term>),
    And(Box<Term>, Box<Term>),
}

/// A minimal model: target locations, each flagged with whether its clock is reset.
pub type Model = BTreeSet<(usize, bool)>;

impl Term {
    pub fn and(a: Term, b: Term) -> Term {
        match (a, b) {
            (Term::False, _) | (_, Term::False) => Term::False,
            (Term::True, t) | (t, Term::True) => t,
            (a, b) => Term::And(Box::new(a), Box::new(b)),
        }
    }

    pub fn or(a: Term, b: Term) -> Term {
        match (a, b) {
            (Term::True, _) | (_, Term::True) => Term::True,
            (Term::False, t) | (t, Term::False) => t,
            (a, b) => Term::Or(Box::new(a), Box::new(b)),
        }
    }

    pub fn reset(t: Term) -> Term {
        match t {
            Term::True | Term::False => t,
            t => Term::Reset(Box::new(t)),
        }
    }

    /// Minimal models, where `cmp(op, c)` decides comparisons against the current
    /// clock value; comparisons under a reset are decided against 0.
    pub fn models(&self, cmp: &dyn Fn(CmpOp, u32) -> bool) -> Vec<Model> {
        let mut out = self.models_in(cmp, false);
        minimise(&mut out);
        out
    }

    fn models_in(&self, cmp: &dyn Fn(CmpOp, u32) -> bool, reset: bool) -> Vec<Model> {
        match self {
            Term::True => vec![Model::new()],
            Term::False => vec![],
            Term::Loc(l) => vec![[(*l, reset)].into()],
            Term::Reset(t) => t.models_in(cmp, true),
            Term::Cmp(op, c) => {
                let ok = if reset { op.holds(&Q::from_integer(0), &Q::from_integer(*c as i64)) } else { cmp(*op, *c) };
                if ok {
                    vec![Model::new()]
                } else {
                    vec![]
                }
            }
            Term::Or(a, b) => {
                let mut v = a.models_in(cmp, reset);
                v.extend(b.models_in(cmp, reset));
                minimise(&mut v);
                v
            }
            Term::And(a, b) => {
                let left = a.models_in(cmp, reset);
                if left.is_empty() {
                    return left;
                }
                let right = b.models_in(cmp, reset);
                let mut v = Vec::new();
                for l in &left {
                    for r in &right {
                        v.push(l.union(r).copied().collect());
                    }
                }
                minimise(&mut v);
                v
            }
        }
    }

    /// True when a comparison occurs outside every reset.
    pub fn reads_clock(&self) -> bool {
        match self {
            Term::Cmp(..) => true,
            Term::True | Term::False | Term::Loc(_) | Term::Reset(_) => false,
            Term::Or(a, b) | Term::And(a, b) => a.reads_clock() || b.reads_clock(),
        }
    }

    pub fn max_constant(&self) -> u32 {
        match self {
            Term::Cmp(_, c) => *c,
            Term::True | Term::False | Term::Loc(_) => 0,
            Term::Reset(t) => t.max_constant(),
            Term::Or(a, b) | Term::And(a, b) => a.max_constant().max(b.max_constant()),
        }
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> TermDisplay<'a> {
        TermDisplay { term: self, names }
    }
}

fn minimise(models: &mut Vec<Model>) {
    models.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    models.dedup();
    let mut kept: Vec<Model> = Vec::with_capacity(models.len());
    for m in models.drain(..) {
        if !kept.iter().any(|k| k.is_subset(&m)) {
            kept.push(m);
        }
    }
    *models = kept;
}

pub struct TermDisplay<'a> {
    term: &'a Term,
    names: &'a [String],
}

impl TermDisplay<'_> {
    fn write(&self, t: &Term, f: &mut fmt::Formatter<'_>, parent_and: bool) -> fmt::Result {
        match t {
            Term::True => write!(f, "true"),
            Term::False => write!(f, "false"),
            Term::Loc(l) => write!(f, "{}", self.names.get(*l).map_or("?", |s| s.as_str())),
            Term::Reset(t) => {
                write!(f, "x.")?;
                match **t {
                    Term::And(..) | Term::Or(..) => {
                        write!(f, "(")?;
                        self.write(t, f, false)?;
                        write!(f, ")")
                    }
                    _ => self.write(t, f, false),
                }
            }
            Term::Cmp(op, c) => write!(f, "x{}{}", op.symbol(), c),
            Term::And(a, b) => {
                self.write(a, f, true)?;
                write!(f, " & ")?;
                self.write(b, f, true)
            }
            Term::Or(a, b) => {
                if parent_and {
                    write!(f, "(")?;
                }
                self.write(a, f, false)?;
                write!(f, " | ")?;
                self.write(b, f, false)?;
                if parent_and {
                    write!(f, ")")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for TermDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(self.term, f, false)
    }
}
