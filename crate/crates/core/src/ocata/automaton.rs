use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use thiserror::Error;

use super::term::{CmpOp, Term};
use crate::logic::{classify_fragment, is_nnf, to_nnf, Formula, Interval};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TranslateError {
    #[error("formula is not in MITL (singular interval)")]
    NotMitl,
}

/// One-clock alternating timed automaton with a total transition function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ocata {
    pub names: Vec<String>,
    pub initial: usize,
    pub finals: BTreeSet<usize>,
    pub alphabet: Vec<String>,
    delta: BTreeMap<(usize, String), Term>,
}

static FALSE: Term = Term::False;

impl Ocata {
    /// Builds an automaton; missing transitions default to `false`.
    pub fn new(
        names: Vec<String>,
        initial: usize,
        finals: BTreeSet<usize>,
        alphabet: Vec<String>,
        delta: impl IntoIterator<Item = ((usize, String), Term)>,
    ) -> Ocata {
        Ocata { names, initial, finals, alphabet, delta: delta.into_iter().collect() }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn delta(&self, loc: usize, letter: &str) -> &Term {
        self.delta.get(&(loc, letter.to_string())).unwrap_or(&FALSE)
    }

    pub fn is_final(&self, loc: usize) -> bool {
        self.finals.contains(&loc)
    }

    /// Locations whose outgoing terms compare the clock without resetting it first.
    pub fn is_timed(&self, loc: usize) -> bool {
        self.alphabet.iter().any(|a| self.delta(loc, a).reads_clock())
    }

    pub fn location_constant(&self, loc: usize) -> u32 {
        self.alphabet.iter().map(|a| self.delta(loc, a).max_constant()).max().unwrap_or(0)
    }

    pub fn max_constant(&self) -> u32 {
        (0..self.len()).map(|l| self.location_constant(l)).max().unwrap_or(0)
    }

    /// Text export: one `loc -letter-> term` line per transition.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "alphabet {}", self.alphabet.join(","));
        let _ = writeln!(s, "locations {}", self.names.join(","));
        let _ = writeln!(s, "initial {}", self.names[self.initial]);
        let finals: Vec<&str> = self.finals.iter().map(|l| self.names[*l].as_str()).collect();
        let _ = writeln!(s, "final {}", finals.join(","));
        for ((l, a), t) in &self.delta {
            let _ = writeln!(s, "{} -{}-> {}", self.names[*l], a, t.display(&self.names));
        }
        s
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph ocata {\n  rankdir=LR;\n");
        for (i, n) in self.names.iter().enumerate() {
            let shape = if self.is_final(i) { "doublecircle" } else { "circle" };
            let _ = writeln!(s, "  l{i} [label=\"{n}\", shape={shape}];");
        }
        for ((l, a), t) in &self.delta {
            let _ = writeln!(s, "  l{l} -> l{l} [label=\"{a}: {}\", style=dotted];", t.display(&self.names));
        }
        s.push_str("}\n");
        s
    }
}

/// MITL to OCATA: one location per distinct until or dual-until subformula of the
/// negation normal form, plus a non-final initial location.
pub fn translate(phi: &Formula, alphabet: &BTreeSet<String>) -> Result<Ocata, TranslateError> {
    if !classify_fragment(phi).mitl {
        return Err(TranslateError::NotMitl);
    }
    let nnf = to_nnf(phi);
    debug_assert!(is_nnf(&nnf));
    let mut sigma: BTreeSet<String> = alphabet.clone();
    sigma.extend(nnf.atoms());
    let mut b = Builder { index: HashMap::new(), subs: Vec::new() };
    b.collect(&nnf);
    let mut names = vec!["init".to_string()];
    let mut finals = BTreeSet::new();
    for (i, f) in b.subs.iter().enumerate() {
        names.push(format!("l{}", i + 1));
        if matches!(f, Formula::DualUntil(..)) {
            finals.insert(i + 1);
        }
    }
    let mut delta = BTreeMap::new();
    for a in &sigma {
        delta.insert((0, a.clone()), b.at(&nnf, a));
        for (i, f) in b.subs.iter().enumerate() {
            let loc = i + 1;
            let t = match f {
                Formula::Until(x, y, iv) => Term::or(
                    Term::and(b.at(y, a), inside(iv)),
                    Term::and(Term::and(b.at(x, a), before_end(iv)), Term::Loc(loc)),
                ),
                Formula::DualUntil(x, y, iv) => Term::and(
                    Term::or(b.at(y, a), outside(iv)),
                    Term::or(Term::or(b.at(x, a), Term::Loc(loc)), past_end(iv)),
                ),
                _ => unreachable!("only untils get locations"),
            };
            delta.insert((loc, a.clone()), t);
        }
    }
    Ok(Ocata::new(names, 0, finals, sigma.into_iter().collect(), delta))
}

struct Builder {
    index: HashMap<Formula, usize>,
    subs: Vec<Formula>,
}

impl Builder {
    fn collect(&mut self, f: &Formula) {
        if matches!(f, Formula::Until(..) | Formula::DualUntil(..)) && !self.index.contains_key(f) {
            self.index.insert(f.clone(), self.subs.len() + 1);
            self.subs.push(f.clone());
        }
        for c in f.children() {
            self.collect(c);
        }
    }

    fn at(&self, f: &Formula, a: &str) -> Term {
        match f {
            Formula::True => Term::True,
            Formula::False => Term::False,
            Formula::Atom(b) => bool_term(a == b),
            Formula::Not(x) => match &**x {
                Formula::Atom(b) => bool_term(a != b),
                _ => unreachable!("negation normal form"),
            },
            Formula::And(x, y) => Term::and(self.at(x, a), self.at(y, a)),
            Formula::Or(x, y) => Term::or(self.at(x, a), self.at(y, a)),
            Formula::Until(..) | Formula::DualUntil(..) => Term::reset(Term::Loc(self.index[f])),
            _ => unreachable!("negation normal form"),
        }
    }
}

fn bool_term(b: bool) -> Term {
    if b {
        Term::True
    } else {
        Term::False
    }
}

fn lower_ok(iv: &Interval) -> Term {
    match (iv.lower, iv.lower_closed) {
        (0, true) => Term::True,
        (l, true) => Term::Cmp(CmpOp::Ge, l),
        (l, false) => Term::Cmp(CmpOp::Gt, l),
    }
}

fn before_end(iv: &Interval) -> Term {
    match iv.upper {
        None => Term::True,
        Some(u) if iv.upper_closed => Term::Cmp(CmpOp::Le, u),
        Some(u) => Term::Cmp(CmpOp::Lt, u),
    }
}

fn past_end(iv: &Interval) -> Term {
    match iv.upper {
        None => Term::False,
        Some(u) if iv.upper_closed => Term::Cmp(CmpOp::Gt, u),
        Some(u) => Term::Cmp(CmpOp::Ge, u),
    }
}

fn inside(iv: &Interval) -> Term {
    Term::and(lower_ok(iv), before_end(iv))
}

fn outside(iv: &Interval) -> Term {
    let below = match (iv.lower, iv.lower_closed) {
        (0, true) => Term::False,
        (l, true) => Term::Cmp(CmpOp::Lt, l),
        (l, false) => Term::Cmp(CmpOp::Le, l),
    };
    Term::or(below, past_end(iv))
}
