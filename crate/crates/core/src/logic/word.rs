use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::rational::fmt_q;
use crate::{parse_rational, Q};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("line {line}: expected `letter@time`, got `{text}`")]
    Syntax { line: usize, text: String },
    #[error("line {line}: bad timestamp `{text}`")]
    Timestamp { line: usize, text: String },
    #[error("timestamps must be non-negative and non-decreasing (position {0})")]
    Order(usize),
    #[error("letter `{0}` is not in the alphabet")]
    UnknownLetter(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Event {
    pub letter: String,
    pub time: Q,
}

/// Finite timed word with non-decreasing rational timestamps.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TimedWord {
    events: Vec<Event>,
}

impl TimedWord {
    pub fn new(events: Vec<Event>) -> Result<Self, WordError> {
        let mut prev = Q::from_integer(0);
        for (i, e) in events.iter().enumerate() {
            if e.time < prev {
                return Err(WordError::Order(i + 1));
            }
            prev = e.time;
        }
        Ok(TimedWord { events })
    }

    pub fn empty() -> Self {
        TimedWord::default()
    }

    pub fn from_pairs<S: Into<String>>(pairs: impl IntoIterator<Item = (S, Q)>) -> Result<Self, WordError> {
        TimedWord::new(
            pairs
                .into_iter()
                .map(|(l, t)| Event { letter: l.into(), time: t })
                .collect(),
        )
    }

    /// Parses one `letter@time` per line; blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self, WordError> {
        let mut events = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (letter, time) = line.split_once('@').ok_or_else(|| WordError::Syntax {
                line: n + 1,
                text: line.to_string(),
            })?;
            let letter = letter.trim();
            if letter.is_empty() {
                return Err(WordError::Syntax { line: n + 1, text: line.to_string() });
            }
            let time = parse_rational(time.trim()).ok_or_else(|| WordError::Timestamp {
                line: n + 1,
                text: time.trim().to_string(),
            })?;
            events.push(Event { letter: letter.to_string(), time });
        }
        TimedWord::new(events)
    }

    pub fn check_alphabet(&self, alphabet: &BTreeSet<String>) -> Result<(), WordError> {
        match self.events.iter().find(|e| !alphabet.contains(&e.letter)) {
            Some(e) => Err(WordError::UnknownLetter(e.letter.clone())),
            None => Ok(()),
        }
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn push(&mut self, letter: impl Into<String>, time: Q) -> Result<(), WordError> {
        if self.events.last().map_or(time < Q::from_integer(0), |e| time < e.time) {
            return Err(WordError::Order(self.events.len() + 1));
        }
        self.events.push(Event { letter: letter.into(), time });
        Ok(())
    }

    pub fn prefix(&self, len: usize) -> TimedWord {
        TimedWord { events: self.events[..len.min(self.events.len())].to_vec() }
    }
}

impl fmt::Display for TimedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.events {
            writeln!(f, "{}@{}", e.letter, fmt_q(&e.time))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let w = TimedWord::parse("# demo\na@0\nb@1/2\nb@0.75\n").unwrap();
        assert_eq!(w.len(), 3);
        assert_eq!(w.events()[2].time, Q::new(3, 4));
        assert_eq!(TimedWord::parse(&w.to_string()).unwrap(), w);
    }

    #[test]
    fn rejects_decreasing() {
        assert_eq!(TimedWord::parse("a@1\nb@1/2"), Err(WordError::Order(2)));
        assert!(matches!(TimedWord::parse("a1"), Err(WordError::Syntax { .. })));
    }
}
