use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Op {
    Write(usize),
    Read(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DcmTransition {
    pub source: usize,
    pub op: Op,
    pub target: usize,
}

/// Deterministic channel machine: a finite automaton with one unbounded FIFO channel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChannelMachine {
    pub states: Vec<String>,
    pub initial: usize,
    pub halt: usize,
    pub messages: Vec<String>,
    pub transitions: Vec<DcmTransition>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DcmError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("state `{0}` has two transitions on the same action")]
    Nondeterministic(String),
    #[error("state `{0}` writes but has other outgoing transitions")]
    WriteNotAlone(String),
    #[error("halting state `{0}` has outgoing transitions")]
    HaltNotFinal(String),
    #[error("name `{0}` is reserved or used twice")]
    Name(String),
    #[error("the initial state needs an outgoing write")]
    InitialNotWriting,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DcmOutcome {
    Halted(usize),
    Blocked(usize, usize),
    RunningBeyondBound,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Simulation {
    pub outcome: DcmOutcome,
    /// Largest number of messages in the channel.
    pub max_occupancy: usize,
    /// Transitions taken, in order.
    pub steps: Vec<usize>,
}

/// Letters used by the encoders besides the states and channel actions.
pub const RESERVED: [&str; 9] = ["CheckL", "CheckR", "Lose", "NilE", "Win", "NilC", "Nil", "Halt", "End"];

pub fn write_letter(m: &str) -> String {
    format!("w_{m}")
}

pub fn read_letter(m: &str) -> String {
    format!("r_{m}")
}

impl ChannelMachine {
    pub fn new(
        states: Vec<String>,
        initial: usize,
        halt: usize,
        messages: Vec<String>,
        transitions: Vec<DcmTransition>,
    ) -> Result<ChannelMachine, DcmError> {
        let mut names = BTreeSet::new();
        for n in states.iter().chain(&messages) {
            let clash = RESERVED.contains(&n.as_str()) || n.starts_with("w_") || n.starts_with("r_");
            if clash || !names.insert(n.clone()) {
                return Err(DcmError::Name(n.clone()));
            }
        }
        for (i, t) in transitions.iter().enumerate() {
            if t.source == halt {
                return Err(DcmError::HaltNotFinal(states[halt].clone()));
            }
            for u in &transitions[i + 1..] {
                if u.source != t.source {
                    continue;
                }
                if u.op == t.op {
                    return Err(DcmError::Nondeterministic(states[t.source].clone()));
                }
                if matches!(t.op, Op::Write(_)) || matches!(u.op, Op::Write(_)) {
                    return Err(DcmError::WriteNotAlone(states[t.source].clone()));
                }
            }
        }
        Ok(ChannelMachine { states, initial, halt, messages, transitions })
    }

    pub fn op_letter(&self, op: Op) -> String {
        match op {
            Op::Write(m) => write_letter(&self.messages[m]),
            Op::Read(m) => read_letter(&self.messages[m]),
        }
    }

    pub fn outgoing(&self, s: usize) -> impl Iterator<Item = (usize, &DcmTransition)> {
        self.transitions.iter().enumerate().filter(move |(_, t)| t.source == s)
    }

    /// Runs the unique computation from the initial state and empty channel.
    pub fn simulate(&self, max_steps: usize) -> Simulation {
        let mut state = self.initial;
        let mut channel: VecDeque<usize> = VecDeque::new();
        let mut steps = Vec::new();
        let mut max_occupancy = 0;
        loop {
            if state == self.halt {
                return Simulation { outcome: DcmOutcome::Halted(steps.len()), max_occupancy, steps };
            }
            if steps.len() >= max_steps {
                return Simulation { outcome: DcmOutcome::RunningBeyondBound, max_occupancy, steps };
            }
            let next = self.outgoing(state).find(|(_, t)| match t.op {
                Op::Write(_) => true,
                Op::Read(m) => channel.front() == Some(&m),
            });
            let Some((i, t)) = next else {
                return Simulation { outcome: DcmOutcome::Blocked(state, steps.len()), max_occupancy, steps };
            };
            match t.op {
                Op::Write(m) => channel.push_back(m),
                Op::Read(_) => {
                    channel.pop_front();
                }
            }
            max_occupancy = max_occupancy.max(channel.len());
            steps.push(i);
            state = t.target;
        }
    }
}

/// Parses `states ..`, `initial s`, `halt s`, `messages ..` and `s -m!-> t` / `s -m?-> t`
/// lines; `#` starts a comment.
pub fn parse_dcm(text: &str) -> Result<ChannelMachine, DcmError> {
    let mut states: Vec<String> = Vec::new();
    let mut messages: Vec<String> = Vec::new();
    let mut initial = None;
    let mut halt = None;
    let mut edges = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        let err = |msg: &str| DcmError::Syntax { line: n + 1, msg: msg.to_string() };
        if line.is_empty() {
            continue;
        }
        let (head, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let words = || rest.split(|c: char| c.is_whitespace() || c == ',').filter(|w| !w.is_empty()).map(String::from);
        match head {
            "states" => states.extend(words()),
            "messages" => messages.extend(words()),
            "initial" => initial = Some(rest.trim().to_string()),
            "halt" => halt = Some(rest.trim().to_string()),
            _ => {
                let (src, tail) = line.split_once(" -").ok_or_else(|| err("expected `s -m!-> t`"))?;
                let (act, dst) = tail.split_once("->").ok_or_else(|| err("expected `->`"))?;
                let act = act.trim();
                let (m, write) = match (act.strip_suffix('!'), act.strip_suffix('?')) {
                    (Some(m), _) => (m, true),
                    (_, Some(m)) => (m, false),
                    _ => return Err(err("action must end in `!` or `?`")),
                };
                edges.push((n + 1, src.trim().to_string(), m.to_string(), write, dst.trim().to_string()));
            }
        }
    }
    let find = |v: &[String], name: &str, line: usize| {
        v.iter().position(|s| s == name).ok_or_else(|| DcmError::Syntax { line, msg: format!("unknown name `{name}`") })
    };
    let initial = find(&states, initial.as_deref().unwrap_or(""), 0)?;
    let halt = find(&states, halt.as_deref().unwrap_or(""), 0)?;
    let mut transitions = Vec::new();
    for (line, s, m, write, t) in edges {
        let m = find(&messages, &m, line)?;
        transitions.push(DcmTransition {
            source: find(&states, &s, line)?,
            op: if write { Op::Write(m) } else { Op::Read(m) },
            target: find(&states, &t, line)?,
        });
    }
    ChannelMachine::new(states, initial, halt, messages, transitions)
}

impl fmt::Display for ChannelMachine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "states {}", self.states.join(" "))?;
        writeln!(f, "initial {}", self.states[self.initial])?;
        writeln!(f, "halt {}", self.states[self.halt])?;
        writeln!(f, "messages {}", self.messages.join(" "))?;
        for t in &self.transitions {
            let (m, c) = match t.op {
                Op::Write(m) => (m, '!'),
                Op::Read(m) => (m, '?'),
            };
            writeln!(f, "{} -{}{}-> {}", self.states[t.source], self.messages[m], c, self.states[t.target])?;
        }
        Ok(())
    }
}
