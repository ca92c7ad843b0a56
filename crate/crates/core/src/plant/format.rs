use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use super::guard::{Constraint, Guard};
use super::sts::{Sts, Transition};
use crate::ocata::CmpOp;
use crate::parse_rational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error("missing `{0}` declaration")]
    Missing(&'static str),
}

fn err<T>(line: usize, msg: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError::Line { line, msg: msg.into() })
}

fn list(text: &str) -> Vec<String> {
    text.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
}

fn parse_guard(text: &str, clocks: &[String], line: usize) -> Result<Guard, FormatError> {
    let text = text.trim();
    if text.is_empty() || text == "true" {
        return Ok(Guard::top());
    }
    let mut constraints = Vec::new();
    for atom in text.split('&') {
        let atom = atom.trim();
        let pos = match atom.find(['<', '>', '=']) {
            Some(p) => p,
            None => return err(line, format!("bad constraint `{atom}`")),
        };
        let name = atom[..pos].trim();
        let rest = &atom[pos..];
        let (op, value) = [("<=", CmpOp::Le), (">=", CmpOp::Ge), ("==", CmpOp::Eq), ("<", CmpOp::Lt), (">", CmpOp::Gt), ("=", CmpOp::Eq)]
            .iter()
            .find_map(|(s, op)| rest.strip_prefix(s).map(|v| (*op, v)))
            .expect("operator found above");
        let clock = match clocks.iter().position(|c| c == name) {
            Some(c) => c,
            None => return err(line, format!("unknown clock `{name}`")),
        };
        let value = match parse_rational(value) {
            Some(v) if v >= crate::Q::from_integer(0) => v,
            _ => return err(line, format!("bad constant `{}`", value.trim())),
        };
        constraints.push(Constraint { clock, op, value });
    }
    Ok(Guard::new(constraints))
}

/// Parses the line-oriented STS format.
pub fn parse_sts(text: &str) -> Result<Sts, FormatError> {
    let mut controllable = BTreeSet::new();
    let mut environment = BTreeSet::new();
    let mut clocks: Vec<String> = Vec::new();
    let mut reads: Vec<String> = Vec::new();
    let mut locations: Vec<String> = Vec::new();
    let mut initial: Option<String> = None;
    let mut finals: Vec<String> = Vec::new();
    let mut raw: Vec<(usize, String, String, String, String, String)> = Vec::new();
    let mut saw_alphabet = false;
    for (n, line) in text.lines().enumerate() {
        let n = n + 1;
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (head, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        match head {
            "alphabet" => {
                saw_alphabet = true;
                for part in rest.split(';') {
                    let part = part.trim();
                    if part.is_empty() {
                        continue;
                    }
                    match part.split_once(':') {
                        Some((k, v)) if k.trim() == "C" => controllable.extend(list(v)),
                        Some((k, v)) if k.trim() == "E" => environment.extend(list(v)),
                        _ => return err(n, format!("expected `C:` or `E:` in `{part}`")),
                    }
                }
            }
            "clocks" => clocks = list(rest),
            "reads" => reads = list(rest),
            "locations" => locations = list(rest),
            "initial" => initial = Some(rest.trim().to_string()),
            "final" => finals = list(rest),
            _ => {
                let (body, target) = match line.rsplit_once("->") {
                    Some(p) => p,
                    None => return err(n, format!("unrecognised line `{line}`")),
                };
                let (source, label) = match body.split_once('-') {
                    Some(p) => p,
                    None => return err(n, "expected `src -action-> dst`"),
                };
                let (label, resets) = match label.split_once("/reset") {
                    Some((l, r)) => (l, r.to_string()),
                    None => (label, String::new()),
                };
                let (action, guard) = match label.split_once('[') {
                    Some((a, g)) => match g.trim_end().strip_suffix(']') {
                        Some(g) => (a, g.to_string()),
                        None => return err(n, "unclosed guard"),
                    },
                    None => (label, String::new()),
                };
                raw.push((n, source.trim().into(), action.trim().into(), guard, resets, target.trim().into()));
            }
        }
    }
    if !saw_alphabet {
        return Err(FormatError::Missing("alphabet"));
    }
    let initial = initial.ok_or(FormatError::Missing("initial"))?;
    let declared = !locations.is_empty();
    let intern = |name: &str, line: usize, locations: &mut Vec<String>| -> Result<usize, FormatError> {
        if let Some(i) = locations.iter().position(|l| l == name) {
            return Ok(i);
        }
        if declared || name.is_empty() {
            return err(line, format!("unknown location `{name}`"));
        }
        locations.push(name.to_string());
        Ok(locations.len() - 1)
    };
    let initial = intern(&initial, 0, &mut locations)?;
    let mut guard_clocks = clocks.clone();
    guard_clocks.extend(reads.iter().cloned());
    let mut transitions = Vec::new();
    for (n, src, action, guard, resets, dst) in raw {
        let source = intern(&src, n, &mut locations)?;
        let target = intern(&dst, n, &mut locations)?;
        let guard = parse_guard(&guard, &guard_clocks, n)?;
        let mut rs = Vec::new();
        for r in list(&resets) {
            match clocks.iter().position(|c| *c == r) {
                Some(i) => rs.push(i),
                None => return err(n, format!("cannot reset `{r}`")),
            }
        }
        if action.is_empty() {
            return err(n, "empty action");
        }
        transitions.push(Transition { source, action, guard, resets: rs, target });
    }
    let mut fs = BTreeSet::new();
    for f in finals {
        fs.insert(intern(&f, 0, &mut locations)?);
    }
    Ok(Sts { clocks, reads, locations, initial, finals: fs, transitions, controllable, environment })
}

/// Prints in the format accepted by [`parse_sts`].
pub fn print_sts(sts: &Sts) -> String {
    let join = |s: &BTreeSet<String>| s.iter().cloned().collect::<Vec<_>>().join(",");
    let mut out = String::new();
    let _ = writeln!(out, "alphabet C: {}; E: {}", join(&sts.controllable), join(&sts.environment));
    let _ = writeln!(out, "clocks {}", sts.clocks.join(","));
    if !sts.reads.is_empty() {
        let _ = writeln!(out, "reads {}", sts.reads.join(","));
    }
    let _ = writeln!(out, "locations {}", sts.locations.join(","));
    let _ = writeln!(out, "initial {}", sts.locations[sts.initial]);
    let finals: Vec<&str> = sts.finals.iter().map(|f| sts.locations[*f].as_str()).collect();
    let _ = writeln!(out, "final {}", finals.join(","));
    let names = sts.guard_clocks();
    for t in &sts.transitions {
        let _ = write!(out, "{} -{}", sts.locations[t.source], t.action);
        if !t.guard.constraints.is_empty() {
            let _ = write!(out, "[{}]", t.guard.display(&names));
        }
        if !t.resets.is_empty() {
            let r: Vec<&str> = t.resets.iter().map(|x| sts.clocks[*x].as_str()).collect();
            let _ = write!(out, "/reset {}", r.join(","));
        }
        let _ = writeln!(out, "-> {}", sts.locations[t.target]);
    }
    out
}

/// Graphviz rendering.
pub fn sts_to_dot(sts: &Sts) -> String {
    let mut out = String::from("digraph sts {\n  rankdir=LR;\n");
    for (i, l) in sts.locations.iter().enumerate() {
        let shape = if sts.finals.contains(&i) { "doublecircle" } else { "circle" };
        let _ = writeln!(out, "  n{i} [label=\"{l}\", shape={shape}];");
    }
    let _ = writeln!(out, "  start [shape=point];\n  start -> n{};", sts.initial);
    let names = sts.guard_clocks();
    for t in &sts.transitions {
        let mut label = format!("{}, {}", t.action, t.guard.display(&names));
        if !t.resets.is_empty() {
            let r: Vec<&str> = t.resets.iter().map(|x| sts.clocks[*x].as_str()).collect();
            let _ = write!(label, ", {{{}}}", r.join(","));
        }
        let style = if sts.controllable.contains(&t.action) { "solid" } else { "dashed" };
        let _ = writeln!(out, "  n{} -> n{} [label=\"{}\", style={}];", t.source, t.target, label, style);
    }
    out.push_str("}\n");
    out
}
