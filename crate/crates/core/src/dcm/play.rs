use super::machine::ChannelMachine;
use crate::logic::TimedWord;
use crate::Q;

/// Which of the four encoding conditions a play meets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct PlayReport {
    /// Actions follow `NilC* s0 a0 s1 a1 ...` along the transition relation.
    pub c1: bool,
    /// States come without delay and channel actions at distinct times.
    pub c2: bool,
    /// Every read follows a write of the same message exactly one time unit earlier.
    pub c3: bool,
    /// Every write is read exactly one time unit later when the play lasts that long.
    pub c4: bool,
}

impl PlayReport {
    pub fn all(&self) -> bool {
        self.c1 && self.c2 && self.c3 && self.c4
    }
}

pub fn validate_play(s: &ChannelMachine, word: &TimedWord) -> PlayReport {
    let ev = word.events();
    let state = |l: &str| s.states.iter().position(|x| x == l);
    let channel = |l: &str| -> Option<(bool, usize)> {
        s.messages.iter().enumerate().find_map(|(m, name)| {
            if l == super::write_letter(name) {
                Some((true, m))
            } else if l == super::read_letter(name) {
                Some((false, m))
            } else {
                None
            }
        })
    };
    let start = ev.iter().take_while(|e| e.letter == "NilC").count();
    let body = &ev[start..];
    let mut c1 = body.first().is_none_or(|e| state(&e.letter) == Some(s.initial));
    let mut i = 0;
    while c1 && i + 1 < body.len() {
        let src = state(&body[i].letter);
        let op = channel(&body[i + 1].letter);
        let dst = body.get(i + 2).map(|e| state(&e.letter));
        c1 = match (src, op) {
            (Some(src), Some((w, m))) => s.outgoing(src).any(|(_, t)| {
                let same = t.op == if w { super::Op::Write(m) } else { super::Op::Read(m) };
                same && dst.is_none_or(|d| d == Some(t.target))
            }),
            _ => false,
        };
        i += 2;
    }
    let is_op = |k: usize| channel(&ev[k].letter).is_some();
    let mut c2 = true;
    for k in 0..ev.len() {
        if is_op(k) && k + 1 < ev.len() && state(&ev[k + 1].letter).is_some() && ev[k + 1].time != ev[k].time {
            c2 = false;
        }
        for j in k + 1..ev.len() {
            if is_op(k) && is_op(j) && ev[j].time == ev[k].time {
                c2 = false;
            }
        }
    }
    let one = Q::from_integer(1);
    let has = |write: bool, m: usize, t: Q| ev.iter().any(|e| channel(&e.letter) == Some((write, m)) && e.time == t);
    let last = ev.last().map(|e| e.time);
    let c3 = ev.iter().all(|e| match channel(&e.letter) {
        Some((false, m)) => has(true, m, e.time - one),
        _ => true,
    });
    let c4 = ev.iter().all(|e| match channel(&e.letter) {
        Some((true, m)) => last.is_none_or(|l| l < e.time + one) || has(false, m, e.time + one),
        _ => true,
    });
    PlayReport { c1, c2, c3, c4 }
}
