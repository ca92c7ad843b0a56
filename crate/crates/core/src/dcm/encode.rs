use std::collections::BTreeSet;

use super::machine::{ChannelMachine, DcmError, Op};
use crate::logic::{Formula, Interval};
use crate::plant::{parse_sts, Sts};

fn atom(s: &str) -> Formula {
    Formula::atom(s)
}

fn any<'a>(names: impl IntoIterator<Item = &'a String>) -> Formula {
    Formula::any(names.into_iter().map(|n| atom(n)))
}

fn wf(f: Formula) -> Formula {
    Formula::weak_finally(Interval::full(), f)
}

fn wf_in(i: Interval, f: Formula) -> Formula {
    Formula::weak_finally(i, f)
}

fn x(f: Formula) -> Formula {
    Formula::next(Interval::full(), f)
}

fn wu(a: Formula, b: Formula) -> Formula {
    Formula::weak_until(a, b, Interval::full())
}

fn not(f: Formula) -> Formula {
    Formula::not(f)
}

fn and(a: Formula, b: Formula) -> Formula {
    Formula::and(a, b)
}

fn iv(lower: u32, upper: Option<u32>, lc: bool, uc: bool) -> Interval {
    Interval::new(lower, upper, lc, uc).expect("well-formed interval")
}

/// `[0,1]`, `[0,1)`, `[1,inf)`, `(1,inf)` and `(0,inf)`.
fn le1() -> Interval {
    iv(0, Some(1), true, true)
}
fn lt1() -> Interval {
    iv(0, Some(1), true, false)
}
fn ge1() -> Interval {
    iv(1, None, true, false)
}
fn gt1() -> Interval {
    iv(1, None, false, false)
}
fn gt0() -> Interval {
    iv(0, None, false, false)
}

/// Formulas of the finite-word realisability reduction for one machine.
#[derive(Debug, Clone)]
pub struct OmegaEncoding {
    pub controllable: BTreeSet<String>,
    pub environment: BTreeSet<String>,
    pub phi: Vec<Formula>,
    pub psi: Vec<Formula>,
    pub psi_left: Formula,
    pub psi_right: Formula,
    pub psi_fst: Formula,
    pub theta0: Formula,
    pub theta1: Formula,
    pub big_phi: Formula,
    pub big_psi: Formula,
    pub omega: Formula,
    pub omega_prime: Formula,
}

struct Names {
    states: Vec<String>,
    writes: Vec<String>,
    reads: Vec<String>,
}

impl Names {
    fn of(s: &ChannelMachine) -> Names {
        Names {
            states: s.states.clone(),
            writes: s.messages.iter().map(|m| super::write_letter(m)).collect(),
            reads: s.messages.iter().map(|m| super::read_letter(m)).collect(),
        }
    }

    fn phi_w(&self) -> Formula {
        any(&self.writes)
    }

    fn phi_wr(&self) -> Formula {
        any(self.writes.iter().chain(&self.reads))
    }
}

/// `⋁_m wF(w_m ∧ wF[0,1](r_m ∧ X check) ∧ wF[1,∞)(r_m ∧ X check))`.
fn matched(n: &Names, check: &str) -> Formula {
    Formula::any(n.writes.iter().zip(&n.reads).map(|(w, r)| {
        let read_checked = and(atom(r), x(atom(check)));
        wf(Formula::all([atom(w), wf_in(le1(), read_checked.clone()), wf_in(ge1(), read_checked)]))
    }))
}

fn first_after(n: &Names, theta0: &Formula, theta1: &Formula, late: Interval) -> Formula {
    wf(Formula::all([n.phi_w(), wf_in(lt1(), theta1.clone()), wf_in(late, theta0.clone())]))
}

pub fn encode_omega(s: &ChannelMachine) -> OmegaEncoding {
    let n = Names::of(s);
    let env_extra = ["CheckL", "CheckR", "Lose", "NilE"];
    let environment: BTreeSet<String> = n.states.iter().cloned().chain(env_extra.iter().map(|e| e.to_string())).collect();
    let controllable: BTreeSet<String> =
        n.writes.iter().chain(&n.reads).cloned().chain(["Win", "NilC"].iter().map(|e| e.to_string())).collect();
    let phi_e = any(&environment);
    let phi_c = any(&controllable);
    let phi_s = any(&n.states);
    let phi_wr = n.phi_wr();
    let s0 = atom(&s.states[s.initial]);
    let halt = atom(&s.states[s.halt]);
    let ended = Formula::or(halt.clone(), Formula::any(["CheckL", "CheckR", "Lose", "Win"].iter().map(|a| atom(a))));

    let phi1 = not(wu(atom("NilC"), and(phi_e.clone(), not(s0))));
    let psi1 = not(wu(atom("NilC"), and(phi_c.clone(), not(atom("NilC")))));
    let phi2 = not(wf(and(phi_e.clone(), Formula::next(le1(), phi_e.clone()))));
    let psi2 = not(wf(and(phi_c.clone(), Formula::next(le1(), phi_c.clone()))));
    let phi3 = not(wf(and(phi_wr.clone(), x(atom("Win")))));
    let psi3 = not(wf(Formula::all([phi_s.clone(), not(halt.clone()), x(atom("Lose"))])));

    let mut phi4 = Vec::new();
    for t in &s.transitions {
        let src = atom(&s.states[t.source]);
        let a = atom(&s.op_letter(t.op));
        for b in &environment {
            if *b == s.states[t.target] || b == "CheckL" || b == "CheckR" {
                continue;
            }
            phi4.push(not(wf(Formula::all([src.clone(), x(a.clone()), x(x(atom(b)))]))));
        }
    }
    let phi4 = Formula::all(phi4);
    let mut psi4 = Vec::new();
    for (i, st) in s.states.iter().enumerate() {
        if i == s.halt {
            continue;
        }
        for mi in 0..s.messages.len() {
            for op in [Op::Write(mi), Op::Read(mi)] {
                if !s.outgoing(i).any(|(_, t)| t.op == op) {
                    psi4.push(not(wf(and(atom(st), x(atom(&s.op_letter(op)))))));
                }
            }
        }
    }
    let psi4 = Formula::all(psi4);

    let phi5 = not(wf(and(ended.clone(), Formula::finally(Interval::full(), and(phi_e.clone(), not(atom("NilE")))))));
    let psi5 = not(wf(and(ended, Formula::finally(Interval::full(), and(phi_c, not(atom("NilC")))))));
    let phi6 = not(wf(and(phi_wr.clone(), Formula::next(gt0(), phi_e))));
    let psi6 = Formula::weak_globally(
        Interval::full(),
        Formula::implies(
            Formula::all([phi_s.clone(), not(halt.clone()), x(phi_wr.clone())]),
            Formula::next(gt0(), phi_wr.clone()),
        ),
    );

    let psi_left = matched(&n, "CheckL");
    let theta0 = and(phi_wr.clone(), x(atom("CheckR")));
    let theta1 = Formula::all([phi_wr, x(phi_s), x(x(theta0.clone()))]);
    let psi_fst = first_after(&n, &theta0, &theta1, ge1());
    let psi_right = and(not(first_after(&n, &theta0, &theta1, gt1())), psi_left.rename_atom("CheckL", "CheckR"));
    let phi7 = Formula::all(n.writes.iter().map(|w| not(wf(and(atom(w), x(atom("CheckL")))))));
    let psi7 = and(
        Formula::implies(wf(atom("CheckL")), psi_left.clone()),
        Formula::implies(and(wf(atom("CheckR")), psi_fst.clone()), psi_right.clone()),
    );

    let phi = vec![phi1, phi2, phi3, phi4, phi5, phi6, phi7];
    let psi = vec![psi1, psi2, psi3, psi4, psi5, psi6, psi7];
    let big_phi = Formula::all(phi.iter().cloned());
    let big_psi = Formula::all(psi.iter().cloned());
    let omega = Formula::implies(big_phi.clone(), big_psi.clone());
    let omega_prime = Formula::implies(big_phi.clone(), and(big_psi.clone(), Formula::globally(Interval::full(), not(halt))));
    OmegaEncoding {
        controllable,
        environment,
        phi,
        psi,
        psi_left,
        psi_right,
        psi_fst,
        theta0,
        theta1,
        big_phi,
        big_psi,
        omega,
        omega_prime,
    }
}

/// Plant of the bounded-resources reduction with its two specifications.
#[derive(Debug, Clone)]
pub struct PlantEncoding {
    pub plant: Sts,
    pub psi0: Formula,
    pub psi0_prime: Formula,
    pub theta0: Formula,
    pub theta1: Formula,
    pub theta0_left: Formula,
}

/// Name of the intermediate location after transition `i`.
pub fn transition_location(i: usize) -> String {
    format!("q_d{i}")
}

pub fn encode_plant(s: &ChannelMachine) -> Result<PlantEncoding, DcmError> {
    if s.initial == s.halt || !s.outgoing(s.initial).any(|(_, t)| matches!(t.op, Op::Write(_))) {
        return Err(DcmError::InitialNotWriting);
    }
    let n = Names::of(s);
    let mut locations = n.states.clone();
    locations.extend((0..s.transitions.len()).map(transition_location));
    let halt = &s.states[s.halt];
    let mut text = format!(
        "alphabet C: {}; E: CheckL,CheckR,Nil,Halt,End\nclocks x\nlocations {}\ninitial {}\nfinal {}\n",
        n.writes.iter().chain(&n.reads).cloned().collect::<Vec<_>>().join(","),
        locations.join(","),
        s.states[s.initial],
        halt,
    );
    for (i, t) in s.transitions.iter().enumerate() {
        let q = transition_location(i);
        text.push_str(&format!("{} -{}[x>0]/reset x-> {q}\n", s.states[t.source], s.op_letter(t.op)));
        let close = if t.target == s.halt { "Halt" } else { "Nil" };
        text.push_str(&format!("{q} -{close}[x=0]/reset x-> {}\n", s.states[t.target]));
        if matches!(t.op, Op::Read(_)) {
            text.push_str(&format!("{q} -CheckL[x=0]/reset x-> {halt}\n"));
        }
        text.push_str(&format!("{q} -CheckR[x=0]/reset x-> {halt}\n"));
    }
    text.push_str(&format!("{halt} -End/reset x-> {halt}\n"));
    let plant = parse_sts(&text).expect("generated plant parses");

    let phi_wr = n.phi_wr();
    let theta0 = and(phi_wr.clone(), wu(phi_wr.clone(), atom("CheckR")));
    let theta1 = and(phi_wr.clone(), wu(phi_wr, and(atom("Nil"), wu(atom("Nil"), theta0.clone()))));
    let theta0_left = theta0.rename_atom("CheckR", "CheckL");
    let psi_left = matched(&n, "CheckL");
    let psi_fst = first_after(&n, &theta0, &theta1, ge1());
    let psi_right = and(not(first_after(&n, &theta0, &theta1, gt1())), psi_left.rename_atom("CheckL", "CheckR"));
    let psi0_prime = Formula::any([psi_left, and(wf(atom("CheckR")), not(psi_fst)), psi_right]);
    let psi0 = Formula::or(psi0_prime.clone(), wf(atom("Halt")));
    Ok(PlantEncoding { plant, psi0, psi0_prime, theta0, theta1, theta0_left })
}
