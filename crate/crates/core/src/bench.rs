//! Job-scheduling benchmark: jobs arrive at least one time unit apart and must be
//! assigned to one of `n` machines within one time unit; a machine stays busy for `T`.

use crate::logic::{Formula, Interval};
use crate::plant::{parse_sts, Granularity, Sts};

pub fn machine(i: usize) -> String {
    format!("assign{i}")
}

/// Plant with clock `y` since the last job. A job still unassigned after one time unit
/// may be followed by another, which moves to the final `late` location.
pub fn scheduling_plant(machines: usize) -> Sts {
    let names: Vec<String> = (1..=machines).map(machine).collect();
    let mut text = format!("alphabet C: {}; E: job\nclocks y\nlocations idle,busy,late\ninitial idle\nfinal idle,late\n", names.join(","));
    text.push_str("idle -job[y>=1]/reset y-> busy\n");
    for n in &names {
        text.push_str(&format!("busy -{n}[y<=1]-> idle\n"));
    }
    text.push_str("busy -job[y>1]/reset y-> late\n");
    text.push_str("late -job[y>=1]/reset y-> late\n");
    parse_sts(&text).expect("scheduling plant parses")
}

/// Every job is assigned within one time unit, and no machine is assigned twice
/// within `duration` time units.
pub fn scheduling_spec(machines: usize, duration: u32) -> Formula {
    let assigned = Formula::any((1..=machines).map(|i| Formula::atom(&machine(i))));
    let response = Formula::weak_globally(
        Interval::full(),
        Formula::implies(Formula::atom("job"), Formula::weak_finally(Interval::closed(0, 1), assigned)),
    );
    let exclusive = (1..=machines).map(|i| {
        let a = Formula::atom(&machine(i));
        let window = Interval::new(0, Some(duration), true, false).expect("duration is positive");
        Formula::weak_globally(Interval::full(), Formula::implies(a.clone(), Formula::not(Formula::finally(window, a))))
    });
    Formula::all(std::iter::once(response).chain(exclusive))
}

/// Instance `(T, n, k)`: plant and formula for `n` machines busy for `T`, with a
/// controller of `k` clocks at precision `(1, T + 1)`.
pub fn scheduling_instance(duration: u32, machines: usize, clocks: usize) -> (Sts, Formula, Granularity) {
    let mu = Granularity { clocks: (1..=clocks).map(|i| format!("z{i}")).collect(), m: 1, k: duration + 1 };
    (scheduling_plant(machines), scheduling_spec(machines, duration), mu)
}

/// The six instances of the desk-scale table with their expected realisability.
pub const TABLE: [((u32, usize, usize), bool); 6] = [
    ((1, 1, 0), true),
    ((1, 1, 1), true),
    ((2, 2, 1), true),
    ((2, 1, 0), false),
    ((2, 1, 1), false),
    ((3, 2, 1), false),
];
