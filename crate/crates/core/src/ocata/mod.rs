//! One-clock alternating timed automata and their classical and interval semantics.

mod automaton;
mod bound;
mod classical;
mod interval;
mod term;

pub use automaton::{translate, Ocata, TranslateError};
pub use bound::merge_bound;
pub use classical::{accepts_classical, initial_classical, step_classical, ClassicalConfig};
pub use interval::{accepts_interval, step_interval, step_interval_with, IntervalConfig, StepOptions};
pub use term::{CmpOp, Model, Term};
