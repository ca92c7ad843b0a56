//! MITL/MTL formulas over finite timed words.

mod eval;
mod formula;
mod fragment;
mod interval;
mod nnf;
mod parse;
mod word;

pub use eval::{evaluate, satisfaction_vector};
pub use formula::Formula;
pub use fragment::{classify_fragment, FragmentReport};
pub use interval::{Interval, IntervalError};
pub(crate) use nnf::is_nnf;
pub use nnf::to_nnf;
pub use parse::{parse_formula, parse_formula_with, ParseError};
pub use word::{Event, TimedWord, WordError};
