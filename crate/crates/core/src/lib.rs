//! Bounded-resources reactive synthesis for Metric Interval Temporal Logic
//! over finite timed words.
//!
//! The crate is organised bottom-up:
//!
//! * [`logic`]: formulas, parsing, negation normal form, fragments and the
//!   reference pointwise evaluator.
//! * [`ocata`]: one-clock alternating timed automata, the formula
//!   translation, classical and interval semantics.
//! * [`plant`]: guards, valuations, granularities and symbolic transition
//!   systems (plants and controllers).
//! * [`regions`]: region words, node labels and the lifted successor
//!   relation.
//! * [`synth`]: game-tree construction, solving, controller extraction and
//!   bounded closed-loop verification.
//! * [`dcm`]: deterministic channel machines and their reduction encoders.
//! * [`bench`]: the job-scheduling benchmark generator.

pub mod bench;
pub mod dcm;
pub mod logic;
pub mod ocata;
pub mod plant;
pub mod regions;
pub mod synth;

pub mod grid;
mod rational;

pub use rational::{parse_rational, Q};
