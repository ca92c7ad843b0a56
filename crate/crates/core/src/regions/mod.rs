//! Region words, node labels and the lifted successor relation over them.

mod game;
mod word;

pub use game::{joint_granularity, Configuration, Letter, Move, Step, SymbolicGame, Tuple, WordMoves};
pub use word::{ClockId, Entry, NodeLabel, RegionWord, Subject};
