//! Guards, granularities and symbolic transition systems (plants and controllers).

mod examples;
mod format;
mod guard;
mod sts;

pub use examples::{example_plant, trivial_plant};
pub use format::{parse_sts, print_sts, sts_to_dot, FormatError};
pub use guard::{atomic_guards, Constraint, Granularity, Guard, TimeInterval};
pub use sts::{Enabled, Sts, StsError, Transition, Valuation};
