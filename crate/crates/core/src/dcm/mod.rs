//! Deterministic channel machines, their simulator and the reduction encoders.
mod encode;
mod machine;
mod play;

pub use encode::{encode_omega, encode_plant, transition_location, OmegaEncoding, PlantEncoding};
pub use machine::{
    parse_dcm, read_letter, write_letter, ChannelMachine, DcmError, DcmOutcome, DcmTransition, Op, Simulation, RESERVED,
};
pub use play::{validate_play, PlayReport};
