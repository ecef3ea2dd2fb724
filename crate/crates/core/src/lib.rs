pub mod error;
pub mod portrait;
pub mod gf2;
pub mod subgroup;
pub mod pattern;
pub mod parity;
pub mod harness;
pub mod cli;
