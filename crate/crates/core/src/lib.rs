//! Memoizing simulators for two-way pushdown automata.
//!
//! An [`model::Automaton`] is run on a tape by one of four engines: a plain
//! recursive interpreter and a memoizing simulator for deterministic
//! automata, and the same pair for nondeterministic ones. The memoizing
//! simulators run in linear and cubic time in the number of surface
//! configurations. Context-free grammars are compiled to one-way
//! nondeterministic automata and recognized with the same engines.

pub mod bench;
pub mod confsets;
pub mod engines;
pub mod error;
pub mod grammar;
pub mod metrics;
pub mod model;
pub mod oracle;
pub mod zoo;

pub use engines::{run, Engine, Outcome, RunOptions, Verdict};
pub use error::{Error, Result};
pub use metrics::Metrics;
