//! Ground truth that does not go through the engines: breadth-first search
//! over instantaneous descriptions, CYK on a Chomsky normal form, and
//! bounded enumeration of a grammar's language.

mod brute;
mod cnf;
mod cyk;
mod enumerate;

pub use brute::{brute_force_accepts, InstantaneousDescription, OracleVerdict};
pub use cnf::to_cnf;
pub use cyk::{cyk_recognize, Cyk};
pub use enumerate::{enumerate_language, MAX_ENUM_LEN};
