//! The four execution engines and the top-level [`run`] wrapper.
//!
//! | engine | automata | memo table | result per call |
//! |--------|----------|------------|-----------------|
//! | `IntD` | deterministic | active marks (optional) | one terminator |
//! | `SimD` | deterministic | terminators | one terminator |
//! | `IntN` | any | active marks | terminator set |
//! | `SimN` | any | terminator sets | terminator set |

mod det;
mod nondet;
pub mod trace;

use std::fmt;
use std::str::FromStr;

pub use det::{int_d, sim_d};
pub use nondet::{int_n, sim_n};
pub use trace::{format_event, EventKind, NoTrace, TraceEvent, Tracer, VecTracer, WriteTracer};

use crate::confsets::ConfTable;
use crate::error::{Error, Result};
use crate::metrics::{Metrics, Stopwatch};
use crate::model::{Automaton, Configuration, Machine, Tape};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Engine {
    IntD,
    SimD,
    IntN,
    SimN,
}

impl Engine {
    pub const ALL: [Engine; 4] = [Engine::IntD, Engine::SimD, Engine::IntN, Engine::SimN];

    pub fn as_str(self) -> &'static str {
        match self {
            Engine::IntD => "intd",
            Engine::SimD => "simd",
            Engine::IntN => "intn",
            Engine::SimN => "simn",
        }
    }

    pub fn is_deterministic(self) -> bool {
        matches!(self, Engine::IntD | Engine::SimD)
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Engine {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "intd" => Ok(Engine::IntD),
            "simd" => Ok(Engine::SimD),
            "intn" => Ok(Engine::IntN),
            "simn" => Ok(Engine::SimN),
            other => Err(format!("unknown engine `{other}` (expected intd, simd, intn or simn)")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub engine: Engine,
    /// Limit on engine calls.
    pub max_steps: u64,
    /// Limit on active frames; `None` means `n_conf + 1`.
    pub max_depth: Option<u64>,
    /// Run the deterministic engines without loop detection.
    pub faithful: bool,
    /// Require an empty stack and every head on `>` when accepting.
    pub strict_accept: bool,
    /// Shuffle terminator sets before iterating them in push steps.
    pub shuffle_seed: Option<u64>,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            engine: Engine::SimN,
            max_steps: 100_000_000,
            max_depth: None,
            faithful: false,
            strict_accept: false,
            shuffle_seed: None,
        }
    }
}

impl RunOptions {
    pub fn new(engine: Engine) -> Self {
        RunOptions { engine, ..Default::default() }
    }

    pub(crate) fn depth_limit(&self, n_conf: usize) -> u64 {
        self.max_depth.unwrap_or(n_conf as u64 + 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BudgetKind {
    Steps,
    Depth,
}

/// How an engine call ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Control<T> {
    /// The call returned its terminator(s).
    Return(T),
    /// Accept was reached at `at`, with `pending_pushes` pushed symbols still on the stack.
    Accepted { at: usize, pending_pushes: usize },
    Halted,
    NonTerminating(usize),
    BudgetExceeded(BudgetKind),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RejectReason {
    Halt,
    /// Every branch ended without accepting.
    Exhausted,
    /// The initial configuration's region terminated by popping.
    PoppedBottom,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Accepted,
    Rejected(RejectReason),
    /// Carries the configuration that recurred while still active.
    NonTerminating(Configuration),
    BudgetExceeded(BudgetKind),
}

impl Verdict {
    pub fn is_accepted(&self) -> bool {
        matches!(self, Verdict::Accepted)
    }

    pub fn is_terminating(&self) -> bool {
        matches!(self, Verdict::Accepted | Verdict::Rejected(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Accepted => "Accepted",
            Verdict::Rejected(_) => "Rejected",
            Verdict::NonTerminating(_) => "NonTerminating",
            Verdict::BudgetExceeded(_) => "BudgetExceeded",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub verdict: Verdict,
    pub metrics: Metrics,
    pub n_conf: usize,
}

/// Runs `aut` on `input` with the engine selected in `opts`.
pub fn run<S: AsRef<str>>(aut: &Automaton, input: &[S], opts: &RunOptions) -> Result<Outcome> {
    run_traced(aut, input, opts, &mut NoTrace)
}

pub fn run_traced<S: AsRef<str>, T: Tracer + ?Sized>(
    aut: &Automaton,
    input: &[S],
    opts: &RunOptions,
    tracer: &mut T,
) -> Result<Outcome> {
    if opts.engine.is_deterministic() && !aut.is_deterministic() {
        return Err(Error::EngineMismatch { engine: opts.engine.as_str() });
    }
    let tape = Tape::new(aut, input)?;
    let m = Machine::new(aut, &tape);
    let start = m.index(&m.initial());
    let mut metrics = Metrics::default();
    let began = Stopwatch::start();
    let control = match opts.engine {
        Engine::IntD => int_d(&m, start, opts, &mut metrics, tracer)?.map(|_| ()),
        Engine::SimD => {
            let mut table = ConfTable::new(m.n_conf());
            sim_d(&m, start, &mut table, opts, &mut metrics, tracer)?.map(|_| ())
        }
        Engine::IntN => {
            let mut table = ConfTable::new(m.n_conf());
            int_n(&m, start, &mut table, opts, &mut metrics, tracer)?.map(|_| ())
        }
        Engine::SimN => {
            let mut table = ConfTable::new(m.n_conf());
            sim_n(&m, start, &mut table, opts, &mut metrics, tracer)?.map(|_| ())
        }
    };
    metrics.wall_time = began.elapsed();
    let verdict = match control {
        Control::Accepted { at, pending_pushes } => {
            if opts.strict_accept && (pending_pushes > 0 || !m.at_accepting_position(at)) {
                return Err(Error::AcceptInvalid(m.describe(at)));
            }
            Verdict::Accepted
        }
        Control::Return(()) if opts.engine.is_deterministic() => Verdict::Rejected(RejectReason::PoppedBottom),
        Control::Return(()) => Verdict::Rejected(RejectReason::Exhausted),
        Control::Halted => Verdict::Rejected(RejectReason::Halt),
        Control::NonTerminating(c) => Verdict::NonTerminating(m.decode(c)),
        Control::BudgetExceeded(kind) => Verdict::BudgetExceeded(kind),
    };
    Ok(Outcome { verdict, metrics, n_conf: m.n_conf() })
}

impl<T> Control<T> {
    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Control<U> {
        match self {
            Control::Return(t) => Control::Return(f(t)),
            Control::Accepted { at, pending_pushes } => Control::Accepted { at, pending_pushes },
            Control::Halted => Control::Halted,
            Control::NonTerminating(c) => Control::NonTerminating(c),
            Control::BudgetExceeded(k) => Control::BudgetExceeded(k),
        }
    }
}
