//! Interpreter and memoizing simulator for deterministic automata.
//!
//! Both run the same dispatch: push computes the terminator of the pushed
//! configuration, then continues at `follow(c, d)`; op continues at
//! `next(c)`; pop returns `c` itself; halt and accept stop the run. The
//! recursion is kept on an explicit frame stack.

use super::trace::{EventKind, TraceEvent, Tracer};
use super::{BudgetKind, Control, RunOptions};
use crate::confsets::{ConfTable, Entry};
use crate::error::{Error, Result};
use crate::metrics::Metrics;
use crate::model::{Action, Machine};

#[derive(Clone, Copy)]
enum Stage {
    /// Waiting for the terminator of `next(c)` after a push.
    Inner,
    /// Waiting for the terminator of `follow(c, d)`.
    Outer,
    /// Waiting for the terminator of `next(c)` after an op.
    Op,
}

struct Frame {
    conf: usize,
    stage: Stage,
}

enum Step {
    Call(usize),
    Return(usize),
}

/// Recursive interpreter. With loop detection on, a configuration that is
/// called again while still active yields `NonTerminating`.
pub fn int_d<T: Tracer + ?Sized>(
    m: &Machine<'_>,
    start: usize,
    opts: &RunOptions,
    metrics: &mut Metrics,
    tracer: &mut T,
) -> Result<Control<usize>> {
    let mut active = (!opts.faithful).then(|| ConfTable::new(m.n_conf()));
    run(m, start, active.as_mut(), false, opts, metrics, tracer)
}

/// Memoizing simulator: each configuration's terminator is stored in
/// `table` and its action dispatched at most once.
pub fn sim_d<T: Tracer + ?Sized>(
    m: &Machine<'_>,
    start: usize,
    table: &mut ConfTable,
    opts: &RunOptions,
    metrics: &mut Metrics,
    tracer: &mut T,
) -> Result<Control<usize>> {
    run(m, start, Some(table), true, opts, metrics, tracer)
}

fn run<T: Tracer + ?Sized>(
    m: &Machine<'_>,
    start: usize,
    mut table: Option<&mut ConfTable>,
    memo: bool,
    opts: &RunOptions,
    metrics: &mut Metrics,
    tracer: &mut T,
) -> Result<Control<usize>> {
    let detect = !opts.faithful;
    let max_depth = opts.depth_limit(m.n_conf());
    let tracing = tracer.enabled();
    let mut stack: Vec<Frame> = Vec::new();
    let mut step = Step::Call(start);

    loop {
        match step {
            Step::Call(c) => {
                metrics.engine_calls += 1;
                let depth = stack.len() + 1;
                if tracing {
                    tracer.record(m, TraceEvent { depth, kind: EventKind::Call, conf: c, card: None });
                }
                if metrics.engine_calls > opts.max_steps {
                    return Ok(Control::BudgetExceeded(BudgetKind::Steps));
                }
                if let Some(t) = table.as_deref() {
                    match t.get(c) {
                        Entry::MemoD(d) if memo => {
                            metrics.memo_hits += 1;
                            if tracing {
                                tracer.record(m, TraceEvent { depth, kind: EventKind::MemoHit, conf: c, card: None });
                            }
                            step = Step::Return(*d);
                            continue;
                        }
                        Entry::Visited if detect => {
                            metrics.visited_hits += 1;
                            if tracing {
                                tracer.record(m, TraceEvent { depth, kind: EventKind::VisitedHit, conf: c, card: None });
                            }
                            return Ok(Control::NonTerminating(c));
                        }
                        _ => {}
                    }
                }
                if depth as u64 > max_depth {
                    return Ok(Control::BudgetExceeded(BudgetKind::Depth));
                }
                if detect {
                    if let Some(t) = table.as_deref_mut() {
                        t.set(c, Entry::Visited)?;
                    }
                }
                metrics.cond_execs += 1;
                metrics.max_frame_depth = metrics.max_frame_depth.max(depth as u64);
                match m.action_at(c)? {
                    Action::Push { state, moves, symbol } => {
                        stack.push(Frame { conf: c, stage: Stage::Inner });
                        step = Step::Call(m.push_target(c, *state, moves, *symbol)?);
                    }
                    Action::Op(b) => {
                        stack.push(Frame { conf: c, stage: Stage::Op });
                        step = Step::Call(m.apply(c, b)?);
                    }
                    Action::Pop => {
                        complete(m, c, c, depth, table.as_deref_mut(), memo, detect, tracer)?;
                        step = Step::Return(c);
                    }
                    Action::Halt => {
                        metrics.halts_seen += 1;
                        if tracing {
                            tracer.record(m, TraceEvent { depth, kind: EventKind::Halt, conf: c, card: None });
                        }
                        return Ok(Control::Halted);
                    }
                    Action::Accept => {
                        if tracing {
                            tracer.record(m, TraceEvent { depth, kind: EventKind::Accept, conf: c, card: None });
                        }
                        let pending_pushes = stack.iter().filter(|f| matches!(f.stage, Stage::Inner)).count();
                        return Ok(Control::Accepted { at: c, pending_pushes });
                    }
                    Action::Choose(_) => return Err(Error::EngineMismatch { engine: "deterministic" }),
                }
            }
            Step::Return(d) => {
                let Some(frame) = stack.last_mut() else {
                    return Ok(Control::Return(d));
                };
                match frame.stage {
                    Stage::Inner => {
                        frame.stage = Stage::Outer;
                        step = Step::Call(m.follow_index(frame.conf, d)?);
                    }
                    Stage::Outer | Stage::Op => {
                        let c = frame.conf;
                        let depth = stack.len();
                        stack.pop();
                        complete(m, c, d, depth, table.as_deref_mut(), memo, detect, tracer)?;
                        step = Step::Return(d);
                    }
                }
            }
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn complete<T: Tracer + ?Sized>(
    m: &Machine<'_>,
    c: usize,
    d: usize,
    depth: usize,
    table: Option<&mut ConfTable>,
    memo: bool,
    detect: bool,
    tracer: &mut T,
) -> Result<()> {
    if let Some(t) = table {
        if memo {
            t.set(c, Entry::MemoD(d))?;
        } else if detect {
            t.set(c, Entry::Undef)?;
        }
    }
    if tracer.enabled() {
        tracer.record(m, TraceEvent { depth, kind: EventKind::Return, conf: c, card: Some(1) });
    }
    Ok(())
}
