//! Interpreter and memoizing simulator for nondeterministic automata.
//!
//! Each call returns the set of terminators reachable from its
//! configuration. A configuration met again while active contributes the
//! empty set; halt contributes the empty set; accept ends the whole run.
//! The interpreter unmarks a configuration when its call returns, the
//! simulator overwrites the mark with the computed set.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::trace::{EventKind, TraceEvent, Tracer};
use super::{BudgetKind, Control, RunOptions};
use crate::confsets::{ConfSet, ConfTable, Entry, SetPool, Terminators};
use crate::error::Result;
use crate::metrics::Metrics;
use crate::model::{Action, Machine};

enum Stage {
    PushInner,
    PushOuter { inner: Terminators, pos: usize, acc: ConfSet },
    Op,
    Choose1,
    Choose2 { acc: ConfSet },
}

struct Frame {
    conf: usize,
    stage: Stage,
}

enum Step {
    Call(usize),
    Return(Terminators),
}

pub fn int_n<T: Tracer + ?Sized>(
    m: &Machine<'_>,
    start: usize,
    table: &mut ConfTable,
    opts: &RunOptions,
    metrics: &mut Metrics,
    tracer: &mut T,
) -> Result<Control<Terminators>> {
    run(m, start, table, false, opts, metrics, tracer)
}

pub fn sim_n<T: Tracer + ?Sized>(
    m: &Machine<'_>,
    start: usize,
    table: &mut ConfTable,
    opts: &RunOptions,
    metrics: &mut Metrics,
    tracer: &mut T,
) -> Result<Control<Terminators>> {
    run(m, start, table, true, opts, metrics, tracer)
}

struct Ctx<'t, 'm, T: ?Sized> {
    m: &'t Machine<'m>,
    table: &'t mut ConfTable,
    memo: bool,
    tracer: &'t mut T,
    pool: SetPool,
}

impl<T: Tracer + ?Sized> Ctx<'_, '_, T> {
    fn event(&mut self, depth: usize, kind: EventKind, conf: usize, card: Option<usize>) {
        if self.tracer.enabled() {
            self.tracer.record(self.m, TraceEvent { depth, kind, conf, card });
        }
    }

    fn complete(&mut self, c: usize, set: &Terminators, depth: usize, metrics: &mut Metrics) -> Result<()> {
        metrics.max_set_card = metrics.max_set_card.max(set.len() as u64);
        let entry = if self.memo { Entry::MemoN(set.clone()) } else { Entry::Undef };
        self.table.set(c, entry)?;
        self.event(depth, EventKind::Return, c, Some(set.len()));
        Ok(())
    }
}

fn run<T: Tracer + ?Sized>(
    m: &Machine<'_>,
    start: usize,
    table: &mut ConfTable,
    memo: bool,
    opts: &RunOptions,
    metrics: &mut Metrics,
    tracer: &mut T,
) -> Result<Control<Terminators>> {
    let n = m.n_conf();
    let max_depth = opts.depth_limit(n);
    let mut rng = opts.shuffle_seed.map(ChaCha8Rng::seed_from_u64);
    let empty: Terminators = Terminators::from([]);
    let mut ctx = Ctx { m, table, memo, tracer, pool: SetPool::new(n) };
    let mut stack: Vec<Frame> = Vec::new();
    let mut step = Step::Call(start);

    loop {
        match std::mem::replace(&mut step, Step::Call(usize::MAX)) {
            Step::Call(c) => {
                metrics.engine_calls += 1;
                let depth = stack.len() + 1;
                ctx.event(depth, EventKind::Call, c, None);
                if metrics.engine_calls > opts.max_steps {
                    return Ok(Control::BudgetExceeded(BudgetKind::Steps));
                }
                match ctx.table.get(c) {
                    Entry::MemoN(set) => {
                        let set = set.clone();
                        metrics.memo_hits += 1;
                        ctx.event(depth, EventKind::MemoHit, c, None);
                        step = Step::Return(set);
                        continue;
                    }
                    Entry::Visited => {
                        metrics.visited_hits += 1;
                        ctx.event(depth, EventKind::VisitedHit, c, None);
                        step = Step::Return(empty.clone());
                        continue;
                    }
                    _ => {}
                }
                if depth as u64 > max_depth {
                    return Ok(Control::BudgetExceeded(BudgetKind::Depth));
                }
                ctx.table.set(c, Entry::Visited)?;
                metrics.cond_execs += 1;
                metrics.max_frame_depth = metrics.max_frame_depth.max(depth as u64);
                match m.action_at(c)? {
                    Action::Push { state, moves, symbol } => {
                        stack.push(Frame { conf: c, stage: Stage::PushInner });
                        step = Step::Call(m.push_target(c, *state, moves, *symbol)?);
                    }
                    Action::Op(b) => {
                        stack.push(Frame { conf: c, stage: Stage::Op });
                        step = Step::Call(m.apply(c, b)?);
                    }
                    Action::Choose(bs) => {
                        stack.push(Frame { conf: c, stage: Stage::Choose1 });
                        step = Step::Call(m.apply(c, &bs[0])?);
                    }
                    Action::Pop => {
                        let set: Terminators = Terminators::from([c]);
                        ctx.complete(c, &set, depth, metrics)?;
                        step = Step::Return(set);
                    }
                    Action::Halt => {
                        metrics.halts_seen += 1;
                        ctx.event(depth, EventKind::Halt, c, None);
                        ctx.complete(c, &empty, depth, metrics)?;
                        step = Step::Return(empty.clone());
                    }
                    Action::Accept => {
                        ctx.event(depth, EventKind::Accept, c, None);
                        let pending_pushes = stack.iter().filter(|f| matches!(f.stage, Stage::PushInner)).count();
                        return Ok(Control::Accepted { at: c, pending_pushes });
                    }
                }
            }
            Step::Return(result) => {
                let depth = stack.len();
                let Some(frame) = stack.last_mut() else {
                    return Ok(Control::Return(result));
                };
                let c = frame.conf;
                let done = match &mut frame.stage {
                    Stage::PushInner => {
                        if result.is_empty() {
                            Some(result)
                        } else {
                            let inner = match rng.as_mut() {
                                Some(rng) => {
                                    let mut order = result.to_vec();
                                    order.shuffle(rng);
                                    Terminators::from(order)
                                }
                                None => result,
                            };
                            step = Step::Call(m.follow_index(c, inner[0])?);
                            frame.stage = Stage::PushOuter { inner, pos: 1, acc: ConfSet::empty(n) };
                            None
                        }
                    }
                    Stage::PushOuter { inner, pos, acc } => {
                        acc.union_items(&result, &mut ctx.pool, metrics)?;
                        if *pos < inner.len() {
                            step = Step::Call(m.follow_index(c, inner[*pos])?);
                            *pos += 1;
                            None
                        } else {
                            let acc = std::mem::replace(acc, ConfSet::empty(n));
                            Some(acc.freeze(&mut ctx.pool))
                        }
                    }
                    Stage::Op => Some(result),
                    Stage::Choose1 => {
                        let mut acc = ConfSet::empty(n);
                        acc.union_items(&result, &mut ctx.pool, metrics)?;
                        frame.stage = Stage::Choose2 { acc };
                        let Action::Choose(bs) = m.action_at(c)? else { unreachable!() };
                        step = Step::Call(m.apply(c, &bs[1])?);
                        None
                    }
                    Stage::Choose2 { acc } => {
                        acc.union_items(&result, &mut ctx.pool, metrics)?;
                        let acc = std::mem::replace(acc, ConfSet::empty(n));
                        Some(acc.freeze(&mut ctx.pool))
                    }
                };
                if let Some(set) = done {
                    stack.pop();
                    ctx.complete(c, &set, depth, metrics)?;
                    step = Step::Return(set);
                }
            }
        }
    }
}
