use std::io::Write;

use crate::model::Machine;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EventKind {
    Call,
    Return,
    MemoHit,
    VisitedHit,
    Accept,
    Halt,
}

impl EventKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EventKind::Call => "call",
            EventKind::Return => "return",
            EventKind::MemoHit => "memo_hit",
            EventKind::VisitedHit => "visited_hit",
            EventKind::Accept => "accept",
            EventKind::Halt => "halt",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceEvent {
    pub depth: usize,
    pub kind: EventKind,
    pub conf: usize,
    /// Terminator-set cardinality, on `return` only.
    pub card: Option<usize>,
}

pub trait Tracer {
    fn enabled(&self) -> bool {
        true
    }

    fn record(&mut self, machine: &Machine<'_>, event: TraceEvent);
}

/// Discards every event.
pub struct NoTrace;

impl Tracer for NoTrace {
    fn enabled(&self) -> bool {
        false
    }

    fn record(&mut self, _: &Machine<'_>, _: TraceEvent) {}
}

/// Collects events in memory.
#[derive(Debug, Default)]
pub struct VecTracer {
    pub events: Vec<TraceEvent>,
}

impl Tracer for VecTracer {
    fn record(&mut self, _: &Machine<'_>, event: TraceEvent) {
        self.events.push(event);
    }
}

/// Writes one tab-separated line per event:
/// `seq depth event state heads top card`, heads comma-joined and `card`
/// set to `-` for events other than `return`.
pub struct WriteTracer<W: Write> {
    out: W,
    seq: u64,
    error: Option<std::io::Error>,
}

impl<W: Write> WriteTracer<W> {
    pub fn new(out: W) -> Self {
        WriteTracer { out, seq: 0, error: None }
    }

    pub fn finish(mut self) -> std::io::Result<W> {
        if let Some(e) = self.error.take() {
            return Err(e);
        }
        self.out.flush()?;
        Ok(self.out)
    }
}

pub fn format_event(machine: &Machine<'_>, seq: u64, event: &TraceEvent) -> String {
    let aut = machine.automaton();
    let conf = machine.decode(event.conf);
    let heads: Vec<String> = conf.heads.iter().map(|h| h.to_string()).collect();
    let card = event.card.map_or("-".to_string(), |c| c.to_string());
    format!(
        "{}\t{}\t{}\t{}\t{}\t{}\t{}",
        seq,
        event.depth,
        event.kind.as_str(),
        aut.states()[conf.state],
        heads.join(","),
        aut.stack_syms()[conf.top],
        card
    )
}

impl<W: Write> Tracer for WriteTracer<W> {
    fn record(&mut self, machine: &Machine<'_>, event: TraceEvent) {
        if self.error.is_some() {
            return;
        }
        let line = format_event(machine, self.seq, &event);
        self.seq += 1;
        if let Err(e) = writeln!(self.out, "{line}") {
            self.error = Some(e);
        }
    }
}
