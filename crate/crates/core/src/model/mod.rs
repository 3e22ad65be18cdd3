//! Automaton model: alphabets, rules, follow rules and the dispatch tables
//! that make every transition lookup a single array access.

mod machine;
mod parse;
mod validate;

pub use machine::{Configuration, Machine, Tape};
pub use parse::parse_automaton;
pub use validate::{validate, Overlap, ValidationReport};

use std::fmt;

/// Name of the left endmarker.
pub const LEFT_END: &str = "<";
/// Name of the right endmarker.
pub const RIGHT_END: &str = ">";
/// Tape symbol id of `<`.
pub const LEFT: usize = 0;
/// Tape symbol id of `>`.
pub const RIGHT: usize = 1;
/// Stack symbol id of the bottom symbol.
pub const BOTTOM: usize = 0;

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Move {
    L,
    S,
    R,
}

impl Move {
    pub fn delta(self) -> isize {
        match self {
            Move::L => -1,
            Move::S => 0,
            Move::R => 1,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Move::L => "L",
            Move::S => "S",
            Move::R => "R",
        }
    }
}

/// Target of an op-like step: new state, per-head moves and new stack top.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Branch {
    pub state: usize,
    pub moves: Vec<Move>,
    pub top: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Action {
    /// Suspend the current configuration and continue at `state` with `symbol` pushed.
    Push { state: usize, moves: Vec<Move>, symbol: usize },
    /// Replace the top and move without changing the stack height.
    Op(Branch),
    Pop,
    Choose(Box<[Branch; 2]>),
    Halt,
    Accept,
}

impl Action {
    pub fn kind(&self) -> &'static str {
        match self {
            Action::Push { .. } => "push",
            Action::Op(_) => "op",
            Action::Pop => "pop",
            Action::Choose(_) => "choose",
            Action::Halt => "halt",
            Action::Accept => "accept",
        }
    }
}

/// `None` components are wildcards.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub state: Option<usize>,
    pub tape: Vec<Option<usize>>,
    pub top: Option<usize>,
    pub action: Action,
    pub line: usize,
}

impl Rule {
    pub fn matches(&self, state: usize, syms: &[usize], top: usize) -> bool {
        self.state.is_none_or(|s| s == state)
            && self.top.is_none_or(|t| t == top)
            && self.tape.iter().zip(syms).all(|(p, &x)| p.is_none_or(|p| p == x))
    }
}

/// How the new stack top is computed when a pushed region terminates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TopExpr {
    Lit(usize),
    /// The suspended frame's own top.
    Under,
    /// The terminator's top.
    Top,
    Min,
    Max,
}

impl TopExpr {
    pub fn eval(self, under: usize, top: usize) -> usize {
        match self {
            TopExpr::Lit(s) => s,
            TopExpr::Under => under,
            TopExpr::Top => top,
            TopExpr::Min => under.min(top),
            TopExpr::Max => under.max(top),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FollowRule {
    pub under_state: Option<usize>,
    pub top_state: Option<usize>,
    pub under_sym: Option<usize>,
    pub top_sym: Option<usize>,
    pub state: usize,
    pub moves: Vec<Move>,
    pub top: TopExpr,
    pub line: usize,
}

impl FollowRule {
    pub fn matches(&self, under_state: usize, top_state: usize, under_sym: usize, top_sym: usize) -> bool {
        self.under_state.is_none_or(|s| s == under_state)
            && self.top_state.is_none_or(|s| s == top_state)
            && self.under_sym.is_none_or(|s| s == under_sym)
            && self.top_sym.is_none_or(|s| s == top_sym)
    }
}

/// A k-head two-way pushdown automaton.
///
/// Tape symbol 0 is `<`, 1 is `>`; stack symbol 0 is the bottom symbol and
/// the declaration order of stack symbols is the order used by `MIN`/`MAX`.
/// Rules resolve first-match; both rule lists are compiled into dense
/// dispatch tables at construction.
#[derive(Debug, Clone)]
pub struct Automaton {
    name: String,
    heads: usize,
    tape_syms: Vec<String>,
    stack_syms: Vec<String>,
    states: Vec<String>,
    start: usize,
    rules: Vec<Rule>,
    follows: Vec<FollowRule>,
    dispatch: Vec<u32>,
    follow_dispatch: Vec<u32>,
}

impl Automaton {
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn new(
        name: String,
        heads: usize,
        tape_syms: Vec<String>,
        stack_syms: Vec<String>,
        states: Vec<String>,
        start: usize,
        rules: Vec<Rule>,
        follows: Vec<FollowRule>,
    ) -> Automaton {
        let mut aut = Automaton {
            name,
            heads,
            tape_syms,
            stack_syms,
            states,
            start,
            rules,
            follows,
            dispatch: Vec::new(),
            follow_dispatch: Vec::new(),
        };
        aut.build_dispatch();
        aut
    }

    fn build_dispatch(&mut self) {
        let (q, sigma, gamma, k) = (self.states.len(), self.tape_syms.len(), self.stack_syms.len(), self.heads);
        let cells = q * sigma.pow(k as u32) * gamma;
        let mut dispatch = vec![NONE; cells];
        let mut syms = vec![0usize; k];
        for (cell, slot) in dispatch.iter_mut().enumerate() {
            let (state, top) = self.decode_cell(cell, &mut syms);
            if let Some(i) = self.rules.iter().position(|r| r.matches(state, &syms, top)) {
                *slot = i as u32;
            }
        }
        self.dispatch = dispatch;

        let mut follow_dispatch = vec![NONE; q * q * gamma * gamma];
        for (cell, slot) in follow_dispatch.iter_mut().enumerate() {
            let (us, ts, uy, ty) = self.decode_follow_cell(cell);
            if let Some(i) = self.follows.iter().position(|f| f.matches(us, ts, uy, ty)) {
                *slot = i as u32;
            }
        }
        self.follow_dispatch = follow_dispatch;
    }

    pub(crate) fn cell(&self, state: usize, syms: impl IntoIterator<Item = usize>, top: usize) -> usize {
        let sigma = self.tape_syms.len();
        let mut idx = state;
        for s in syms {
            idx = idx * sigma + s;
        }
        idx * self.stack_syms.len() + top
    }

    pub(crate) fn decode_cell(&self, cell: usize, syms: &mut [usize]) -> (usize, usize) {
        let sigma = self.tape_syms.len();
        let gamma = self.stack_syms.len();
        let top = cell % gamma;
        let mut rest = cell / gamma;
        for s in syms.iter_mut().rev() {
            *s = rest % sigma;
            rest /= sigma;
        }
        (rest, top)
    }

    fn follow_cell(&self, us: usize, ts: usize, uy: usize, ty: usize) -> usize {
        let (q, g) = (self.states.len(), self.stack_syms.len());
        ((us * q + ts) * g + uy) * g + ty
    }

    fn decode_follow_cell(&self, cell: usize) -> (usize, usize, usize, usize) {
        let (q, g) = (self.states.len(), self.stack_syms.len());
        let ty = cell % g;
        let uy = (cell / g) % g;
        let ts = (cell / g / g) % q;
        let us = cell / g / g / q;
        (us, ts, uy, ty)
    }

    /// Index of the first rule matching a concrete (state, tape symbols, top).
    pub fn rule_for(&self, state: usize, syms: impl IntoIterator<Item = usize>, top: usize) -> Option<usize> {
        match self.dispatch[self.cell(state, syms, top)] {
            NONE => None,
            i => Some(i as usize),
        }
    }

    pub(crate) fn rule_at_cell(&self, cell: usize) -> Option<usize> {
        match self.dispatch[cell] {
            NONE => None,
            i => Some(i as usize),
        }
    }

    pub(crate) fn dispatch_cells(&self) -> usize {
        self.dispatch.len()
    }

    /// Index of the first follow rule matching the concrete quadruple.
    pub fn follow_for(&self, under_state: usize, top_state: usize, under_sym: usize, top_sym: usize) -> Option<usize> {
        match self.follow_dispatch[self.follow_cell(under_state, top_state, under_sym, top_sym)] {
            NONE => None,
            i => Some(i as usize),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn heads(&self) -> usize {
        self.heads
    }

    /// Tape alphabet including the endmarkers at ids 0 and 1.
    pub fn tape_syms(&self) -> &[String] {
        &self.tape_syms
    }

    pub fn stack_syms(&self) -> &[String] {
        &self.stack_syms
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn follows(&self) -> &[FollowRule] {
        &self.follows
    }

    pub fn state_id(&self, name: &str) -> Option<usize> {
        self.states.iter().position(|s| s == name)
    }

    pub fn tape_id(&self, name: &str) -> Option<usize> {
        self.tape_syms.iter().position(|s| s == name)
    }

    pub fn stack_id(&self, name: &str) -> Option<usize> {
        self.stack_syms.iter().position(|s| s == name)
    }

    pub fn is_deterministic(&self) -> bool {
        !self.rules.iter().any(|r| matches!(r.action, Action::Choose(_)))
    }

    /// Renders the automaton in its source format; parsing the result gives
    /// an automaton with identical dispatch.
    pub fn to_source(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Automaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pat = |p: Option<usize>, names: &[String]| p.map_or("*".to_string(), |i| names[i].clone());
        let moves = |m: &[Move]| m.iter().map(|m| m.as_str()).collect::<Vec<_>>().join(" ");
        writeln!(f, "pda {}", self.name)?;
        writeln!(f, "heads {}", self.heads)?;
        writeln!(f, "tapesyms {}", self.tape_syms[2..].join(" "))?;
        writeln!(f, "stacksyms {}", self.stack_syms.join(" "))?;
        writeln!(f, "states {}", self.states.join(" "))?;
        writeln!(f, "start {}", self.states[self.start])?;
        for r in &self.rules {
            write!(f, "rule {}", pat(r.state, &self.states))?;
            for t in &r.tape {
                write!(f, " {}", pat(*t, &self.tape_syms))?;
            }
            write!(f, " {} => ", pat(r.top, &self.stack_syms))?;
            let branch = |b: &Branch| format!("{} {} {}", self.states[b.state], moves(&b.moves), self.stack_syms[b.top]);
            match &r.action {
                Action::Push { state, moves: m, symbol } => {
                    writeln!(f, "push {} {} {}", self.states[*state], moves(m), self.stack_syms[*symbol])?
                }
                Action::Op(b) => writeln!(f, "op {}", branch(b))?,
                Action::Pop => writeln!(f, "pop")?,
                Action::Choose(bs) => writeln!(f, "choose {} | {}", branch(&bs[0]), branch(&bs[1]))?,
                Action::Halt => writeln!(f, "halt")?,
                Action::Accept => writeln!(f, "accept")?,
            }
        }
        for fr in &self.follows {
            let top = match fr.top {
                TopExpr::Lit(s) => format!("LIT {}", self.stack_syms[s]),
                TopExpr::Under => "UNDER".into(),
                TopExpr::Top => "TOP".into(),
                TopExpr::Min => "MIN".into(),
                TopExpr::Max => "MAX".into(),
            };
            writeln!(
                f,
                "follow {} {} {} {} => {} {} {}",
                pat(fr.under_state, &self.states),
                pat(fr.top_state, &self.states),
                pat(fr.under_sym, &self.stack_syms),
                pat(fr.top_sym, &self.stack_syms),
                self.states[fr.state],
                moves(&fr.moves),
                top
            )?;
        }
        Ok(())
    }
}
