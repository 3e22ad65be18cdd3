use super::{Action, Automaton, Branch, Move, BOTTOM, LEFT, RIGHT};
use crate::error::{Error, Result};

pub(crate) const MAX_HEADS: usize = 4;

/// Input framed by the endmarkers: `<` input `>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tape {
    cells: Vec<usize>,
}

impl Tape {
    pub fn new<S: AsRef<str>>(aut: &Automaton, input: &[S]) -> Result<Tape> {
        let mut cells = Vec::with_capacity(input.len() + 2);
        cells.push(LEFT);
        for tok in input {
            let tok = tok.as_ref();
            match aut.tape_id(tok) {
                Some(LEFT) | Some(RIGHT) => return Err(Error::ReservedToken(tok.to_string())),
                Some(id) => cells.push(id),
                None => return Err(Error::UnknownToken(tok.to_string())),
            }
        }
        cells.push(RIGHT);
        Ok(Tape { cells })
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn cells(&self) -> &[usize] {
        &self.cells
    }
}

/// Surface configuration: state, head positions and the stack top.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    pub state: usize,
    pub heads: Vec<usize>,
    pub top: usize,
}

#[derive(Clone, Copy)]
struct Parts {
    state: usize,
    heads: [usize; MAX_HEADS],
    top: usize,
}

/// An automaton bound to a tape. All engine-facing operations work on dense
/// configuration indices in `0..n_conf`.
#[derive(Debug, Clone, Copy)]
pub struct Machine<'a> {
    aut: &'a Automaton,
    tape: &'a Tape,
    n_conf: usize,
}

impl<'a> Machine<'a> {
    pub fn new(aut: &'a Automaton, tape: &'a Tape) -> Machine<'a> {
        let n_conf = aut.states().len() * tape.len().pow(aut.heads() as u32) * aut.stack_syms().len();
        Machine { aut, tape, n_conf }
    }

    pub fn automaton(&self) -> &'a Automaton {
        self.aut
    }

    pub fn tape(&self) -> &'a Tape {
        self.tape
    }

    /// |states| * T^k * |stack alphabet|.
    pub fn n_conf(&self) -> usize {
        self.n_conf
    }

    pub fn initial(&self) -> Configuration {
        Configuration { state: self.aut.start(), heads: vec![0; self.aut.heads()], top: BOTTOM }
    }

    pub fn is_well_formed(&self, c: &Configuration) -> bool {
        c.state < self.aut.states().len()
            && c.heads.len() == self.aut.heads()
            && c.heads.iter().all(|&h| h < self.tape.len())
            && c.top < self.aut.stack_syms().len()
    }

    pub fn index(&self, c: &Configuration) -> usize {
        debug_assert!(self.is_well_formed(c));
        let t = self.tape.len();
        let mut idx = c.state;
        for &h in &c.heads {
            idx = idx * t + h;
        }
        idx * self.aut.stack_syms().len() + c.top
    }

    pub fn decode(&self, idx: usize) -> Configuration {
        let p = self.parts(idx);
        Configuration { state: p.state, heads: p.heads[..self.aut.heads()].to_vec(), top: p.top }
    }

    fn parts(&self, idx: usize) -> Parts {
        let t = self.tape.len();
        let gamma = self.aut.stack_syms().len();
        let k = self.aut.heads();
        let mut heads = [0; MAX_HEADS];
        let mut rest = idx / gamma;
        for h in heads[..k].iter_mut().rev() {
            *h = rest % t;
            rest /= t;
        }
        Parts { state: rest, heads, top: idx % gamma }
    }

    fn compose(&self, state: usize, heads: &[usize], top: usize) -> usize {
        let t = self.tape.len();
        heads.iter().fold(state, |acc, &h| acc * t + h) * self.aut.stack_syms().len() + top
    }

    fn moved(&self, idx: usize, p: &Parts, moves: &[Move]) -> Result<[usize; MAX_HEADS]> {
        let mut heads = p.heads;
        for (h, m) in heads.iter_mut().zip(moves) {
            let next = *h as isize + m.delta();
            if next < 0 || next as usize >= self.tape.len() {
                return Err(Error::HeadOutOfBounds(self.describe(idx)));
            }
            *h = next as usize;
        }
        Ok(heads)
    }

    pub fn action_at(&self, idx: usize) -> Result<&'a Action> {
        let p = self.parts(idx);
        let cells = self.tape.cells();
        let syms = p.heads[..self.aut.heads()].iter().map(|&h| cells[h]);
        match self.aut.rule_for(p.state, syms, p.top) {
            Some(r) => Ok(&self.aut.rules()[r].action),
            None => Err(Error::NoRule(self.describe(idx))),
        }
    }

    pub(crate) fn apply(&self, idx: usize, branch: &Branch) -> Result<usize> {
        let p = self.parts(idx);
        let heads = self.moved(idx, &p, &branch.moves)?;
        Ok(self.compose(branch.state, &heads[..self.aut.heads()], branch.top))
    }

    pub(crate) fn push_target(&self, idx: usize, state: usize, moves: &[Move], symbol: usize) -> Result<usize> {
        let p = self.parts(idx);
        let heads = self.moved(idx, &p, moves)?;
        Ok(self.compose(state, &heads[..self.aut.heads()], symbol))
    }

    /// Successor of a push or op configuration.
    pub fn next_index(&self, idx: usize) -> Result<usize> {
        match self.action_at(idx)? {
            Action::Push { state, moves, symbol } => self.push_target(idx, *state, moves, *symbol),
            Action::Op(b) => self.apply(idx, b),
            _ => Err(Error::WrongAction(self.describe(idx))),
        }
    }

    /// Successor along one branch (0 or 1) of a choose configuration.
    pub fn branch_index(&self, idx: usize, which: usize) -> Result<usize> {
        match self.action_at(idx)? {
            Action::Choose(bs) => self.apply(idx, &bs[which]),
            _ => Err(Error::WrongAction(self.describe(idx))),
        }
    }

    /// Configuration reached when the region pushed from `under` terminates in `top`.
    pub fn follow_index(&self, under: usize, top: usize) -> Result<usize> {
        let u = self.parts(under);
        let d = self.parts(top);
        let rule = self
            .aut
            .follow_for(u.state, d.state, u.top, d.top)
            .ok_or_else(|| Error::NoFollowRule { under: self.describe(under), top: self.describe(top) })?;
        let rule = &self.aut.follows()[rule];
        let heads = self.moved(top, &d, &rule.moves)?;
        Ok(self.compose(rule.state, &heads[..self.aut.heads()], rule.top.eval(u.top, d.top)))
    }

    pub fn lookup_action(&self, c: &Configuration) -> Result<&'a Action> {
        self.action_at(self.index(c))
    }

    pub fn next(&self, c: &Configuration) -> Result<Configuration> {
        self.next_index(self.index(c)).map(|i| self.decode(i))
    }

    pub fn next1(&self, c: &Configuration) -> Result<Configuration> {
        self.branch_index(self.index(c), 0).map(|i| self.decode(i))
    }

    pub fn next2(&self, c: &Configuration) -> Result<Configuration> {
        self.branch_index(self.index(c), 1).map(|i| self.decode(i))
    }

    pub fn follow(&self, c: &Configuration, d: &Configuration) -> Result<Configuration> {
        self.follow_index(self.index(c), self.index(d)).map(|i| self.decode(i))
    }

    pub fn state_of(&self, idx: usize) -> usize {
        self.parts(idx).state
    }

    pub fn top_of(&self, idx: usize) -> usize {
        idx % self.aut.stack_syms().len()
    }

    pub fn heads_of(&self, idx: usize) -> Vec<usize> {
        self.decode(idx).heads
    }

    /// True when the top is the bottom symbol and every head reads `>`.
    pub fn at_accepting_position(&self, idx: usize) -> bool {
        let p = self.parts(idx);
        p.top == BOTTOM && p.heads[..self.aut.heads()].iter().all(|&h| h + 1 == self.tape.len())
    }

    /// `(state,[h1,..],top)` with names.
    pub fn describe(&self, idx: usize) -> String {
        let p = self.parts(idx);
        let heads: Vec<String> = p.heads[..self.aut.heads()].iter().map(|h| h.to_string()).collect();
        format!("({},[{}],{})", self.aut.states()[p.state], heads.join(","), self.aut.stack_syms()[p.top])
    }
}
