use std::collections::{HashSet, VecDeque};

use crate::error::Result;
use crate::model::{Action, Automaton, Configuration, Machine, Tape};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleVerdict {
    Accept,
    Reject,
    /// A budget was hit before the reachable space was exhausted.
    Unknown,
}

/// A configuration plus the suspended push frames below it, innermost last,
/// all as configuration indices.
///
/// The frames are kept as whole configurations rather than bare stack
/// symbols because `follow` needs the suspended frame's state and heads.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InstantaneousDescription {
    pub conf: usize,
    pub stack_rest: Vec<usize>,
}

/// Explores every reachable instantaneous description breadth first.
///
/// Descriptions whose stack would exceed `max_stack` suspended frames are
/// dropped, which turns a would-be `Reject` into `Unknown`. So does
/// expanding more than `max_steps` descriptions.
pub fn brute_force_accepts<S: AsRef<str>>(
    aut: &Automaton,
    input: &[S],
    max_stack: usize,
    max_steps: usize,
) -> Result<OracleVerdict> {
    let tape = Tape::new(aut, input)?;
    let m = Machine::new(aut, &tape);
    let start = InstantaneousDescription { conf: m.index(&m.initial()), stack_rest: Vec::new() };
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    let mut tainted = false;
    let mut steps = 0;

    while let Some(id) = queue.pop_front() {
        steps += 1;
        if steps > max_steps {
            return Ok(OracleVerdict::Unknown);
        }
        let c = m.decode(id.conf);
        let with = |conf: &Configuration, rest: Vec<usize>| InstantaneousDescription { conf: m.index(conf), stack_rest: rest };
        let mut succ = Vec::with_capacity(2);
        match m.lookup_action(&c)? {
            Action::Accept => return Ok(OracleVerdict::Accept),
            Action::Halt => {}
            Action::Op(_) => succ.push(with(&m.next(&c)?, id.stack_rest)),
            Action::Choose(_) => {
                succ.push(with(&m.next1(&c)?, id.stack_rest.clone()));
                succ.push(with(&m.next2(&c)?, id.stack_rest));
            }
            Action::Push { .. } => {
                if id.stack_rest.len() >= max_stack {
                    tainted = true;
                } else {
                    let mut rest = id.stack_rest;
                    rest.push(id.conf);
                    succ.push(with(&m.next(&c)?, rest));
                }
            }
            Action::Pop => {
                // popping the bottom frame ends this path without acceptance
                let mut rest = id.stack_rest;
                if let Some(under) = rest.pop() {
                    succ.push(with(&m.follow(&m.decode(under), &c)?, rest));
                }
            }
        }
        for next in succ {
            if !seen.contains(&next) {
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    Ok(if tainted { OracleVerdict::Unknown } else { OracleVerdict::Reject })
}
