use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::grammar::{Grammar, Sym};

/// Largest `max_len` accepted by [`enumerate_language`].
pub const MAX_ENUM_LEN: usize = 12;

/// All strings of length at most `max_len` derivable from the start symbol,
/// plus the empty string when `accepts_empty` is set.
///
/// Computes, for every nonterminal, the least fixpoint of its bounded
/// language by repeatedly concatenating the current sets along each
/// production and discarding anything longer than `max_len`.
pub fn enumerate_language(g: &Grammar, max_len: usize) -> Result<BTreeSet<Vec<String>>> {
    if max_len > MAX_ENUM_LEN {
        return Err(Error::LengthGuard(max_len, MAX_ENUM_LEN));
    }
    let mut lang: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::new(); g.nonterminals.len()];
    loop {
        let mut changed = false;
        for p in &g.productions {
            let mut partial: BTreeSet<Vec<usize>> = BTreeSet::from([Vec::new()]);
            for s in &p.rhs {
                let mut next = BTreeSet::new();
                match *s {
                    Sym::T(t) => {
                        for w in &partial {
                            if w.len() < max_len {
                                let mut w = w.clone();
                                w.push(t);
                                next.insert(w);
                            }
                        }
                    }
                    Sym::N(n) => {
                        for w in &partial {
                            for v in &lang[n] {
                                if w.len() + v.len() <= max_len {
                                    let mut w = w.clone();
                                    w.extend_from_slice(v);
                                    next.insert(w);
                                }
                            }
                        }
                    }
                }
                partial = next;
                if partial.is_empty() {
                    break;
                }
            }
            for w in partial {
                changed |= lang[p.lhs].insert(w);
            }
        }
        if !changed {
            break;
        }
    }
    let mut out: BTreeSet<Vec<String>> =
        lang[g.start].iter().map(|w| w.iter().map(|&t| g.terminals[t].clone()).collect()).collect();
    if g.accepts_empty {
        out.insert(Vec::new());
    }
    Ok(out)
}
