use std::collections::HashMap;

use crate::error::Result;
use crate::grammar::{remove_epsilon, remove_units, remove_useless, Grammar, Production, Sym};

/// Converts `g` to Chomsky normal form: every production is `A -> a` or
/// `A -> B C`, and the empty string is carried by `accepts_empty`.
pub fn to_cnf(g: &Grammar) -> Result<Grammar> {
    let g = remove_useless(g)?;
    let g = remove_epsilon(&g);
    let g = remove_units(&g);
    let mut g = remove_useless(&g)?;

    let mut proxies: HashMap<usize, usize> = HashMap::new();
    let old = std::mem::take(&mut g.productions);
    let mut out = Vec::with_capacity(old.len());
    for p in old {
        if p.rhs.len() == 1 {
            out.push(p);
            continue;
        }
        let mut rhs = Vec::with_capacity(p.rhs.len());
        for s in p.rhs {
            rhs.push(match s {
                Sym::N(_) => s,
                Sym::T(t) => {
                    let n = match proxies.get(&t) {
                        Some(&n) => n,
                        None => {
                            let base = format!("T_{}", g.terminals[t]);
                            let n = g.fresh_nonterminal(&base);
                            proxies.insert(t, n);
                            out.push(Production { lhs: n, rhs: vec![Sym::T(t)] });
                            n
                        }
                    };
                    Sym::N(n)
                }
            });
        }
        let mut lhs = p.lhs;
        while rhs.len() > 2 {
            let base = format!("{}_", g.nonterminals[p.lhs]);
            let rest = g.fresh_nonterminal(&base);
            out.push(Production { lhs, rhs: vec![rhs[0], Sym::N(rest)] });
            rhs.remove(0);
            lhs = rest;
        }
        out.push(Production { lhs, rhs });
    }
    g.productions = out;
    g.dedup();
    Ok(g)
}
