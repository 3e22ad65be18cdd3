use super::{Grammar, Production, Sym};
use crate::error::{Error, Result};

pub fn nullable(g: &Grammar) -> Vec<bool> {
    let mut null = vec![false; g.nonterminals.len()];
    let mut changed = true;
    while changed {
        changed = false;
        for p in &g.productions {
            if !null[p.lhs] && p.rhs.iter().all(|s| matches!(s, Sym::N(n) if null[*n])) {
                null[p.lhs] = true;
                changed = true;
            }
        }
    }
    null
}

fn generating(g: &Grammar) -> Vec<bool> {
    let mut gen = vec![false; g.nonterminals.len()];
    let mut changed = true;
    while changed {
        changed = false;
        for p in &g.productions {
            if !gen[p.lhs] && p.rhs.iter().all(|s| matches!(s, Sym::T(_)) || matches!(s, Sym::N(n) if gen[*n])) {
                gen[p.lhs] = true;
                changed = true;
            }
        }
    }
    gen
}

/// Drops productions that mention non-generating nonterminals or that are
/// unreachable from the start symbol. Fails when the language is empty.
pub fn remove_useless(g: &Grammar) -> Result<Grammar> {
    let gen = generating(g);
    if !gen[g.start] && !g.accepts_empty {
        return Err(Error::GeneratesNothing);
    }
    let mut out = g.clone();
    out.productions
        .retain(|p| gen[p.lhs] && p.rhs.iter().all(|s| matches!(s, Sym::T(_)) || matches!(s, Sym::N(n) if gen[*n])));

    let mut reach = vec![false; g.nonterminals.len()];
    reach[g.start] = true;
    let mut work = vec![g.start];
    while let Some(a) = work.pop() {
        for p in out.productions.iter().filter(|p| p.lhs == a) {
            for s in &p.rhs {
                if let Sym::N(n) = *s {
                    if !reach[n] {
                        reach[n] = true;
                        work.push(n);
                    }
                }
            }
        }
    }
    out.productions.retain(|p| reach[p.lhs]);
    Ok(out)
}

/// Removes every ε-production, adding all variants that omit nullable
/// symbols. The start symbol's nullability moves to `accepts_empty`.
pub fn remove_epsilon(g: &Grammar) -> Grammar {
    let null = nullable(g);
    let mut out = g.clone();
    out.accepts_empty = g.accepts_empty || null[g.start];
    out.productions.clear();
    for p in &g.productions {
        let optional: Vec<usize> =
            p.rhs.iter().enumerate().filter(|(_, s)| matches!(s, Sym::N(n) if null[*n])).map(|(i, _)| i).collect();
        for mask in 0u64..(1 << optional.len()) {
            let rhs: Vec<Sym> = p
                .rhs
                .iter()
                .enumerate()
                .filter(|(i, _)| optional.iter().position(|o| o == i).is_none_or(|bit| mask & (1 << bit) == 0))
                .map(|(_, &s)| s)
                .collect();
            if !rhs.is_empty() {
                out.productions.push(Production { lhs: p.lhs, rhs });
            }
        }
    }
    out.dedup();
    out
}

/// Replaces unit productions `A -> B` by B's non-unit alternatives, which
/// also removes unit cycles.
pub fn remove_units(g: &Grammar) -> Grammar {
    let n = g.nonterminals.len();
    let is_unit = |p: &Production| matches!(p.rhs.as_slice(), [Sym::N(_)]);
    let mut out = g.clone();
    out.productions.clear();
    for a in 0..n {
        let mut closure = vec![false; n];
        closure[a] = true;
        let mut work = vec![a];
        while let Some(b) = work.pop() {
            for p in g.productions.iter().filter(|p| p.lhs == b && is_unit(p)) {
                if let [Sym::N(c)] = p.rhs[..] {
                    if !closure[c] {
                        closure[c] = true;
                        work.push(c);
                    }
                }
            }
        }
        for b in (0..n).filter(|&b| closure[b]) {
            for p in g.productions.iter().filter(|p| p.lhs == b && !is_unit(p)) {
                out.productions.push(Production { lhs: a, rhs: p.rhs.clone() });
            }
        }
    }
    out.dedup();
    out
}

/// Nonterminals `A` with `A =>+ A α`, taking nullable prefixes into account.
pub fn left_recursive_nonterminals(g: &Grammar) -> Vec<usize> {
    let n = g.nonterminals.len();
    let null = nullable(g);
    let mut corner = vec![vec![false; n]; n];
    for p in &g.productions {
        for s in &p.rhs {
            match *s {
                Sym::N(b) => {
                    corner[p.lhs][b] = true;
                    if !null[b] {
                        break;
                    }
                }
                Sym::T(_) => break,
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            if corner[i][k] {
                let via = corner[k].clone();
                for (c, v) in corner[i].iter_mut().zip(via) {
                    *c |= v;
                }
            }
        }
    }
    (0..n).filter(|&a| corner[a][a]).collect()
}

/// Produces an equivalent grammar (on non-empty strings) without left
/// recursion: useless-symbol, ε- and unit-production removal followed by
/// Paull's substitution in nonterminal declaration order, with immediate
/// left recursion replaced by right recursion through primed nonterminals.
/// ε-membership is carried by `accepts_empty`.
pub fn eliminate_left_recursion(g: &Grammar) -> Result<Grammar> {
    let g = remove_useless(g)?;
    let g = remove_epsilon(&g);
    let g = remove_units(&g);
    let mut g = remove_useless(&g)?;

    let original = g.nonterminals.len();
    for i in 0..original {
        for j in 0..i {
            let mut next = Vec::with_capacity(g.productions.len());
            for p in &g.productions {
                match p.rhs.first() {
                    Some(Sym::N(b)) if p.lhs == i && *b == j => {
                        for q in g.productions.iter().filter(|q| q.lhs == j) {
                            let mut rhs = q.rhs.clone();
                            rhs.extend_from_slice(&p.rhs[1..]);
                            next.push(Production { lhs: i, rhs });
                        }
                    }
                    _ => next.push(p.clone()),
                }
            }
            g.productions = next;
            g.dedup();
        }

        let (recursive, rest): (Vec<Production>, Vec<Production>) = g
            .productions
            .iter()
            .filter(|p| p.lhs == i)
            .cloned()
            .partition(|p| p.rhs.first() == Some(&Sym::N(i)));
        if recursive.is_empty() {
            continue;
        }
        let base = g.nonterminals[i].clone();
        let tail = g.fresh_nonterminal(&base);
        g.productions.retain(|p| p.lhs != i);
        for beta in rest {
            let mut with_tail = beta.rhs.clone();
            with_tail.push(Sym::N(tail));
            g.productions.push(beta);
            g.productions.push(Production { lhs: i, rhs: with_tail });
        }
        for alpha in recursive {
            let rhs: Vec<Sym> = alpha.rhs[1..].to_vec();
            let mut with_tail = rhs.clone();
            with_tail.push(Sym::N(tail));
            g.productions.push(Production { lhs: tail, rhs });
            g.productions.push(Production { lhs: tail, rhs: with_tail });
        }
        g.dedup();
    }
    remove_useless(&g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::parse_grammar;

    #[test]
    fn immediate_left_recursion() {
        let g = parse_grammar("S -> S a | b").unwrap();
        let e = eliminate_left_recursion(&g).unwrap();
        assert_eq!(e.to_string(), "S -> b | b S'\nS' -> a | a S'\n");
        assert!(left_recursive_nonterminals(&e).is_empty());
        assert!(!e.accepts_empty);
    }

    #[test]
    fn pure_cycle_generates_nothing() {
        let g = parse_grammar("S -> S").unwrap();
        assert_eq!(eliminate_left_recursion(&g).unwrap_err(), Error::GeneratesNothing);
    }

    #[test]
    fn indirect_and_hidden_left_recursion() {
        let g = parse_grammar("S -> A a | b\nA -> S c | B A d\nB -> ; | e").unwrap();
        assert_eq!(left_recursive_nonterminals(&g), vec![0, 1]);
        let e = eliminate_left_recursion(&g).unwrap();
        assert!(left_recursive_nonterminals(&e).is_empty(), "{e}");
    }

    #[test]
    fn epsilon_flag() {
        let g = parse_grammar("S -> ( S ) S | ;").unwrap();
        let e = eliminate_left_recursion(&g).unwrap();
        assert!(e.accepts_empty);
        assert!(e.productions.iter().all(|p| !p.rhs.is_empty()));
        assert_eq!(e.productions.len(), 4);
    }

    #[test]
    fn units_and_useless() {
        let g = parse_grammar("S -> A | x\nA -> B\nB -> A | y\nC -> z").unwrap();
        let u = remove_useless(&remove_units(&g)).unwrap();
        assert_eq!(u.to_string(), "S -> x | y\n");
    }
}
