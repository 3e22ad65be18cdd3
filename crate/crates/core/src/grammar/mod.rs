//! Context-free grammars: parsing, left-recursion elimination and
//! compilation to a one-way nondeterministic pushdown automaton.

mod compile;
mod transform;

pub use compile::{compile_to_npda, recognize, CompiledNpda};
pub use transform::{
    eliminate_left_recursion, left_recursive_nonterminals, nullable, remove_epsilon, remove_units, remove_useless,
};

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sym {
    T(usize),
    N(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Production {
    pub lhs: usize,
    pub rhs: Vec<Sym>,
}

/// A grammar over named terminals and nonterminals.
///
/// `accepts_empty` adds the empty string to the language independently of
/// the productions; transformations that drop ε-productions record the
/// start symbol's nullability there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grammar {
    pub nonterminals: Vec<String>,
    pub terminals: Vec<String>,
    pub productions: Vec<Production>,
    pub start: usize,
    pub accepts_empty: bool,
}

const RESERVED: &[&str] = &["->", "|", ";", "<", ">", "*", "=>"];

fn is_nonterminal_name(tok: &str) -> bool {
    tok.chars().next().is_some_and(|c| c.is_ascii_uppercase())
}

impl Grammar {
    pub fn terminal_id(&self, name: &str) -> Option<usize> {
        self.terminals.iter().position(|t| t == name)
    }

    pub fn nonterminal_id(&self, name: &str) -> Option<usize> {
        self.nonterminals.iter().position(|t| t == name)
    }

    pub fn alternatives(&self, nt: usize) -> impl Iterator<Item = &Production> {
        self.productions.iter().filter(move |p| p.lhs == nt)
    }

    pub fn sym_name(&self, s: Sym) -> &str {
        match s {
            Sym::T(t) => &self.terminals[t],
            Sym::N(n) => &self.nonterminals[n],
        }
    }

    /// Maps tokens to terminal ids.
    pub fn encode<S: AsRef<str>>(&self, input: &[S]) -> Result<Vec<usize>> {
        input
            .iter()
            .map(|t| self.terminal_id(t.as_ref()).ok_or_else(|| Error::UnknownTerminal(t.as_ref().to_string())))
            .collect()
    }

    /// Total number of right-hand-side symbols.
    pub fn size(&self) -> usize {
        self.productions.iter().map(|p| p.rhs.len()).sum()
    }

    /// A fresh nonterminal name derived from `base`.
    pub(crate) fn fresh_nonterminal(&mut self, base: &str) -> usize {
        let mut name = format!("{base}'");
        while self.nonterminals.contains(&name) {
            name.push('\'');
        }
        self.nonterminals.push(name);
        self.nonterminals.len() - 1
    }

    pub(crate) fn dedup(&mut self) {
        let mut seen = std::collections::HashSet::new();
        self.productions.retain(|p| seen.insert(p.clone()));
    }
}

/// Parses `NT -> rhs | rhs ...` lines. Tokens starting with an uppercase
/// letter are nonterminals and must have a production; every other token is
/// a terminal. `;` is the empty right-hand side and the first left-hand
/// side is the start symbol.
pub fn parse_grammar(text: &str) -> Result<Grammar> {
    let mut lines = Vec::new();
    let mut nonterminals: Vec<String> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let toks: Vec<&str> = raw.split('#').next().unwrap_or("").split_whitespace().collect();
        if toks.is_empty() {
            continue;
        }
        let no = i + 1;
        if toks.len() < 2 || toks[1] != "->" {
            return Err(Error::GrammarSyntax { line: no, msg: "expected `NT -> ...`".into() });
        }
        if !is_nonterminal_name(toks[0]) {
            return Err(Error::GrammarSyntax {
                line: no,
                msg: format!("left-hand side `{}` must start with an uppercase letter", toks[0]),
            });
        }
        if !nonterminals.iter().any(|n| n == toks[0]) {
            nonterminals.push(toks[0].to_string());
        }
        lines.push((no, toks));
    }
    if lines.is_empty() {
        return Err(Error::EmptyGrammar);
    }

    let index: HashMap<&str, usize> = nonterminals.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
    let mut terminals: Vec<String> = Vec::new();
    let mut productions = Vec::new();
    for (no, toks) in &lines {
        let lhs = index[toks[0]];
        for alt in toks[2..].split(|t| *t == "|") {
            let rhs = match alt {
                [";"] => Vec::new(),
                [] => {
                    return Err(Error::GrammarSyntax { line: *no, msg: "empty alternative; write `;`".into() });
                }
                syms => syms
                    .iter()
                    .map(|&tok| {
                        if RESERVED.contains(&tok) {
                            Err(Error::GrammarSyntax { line: *no, msg: format!("`{tok}` is reserved") })
                        } else if is_nonterminal_name(tok) {
                            index.get(tok).map(|&n| Sym::N(n)).ok_or_else(|| Error::UndeclaredNonterminal {
                                line: *no,
                                name: tok.to_string(),
                            })
                        } else {
                            let t = terminals.iter().position(|t| t == tok).unwrap_or_else(|| {
                                terminals.push(tok.to_string());
                                terminals.len() - 1
                            });
                            Ok(Sym::T(t))
                        }
                    })
                    .collect::<Result<Vec<_>>>()?,
            };
            productions.push(Production { lhs, rhs });
        }
    }
    let mut g = Grammar { nonterminals, terminals, productions, start: 0, accepts_empty: false };
    g.dedup();
    Ok(g)
}

impl fmt::Display for Grammar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut order: Vec<usize> = vec![self.start];
        order.extend((0..self.nonterminals.len()).filter(|&n| n != self.start));
        for nt in order {
            let alts: Vec<String> = self
                .alternatives(nt)
                .map(|p| {
                    if p.rhs.is_empty() {
                        ";".to_string()
                    } else {
                        p.rhs.iter().map(|&s| self.sym_name(s)).collect::<Vec<_>>().join(" ")
                    }
                })
                .collect();
            if !alts.is_empty() {
                writeln!(f, "{} -> {}", self.nonterminals[nt], alts.join(" | "))?;
            }
        }
        Ok(())
    }
}
