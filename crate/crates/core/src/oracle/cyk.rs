use log::debug;

use super::to_cnf;
use crate::error::Result;
use crate::grammar::{Grammar, Sym};

/// A CYK recognizer over a precomputed normal form.
#[derive(Debug, Clone)]
pub struct Cyk {
    cnf: Option<Grammar>,
    accepts_empty: bool,
    terminals: Vec<String>,
    unary: Vec<(usize, usize)>,
    binary: Vec<(usize, usize, usize)>,
}

impl Cyk {
    pub fn new(g: &Grammar) -> Result<Cyk> {
        let cnf = match to_cnf(g) {
            Ok(c) => Some(c),
            // the language is empty
            Err(crate::error::Error::GeneratesNothing) => None,
            Err(e) => return Err(e),
        };
        let mut unary = Vec::new();
        let mut binary = Vec::new();
        if let Some(c) = &cnf {
            for p in &c.productions {
                match p.rhs[..] {
                    [Sym::T(t)] => unary.push((p.lhs, t)),
                    [Sym::N(b), Sym::N(c)] => binary.push((p.lhs, b, c)),
                    _ => unreachable!("normal form"),
                }
            }
        }
        Ok(Cyk {
            accepts_empty: cnf.as_ref().is_some_and(|c| c.accepts_empty),
            terminals: g.terminals.clone(),
            cnf,
            unary,
            binary,
        })
    }

    pub fn recognize<S: AsRef<str>>(&self, input: &[S]) -> bool {
        let Some(cnf) = &self.cnf else { return false };
        if input.is_empty() {
            return self.accepts_empty;
        }
        let mut word = Vec::with_capacity(input.len());
        for tok in input {
            match self.terminals.iter().position(|t| t == tok.as_ref()) {
                Some(t) => word.push(t),
                None => {
                    debug!("cyk: `{}` is not a terminal", tok.as_ref());
                    return false;
                }
            }
        }
        let n = word.len();
        let nts = cnf.nonterminals.len();
        // table[len-1][start] is a bit vector over nonterminals
        let mut table = vec![vec![vec![false; nts]; n]; n];
        for (i, &t) in word.iter().enumerate() {
            for &(a, u) in &self.unary {
                if u == t {
                    table[0][i][a] = true;
                }
            }
        }
        for len in 2..=n {
            for i in 0..=n - len {
                for split in 1..len {
                    for &(a, b, c) in &self.binary {
                        if table[split - 1][i][b] && table[len - split - 1][i + split][c] {
                            table[len - 1][i][a] = true;
                        }
                    }
                }
            }
        }
        table[n - 1][0][cnf.start]
    }
}

/// Whether `g` derives `input`. Tokens outside the terminal alphabet make
/// the answer false.
pub fn cyk_recognize<S: AsRef<str>>(g: &Grammar, input: &[S]) -> bool {
    match Cyk::new(g) {
        Ok(c) => c.recognize(input),
        Err(e) => {
            debug!("cyk: {e}");
            false
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::parse_grammar;

    fn chars(s: &str) -> Vec<String> {
        s.chars().map(String::from).collect()
    }

    #[test]
    fn dyck() {
        let g = parse_grammar("S -> ( S ) S | ;").unwrap();
        assert!(cyk_recognize(&g, &chars("()")));
        assert!(cyk_recognize(&g, &chars("")));
        assert!(cyk_recognize(&g, &chars("(()())")));
        assert!(!cyk_recognize(&g, &chars(")(")));
        assert!(!cyk_recognize(&g, &chars("(()")));
        assert!(!cyk_recognize(&g, &chars("(x)")));
    }

    #[test]
    fn empty_language() {
        let g = parse_grammar("S -> S").unwrap();
        assert!(!cyk_recognize(&g, &chars("")));
    }
}
