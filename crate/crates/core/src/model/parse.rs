use super::{Action, Automaton, Branch, FollowRule, Move, Rule, TopExpr, LEFT_END, RIGHT_END};
use crate::error::{Error, Result};

const KEYWORDS: &[&str] = &["*", "=>", "|"];

#[derive(Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    col: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let line = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push(Token { text: &line[s..i], col: line[..s].chars().count() + 1 });
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    out
}

struct Line<'a> {
    no: usize,
    toks: Vec<Token<'a>>,
    pos: usize,
    end_col: usize,
}

impl<'a> Line<'a> {
    fn err(&self, col: usize, msg: impl Into<String>) -> Error {
        Error::Syntax { line: self.no, col, msg: msg.into() }
    }

    fn next(&mut self, what: &str) -> Result<Token<'a>> {
        let tok = *self.toks.get(self.pos).ok_or_else(|| self.err(self.end_col, format!("expected {what}")))?;
        self.pos += 1;
        Ok(tok)
    }

    fn expect(&mut self, lit: &str) -> Result<()> {
        let tok = self.next(&format!("`{lit}`"))?;
        if tok.text != lit {
            let (col, text) = (tok.col, tok.text);
            return Err(self.err(col, format!("expected `{lit}`, found `{text}`")));
        }
        Ok(())
    }

    fn finish(&self) -> Result<()> {
        match self.toks.get(self.pos) {
            Some(t) => Err(self.err(t.col, format!("unexpected `{}`", t.text))),
            None => Ok(()),
        }
    }
}

struct Decls {
    heads: usize,
    tape: Vec<String>,
    stack: Vec<String>,
    states: Vec<String>,
}

impl Decls {
    fn lookup(names: &[String], name: &str) -> Option<usize> {
        names.iter().position(|n| n == name)
    }

    fn state(&self, line: &mut Line<'_>) -> Result<usize> {
        let tok = line.next("state")?;
        Self::lookup(&self.states, tok.text)
            .ok_or_else(|| Error::UndeclaredState { line: line.no, name: tok.text.to_string() })
    }

    fn state_pat(&self, line: &mut Line<'_>) -> Result<Option<usize>> {
        if line.toks.get(line.pos).is_some_and(|t| t.text == "*") {
            line.pos += 1;
            return Ok(None);
        }
        self.state(line).map(Some)
    }

    fn sym(&self, line: &mut Line<'_>, tape: bool) -> Result<usize> {
        let (names, kind) = if tape { (&self.tape, "tape") } else { (&self.stack, "stack") };
        let tok = line.next(if tape { "tape symbol" } else { "stack symbol" })?;
        Self::lookup(names, tok.text)
            .ok_or_else(|| Error::UndeclaredSymbol { line: line.no, kind, name: tok.text.to_string() })
    }

    fn sym_pat(&self, line: &mut Line<'_>, tape: bool) -> Result<Option<usize>> {
        if line.toks.get(line.pos).is_some_and(|t| t.text == "*") {
            line.pos += 1;
            return Ok(None);
        }
        self.sym(line, tape).map(Some)
    }

    fn moves(&self, line: &mut Line<'_>) -> Result<Vec<Move>> {
        (0..self.heads)
            .map(|_| {
                let tok = line.next("move")?;
                match tok.text {
                    "L" => Ok(Move::L),
                    "S" => Ok(Move::S),
                    "R" => Ok(Move::R),
                    other => {
                        let col = tok.col;
                        Err(line.err(col, format!("expected L, S or R, found `{other}`")))
                    }
                }
            })
            .collect()
    }

    fn branch(&self, line: &mut Line<'_>) -> Result<Branch> {
        if line.toks.get(line.pos).is_some_and(|t| matches!(t.text, "push" | "pop")) {
            return Err(Error::ChooseStackEffect { line: line.no });
        }
        let state = self.state(line)?;
        let moves = self.moves(line)?;
        let top = self.sym(line, false)?;
        Ok(Branch { state, moves, top })
    }

    fn rule(&self, line: &mut Line<'_>) -> Result<Rule> {
        let state = self.state_pat(line)?;
        let tape = (0..self.heads).map(|_| self.sym_pat(line, true)).collect::<Result<Vec<_>>>()?;
        let top = self.sym_pat(line, false)?;
        line.expect("=>")?;
        let kw = line.next("action")?;
        let (kw, col) = (kw.text, kw.col);
        let action = match kw {
            "push" => {
                let state = self.state(line)?;
                let moves = self.moves(line)?;
                let symbol = self.sym(line, false)?;
                Action::Push { state, moves, symbol }
            }
            "op" => Action::Op(self.branch(line)?),
            "pop" => Action::Pop,
            "halt" => Action::Halt,
            "accept" => Action::Accept,
            "choose" => {
                let first = self.branch(line)?;
                line.expect("|")?;
                let second = self.branch(line)?;
                Action::Choose(Box::new([first, second]))
            }
            other => return Err(line.err(col, format!("unknown action `{other}`"))),
        };
        line.finish()?;
        Ok(Rule { state, tape, top, action, line: line.no })
    }

    fn follow(&self, line: &mut Line<'_>) -> Result<FollowRule> {
        let under_state = self.state_pat(line)?;
        let top_state = self.state_pat(line)?;
        let under_sym = self.sym_pat(line, false)?;
        let top_sym = self.sym_pat(line, false)?;
        line.expect("=>")?;
        let state = self.state(line)?;
        let moves = self.moves(line)?;
        let top = match line.toks.get(line.pos).map(|t| t.text) {
            Some(kw @ ("UNDER" | "TOP" | "MIN" | "MAX")) => {
                line.pos += 1;
                match kw {
                    "UNDER" => TopExpr::Under,
                    "TOP" => TopExpr::Top,
                    "MIN" => TopExpr::Min,
                    _ => TopExpr::Max,
                }
            }
            Some("LIT") => {
                line.pos += 1;
                TopExpr::Lit(self.sym(line, false)?)
            }
            _ => TopExpr::Lit(self.sym(line, false)?),
        };
        line.finish()?;
        Ok(FollowRule { under_state, top_state, under_sym, top_sym, state, moves, top, line: line.no })
    }
}

fn names(line: &Line<'_>, reserved: &[&str]) -> Result<Vec<String>> {
    let mut out: Vec<String> = Vec::new();
    for tok in &line.toks[1..] {
        if KEYWORDS.contains(&tok.text) || reserved.contains(&tok.text) {
            return Err(line.err(tok.col, format!("`{}` is reserved", tok.text)));
        }
        if out.iter().any(|n| n == tok.text) {
            return Err(line.err(tok.col, format!("duplicate name `{}`", tok.text)));
        }
        out.push(tok.text.to_string());
    }
    Ok(out)
}

/// Parses the line-based automaton format.
///
/// Declarations (`pda`, `heads`, `tapesyms`, `stacksyms`, `states`, `start`)
/// may appear in any order; `rule` and `follow` lines are resolved after all
/// declarations have been read.
pub fn parse_automaton(text: &str) -> Result<Automaton> {
    let mut name = None;
    let mut heads = None;
    let mut tape = None;
    let mut stack = None;
    let mut states = None;
    let mut start_line = None;
    let mut body = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let toks = tokenize(raw);
        if toks.is_empty() {
            continue;
        }
        let end_col = raw.split('#').next().unwrap_or("").chars().count() + 1;
        let line = Line { no: i + 1, toks, pos: 1, end_col };
        match line.toks[0].text {
            "pda" => {
                let mut line = line;
                name = Some(line.next("automaton name")?.text.to_string());
                line.finish()?;
            }
            "heads" => {
                let mut line = line;
                let tok = line.next("head count")?;
                let k: usize = tok.text.parse().ok().filter(|&k| (1..=4).contains(&k)).ok_or_else(|| {
                    line.err(tok.col, format!("head count must be 1..=4, found `{}`", tok.text))
                })?;
                line.finish()?;
                heads = Some(k);
            }
            "tapesyms" => tape = Some(names(&line, &[LEFT_END, RIGHT_END])?),
            "stacksyms" => stack = Some(names(&line, &[])?),
            "states" => states = Some(names(&line, &[])?),
            "start" => start_line = Some(line),
            "rule" | "follow" => body.push(line),
            other => return Err(line.err(line.toks[0].col, format!("unknown directive `{other}`"))),
        }
    }

    let name = name.ok_or(Error::MissingDeclaration("pda"))?;
    let stack = stack.filter(|s| !s.is_empty()).ok_or(Error::MissingDeclaration("stacksyms"))?;
    let states = states.filter(|s| !s.is_empty()).ok_or(Error::MissingDeclaration("states"))?;
    let mut tape_syms = vec![LEFT_END.to_string(), RIGHT_END.to_string()];
    tape_syms.extend(tape.unwrap_or_default());
    let decls = Decls { heads: heads.unwrap_or(1), tape: tape_syms, stack, states };

    let mut start_line = start_line.ok_or(Error::MissingDeclaration("start"))?;
    let start = decls.state(&mut start_line)?;
    start_line.finish()?;

    let mut rules = Vec::new();
    let mut follows = Vec::new();
    for mut line in body {
        if line.toks[0].text == "rule" {
            rules.push(decls.rule(&mut line)?);
        } else {
            follows.push(decls.follow(&mut line)?);
        }
    }

    Ok(Automaton::new(name, decls.heads, decls.tape, decls.stack, decls.states, start, rules, follows))
}
