use std::fmt::Write as _;

use super::{eliminate_left_recursion, Grammar, Sym};
use crate::engines::{self, Outcome, RejectReason, RunOptions, Verdict};
use crate::error::Result;
use crate::metrics::Metrics;
use crate::model::{parse_automaton, Automaton};

/// A one-way nondeterministic automaton recognizing a grammar's language
/// top-down, with a description of what each state stands for.
#[derive(Debug, Clone)]
pub struct CompiledNpda {
    pub automaton: Automaton,
    pub source: String,
    pub provenance: Vec<(String, String)>,
}

fn bottom_name(g: &Grammar) -> String {
    let mut name = "$".to_string();
    while g.terminals.contains(&name) || g.nonterminals.contains(&name) {
        name.push('$');
    }
    name
}

/// Compiles `g` top-down.
///
/// The grammar symbol being expanded sits on top of the stack in state
/// `scan`. A terminal on top is matched against the tape and popped via
/// `popme`; a nonterminal is expanded by a binary tree of `choose` steps over
/// its alternatives, replacing the top by the last body symbol and pushing
/// the rest right to left. Every pop resumes the suspended frame's own symbol
/// in `scan`; a pop back onto the bottom frame goes to `check`, which
/// accepts on `>`.
///
/// The result is only a correct recognizer for grammars without left
/// recursion: the engines cut a configuration that recurs while active.
pub fn compile_to_npda(g: &Grammar) -> Result<CompiledNpda> {
    let bottom = bottom_name(g);
    let sym = |s: Sym| g.sym_name(s).to_string();
    let mut states: Vec<String> = ["init", "scan", "popme", "check"].map(String::from).to_vec();
    let mut provenance: Vec<(String, String)> = vec![
        ("init".into(), format!("push start symbol {}", g.nonterminals[g.start])),
        ("scan".into(), "expand or match the top symbol".into()),
        ("popme".into(), "symbol derived; pop".into()),
        ("check".into(), "start symbol derived; accept on right endmarker".into()),
    ];
    let mut rules = String::new();
    writeln!(rules, "rule init < {bottom} => push scan R {}", g.nonterminals[g.start]).unwrap();

    for (t, name) in g.terminals.iter().enumerate() {
        let _ = t;
        writeln!(rules, "rule scan {name} {name} => op popme R {name}").unwrap();
        writeln!(rules, "rule scan * {name} => halt").unwrap();
    }

    for (a, name) in g.nonterminals.iter().enumerate() {
        let alts: Vec<usize> = (0..g.productions.len()).filter(|&p| g.productions[p].lhs == a).collect();
        // op-branch target (state, new top) for each alternative
        let mut targets = Vec::with_capacity(alts.len());
        for &p in &alts {
            let rhs = &g.productions[p].rhs;
            let target = match rhs.len() {
                0 => ("popme".to_string(), name.clone()),
                1 => ("scan".to_string(), sym(rhs[0])),
                m => {
                    for j in 1..m {
                        let here = format!("p{p}.{j}");
                        let next = if j + 1 < m { format!("p{p}.{}", j + 1) } else { "scan".to_string() };
                        writeln!(rules, "rule {here} * * => push {next} S {}", sym(rhs[m - 1 - j])).unwrap();
                        let body: Vec<String> = rhs.iter().map(|&s| sym(s)).collect();
                        provenance.push((here.clone(), format!("{name} -> {} ({j} of {} stacked)", body.join(" "), m)));
                        states.push(here);
                    }
                    (format!("p{p}.1"), sym(rhs[m - 1]))
                }
            };
            targets.push(target);
        }
        match targets.len() {
            0 => writeln!(rules, "rule scan * {name} => halt").unwrap(),
            1 => writeln!(rules, "rule scan * {name} => op {} S {}", targets[0].0, targets[0].1).unwrap(),
            _ => {
                let mut counter = 0;
                let mut nodes = Vec::new();
                let root = choose_tree(name, &targets, &mut counter, &mut nodes);
                writeln!(rules, "rule scan * {name} => choose {root}").unwrap();
                for (state, body) in nodes {
                    writeln!(rules, "rule {state} * {name} => choose {body}").unwrap();
                    provenance.push((state.clone(), format!("choice among alternatives of {name}")));
                    states.push(state);
                }
            }
        }
    }

    writeln!(rules, "rule popme * * => pop").unwrap();
    writeln!(rules, "rule check > {bottom} => accept").unwrap();
    writeln!(rules, "rule check * {bottom} => halt").unwrap();
    writeln!(rules, "follow * popme {bottom} * => check S UNDER").unwrap();
    writeln!(rules, "follow * popme * * => scan S UNDER").unwrap();

    let mut stack = vec![bottom];
    stack.extend(g.nonterminals.iter().cloned());
    stack.extend(g.terminals.iter().cloned());
    let source = format!(
        "pda grammar\nheads 1\ntapesyms {}\nstacksyms {}\nstates {}\nstart init\n{rules}",
        g.terminals.join(" "),
        stack.join(" "),
        states.join(" ")
    );
    let automaton = parse_automaton(&source)?;
    Ok(CompiledNpda { automaton, source, provenance })
}

/// Emits the inner nodes of a balanced binary choice tree over `targets`
/// and returns the root's `branch | branch` text.
fn choose_tree(
    nt: &str,
    targets: &[(String, String)],
    counter: &mut usize,
    nodes: &mut Vec<(String, String)>,
) -> String {
    let mid = targets.len().div_ceil(2);
    let mut side = |part: &[(String, String)]| -> String {
        if part.len() == 1 {
            format!("{} S {}", part[0].0, part[0].1)
        } else {
            *counter += 1;
            let state = format!("{nt}.c{counter}");
            let slot = nodes.len();
            nodes.push((state.clone(), String::new()));
            let body = choose_tree(nt, part, counter, nodes);
            nodes[slot].1 = body;
            format!("{state} S {nt}")
        }
    };
    let left = side(&targets[..mid]);
    let right = side(&targets[mid..]);
    format!("{left} | {right}")
}

/// Decides membership of `input` in the language of `g`.
///
/// With `eliminate` set, left recursion is removed first and the empty
/// string is answered from the resulting `accepts_empty` flag. Without it
/// the grammar is compiled as is, which can miss derivations of
/// left-recursive grammars.
pub fn recognize<S: AsRef<str>>(g: &Grammar, input: &[S], opts: &RunOptions, eliminate: bool) -> Result<Outcome> {
    g.encode(input)?;
    let g = if eliminate {
        let e = eliminate_left_recursion(g)?;
        if input.is_empty() {
            let verdict =
                if e.accepts_empty { Verdict::Accepted } else { Verdict::Rejected(RejectReason::Exhausted) };
            return Ok(Outcome { verdict, metrics: Metrics::default(), n_conf: 0 });
        }
        e
    } else {
        g.clone()
    };
    let compiled = compile_to_npda(&g)?;
    engines::run(&compiled.automaton, input, opts)
}
