use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::Path;

use memopda::bench::{self, Family};
use memopda::engines::{run_traced, BudgetKind, RejectReason, WriteTracer};
use memopda::grammar::{compile_to_npda, eliminate_left_recursion, parse_grammar, recognize as recognize_grammar};
use memopda::grammar::{left_recursive_nonterminals, remove_useless, Grammar};
use memopda::model::{parse_automaton, validate as validate_automaton, Automaton};
use memopda::oracle::{brute_force_accepts, enumerate_language, Cyk, OracleVerdict, MAX_ENUM_LEN};
use memopda::zoo::{zoo_get, zoo_list as zoo_names, ZooKind};
use memopda::{Engine, Error, Outcome, RunOptions, Verdict};

pub const EXIT_ACCEPTED: u8 = 0;
pub const EXIT_REJECTED: u8 = 1;
pub const EXIT_UNDECIDED: u8 = 2;
pub const EXIT_ERROR: u8 = 3;

/// Words checked by `validate --oracle` before it refuses.
const MAX_ORACLE_WORDS: usize = 200_000;

type CmdResult = Result<u8, String>;

// Output goes through these so that a closed pipe (`| head`) ends the
// report quietly instead of panicking.
macro_rules! out {
    ($($arg:tt)*) => {{
        let _ = write!(io::stdout(), $($arg)*);
    }};
}

macro_rules! outln {
    ($($arg:tt)*) => {{
        let _ = writeln!(io::stdout(), $($arg)*);
    }};
}

pub struct Limits {
    pub max_steps: u64,
    pub max_depth: Option<u64>,
}

pub fn options(engine: Engine, limits: &Limits, faithful: bool, strict: bool) -> RunOptions {
    RunOptions {
        engine,
        max_steps: limits.max_steps,
        max_depth: limits.max_depth,
        faithful,
        strict_accept: strict,
        ..RunOptions::default()
    }
}

/// Reads `path`, or the builtin source when it has the form `zoo:NAME`.
fn load_source(path: &str) -> Result<String, String> {
    match path.strip_prefix("zoo:") {
        Some(name) => zoo_get(name).map(|e| e.source.to_string()).map_err(|e| e.to_string()),
        None => fs::read_to_string(path).map_err(|e| format!("{path}: {e}")),
    }
}

fn is_grammar_path(path: &str) -> bool {
    match path.strip_prefix("zoo:") {
        Some(name) => zoo_get(name).is_ok_and(|e| e.kind == ZooKind::Grammar),
        None => path.ends_with(".cfg"),
    }
}

fn load_automaton(path: &str) -> Result<Automaton, String> {
    parse_automaton(&load_source(path)?).map_err(|e| format!("{path}: {e}"))
}

fn load_grammar(path: &str) -> Result<Grammar, String> {
    parse_grammar(&load_source(path)?).map_err(|e| format!("{path}: {e}"))
}

fn tokens(input: &str, chars: bool) -> Vec<String> {
    if chars {
        input.chars().filter(|c| !c.is_whitespace()).map(String::from).collect()
    } else {
        input.split_whitespace().map(String::from).collect()
    }
}

fn describe_verdict(aut: Option<&Automaton>, verdict: &Verdict) -> String {
    match verdict {
        Verdict::Accepted => "Accepted".into(),
        Verdict::Rejected(RejectReason::Halt) => "Rejected (halt)".into(),
        Verdict::Rejected(RejectReason::Exhausted) => "Rejected (all branches exhausted)".into(),
        Verdict::Rejected(RejectReason::PoppedBottom) => "Rejected (popped bottom)".into(),
        Verdict::NonTerminating(c) => match aut {
            Some(a) => {
                let heads: Vec<String> = c.heads.iter().map(|h| h.to_string()).collect();
                format!("NonTerminating at ({},[{}],{})", a.states()[c.state], heads.join(","), a.stack_syms()[c.top])
            }
            None => "NonTerminating".into(),
        },
        Verdict::BudgetExceeded(BudgetKind::Steps) => "BudgetExceeded (steps)".into(),
        Verdict::BudgetExceeded(BudgetKind::Depth) => "BudgetExceeded (depth)".into(),
    }
}

fn print_metrics(out: &Outcome) {
    let m = &out.metrics;
    outln!("n_conf {}", out.n_conf);
    outln!("engine_calls {}", m.engine_calls);
    outln!("cond_execs {}", m.cond_execs);
    outln!("memo_hits {}", m.memo_hits);
    outln!("visited_hits {}", m.visited_hits);
    outln!("union_elem_ops {}", m.union_elem_ops);
    outln!("max_frame_depth {}", m.max_frame_depth);
    outln!("max_set_card {}", m.max_set_card);
    outln!("wall_ns {}", m.wall_time.as_nanos());
}

fn exit_for(verdict: &Verdict) -> u8 {
    match verdict {
        Verdict::Accepted => EXIT_ACCEPTED,
        Verdict::Rejected(_) => EXIT_REJECTED,
        Verdict::NonTerminating(_) | Verdict::BudgetExceeded(_) => EXIT_UNDECIDED,
    }
}

pub fn run(path: &str, input: &str, chars: bool, opts: &RunOptions, trace: Option<&Path>) -> CmdResult {
    let aut = load_automaton(path)?;
    let input = tokens(input, chars);
    let outcome = match trace {
        Some(tpath) => {
            let file = File::create(tpath).map_err(|e| format!("{}: {e}", tpath.display()))?;
            let mut tracer = WriteTracer::new(BufWriter::new(file));
            let out = run_traced(&aut, &input, opts, &mut tracer).map_err(|e| e.to_string())?;
            tracer.finish().map_err(|e| format!("{}: {e}", tpath.display()))?;
            out
        }
        None => memopda::run(&aut, &input, opts).map_err(|e| e.to_string())?,
    };
    outln!("{}", describe_verdict(Some(&aut), &outcome.verdict));
    print_metrics(&outcome);
    Ok(exit_for(&outcome.verdict))
}

pub fn recognize(path: &str, input: &str, chars: bool, opts: &RunOptions, eliminate: bool) -> CmdResult {
    let g = load_grammar(path)?;
    let input = tokens(input, chars);
    let outcome = recognize_grammar(&g, &input, opts, eliminate).map_err(|e| e.to_string())?;
    match outcome.verdict {
        Verdict::Accepted => outln!("true"),
        Verdict::Rejected(_) => outln!("false"),
        ref v => outln!("undecided: {}", describe_verdict(None, v)),
    }
    print_metrics(&outcome);
    Ok(exit_for(&outcome.verdict))
}

pub fn bench(
    family: &str,
    sizes: &str,
    engines: &[Engine],
    out: Option<&Path>,
    seed: u64,
    jobs: Option<usize>,
    base: &RunOptions,
) -> CmdResult {
    let family = Family::from_name(family).map_err(|e| e.to_string())?;
    let sizes = bench::parse_sizes(sizes)?;
    let jobs = jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let rows = bench::sweep(family, &sizes, engines, seed, base, jobs);
    let written = match out {
        Some(p) => {
            let file = File::create(p).map_err(|e| format!("{}: {e}", p.display()))?;
            bench::write_csv(&rows, BufWriter::new(file))
        }
        None => bench::write_csv(&rows, io::stdout().lock()),
    };
    written.map_err(|e| e.to_string())?;
    let errors = rows.iter().filter(|r| r.outcome == "error").count();
    if errors > 0 {
        eprintln!("{errors} of {} cells failed (outcome=error)", rows.len());
    }
    Ok(0)
}

/// Every word over `alphabet` of length at most `max_len`, shortest first.
fn all_words(alphabet: &[String], max_len: usize) -> Result<Vec<Vec<String>>, String> {
    let mut total: usize = 0;
    let mut layer: usize = 1;
    for _ in 0..=max_len {
        total = total.saturating_add(layer);
        layer = layer.saturating_mul(alphabet.len().max(1));
    }
    if total > MAX_ORACLE_WORDS {
        return Err(format!("{total} words up to length {max_len}; lower --max-len"));
    }
    let mut words = vec![Vec::new()];
    let mut start = 0;
    for _ in 0..max_len {
        let end = words.len();
        for i in start..end {
            for a in alphabet {
                let mut w = words[i].clone();
                w.push(a.clone());
                words.push(w);
            }
        }
        start = end;
    }
    Ok(words)
}

fn report_agreement(agree: usize, compared: usize, skipped: usize) -> u8 {
    let pct = if compared == 0 { 100.0 } else { 100.0 * agree as f64 / compared as f64 };
    out!("agreement {}% ({compared} strings", format_pct(pct));
    if skipped > 0 {
        out!(", {skipped} undecided skipped");
    }
    outln!(")");
    if agree == compared {
        0
    } else {
        1
    }
}

fn format_pct(p: f64) -> String {
    if p == 100.0 {
        "100".into()
    } else {
        format!("{p:.2}")
    }
}

pub fn validate(path: &str, oracle: bool, max_len: usize) -> CmdResult {
    if is_grammar_path(path) {
        validate_grammar(path, oracle, max_len)
    } else {
        validate_automaton_file(path, oracle, max_len)
    }
}

fn validate_automaton_file(path: &str, oracle: bool, max_len: usize) -> CmdResult {
    let aut = load_automaton(path)?;
    let report = validate_automaton(&aut);
    out!("{report}");
    let mut code = if report.is_clean() { 0 } else { 1 };
    if oracle {
        let alphabet: Vec<String> =
            aut.tape_syms().iter().filter(|s| *s != "<" && *s != ">").cloned().collect();
        let words = all_words(&alphabet, max_len)?;
        let engines: Vec<Engine> =
            Engine::ALL.into_iter().filter(|e| aut.is_deterministic() || !e.is_deterministic()).collect();
        let (mut agree, mut compared, mut skipped) = (0, 0, 0);
        for w in &words {
            let truth = match brute_force_accepts(&aut, w, 4 * aut.states().len() * (w.len() + 2) + 64, 2_000_000)
                .map_err(|e| e.to_string())?
            {
                OracleVerdict::Accept => true,
                OracleVerdict::Reject => false,
                OracleVerdict::Unknown => {
                    skipped += 1;
                    continue;
                }
            };
            for &engine in &engines {
                let out = memopda::run(&aut, w, &RunOptions::new(engine)).map_err(|e| e.to_string())?;
                let got = match out.verdict {
                    Verdict::Accepted => true,
                    Verdict::NonTerminating(_) => false,
                    Verdict::Rejected(_) if out.metrics.visited_hits == 0 => false,
                    // A rejection after cutting an active configuration may
                    // have missed a branch; it proves nothing either way.
                    _ => {
                        skipped += 1;
                        continue;
                    }
                };
                compared += 1;
                if got == truth {
                    agree += 1;
                } else {
                    outln!("disagreement: {engine} on {:?}: engine {got}, brute force {truth}", w.join(" "));
                }
            }
        }
        code = code.max(report_agreement(agree, compared, skipped));
    }
    Ok(code)
}

fn validate_grammar(path: &str, oracle: bool, max_len: usize) -> CmdResult {
    let g = load_grammar(path)?;
    outln!(
        "nonterminals {}, terminals {}, productions {}",
        g.nonterminals.len(),
        g.terminals.len(),
        g.productions.len()
    );
    let mut code = 0;
    match remove_useless(&g) {
        Ok(clean) => {
            for nt in g.nonterminals.iter().filter(|nt| !clean.nonterminals.contains(nt)) {
                outln!("warning: nonterminal `{nt}` is unreachable or derives no terminal string");
                code = 1;
            }
        }
        Err(Error::GeneratesNothing) => {
            outln!("warning: the start symbol derives no terminal string");
            code = 1;
        }
        Err(e) => return Err(format!("{path}: {e}")),
    }
    let lr = left_recursive_nonterminals(&g);
    if !lr.is_empty() {
        let names: Vec<&str> = lr.iter().map(|&a| g.nonterminals[a].as_str()).collect();
        outln!("left-recursive: {} (removed before recognition)", names.join(" "));
    }
    if oracle {
        if max_len > MAX_ENUM_LEN {
            return Err(format!("--max-len {max_len} exceeds the enumeration limit {MAX_ENUM_LEN}"));
        }
        let words = all_words(&g.terminals, max_len)?;
        let language = enumerate_language(&g, max_len).map_err(|e| e.to_string())?;
        let cyk = Cyk::new(&g).map_err(|e| e.to_string())?;
        let eliminated = match eliminate_left_recursion(&g) {
            Ok(e) => Some(e),
            Err(Error::GeneratesNothing) => None,
            Err(e) => return Err(e.to_string()),
        };
        let compiled = eliminated.as_ref().map(compile_to_npda).transpose().map_err(|e| e.to_string())?;
        let opts = RunOptions::new(Engine::SimN);
        let (mut agree, mut compared, mut skipped) = (0, 0, 0);
        for w in &words {
            let in_enum = language.contains(w);
            let in_cyk = cyk.recognize(w);
            let brute = match (&eliminated, &compiled) {
                (Some(e), _) if w.is_empty() => Some(e.accepts_empty),
                (Some(_), Some(c)) => match brute_force_accepts(&c.automaton, w, 64, 5_000_000)
                    .map_err(|e| e.to_string())?
                {
                    OracleVerdict::Accept => Some(true),
                    OracleVerdict::Reject => Some(false),
                    OracleVerdict::Unknown => None,
                },
                _ => Some(false),
            };
            let engine = recognize_grammar(&g, w, &opts, true).map_err(|e| e.to_string())?.verdict.is_accepted();
            let Some(brute) = brute else {
                skipped += 1;
                continue;
            };
            compared += 1;
            if in_enum == in_cyk && in_cyk == brute && brute == engine {
                agree += 1;
            } else {
                outln!(
                    "disagreement on {:?}: enumerate {in_enum}, cyk {in_cyk}, brute force {brute}, simn {engine}",
                    w.join(" ")
                );
            }
        }
        code = code.max(report_agreement(agree, compared, skipped));
    }
    Ok(code)
}

pub fn zoo_list() -> CmdResult {
    for name in zoo_names() {
        let e = zoo_get(name).map_err(|e| e.to_string())?;
        let kind = match e.kind {
            ZooKind::Automaton => "automaton",
            ZooKind::Grammar => "grammar",
        };
        let det = if e.deterministic { "deterministic" } else { "nondeterministic" };
        outln!("{:<14} {:<9} {:<16} {}", e.name, kind, det, e.tags.join(","));
    }
    Ok(0)
}

pub fn zoo_export(name: &str, out: Option<&Path>) -> CmdResult {
    let e = zoo_get(name).map_err(|e| e.to_string())?;
    match out {
        Some(p) if p == Path::new("-") => {
            io::stdout().write_all(e.source.as_bytes()).map_err(|e| e.to_string())?;
        }
        _ => {
            let default = e.file_name();
            let p = out.unwrap_or(Path::new(&default));
            fs::write(p, e.source).map_err(|err| format!("{}: {err}", p.display()))?;
            eprintln!("wrote {}", p.display());
        }
    }
    Ok(0)
}
