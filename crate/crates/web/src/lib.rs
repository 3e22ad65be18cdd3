//! Browser bindings. Every exported function takes plain strings and
//! returns a JSON document; failures come back as `{"error": "..."}`.
//! The `*_json` functions are the same operations without the wasm layer.

use memopda::bench::{self, Family};
use memopda::engines::{run_traced, VecTracer};
use memopda::grammar::{compile_to_npda, eliminate_left_recursion, parse_grammar, recognize};
use memopda::model::{parse_automaton, Machine, Tape};
use memopda::zoo::{zoo_entries, ZooKind};
use memopda::{Engine, Metrics, Outcome, RunOptions, Verdict};
use serde::Serialize;
use wasm_bindgen::prelude::wasm_bindgen;

/// Trace lines returned by `run_automaton`; longer runs are cut.
pub const TRACE_LIMIT: usize = 400;

#[derive(Serialize)]
struct ZooItem {
    name: &'static str,
    kind: &'static str,
    source: &'static str,
    deterministic: bool,
    samples: Vec<(&'static str, bool)>,
}

#[derive(Serialize)]
struct RunReport {
    verdict: String,
    accepted: bool,
    n_conf: usize,
    metrics: Metrics,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    trace: Vec<String>,
    trace_truncated: bool,
}

#[derive(Serialize)]
struct SweepReport {
    rows: Vec<bench::BenchRow>,
    /// Log-log slope of work (calls plus union operations) against n, per engine.
    slopes: Vec<(String, Option<f64>)>,
}

fn tokens(input: &str, chars: bool) -> Vec<String> {
    if chars {
        input.chars().filter(|c| !c.is_whitespace()).map(String::from).collect()
    } else {
        input.split_whitespace().map(String::from).collect()
    }
}

fn report(out: Outcome, trace: Vec<String>, truncated: bool) -> RunReport {
    RunReport {
        verdict: match &out.verdict {
            Verdict::Rejected(r) => format!("Rejected ({r:?})"),
            Verdict::NonTerminating(_) => "NonTerminating".into(),
            Verdict::BudgetExceeded(k) => format!("BudgetExceeded ({k:?})"),
            Verdict::Accepted => "Accepted".into(),
        },
        accepted: out.verdict.is_accepted(),
        n_conf: out.n_conf,
        metrics: out.metrics,
        trace,
        trace_truncated: truncated,
    }
}

fn to_json<T: Serialize>(result: Result<T, String>) -> String {
    match result {
        Ok(v) => serde_json::to_string(&v).unwrap_or_else(|e| error_json(&e.to_string())),
        Err(e) => error_json(&e),
    }
}

fn error_json(msg: &str) -> String {
    serde_json::json!({ "error": msg }).to_string()
}

fn engine(name: &str) -> Result<Engine, String> {
    name.parse()
}

pub fn zoo_json() -> String {
    let items: Vec<ZooItem> = zoo_entries()
        .iter()
        .map(|e| ZooItem {
            name: e.name,
            kind: match e.kind {
                ZooKind::Automaton => "automaton",
                ZooKind::Grammar => "grammar",
            },
            source: e.source,
            deterministic: e.deterministic,
            samples: e.samples.to_vec(),
        })
        .collect();
    to_json(Ok(items))
}

pub fn run_automaton_json(source: &str, input: &str, engine_name: &str, chars: bool) -> String {
    to_json((|| {
        let aut = parse_automaton(source).map_err(|e| e.to_string())?;
        let input = tokens(input, chars);
        let mut tracer = VecTracer::default();
        let out = run_traced(&aut, &input, &RunOptions::new(engine(engine_name)?), &mut tracer)
            .map_err(|e| e.to_string())?;
        let tape = Tape::new(&aut, &input).map_err(|e| e.to_string())?;
        let m = Machine::new(&aut, &tape);
        let trace: Vec<String> = tracer
            .events
            .iter()
            .take(TRACE_LIMIT)
            .enumerate()
            .map(|(i, ev)| memopda::engines::format_event(&m, i as u64, ev))
            .collect();
        Ok(report(out, trace, tracer.events.len() > TRACE_LIMIT))
    })())
}

pub fn recognize_json(grammar: &str, input: &str, engine_name: &str, eliminate: bool, chars: bool) -> String {
    to_json((|| {
        let g = parse_grammar(grammar).map_err(|e| e.to_string())?;
        let out = recognize(&g, &tokens(input, chars), &RunOptions::new(engine(engine_name)?), eliminate)
            .map_err(|e| e.to_string())?;
        Ok(report(out, Vec::new(), false))
    })())
}

/// The automaton a grammar compiles to, after left-recursion removal when
/// `eliminate` is set.
pub fn compile_json(grammar: &str, eliminate: bool) -> String {
    to_json((|| {
        let g = parse_grammar(grammar).map_err(|e| e.to_string())?;
        let g = if eliminate { eliminate_left_recursion(&g).map_err(|e| e.to_string())? } else { g };
        let c = compile_to_npda(&g).map_err(|e| e.to_string())?;
        Ok(serde_json::json!({ "source": c.source, "provenance": c.provenance }))
    })())
}

pub fn sweep_json(family: &str, sizes: &str, engines: &str, seed: u64) -> String {
    to_json((|| {
        let family = Family::from_name(family).map_err(|e| e.to_string())?;
        let sizes = bench::parse_sizes(sizes)?;
        let engines: Vec<Engine> = engines.split(',').map(|s| engine(s.trim())).collect::<Result<_, _>>()?;
        let rows = bench::sweep(family, &sizes, &engines, seed, &RunOptions::default(), 1);
        let slopes = engines
            .iter()
            .map(|e| {
                let pts: Vec<(f64, f64)> = rows
                    .iter()
                    .filter(|r| r.engine == e.as_str() && r.outcome != "error" && r.n > 0 && r.work() > 0)
                    .map(|r| (r.n as f64, r.work() as f64))
                    .collect();
                (e.to_string(), (pts.len() >= 2).then(|| bench::loglog_slope(&pts)))
            })
            .collect();
        Ok(SweepReport { rows, slopes })
    })())
}

#[wasm_bindgen]
pub fn zoo() -> String {
    zoo_json()
}

#[wasm_bindgen]
pub fn run_automaton(source: &str, input: &str, engine: &str, chars: bool) -> String {
    run_automaton_json(source, input, engine, chars)
}

#[wasm_bindgen]
pub fn recognize_grammar(grammar: &str, input: &str, engine: &str, eliminate: bool, chars: bool) -> String {
    recognize_json(grammar, input, engine, eliminate, chars)
}

#[wasm_bindgen]
pub fn compile_grammar(grammar: &str, eliminate: bool) -> String {
    compile_json(grammar, eliminate)
}

#[wasm_bindgen]
pub fn sweep(family: &str, sizes: &str, engines: &str, seed: u64) -> String {
    sweep_json(family, sizes, engines, seed)
}
