//! Benchmark sweeps over parameterized input families.

use std::io::Write;
use std::thread;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::engines::{self, Engine, Outcome, RunOptions};
use crate::error::{Error, Result};
use crate::grammar::recognize;
use crate::zoo::{zoo_get, ZooKind};

pub const CSV_HEADER: &str =
    "family,n,engine,n_conf,engine_calls,cond_execs,memo_hits,visited_hits,union_elem_ops,max_frame_depth,wall_ns,outcome";

/// One (family, size, engine) measurement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BenchRow {
    pub family: String,
    pub n: usize,
    pub engine: String,
    pub n_conf: usize,
    pub engine_calls: u64,
    pub cond_execs: u64,
    pub memo_hits: u64,
    pub visited_hits: u64,
    pub union_elem_ops: u64,
    pub max_frame_depth: u64,
    pub wall_ns: u128,
    pub outcome: String,
    /// Largest terminator set of the run. Not part of the CSV.
    #[serde(skip)]
    pub max_set_card: u64,
}

impl BenchRow {
    pub fn work(&self) -> u64 {
        self.engine_calls + self.union_elem_ops
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// `a^n b^n c^n` on the `anbncn` automaton.
    Anbncn,
    /// `1^n` on the `expo-counter` automaton.
    ExpoCounter,
    /// Random balanced words of length `n` in which no bracket pair has
    /// more than two directly nested pairs or top-level siblings.
    Dyck,
    /// Random strings of length `n` over `a`, `b`.
    Ambiguous,
    /// Random palindromes of length `n`.
    Palindrome,
    /// `a^n` against the left-recursive grammar.
    Leftrec,
}

impl Family {
    pub const ALL: [Family; 6] =
        [Family::Anbncn, Family::ExpoCounter, Family::Dyck, Family::Ambiguous, Family::Palindrome, Family::Leftrec];

    pub fn name(self) -> &'static str {
        match self {
            Family::Anbncn => "anbncn",
            Family::ExpoCounter => "expo-counter",
            Family::Dyck => "dyck",
            Family::Ambiguous => "ambiguous",
            Family::Palindrome => "palindrome",
            Family::Leftrec => "leftrec",
        }
    }

    pub fn from_name(name: &str) -> Result<Family> {
        Family::ALL.into_iter().find(|f| f.name() == name).ok_or_else(|| Error::UnknownFamily(name.to_string()))
    }

    /// The input of size `n`. Random families draw from a generator seeded
    /// by `seed` and `n`, so every engine sees the same word.
    pub fn input(self, n: usize, seed: u64) -> Vec<String> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (n as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
        let word: String = match self {
            Family::Anbncn => ["a", "b", "c"].iter().map(|s| s.repeat(n)).collect(),
            Family::ExpoCounter => "1".repeat(n),
            Family::Leftrec => "a".repeat(n),
            Family::Ambiguous => (0..n).map(|_| if rng.random() { 'a' } else { 'b' }).collect(),
            Family::Palindrome => {
                let half: String = (0..n / 2).map(|_| if rng.random() { 'a' } else { 'b' }).collect();
                let mid = if n % 2 == 1 { if rng.random() { "a" } else { "b" } } else { "" };
                format!("{half}{mid}{}", half.chars().rev().collect::<String>())
            }
            Family::Dyck => {
                let mut out = String::with_capacity(n);
                bounded_forest(n / 2, &mut rng, &mut out);
                out
            }
        };
        word.chars().map(String::from).collect()
    }

    /// Runs one cell.
    pub fn run(self, n: usize, seed: u64, opts: &RunOptions) -> Result<Outcome> {
        let input = self.input(n, seed);
        let entry = zoo_get(self.name())?;
        match entry.kind {
            ZooKind::Automaton => engines::run(&entry.automaton()?, &input, opts),
            ZooKind::Grammar => recognize(&entry.grammar()?, &input, opts, true),
        }
    }
}

/// Appends a sequence of at most two bracket trees using `pairs` pairs in
/// total; every tree's children again form such a sequence.
fn bounded_forest(pairs: usize, rng: &mut ChaCha8Rng, out: &mut String) {
    match pairs {
        0 => {}
        1 => out.push_str("()"),
        _ if rng.random() => bounded_tree(pairs, rng, out),
        _ => {
            let left = rng.random_range(1..pairs);
            bounded_tree(left, rng, out);
            bounded_tree(pairs - left, rng, out);
        }
    }
}

fn bounded_tree(pairs: usize, rng: &mut ChaCha8Rng, out: &mut String) {
    out.push('(');
    bounded_forest(pairs - 1, rng, out);
    out.push(')');
}

fn row(family: Family, n: usize, engine: Engine, result: Result<Outcome>) -> BenchRow {
    let mut row = BenchRow {
        family: family.name().to_string(),
        n,
        engine: engine.as_str().to_string(),
        n_conf: 0,
        engine_calls: 0,
        cond_execs: 0,
        memo_hits: 0,
        visited_hits: 0,
        union_elem_ops: 0,
        max_frame_depth: 0,
        wall_ns: 0,
        outcome: "error".to_string(),
        max_set_card: 0,
    };
    if let Ok(out) = result {
        let m = &out.metrics;
        row.n_conf = out.n_conf;
        row.engine_calls = m.engine_calls;
        row.cond_execs = m.cond_execs;
        row.memo_hits = m.memo_hits;
        row.visited_hits = m.visited_hits;
        row.union_elem_ops = m.union_elem_ops;
        row.max_frame_depth = m.max_frame_depth;
        row.wall_ns = m.wall_time.as_nanos();
        row.max_set_card = m.max_set_card;
        row.outcome = out.verdict.label().to_string();
    }
    row
}

/// Runs every (size, engine) cell, using up to `jobs` threads (none
/// beyond the caller's when `jobs` is 1). Rows come
/// back ordered by size, then by the order of `engines`. A cell that fails,
/// for example a deterministic engine on a grammar family, yields a row
/// with outcome `error`.
pub fn sweep(
    family: Family,
    sizes: &[usize],
    engines: &[Engine],
    seed: u64,
    base: &RunOptions,
    jobs: usize,
) -> Vec<BenchRow> {
    let cells: Vec<(usize, Engine)> = sizes.iter().flat_map(|&n| engines.iter().map(move |&e| (n, e))).collect();
    let jobs = jobs.clamp(1, cells.len().max(1));
    let run_cell = |&(n, engine): &(usize, Engine)| {
        let opts = RunOptions { engine, ..base.clone() };
        row(family, n, engine, family.run(n, seed, &opts))
    };
    if jobs == 1 {
        return cells.iter().map(run_cell).collect();
    }
    let mut rows: Vec<Option<BenchRow>> = vec![None; cells.len()];
    thread::scope(|s| {
        let handles: Vec<_> = (0..jobs)
            .map(|j| {
                let (cells, run_cell) = (&cells, &run_cell);
                s.spawn(move || (j..cells.len()).step_by(jobs).map(|i| (i, run_cell(&cells[i]))).collect::<Vec<_>>())
            })
            .collect();
        for h in handles {
            for (i, r) in h.join().expect("bench worker panicked") {
                rows[i] = Some(r);
            }
        }
    });
    rows.into_iter().map(|r| r.expect("every cell ran")).collect()
}

pub fn write_csv<W: Write>(rows: &[BenchRow], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(CSV_HEADER.split(',')).map_err(|e| Error::Io(e.to_string()))?;
    for r in rows {
        w.serialize(r).map_err(|e| Error::Io(e.to_string()))?;
    }
    w.flush()?;
    Ok(())
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let pts: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

/// Parses `a..b` (inclusive), `a..b:step` or a comma-separated list.
pub fn parse_sizes(text: &str) -> std::result::Result<Vec<usize>, String> {
    let bad = || format!("bad size range `{text}`");
    if let Some((range, step)) = text.split_once(':').or(Some((text, "1"))).filter(|_| text.contains("..")) {
        let (a, b) = range.split_once("..").ok_or_else(bad)?;
        let a: usize = a.trim().parse().map_err(|_| bad())?;
        let b: usize = b.trim().parse().map_err(|_| bad())?;
        let step: usize = step.trim().parse().map_err(|_| bad())?;
        if a > b || step == 0 {
            return Err(bad());
        }
        return Ok((a..=b).step_by(step).collect());
    }
    text.split(',').map(|s| s.trim().parse().map_err(|_| bad())).collect()
}
