//! Acceptance criteria. Runs as a plain binary so that every criterion
//! prints exactly one PASS or FAIL line regardless of output capture.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use memopda::bench::{loglog_slope, Family};
use memopda::engines::{self, BudgetKind, Engine, RunOptions, Verdict};
use memopda::grammar::{eliminate_left_recursion, left_recursive_nonterminals, recognize};
use memopda::model::{parse_automaton, Automaton};
use memopda::oracle::{enumerate_language, Cyk};
use memopda::zoo::{zoo_entries, zoo_get, ZooKind};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

mod common;

use common::{all_words, chars, random_automaton};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($fmt)+));
        }
    };
}

fn zoo_automaton(name: &str) -> Automaton {
    zoo_get(name).unwrap().automaton().unwrap()
}

fn within(started: Instant, limit: Duration) -> Result<(), String> {
    let took = started.elapsed();
    if took < limit {
        Ok(())
    } else {
        Err(format!("took {took:.2?}, limit {limit:?}"))
    }
}

fn linear_time_bound() -> Check {
    let started = Instant::now();
    let aut = zoo_automaton("anbncn");
    let opts = RunOptions::new(Engine::SimD);
    let mut worst = 0.0f64;
    for n in 2..=200 {
        let out = engines::run(&aut, &Family::Anbncn.input(n, 0), &opts).map_err(|e| e.to_string())?;
        let m = &out.metrics;
        let nc = out.n_conf as u64;
        ensure!(out.verdict == Verdict::Accepted, "n={n}: {:?}", out.verdict);
        ensure!(m.engine_calls <= 2 * nc, "n={n}: engine_calls {} > 2*{nc}", m.engine_calls);
        ensure!(m.cond_execs <= nc, "n={n}: cond_execs {} > {nc}", m.cond_execs);
        worst = worst.max(m.engine_calls as f64 / nc as f64);
    }
    within(started, Duration::from_secs(5))?;
    Ok(format!("max engine_calls/n_conf = {worst:.3} over n=2..200"))
}

fn exponential_vs_linear() -> Check {
    let started = Instant::now();
    let aut = zoo_automaton("expo-counter");
    let mut int_calls = Vec::new();
    let mut sim_work = Vec::new();
    for n in 4..=12 {
        let input = Family::ExpoCounter.input(n, 0);
        let int = engines::run(&aut, &input, &RunOptions::new(Engine::IntD)).map_err(|e| e.to_string())?;
        let sim = engines::run(&aut, &input, &RunOptions::new(Engine::SimD)).map_err(|e| e.to_string())?;
        ensure!(int.verdict.is_accepted() && sim.verdict.is_accepted(), "n={n}: not accepted");
        ensure!(
            sim.metrics.cond_execs <= sim.n_conf as u64,
            "n={n}: simd cond_execs {} > n_conf {}",
            sim.metrics.cond_execs,
            sim.n_conf
        );
        int_calls.push((n, int.metrics.engine_calls));
        sim_work.push((n as f64, sim.metrics.work() as f64));
    }
    let mut ratios = Vec::new();
    for w in int_calls.windows(2) {
        let (n, s) = w[0];
        let ratio = w[1].1 as f64 / s as f64;
        if n >= 6 {
            ensure!((1.8..=2.2).contains(&ratio), "intd ratio s({})/s({n}) = {ratio:.3}", n + 1);
            ratios.push(ratio);
        }
    }
    let slope = loglog_slope(&sim_work);
    ensure!(slope <= 1.2, "simd work slope {slope:.3} > 1.2");
    within(started, Duration::from_secs(10))?;
    let lo = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = ratios.iter().cloned().fold(0.0, f64::max);
    Ok(format!("intd ratios in [{lo:.3}, {hi:.3}], simd work slope {slope:.3}"))
}

fn quadratic_calls_cubic_work() -> Check {
    let started = Instant::now();
    let g = zoo_get("ambiguous").unwrap().grammar().unwrap();
    let opts = RunOptions::new(Engine::SimN);
    let mut points = Vec::new();
    for len in 4..=40 {
        for k in 0..5u64 {
            let input = Family::Ambiguous.input(len, 1000 + k);
            let out = recognize(&g, &input, &opts, true).map_err(|e| e.to_string())?;
            let m = &out.metrics;
            let nc = out.n_conf as u64;
            ensure!(out.verdict.is_terminating(), "len={len}: {:?}", out.verdict);
            ensure!(m.engine_calls <= nc * (nc + 1), "len={len}: engine_calls {} > n_conf(n_conf+1)", m.engine_calls);
            points.push((len as f64, m.work() as f64));
        }
    }
    let slope = loglog_slope(&points);
    ensure!(slope <= 3.2, "work slope {slope:.3} > 3.2");
    within(started, Duration::from_secs(60))?;
    Ok(format!("185 runs, work slope {slope:.3}"))
}

fn oracle_equivalence() -> Check {
    let started = Instant::now();
    let opts = RunOptions::new(Engine::SimN);
    let mut total = 0;
    for name in ["dyck", "ambiguous", "palindrome"] {
        let g = zoo_get(name).unwrap().grammar().unwrap();
        let cyk = Cyk::new(&g).map_err(|e| e.to_string())?;
        for w in all_words(&g.terminals, 10) {
            let ours = recognize(&g, &w, &opts, true).map_err(|e| e.to_string())?.verdict.is_accepted();
            ensure!(ours == cyk.recognize(&w), "{name} on {:?}: simn {ours}, cyk {}", w.concat(), !ours);
            total += 1;
        }
    }
    within(started, Duration::from_secs(120))?;
    Ok(format!("{total} strings, 100% agreement"))
}

fn deterministic_fallback() -> Check {
    let mut total = 0;
    let mut max_card = 0;
    for entry in zoo_entries().iter().filter(|e| e.kind == ZooKind::Automaton) {
        let aut = entry.automaton().map_err(|e| e.to_string())?;
        if !aut.is_deterministic() {
            continue;
        }
        let alphabet: Vec<String> = aut.tape_syms()[2..].to_vec();
        for w in all_words(&alphabet, 8) {
            let mut accepted = Vec::new();
            for engine in Engine::ALL {
                let out = engines::run(&aut, &w, &RunOptions::new(engine)).map_err(|e| e.to_string())?;
                if !engine.is_deterministic() {
                    max_card = max_card.max(out.metrics.max_set_card);
                    ensure!(
                        out.metrics.max_set_card <= 1,
                        "{} on {:?}: {engine} built a set of {}",
                        entry.name,
                        w.concat(),
                        out.metrics.max_set_card
                    );
                }
                ensure!(
                    !matches!(out.verdict, Verdict::BudgetExceeded(_)),
                    "{} on {:?}: {engine} ran out of budget",
                    entry.name,
                    w.concat()
                );
                accepted.push(out.verdict.is_accepted());
            }
            ensure!(
                accepted.iter().all(|&a| a == accepted[0]),
                "{} on {:?}: acceptance differs across engines {accepted:?}",
                entry.name,
                w.concat()
            );
            total += 1;
        }
    }
    Ok(format!("{total} inputs, all engines agree, max set cardinality {max_card}"))
}

fn engine_cross_equivalence() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let budget = RunOptions { max_steps: 200_000, ..Default::default() };
    let (mut det_cases, mut nondet_cases) = (0, 0);
    let (mut accepted, mut errors, mut looping) = (0, 0, 0);
    for seed in 0..600 {
        let src = random_automaton(&mut rng, false);
        let aut = parse_automaton(&src).map_err(|e| format!("seed {seed}: {e}\n{src}"))?;
        let words = all_words(&chars("ab"), 5);
        for w in words.iter().filter(|_| rng.random_bool(0.3)) {
            let run = |engine| engines::run(&aut, w, &RunOptions { engine, ..budget.clone() });
            let int_d = run(Engine::IntD);
            let sim_d = run(Engine::SimD);
            match (&int_d, &sim_d) {
                (Ok(i), Ok(s)) if i.verdict.is_terminating() => {
                    ensure!(i.verdict == s.verdict, "seed {seed} {:?}: intd {:?}, simd {:?}\n{src}", w.concat(), i.verdict, s.verdict);
                    det_cases += 1;
                    accepted += usize::from(i.verdict.is_accepted());
                }
                (Ok(_), _) => looping += 1,
                (Err(e), Ok(s)) if s.verdict.is_terminating() => {
                    return Err(format!("seed {seed} {:?}: intd error {e}, simd {:?}\n{src}", w.concat(), s.verdict));
                }
                _ => errors += 1,
            }
            let int_n = run(Engine::IntN);
            let sim_n = run(Engine::SimN);
            if let (Ok(i), Ok(s)) = (&int_n, &sim_n) {
                if i.metrics.visited_hits == 0 && s.metrics.visited_hits == 0 {
                    ensure!(
                        i.verdict.is_accepted() == s.verdict.is_accepted(),
                        "seed {seed} {:?}: intn {:?}, simn {:?}\n{src}",
                        w.concat(),
                        i.verdict,
                        s.verdict
                    );
                    if let Ok(d) = &int_d {
                        if d.verdict.is_terminating() {
                            ensure!(
                                d.verdict.is_accepted() == i.verdict.is_accepted(),
                                "seed {seed} {:?}: intd {:?}, intn {:?}\n{src}",
                                w.concat(),
                                d.verdict,
                                i.verdict
                            );
                        }
                    }
                    nondet_cases += 1;
                }
            }
        }
    }
    ensure!(det_cases > 500 && nondet_cases > 500, "too few matched cases: {det_cases}, {nondet_cases}");
    Ok(format!(
        "600 automata, {det_cases} terminating intd/simd pairs ({accepted} accepting), \
         {nondet_cases} intn/simn pairs, {looping} diverging and {errors} failing intd runs skipped"
    ))
}

fn loop_detection() -> Check {
    let aut = zoo_automaton("self-loop");
    let empty: [&str; 0] = [];
    let mut details = Vec::new();
    for engine in [Engine::IntD, Engine::SimD] {
        let out = engines::run(&aut, &empty, &RunOptions::new(engine)).map_err(|e| e.to_string())?;
        let Verdict::NonTerminating(c) = &out.verdict else {
            return Err(format!("{engine}: {:?}", out.verdict));
        };
        ensure!(c.state == 0 && c.heads == [0] && c.top == 0, "{engine}: witness {c:?}");
        ensure!(
            out.metrics.engine_calls <= out.n_conf as u64 + 1,
            "{engine}: {} calls > n_conf+1",
            out.metrics.engine_calls
        );
        let faithful = RunOptions { faithful: true, ..RunOptions::new(engine) };
        let out2 = engines::run(&aut, &empty, &faithful).map_err(|e| e.to_string())?;
        ensure!(matches!(out2.verdict, Verdict::BudgetExceeded(_)), "{engine} faithful: {:?}", out2.verdict);
        let kind = match out2.verdict {
            Verdict::BudgetExceeded(BudgetKind::Depth) => "depth",
            _ => "steps",
        };
        details.push(format!("{engine}: NonTerminating after {} calls, faithful {kind} budget", out.metrics.engine_calls));
    }
    Ok(details.join("; "))
}

fn left_recursion_pitfall() -> Check {
    let g = zoo_get("leftrec").unwrap().grammar().unwrap();
    let opts = RunOptions::new(Engine::SimN);
    let aa = chars("aa");
    let truth = Cyk::new(&g).map_err(|e| e.to_string())?.recognize(&aa);
    ensure!(truth, "cyk says `aa` is not in the language");
    let raw = recognize(&g, &aa, &opts, false).map_err(|e| e.to_string())?.verdict.is_accepted();
    ensure!(!raw, "without elimination `aa` was accepted");
    let elim = recognize(&g, &aa, &opts, true).map_err(|e| e.to_string())?.verdict.is_accepted();
    ensure!(elim, "with elimination `aa` was rejected");
    let e = eliminate_left_recursion(&g).map_err(|e| e.to_string())?;
    ensure!(left_recursive_nonterminals(&e).is_empty(), "left recursion remains:\n{e}");
    let before = enumerate_language(&g, 6).map_err(|e| e.to_string())?;
    let after = enumerate_language(&e, 6).map_err(|e| e.to_string())?;
    ensure!(before == after, "languages differ up to length 6");
    Ok(format!("no-elim false, elim true, {} strings equal up to length 6", before.len()))
}

fn bounded_nondeterminism() -> Check {
    let g = zoo_get("dyck").unwrap().grammar().unwrap();
    let opts = RunOptions::new(Engine::SimN);
    let mut cards = Vec::new();
    let mut points = Vec::new();
    for n in 10..=200 {
        let input = Family::Dyck.input(n, 7);
        let out = recognize(&g, &input, &opts, true).map_err(|e| e.to_string())?;
        ensure!(out.verdict.is_accepted(), "n={n}: {:?}", out.verdict);
        cards.push(out.metrics.max_set_card);
        points.push((n as f64, out.metrics.work() as f64));
    }
    ensure!(cards.iter().all(|&c| c == cards[0]), "max set cardinality varies: {cards:?}");
    let slope = loglog_slope(&points);
    ensure!(slope <= 1.3, "work slope {slope:.3} > 1.3");
    Ok(format!("max set cardinality {} at every size, work slope {slope:.3}", cards[0]))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("linear-time bound", linear_time_bound),
        ("exponential vs linear", exponential_vs_linear),
        ("quadratic calls, cubic work", quadratic_calls_cubic_work),
        ("oracle equivalence", oracle_equivalence),
        ("deterministic fallback", deterministic_fallback),
        ("engine cross-equivalence", engine_cross_equivalence),
        ("loop detection", loop_detection),
        ("left-recursion pitfall", left_recursion_pitfall),
        ("bounded nondeterminism", bounded_nondeterminism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|p| Err(p.downcast_ref::<String>().cloned().unwrap_or_else(|| "panicked".into())));
        let took = started.elapsed();
        match result {
            Ok(detail) => println!("criterion {} ({name}): PASS in {took:.2?}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL in {took:.2?}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
