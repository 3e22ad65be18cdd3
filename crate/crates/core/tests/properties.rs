mod common;

use common::{all_words, chars, random_automaton};
use memopda::engines::{self, Engine, RunOptions};
use memopda::model::{parse_automaton, Automaton, Configuration, Machine, Rule, Tape};
use memopda::oracle::{brute_force_accepts, OracleVerdict};
use memopda::zoo::zoo_get;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn oracle_answers(aut: &Automaton, max_len: usize) -> Vec<OracleVerdict> {
    all_words(&chars("ab"), max_len).iter().map(|w| brute_force_accepts(aut, w, 12, 20_000).unwrap()).collect()
}

fn disjoint(a: &Rule, b: &Rule) -> bool {
    let differ = |x: Option<usize>, y: Option<usize>| matches!((x, y), (Some(x), Some(y)) if x != y);
    differ(a.state, b.state) || differ(a.top, b.top) || a.tape.iter().zip(&b.tape).any(|(x, y)| differ(*x, *y))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn source_round_trip_keeps_behavior(seed in any::<u64>(), choose in any::<bool>()) {
        let src = random_automaton(&mut ChaCha8Rng::seed_from_u64(seed), choose);
        let a = parse_automaton(&src).unwrap();
        let b = parse_automaton(&a.to_source()).unwrap();
        prop_assert_eq!(a.to_source(), b.to_source());
        prop_assert_eq!(oracle_answers(&a, 4), oracle_answers(&b, 4));
    }

    #[test]
    fn swapping_disjoint_rules_keeps_dispatch(seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let src = random_automaton(&mut ChaCha8Rng::seed_from_u64(seed), true);
        let a = parse_automaton(&src).unwrap();
        let rule_lines: Vec<usize> = src.lines().enumerate().filter(|(_, l)| l.starts_with("rule ")).map(|(i, _)| i).collect();
        // never move the trailing catch-all
        let i = pick.index(rule_lines.len() - 2);
        prop_assume!(disjoint(&a.rules()[i], &a.rules()[i + 1]));
        let mut lines: Vec<&str> = src.lines().collect();
        lines.swap(rule_lines[i], rule_lines[i + 1]);
        let b = parse_automaton(&lines.join("\n")).unwrap();
        for q in 0..a.states().len() {
            for t in 0..a.tape_syms().len() {
                for z in 0..a.stack_syms().len() {
                    let act = |aut: &Automaton| aut.rule_for(q, [t], z).map(|r| aut.rules()[r].action.clone());
                    prop_assert_eq!(act(&a), act(&b));
                }
            }
        }
    }

    #[test]
    fn nondeterministic_engines_match_brute_force(seed in any::<u64>(), word in "[ab]{0,5}") {
        let src = random_automaton(&mut ChaCha8Rng::seed_from_u64(seed), true);
        let aut = parse_automaton(&src).unwrap();
        let w = chars(&word);
        let truth = brute_force_accepts(&aut, &w, 24, 200_000).unwrap();
        for engine in [Engine::IntN, Engine::SimN] {
            let out = engines::run(&aut, &w, &RunOptions::new(engine)).unwrap();
            let nc = out.n_conf as u64;
            prop_assert!(out.metrics.engine_calls <= nc * (nc + 1));
            // without a cut branch the set semantics is exact
            if out.metrics.visited_hits == 0 && truth != OracleVerdict::Unknown {
                prop_assert_eq!(out.verdict.is_accepted(), truth == OracleVerdict::Accept, "{}\n{}", engine, src);
            }
            if out.verdict.is_accepted() {
                prop_assert_ne!(truth, OracleVerdict::Reject, "{} accepted\n{}", engine, src);
            }
        }
    }

    #[test]
    fn deterministic_counters_are_linear(seed in any::<u64>(), word in "[ab]{0,5}") {
        let src = random_automaton(&mut ChaCha8Rng::seed_from_u64(seed), false);
        let aut = parse_automaton(&src).unwrap();
        let out = engines::run(&aut, &chars(&word), &RunOptions::new(Engine::SimD)).unwrap();
        let nc = out.n_conf as u64;
        if out.verdict.is_terminating() {
            prop_assert!(out.metrics.cond_execs <= nc);
            prop_assert!(out.metrics.engine_calls <= 2 * nc);
            prop_assert!(out.metrics.max_frame_depth <= nc);
        }
    }
}

#[test]
fn conf_index_bijection_on_a_zoo_automaton() {
    let aut = zoo_get("anbncn").unwrap().automaton().unwrap();
    let tape = Tape::new(&aut, &chars("aabbc")).unwrap();
    let m = Machine::new(&aut, &tape);
    let (q, t, g) = (aut.states().len(), tape.len(), aut.stack_syms().len());
    assert_eq!(m.n_conf(), q * t * g);
    let mut hit = vec![false; m.n_conf()];
    for state in 0..q {
        for head in 0..t {
            for top in 0..g {
                let c = Configuration { state, heads: vec![head], top };
                let i = m.index(&c);
                assert!(!hit[i]);
                hit[i] = true;
                assert_eq!(m.decode(i), c);
            }
        }
    }
    assert!(hit.iter().all(|&h| h));
}

#[test]
fn n_conf_is_linear_in_tape_length() {
    let aut = zoo_get("expo-counter").unwrap().automaton().unwrap();
    for n in 0..20 {
        let tape = Tape::new(&aut, &chars(&"1".repeat(n))).unwrap();
        assert_eq!(Machine::new(&aut, &tape).n_conf(), 5 * (n + 2) * 3);
    }
}
