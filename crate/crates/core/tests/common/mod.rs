#![allow(dead_code)]

use rand::seq::IndexedRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn chars(s: &str) -> Vec<String> {
    s.chars().map(String::from).collect()
}

/// Every word of length `0..=max_len` over `alphabet`.
pub fn all_words(alphabet: &[String], max_len: usize) -> Vec<Vec<String>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w: &Vec<String>| {
                alphabet.iter().map(move |a| {
                    let mut w = w.clone();
                    w.push(a.clone());
                    w
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Source of a random complete automaton over tape symbols `a b` with at
/// most four states and three stack symbols. Head moves never leave the
/// tape: rules reading `<` move S or R, rules reading `>` move S or L, and
/// rules with a wildcard tape pattern only move S. With `choose` set, some
/// rules branch.
pub fn random_automaton(rng: &mut ChaCha8Rng, choose: bool) -> String {
    let n_states = rng.random_range(1..=4);
    let n_stack = rng.random_range(1..=3);
    let states: Vec<String> = (0..n_states).map(|i| format!("q{i}")).collect();
    let stack: Vec<String> = ["Z", "A", "B"][..n_stack].iter().map(|s| s.to_string()).collect();
    let mut src = format!(
        "pda fuzz\nheads 1\ntapesyms a b\nstacksyms {}\nstates {}\nstart q0\n",
        stack.join(" "),
        states.join(" ")
    );
    let action = |rng: &mut ChaCha8Rng, reading: &str| -> String {
        let mut mv = || match reading {
            "<" => *["S", "R"].choose(rng).unwrap(),
            ">" => *["S", "L"].choose(rng).unwrap(),
            "*" => "S",
            _ => *["L", "S", "R"].choose(rng).unwrap(),
        };
        let (m1, m2) = (mv(), mv());
        let q = states.choose(rng).unwrap();
        let s = stack.choose(rng).unwrap();
        match rng.random_range(0..if choose { 12 } else { 10 }) {
            0..=2 => format!("push {q} {m1} {s}"),
            3..=5 => format!("op {q} {m1} {s}"),
            6 | 7 => "pop".to_string(),
            8 => "halt".to_string(),
            9 => "accept".to_string(),
            _ => {
                let (q2, s2) = (states.choose(rng).unwrap(), stack.choose(rng).unwrap());
                format!("choose {q} {m1} {s} | {q2} {m2} {s2}")
            }
        }
    };
    for _ in 0..rng.random_range(3..=10) {
        let q = if rng.random_bool(0.8) { states.choose(rng).unwrap().as_str() } else { "*" };
        let t = *["<", ">", "a", "b", "*"].choose(rng).unwrap();
        let s = if rng.random_bool(0.6) { stack.choose(rng).unwrap().as_str() } else { "*" };
        let act = action(rng, t);
        src.push_str(&format!("rule {q} {t} {s} => {act}\n"));
    }
    let last = action(rng, "*");
    src.push_str(&format!("rule * * * => {last}\n"));
    for _ in 0..rng.random_range(0..=2) {
        let a = states.choose(rng).unwrap();
        let e = ["UNDER", "TOP", "MIN", "MAX"].choose(rng).unwrap();
        src.push_str(&format!("follow * {a} * * => {} S {e}\n", states.choose(rng).unwrap()));
    }
    let e = ["UNDER", "TOP", "MIN", "MAX"].choose(rng).unwrap();
    src.push_str(&format!("follow * * * * => {} S {e}\n", states.choose(rng).unwrap()));
    src
}
