use memopda::zoo::zoo_get;
use memopda_web::{compile_json, recognize_json, run_automaton_json, sweep_json, zoo_json, TRACE_LIMIT};
use serde_json::Value;

fn parse(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn zoo_lists_every_entry_with_source() {
    let z = parse(&zoo_json());
    let items = z.as_array().unwrap();
    assert_eq!(items.len(), 8);
    for item in items {
        let name = item["name"].as_str().unwrap();
        assert_eq!(item["source"].as_str().unwrap(), zoo_get(name).unwrap().source);
    }
}

#[test]
fn run_reports_verdict_metrics_and_trace() {
    let src = zoo_get("anbncn").unwrap().source;
    let r = parse(&run_automaton_json(src, "aabbcc", "simd", true));
    assert_eq!(r["verdict"], "Accepted");
    assert_eq!(r["accepted"], true);
    assert!(r["metrics"]["cond_execs"].as_u64().unwrap() <= r["n_conf"].as_u64().unwrap());
    let trace = r["trace"].as_array().unwrap();
    assert_eq!(trace[0], "0\t1\tcall\ts0\t0\tZ\t-");

    let r = parse(&run_automaton_json(src, "a a b", "simd", false));
    assert_eq!(r["accepted"], false);
    assert!(r["verdict"].as_str().unwrap().starts_with("Rejected"));

    let big = "a".repeat(200) + &"b".repeat(200) + &"c".repeat(200);
    let r = parse(&run_automaton_json(src, &big, "intd", true));
    assert_eq!(r["trace"].as_array().unwrap().len(), TRACE_LIMIT);
    assert_eq!(r["trace_truncated"], true);

    let loops = parse(&run_automaton_json(zoo_get("self-loop").unwrap().source, "", "intd", true));
    assert_eq!(loops["verdict"], "NonTerminating");
}

#[test]
fn errors_come_back_as_json() {
    let r = parse(&run_automaton_json("junk", "", "simd", true));
    assert!(r["error"].as_str().unwrap().contains("line 1"));
    let r = parse(&run_automaton_json(zoo_get("anbncn").unwrap().source, "", "fast", true));
    assert!(r["error"].as_str().unwrap().contains("fast"));
    let r = parse(&sweep_json("nope", "1..3", "simn", 0));
    assert!(r.get("error").is_some());
}

#[test]
fn recognize_and_pitfall() {
    let dyck = zoo_get("dyck").unwrap().source;
    assert_eq!(parse(&recognize_json(dyck, "(()())", "simn", true, true))["accepted"], true);
    assert_eq!(parse(&recognize_json(dyck, ")(", "simn", true, true))["accepted"], false);
    let leftrec = zoo_get("leftrec").unwrap().source;
    assert_eq!(parse(&recognize_json(leftrec, "aa", "simn", false, true))["accepted"], false);
    assert_eq!(parse(&recognize_json(leftrec, "aa", "simn", true, true))["accepted"], true);
    let c = parse(&compile_json(dyck, true));
    assert!(c["source"].as_str().unwrap().starts_with("pda grammar"));
}

#[test]
fn sweep_rows_and_slopes() {
    let r = parse(&sweep_json("expo-counter", "4..10", "intd,simd", 0));
    assert_eq!(r["rows"].as_array().unwrap().len(), 14);
    let slopes: Vec<(String, f64)> = r["slopes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| (p[0].as_str().unwrap().to_string(), p[1].as_f64().unwrap()))
        .collect();
    assert_eq!(slopes[0].0, "intd");
    assert!(slopes[0].1 > 3.0, "{slopes:?}");
    assert!((slopes[1].1 - 1.0).abs() < 0.2, "{slopes:?}");
}
