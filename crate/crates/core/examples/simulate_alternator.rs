//! Compiles the alternator with two inputs, composes it into one constraint
//! automaton and runs it against a script. Output b1 delivers the data of
//! a1 and a2 in alternation.
//!
//! cargo run --example simulate_alternator [SEED]

use treo::ca::{parse_script, run};
use treo::cli::{automaton, CompileRequest};

const SCRIPT: &str = include_str!("../corpus/alternator2.script");

fn main() {
    let seed = std::env::args().nth(1).map_or(0, |s| s.parse().expect("numeric seed"));
    let entry = concat!(env!("CARGO_MANIFEST_DIR"), "/corpus/alternator2.treo");
    let a = automaton(&CompileRequest::new(entry)).unwrap_or_else(|e| panic!("{e}"));
    println!(
        "{} states, {} transitions, boundary {:?}",
        a.states.len(),
        a.transitions.len(),
        a.support().iter().map(|n| n.to_string()).collect::<Vec<_>>()
    );
    let script = parse_script(SCRIPT).expect("valid script");
    let trace = run(&a, &script, None, seed).expect("script fits the interface");
    for s in &trace.steps {
        let events: Vec<_> = s
            .events
            .iter()
            .map(|e| match &e.value {
                Some(v) => format!("{}={v}", e.port),
                None => e.port.to_string(),
            })
            .collect();
        println!("step {}: {} -> {}  {}", s.step, s.from, s.to, events.join(" "));
    }
    let b1: Vec<_> = trace.values_at("b1").into_iter().flatten().map(|d| d.to_string()).collect();
    println!("b1: [{}]", b1.join(", "));
}
