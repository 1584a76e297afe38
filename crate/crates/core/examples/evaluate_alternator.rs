//! Instantiates `alternator<k>` for a few values of `k` and lists the
//! primitive instances it expands to. Internal nodes come out hidden under
//! `$`-prefixed fresh names.
//!
//! cargo run --example evaluate_alternator

use treo::ca::CaSort;
use treo::eval::Evaluator;
use treo::sorts::{ElementKind, IoSort};
use treo::values::{Name, Ragged, Scope, Value};

const SOURCE: &str = include_str!("../corpus/alternator.treo");

fn main() {
    let sort = IoSort::new(CaSort::default());
    let mut ev = Evaluator::new(&sort);
    let scope = ev.eval_source(SOURCE, &Scope::new()).unwrap_or_else(|e| panic!("{e}"));
    let Some(Ragged::Atom(Value::Definition(alternator))) = scope.get(&Name::new("alternator")).cloned()
    else {
        panic!("alternator is not defined");
    };
    for k in 2..=4u64 {
        let a = Ragged::List((1..=k).map(|i| Ragged::Atom(Name::new("a").sub(i))).collect());
        let b = Ragged::Atom(Name::new("b").sub(1));
        let params = Ragged::List(vec![Ragged::Atom(Value::Int(k as i64))]);
        let c = ev
            .apply_definition(&alternator, &params, &Ragged::List(vec![a, b]))
            .unwrap_or_else(|e| panic!("{e}"));
        println!("alternator<{k}>: {} primitives", c.len());
        for e in &c.elements {
            let ElementKind::Primitive { definition, .. } = &e.kind else {
                continue;
            };
            let ins: Vec<_> = e.inputs.iter().map(Name::to_string).collect();
            let outs: Vec<_> = e.outputs.iter().map(Name::to_string).collect();
            println!("  {definition}({} -> {})", ins.join(","), outs.join(","));
        }
    }
}
