//! Solves comprehension predicates: each solution is a minimal extension of
//! the scope that makes the predicate true.
//!
//! cargo run --example solve_predicate ["PREDICATE"]

use treo::eval::{Evaluator, Solutions};
use treo::sorts::{IoSort, OpaqueSort};
use treo::syntax::parse_predicate_str;
use treo::values::{Name, Ragged, Scope, Value};

fn main() {
    let given: Vec<String> = std::env::args().skip(1).collect();
    let predicates = if given.is_empty() {
        vec![
            "i in [2..k]".to_string(),
            "i in [1..k] and j in [1..k] and i < j".to_string(),
            "i in [1, 2] or (i in [1] and j in [7])".to_string(),
            "forall x in [1..k] : x > 0".to_string(),
            "x > 0".to_string(),
        ]
    } else {
        given
    };
    let sort = IoSort::new(OpaqueSort);
    let mut ev = Evaluator::new(&sort);
    let scope: Scope<_> = [(Name::new("k"), Ragged::Atom(Value::Int(3)))].into_iter().collect();
    println!("scope: k = 3");
    for src in predicates {
        let p = match parse_predicate_str(&src) {
            Ok(p) => p,
            Err(e) => {
                println!("{src}\n  syntax error: {e}");
                continue;
            }
        };
        println!("{src}");
        match ev.solve(&p, &scope) {
            Ok(Solutions::Finite(sols)) if sols.is_empty() => println!("  no solutions"),
            Ok(Solutions::Finite(sols)) => {
                for s in sols {
                    let bound: Vec<_> = s
                        .iter()
                        .filter(|(n, _)| !scope.contains(n))
                        .map(|(n, v)| format!("{n} = {v}"))
                        .collect();
                    println!("  {{{}}}", bound.join(", "));
                }
            }
            Ok(Solutions::Infinite) => println!("  unbounded"),
            Err(e) => println!("  error: {e}"),
        }
    }
}
