#![allow(dead_code)]

pub mod automata;
pub mod predicates;
pub mod programs;
pub mod surgery_gen;

use std::path::PathBuf;

use treo::eval::Evaluator;
use treo::sorts::{IoSort, OpaqueSort};
use treo::syntax::parse_predicate_str;
use treo::values::{Binding, Name, Ragged, Scope, Value};

pub fn corpus(file: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus").join(file)
}

/// Solutions of `src` with `k` bound, restricted to the new variables.
pub fn solve(src: &str, k: i64) -> Option<Vec<predicates::Solution>> {
    let sort = IoSort::new(OpaqueSort);
    let mut ev = Evaluator::new(&sort);
    let base = Scope::new().with(Name::new("k"), Binding::Atom(Value::Int(k)));
    let p = parse_predicate_str(src).unwrap_or_else(|e| panic!("{src}: {e}"));
    let sols = ev.solve(&p, &base).unwrap_or_else(|e| panic!("{src}: {e}")).finite()?;
    let mut out: Vec<predicates::Solution> = sols
        .iter()
        .map(|s| {
            s.iter()
                .filter(|(n, _)| !base.contains(n))
                .map(|(n, v)| {
                    let Ragged::Atom(x) = v else { panic!("{n} bound to a list") };
                    (n.to_string(), x.as_int().unwrap())
                })
                .collect()
        })
        .collect();
    out.sort();
    out.dedup();
    Some(out)
}

/// The single automaton of an inline program's last definition.
pub fn automaton_of(src: &str) -> treo::ca::Automaton {
    let req = treo::cli::CompileRequest::new("inline.treo");
    let c = treo::cli::compile_source_with(treo::ca::CaSort::default(), src, &req)
        .unwrap_or_else(|e| panic!("{e}"));
    let parts: Vec<_> = c.connector.elements.iter().map(|e| e.inner.clone()).collect();
    treo::ca::product_all(&parts, treo::ca::DEFAULT_STATE_CAP).unwrap()
}
