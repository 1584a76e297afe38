//! Writes a compiled connector as a Graphviz digraph: primitives are boxes,
//! node components are circles and every edge is one name.
//!
//! cargo run --example emit_dot [FILE [MAIN]] | dot -Tsvg > connector.svg

use treo::cli::{compile, CompileRequest, Format};

fn main() {
    let mut args = std::env::args().skip(1);
    let entry = args
        .next()
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/corpus/alternator.treo").to_string());
    let mut req = CompileRequest::new(entry);
    req.main = args.next();
    req.format = Format::Dot;
    match compile(&req) {
        Ok(dot) => print!("{dot}"),
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(e.code);
        }
    }
}
