//! Parses a Treo file, prints it back, then prints the desugared form in
//! which `for` and `if` have become comprehensions.
//!
//! cargo run --example parse_and_print [FILE]

use treo::syntax::{desugar_file, parse_source, pretty_print};

const TEAM: &str = include_str!("../corpus/fragments/team.treo");

fn main() {
    let source = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path).expect("readable file"),
        None => TEAM.to_string(),
    };
    let ast = match parse_source(&source) {
        Ok(ast) => ast,
        Err(e) => {
            eprintln!("{}: {e}", e.span());
            std::process::exit(1);
        }
    };
    println!("// as written");
    print!("{}", pretty_print(&ast));
    println!("\n// desugared");
    print!("{}", pretty_print(&desugar_file(&ast)));
}
