mod common;

use treo::ca::CaSort;
use treo::cli::{self, CompileRequest};

#[test]
fn every_main_compiles_cleanly() {
    let mains = [
        ("alternator2.treo", &["alternator2"][..]),
        ("alternator.treo", &["alt2", "alt3", "alt4"]),
        ("alternator_unrolled.treo", &["alt2", "alt3", "alt4"]),
        ("recursive_alternator.treo", &["ralt2", "ralt3", "ralt4"]),
        ("chess.treo", &["eng1", "parse", "match"]),
    ];
    for (file, names) in mains {
        for main in names {
            let mut req = CompileRequest::new(common::corpus(file));
            req.main = Some(main.to_string());
            let warnings = cli::check(&req).unwrap_or_else(|e| panic!("{file} {main}: {e}"));
            assert!(warnings.is_empty(), "{file} {main}: {warnings:?}");
        }
    }
}

#[test]
fn chess_match_instantiates_both_teams() {
    let mut req = CompileRequest::new(common::corpus("chess.treo"));
    req.main = Some("match".into());
    let c = cli::compile_with(CaSort::default(), &req).unwrap();
    let count = |d: &str| {
        c.instances
            .elements
            .iter()
            .filter(|e| matches!(&e.kind, treo::sorts::ElementKind::Primitive { definition, .. } if definition == d))
            .count()
    };
    assert_eq!(c.instances.len(), 21);
    assert_eq!((count("eng1"), count("eng2"), count("eng3")), (1, 1, 1));
    assert_eq!((count("parse"), count("concatenate"), count("majority")), (3, 3, 2));
    assert!(c.boundary.is_empty());
}

#[test]
fn opaque_fragment_keeps_its_text() {
    let mut req = CompileRequest::new(common::corpus("fragments/fifo1_opaque.treo"));
    req.sort = "opaque".into();
    let c = cli::compile_with(treo::sorts::OpaqueSort, &req).unwrap();
    assert_eq!(c.instances.elements[0].inner.atoms, ["MyFIFO1.java"]);
    assert!(cli::compile(&req).unwrap().contains("MyFIFO1.java"));
}
