//! Surgery on three primitives that share the name `y`: two write it and one
//! reads it, so `y` is mixed and the composition is not well-formed. Surgery
//! splits every name per element and inserts one node component per name.
//!
//! cargo run --example surgery

use std::collections::BTreeSet;

use treo::sorts::{
    check_well_formed, optimize_nodes, surgery, ElementKind, IoComposite, IoSort, OpaqueComponent, OpaqueSort,
};
use treo::values::Name;

fn prim(label: &str, inputs: &[&str], outputs: &[&str]) -> treo::sorts::IoPrimitive<OpaqueComponent> {
    let names = |xs: &[&str]| xs.iter().map(|x| Name::new(*x)).collect::<BTreeSet<_>>();
    let sort = IoSort::new(OpaqueSort);
    sort.wrap(
        OpaqueComponent {
            atoms: vec![label.to_string()],
            params: Vec::new(),
            inputs: names(inputs),
            outputs: names(outputs),
        },
        ElementKind::Primitive {
            definition: label.to_string(),
            span: None,
        },
    )
}

fn show(title: &str, c: &IoComposite<OpaqueComponent>) {
    println!("{title}");
    for e in &c.elements {
        let label = match &e.kind {
            ElementKind::Primitive { definition, .. } => definition.clone(),
            ElementKind::Node { default } => format!("N_{default}"),
        };
        let ins: Vec<_> = e.inputs.iter().map(Name::to_string).collect();
        let outs: Vec<_> = e.outputs.iter().map(Name::to_string).collect();
        println!("  {label:<4} in {{{}}} out {{{}}}", ins.join(", "), outs.join(", "));
    }
}

fn main() {
    let sort = IoSort::new(OpaqueSort);
    let p = IoComposite {
        elements: vec![prim("P1", &["x"], &["y"]), prim("P2", &["y"], &[]), prim("P3", &["z"], &["y"])],
    };
    show("before", &p);
    for v in check_well_formed(&p) {
        println!("  `{}` is read by {} element(s) and written by {}", v.name, v.in_degree, v.out_degree);
    }
    let s = surgery(&sort, &p);
    show("after surgery", &s);
    assert!(check_well_formed(&s).is_empty());
    show("after dropping 1-in/1-out nodes", &optimize_nodes(&sort, &s));
}
