//! Random I/O-composites for surgery properties.

use std::collections::BTreeSet;

use rand::Rng;
use treo::sorts::{ElementKind, IoComposite, IoPrimitive, OpaqueComponent};
use treo::values::Name;

pub fn random_composite<R: Rng>(rng: &mut R) -> IoComposite<OpaqueComponent> {
    let n_names = rng.gen_range(1..=8);
    let pool: Vec<Name> = (0..n_names).map(|i| Name::new(format!("x{i}"))).collect();
    let pick = |rng: &mut R| -> BTreeSet<Name> {
        pool.iter().filter(|_| rng.gen_bool(0.25)).cloned().collect()
    };
    let elements = (0..rng.gen_range(0..=6))
        .map(|i| {
            let inputs = pick(rng);
            let outputs: BTreeSet<Name> = pick(rng).difference(&inputs).cloned().collect();
            IoPrimitive {
                inner: OpaqueComponent {
                    atoms: vec![format!("P{i}")],
                    params: Vec::new(),
                    inputs: inputs.clone(),
                    outputs: outputs.clone(),
                },
                inputs,
                outputs,
                kind: ElementKind::Primitive {
                    definition: format!("p{i}"),
                    span: None,
                },
            }
        })
        .collect();
    IoComposite { elements }
}

/// Names used only as inputs and names used only as outputs.
pub fn open_names(p: &IoComposite<OpaqueComponent>) -> (BTreeSet<Name>, BTreeSet<Name>) {
    let ins: BTreeSet<Name> = p.elements.iter().flat_map(|e| e.inputs.iter().cloned()).collect();
    let outs: BTreeSet<Name> = p.elements.iter().flat_map(|e| e.outputs.iter().cloned()).collect();
    (
        ins.difference(&outs).cloned().collect(),
        outs.difference(&ins).cloned().collect(),
    )
}
