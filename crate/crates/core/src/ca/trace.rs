use std::collections::{BTreeMap, BTreeSet};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use super::automaton::{Automaton, PortRole};
use super::script::StepSpec;
use super::sim::{step, Configuration, Fired, SimError};
use crate::values::{Datum, Name};

pub const TRACE_SCHEMA: u32 = 1;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum RunError {
    #[error("step {step}: unknown port `{port}`")]
    UnknownPort { step: usize, port: String },
    #[error("step {step}: {error}")]
    Environment { step: usize, error: SimError },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundaryEvent {
    pub port: Name,
    pub role: PortRole,
    pub value: Option<Datum>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StepRecord {
    pub step: usize,
    pub from: String,
    pub to: String,
    pub fired: Option<Fired>,
    pub events: Vec<BoundaryEvent>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Trace {
    pub seed: u64,
    pub ports: BTreeMap<Name, PortRole>,
    pub steps: Vec<StepRecord>,
}

impl Trace {
    /// Data that passed through a boundary port, in order.
    pub fn values_at(&self, port: &str) -> Vec<Option<Datum>> {
        self.steps
            .iter()
            .flat_map(|s| &s.events)
            .filter(|e| e.port.to_string() == port)
            .map(|e| e.value.clone())
            .collect()
    }

    /// Boundary sync sets of the fired steps, skipping quiet steps.
    pub fn boundary_labels(&self) -> Vec<BTreeSet<Name>> {
        self.steps
            .iter()
            .filter(|s| s.fired.is_some())
            .map(|s| s.events.iter().map(|e| e.port.clone()).collect())
            .collect()
    }

    /// A header line followed by one line per step.
    pub fn to_json_lines(&self) -> String {
        let boundary: BTreeMap<_, _> = self
            .ports
            .iter()
            .filter(|(_, r)| **r != PortRole::Internal)
            .collect();
        let mut out = json!({
            "schema": TRACE_SCHEMA,
            "kind": "header",
            "seed": self.seed,
            "steps": self.steps.len(),
            "ports": boundary,
        })
        .to_string();
        out.push('\n');
        for s in &self.steps {
            let line = json!({
                "step": s.step,
                "from": s.from,
                "to": s.to,
                "fired": s.fired.as_ref().map(|f| &f.sync),
                "data": s.fired.as_ref().map(|f| &f.data),
                "events": s.events,
            });
            out.push_str(&line.to_string());
            out.push('\n');
        }
        out
    }
}

fn resolve(a: &Automaton, step: usize, port: &str) -> Result<Name, RunError> {
    a.ports
        .keys()
        .find(|p| p.to_string() == port)
        .cloned()
        .ok_or_else(|| RunError::UnknownPort {
            step,
            port: port.to_string(),
        })
}

/// Runs `steps` steps (default: one per script line) from the initial
/// configuration. Steps past the end of the script are idle.
pub fn run(
    a: &Automaton,
    script: &[StepSpec],
    steps: Option<usize>,
    seed: u64,
) -> Result<Trace, RunError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut config = Configuration::initial(a);
    let n = steps.unwrap_or(script.len());
    let idle = StepSpec::default();
    let mut records = Vec::with_capacity(n);
    for i in 0..n {
        let spec = script.get(i).unwrap_or(&idle);
        let number = i + 1;
        let mut offers = BTreeMap::new();
        for (p, v) in &spec.offers {
            offers.insert(resolve(a, number, p)?, v.clone());
        }
        let mut ready = BTreeSet::new();
        for p in &spec.ready {
            ready.insert(resolve(a, number, p)?);
        }
        let from = a.states[config.state].clone();
        let fired = step(a, &mut config, &offers, &ready, &mut rng)
            .map_err(|error| RunError::Environment { step: number, error })?;
        let events = fired
            .iter()
            .flat_map(|f| &f.data)
            .filter_map(|(p, v)| match a.ports.get(p) {
                Some(r @ (PortRole::In | PortRole::Out)) => Some(BoundaryEvent {
                    port: p.clone(),
                    role: *r,
                    value: v.clone(),
                }),
                _ => None,
            })
            .collect();
        records.push(StepRecord {
            step: number,
            from,
            to: a.states[config.state].clone(),
            fired,
            events,
        });
    }
    Ok(Trace {
        seed,
        ports: a.ports.clone(),
        steps: records,
    })
}
