//! Evaluation of Treo programs over a semantic sort.

mod builtins;
mod definition;
mod engine;
mod file;
mod index;
mod solver;
pub mod stdlib;

pub use builtins::{binary, len, negate, relation};
pub use definition::Definition;
pub use engine::{Evaluator, Options, Val, Warning};
pub use file::mentions;
pub use solver::Solutions;
