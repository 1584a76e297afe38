//! Ragged arrays, names, values and scopes.

mod error;
mod name;
mod ragged;
mod scope;
mod value;

pub use error::{ErrorClass, EvalError, EvalResult};
pub use name::{FreshNames, Name};
pub use ragged::{lst, AccessError, Ragged};
pub use scope::{Binding, Scope};
pub use value::{Datum, Value};
