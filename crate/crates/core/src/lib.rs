pub mod ca;
pub mod cli;
pub mod eval;
pub mod sorts;
pub mod syntax;
pub mod values;
