//! Component definitions as closures.

use std::fmt;
use std::rc::Rc;

use crate::syntax::{DefinitionLit, Span};
use crate::values::Scope;

/// A definition literal closed over the scope it was evaluated in.
pub struct Definition<C> {
    pub lit: Rc<DefinitionLit>,
    pub scope: Scope<C>,
    /// Set for top-level assignments; used for diagnostics and, when
    /// recursion is enabled, to let the body refer to the definition itself.
    pub name: Option<String>,
    pub span: Option<Span>,
}

impl<C> Definition<C> {
    pub fn label(&self) -> &str {
        self.name.as_deref().unwrap_or("<anonymous>")
    }

    /// A primitive definition's body consists of atoms.
    pub fn is_primitive(&self) -> bool {
        matches!(self.lit.body, crate::syntax::ComponentAst::Atoms(_))
    }
}

impl<C> fmt::Debug for Definition<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Definition({})", self.label())
    }
}
