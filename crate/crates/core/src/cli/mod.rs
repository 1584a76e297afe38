//! The `compile`, `check` and `run` pipelines behind the `treo` binary.
//!
//! A request names an entry file; the main definition (by default the last
//! one in the file) is instantiated with its declared interface, surgery
//! inserts node components and the result is written as JSON or DOT, or
//! composed into one automaton and simulated.

mod output;

use std::collections::BTreeSet;
use std::fmt;
use std::path::{Path, PathBuf};

use crate::ca::{self, CaSort};
use crate::eval::{Evaluator, Options, Warning};
use crate::sorts::{
    check_well_formed, optimize_nodes, surgery_with_boundary, IoComposite, IoMaps, IoSort, OpaqueSort,
};
use crate::syntax::{self, desugar_file};
use crate::values::{ErrorClass, EvalError, Name, Ragged, Scope, Value};

pub use output::{to_dot, to_json};

pub const SORTS: &[&str] = &["ca", "opaque"];

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Json,
    Dot,
}

#[derive(Clone, Debug)]
pub struct CompileRequest {
    pub entry: PathBuf,
    /// Definition to instantiate. Defaults to the last one in the file.
    pub main: Option<String>,
    /// Searched in order after the bundled standard library.
    pub search_paths: Vec<PathBuf>,
    pub sort: String,
    pub strict_no_recursion: bool,
    pub optimize_nodes: bool,
    pub recursion_depth: usize,
    pub seed: u64,
    pub format: Format,
}

impl CompileRequest {
    pub fn new(entry: impl Into<PathBuf>) -> Self {
        CompileRequest {
            entry: entry.into(),
            main: None,
            search_paths: Vec::new(),
            sort: "ca".into(),
            strict_no_recursion: false,
            optimize_nodes: false,
            recursion_depth: Options::default().max_depth,
            seed: 0,
            format: Format::Json,
        }
    }
}

/// A failure with the process exit code it maps to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

pub const EXIT_SYNTAX: i32 = 1;
pub const EXIT_EVAL: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_SCRIPT: i32 = 4;

impl CliError {
    pub fn new(code: i32, message: impl Into<String>) -> Self {
        CliError {
            code,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.message)
    }
}

impl std::error::Error for CliError {}

impl From<EvalError> for CliError {
    fn from(e: EvalError) -> Self {
        let code = match e.class {
            ErrorClass::Syntax => EXIT_SYNTAX,
            ErrorClass::Io => EXIT_IO,
            ErrorClass::Eval => EXIT_EVAL,
        };
        CliError::new(code, format!("⚡ {e}"))
    }
}

/// A compiled main definition after surgery.
pub struct Compiled<S: IoMaps> {
    pub sort: IoSort<S>,
    pub main: String,
    /// Declared interface names in order.
    pub boundary: Vec<Name>,
    /// Primitive instances before surgery.
    pub instances: IoComposite<S::Component>,
    /// Instances and node components after surgery.
    pub connector: IoComposite<S::Component>,
    pub warnings: Vec<Warning>,
}

fn read_entry(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::new(EXIT_IO, format!("cannot read {}: {e}", path.display())))
}

/// Runs the pipeline up to and including surgery.
pub fn compile_with<S: IoMaps>(inner: S, req: &CompileRequest) -> Result<Compiled<S>, CliError> {
    let source = read_entry(&req.entry)?;
    compile_source_with(inner, &source, req)
}

/// [`compile_with`] on source text; `req.entry` is only used in messages and
/// to locate sibling modules.
pub fn compile_source_with<S: IoMaps>(
    inner: S,
    source: &str,
    req: &CompileRequest,
) -> Result<Compiled<S>, CliError> {
    let ast = syntax::parse_source(source).map_err(|e| {
        CliError::new(
            EXIT_SYNTAX,
            format!("{}:{}: {e}", req.entry.display(), e.span()),
        )
    })?;
    let ast = desugar_file(&ast);
    let sort = IoSort::new(inner);
    let options = Options {
        recursion: !req.strict_no_recursion,
        max_depth: req.recursion_depth,
    };
    let (main, boundary, connector, warnings) = {
        let mut ev = Evaluator::with_options(&sort, options);
        ev.search_paths = req.search_paths.clone();
        if let Some(dir) = req.entry.parent() {
            let dir = if dir.as_os_str().is_empty() { Path::new(".") } else { dir };
            ev.search_paths.push(dir.to_path_buf());
        }
        let scope = ev.eval_file(&ast, &Scope::new())?;
        let main = match &req.main {
            Some(m) => m.clone(),
            None => ast
                .assignments
                .last()
                .map(|a| a.name.clone())
                .ok_or_else(|| CliError::new(EXIT_EVAL, "⚡ the file defines nothing to compile"))?,
        };
        let Some(Ragged::Atom(Value::Definition(d))) = scope.get(&Name::new(main.as_str())).cloned() else {
            return Err(CliError::new(EXIT_EVAL, format!("⚡ no definition named `{main}`")));
        };
        if !d.lit.params.is_empty() {
            return Err(CliError::new(
                EXIT_EVAL,
                format!(
                    "⚡ main definition `{main}` takes parameters; parameters cannot be given on the \
                     command line. Wrap it in a definition without parameters, for example \
                     `main(a[1:3],b[1]) {{ {main}<3>(a[1:3],b[1]) }}`, and select that with -m"
                ),
            ));
        }
        let mut q = Vec::new();
        for node in &d.lit.nodes {
            let names = ev.eval_variable(&node.var, &d.scope).map_err(|e| {
                CliError::from(e.context(format!(
                    "interface of main definition `{main}` must have a fixed size"
                )))
            })?;
            q.push(names);
        }
        let q = Ragged::List(q);
        let boundary: Vec<Name> = q.flatten().into_iter().cloned().collect();
        let connector = ev.apply_definition(&d, &Ragged::List(Vec::new()), &q)?;
        let mut warnings = std::mem::take(&mut ev.warnings);
        let depth = ev.max_depth_seen();
        if depth * 2 > req.recursion_depth {
            warnings.push(Warning {
                message: format!(
                    "instantiations nested {depth} deep (limit {})",
                    req.recursion_depth
                ),
                span: None,
            });
        }
        (main, boundary, connector, warnings)
    };
    let mut warnings = warnings;
    let ins = sort.inputs_of(&connector);
    let outs = sort.outputs_of(&connector);
    for b in &boundary {
        if ins.contains(b) && outs.contains(b) {
            warnings.push(Warning {
                message: format!("boundary name `{b}` is used as both input and output inside `{main}`"),
                span: None,
            });
        }
    }
    let boundary_set: BTreeSet<Name> = boundary.iter().cloned().collect();
    let instances = connector;
    let mut connector = surgery_with_boundary(&sort, &instances, &boundary_set);
    if req.optimize_nodes {
        connector = optimize_nodes(&sort, &connector);
    }
    let violations = check_well_formed(&connector);
    if let Some(v) = violations.first() {
        return Err(CliError::new(
            EXIT_EVAL,
            format!("⚡ connector is not well-formed at `{}` after surgery", v.name),
        ));
    }
    Ok(Compiled {
        sort,
        main,
        boundary,
        instances,
        connector,
        warnings,
    })
}

fn unknown_sort(id: &str) -> CliError {
    CliError::new(
        EXIT_EVAL,
        format!("⚡ unknown sort `{id}` (available: {})", SORTS.join(", ")),
    )
}

/// `treo compile`: the serialized connector.
pub fn compile(req: &CompileRequest) -> Result<String, CliError> {
    match req.sort.as_str() {
        "ca" => render(&compile_with(CaSort::default(), req)?, req),
        "opaque" => render(&compile_with(OpaqueSort, req)?, req),
        other => Err(unknown_sort(other)),
    }
}

fn render<S: IoMaps>(c: &Compiled<S>, req: &CompileRequest) -> Result<String, CliError> {
    Ok(match req.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&to_json(c, req)).expect("json");
            s.push('\n');
            s
        }
        Format::Dot => to_dot(c),
    })
}

/// `treo check`: warnings from a successful compilation, one per line.
pub fn check(req: &CompileRequest) -> Result<Vec<String>, CliError> {
    let warnings = match req.sort.as_str() {
        "ca" => compile_with(CaSort::default(), req)?.warnings,
        "opaque" => compile_with(OpaqueSort, req)?.warnings,
        other => return Err(unknown_sort(other)),
    };
    Ok(warnings
        .into_iter()
        .map(|w| match w.span {
            Some(s) => format!("warning: {s}: {}", w.message),
            None => format!("warning: {}", w.message),
        })
        .collect())
}

/// Compiles with the `ca` sort and composes everything into one automaton.
pub fn automaton(req: &CompileRequest) -> Result<ca::Automaton, CliError> {
    if req.sort != "ca" {
        return Err(CliError::new(
            EXIT_EVAL,
            format!("⚡ run needs the ca sort, not `{}`", req.sort),
        ));
    }
    let c = compile_with(CaSort::default(), req)?;
    let parts: Vec<_> = c.connector.elements.iter().map(|e| e.inner.clone()).collect();
    ca::product_all(&parts, c.sort.inner.state_cap)
        .map_err(|e| CliError::new(EXIT_EVAL, format!("⚡ {e}")))
}

/// `treo run`: the trace as JSON lines.
pub fn run(req: &CompileRequest, script: &Path, steps: Option<usize>) -> Result<String, CliError> {
    let text = std::fs::read_to_string(script)
        .map_err(|e| CliError::new(EXIT_IO, format!("cannot read {}: {e}", script.display())))?;
    let script = ca::parse_script(&text).map_err(|e| CliError::new(EXIT_SCRIPT, e.to_string()))?;
    let a = automaton(req)?;
    let trace = ca::run(&a, &script, steps, req.seed)
        .map_err(|e| CliError::new(EXIT_SCRIPT, e.to_string()))?;
    Ok(trace.to_json_lines())
}
