//! Acceptance gate: one PASS/FAIL line per criterion.
//!
//! cargo test --test acceptance -- --nocapture

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use common::automata::{random_automaton, random_interfaces, same_traces};
use common::predicates::{brute_force, random_pred};
use common::programs::ill_typed;
use common::surgery_gen::{open_names, random_composite};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use treo::ca::{self, Automaton, CaSort, DEFAULT_STATE_CAP};
use treo::cli::{self, CompileRequest, Format, EXIT_EVAL};
use treo::sorts::{
    check_well_formed, surgery, ElementKind, IoComposite, IoSort, OpaqueComponent, OpaqueSort, Replacement,
    Substitution,
};
use treo::syntax::{parse_source, pretty_print};
use treo::values::{Datum, Name};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:?}, limit {limit:?}"))?;
    Ok(t)
}

fn request(file: &str, main: &str) -> CompileRequest {
    let mut req = CompileRequest::new(common::corpus(file));
    req.main = Some(main.to_string());
    req
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let dir = common::corpus("fragments");
    let mut files: Vec<_> = std::fs::read_dir(&dir)
        .map_err(|e| e.to_string())?
        .map(|e| e.unwrap().path())
        .collect();
    files.sort();
    ensure(files.len() == 7, || format!("expected 7 fragments, found {}", files.len()))?;
    for f in &files {
        let name = f.file_name().unwrap().to_string_lossy().to_string();
        let text = std::fs::read_to_string(f).map_err(|e| e.to_string())?;
        let ast = parse_source(&text).map_err(|e| format!("{name}: {e}"))?;
        let printed = pretty_print(&ast);
        let again = parse_source(&printed).map_err(|e| format!("{name} reprinted: {e}"))?;
        ensure(again == ast, || format!("{name}: AST changed after printing"))?;
        ensure(pretty_print(&again) == printed, || format!("{name}: printing is not stable"))?;
    }
    let t = within(start, Duration::from_secs(1))?;
    Ok(format!("{} fragments round-trip in {t:?}", files.len()))
}

fn b1_values(a: &Automaton, script: &str, port: &str, seed: u64) -> Result<Vec<i64>, String> {
    let text = std::fs::read_to_string(common::corpus(script)).map_err(|e| e.to_string())?;
    let script = ca::parse_script(&text).map_err(|e| e.to_string())?;
    let trace = ca::run(a, &script, None, seed).map_err(|e| e.to_string())?;
    trace
        .values_at(port)
        .into_iter()
        .map(|v| match v {
            Some(Datum::Int(i)) => Ok(i),
            other => Err(format!("non-integer datum {other:?} at {port}")),
        })
        .collect()
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let alt2 = cli::automaton(&request("alternator2.treo", "alternator2")).map_err(|e| e.message)?;
    for seed in 0..10 {
        let got = b1_values(&alt2, "alternator2.script", "b1", seed)?;
        ensure(got == [1, 2, 3, 4], || format!("seed {seed}: b1 = {got:?}"))?;
    }
    let alt3 = cli::automaton(&request("alternator.treo", "alt3")).map_err(|e| e.message)?;
    let got = b1_values(&alt3, "alternator3.script", "b[1]", 0)?;
    ensure(got == [1, 2, 3], || format!("k = 3: b[1] = {got:?}"))?;
    let t = within(start, Duration::from_secs(1))?;
    Ok(format!("b1 = [1,2,3,4] for seeds 0..9, k = 3 gives [1,2,3], {t:?}"))
}

type Signature = (String, Vec<String>, Vec<String>);

fn signatures(c: &IoComposite<Automaton>, rename: &BTreeMap<String, String>) -> Vec<Signature> {
    let names = |s: &BTreeSet<Name>| -> Vec<String> {
        let mut v: Vec<String> = s
            .iter()
            .map(|n| {
                let n = n.to_string();
                rename.get(&n).cloned().unwrap_or(n)
            })
            .collect();
        v.sort();
        v
    };
    let mut out: Vec<Signature> = c
        .elements
        .iter()
        .map(|e| {
            let def = match &e.kind {
                ElementKind::Primitive { definition, .. } => definition.clone(),
                ElementKind::Node { default } => format!("node {default}"),
            };
            (def, names(&e.inputs), names(&e.outputs))
        })
        .collect();
    out.sort();
    out
}

fn fresh_names(c: &IoComposite<Automaton>) -> Vec<String> {
    let set: BTreeSet<String> = c
        .elements
        .iter()
        .flat_map(|e| e.support())
        .filter(Name::is_fresh)
        .map(|n| n.to_string())
        .collect();
    set.into_iter().collect()
}

fn permutations(items: &[String]) -> Vec<Vec<String>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, head.clone());
            out.push(p);
        }
    }
    out
}

/// Equal instance multisets up to a bijection between hidden names.
fn same_up_to_hiding(a: &IoComposite<Automaton>, b: &IoComposite<Automaton>) -> bool {
    let (fa, fb) = (fresh_names(a), fresh_names(b));
    if fa.len() != fb.len() {
        return false;
    }
    let target = signatures(a, &BTreeMap::new());
    permutations(&fb).into_iter().any(|p| {
        let rename = p.into_iter().zip(fa.iter().cloned()).collect();
        signatures(b, &rename) == target
    })
}

fn instances(file: &str, main: &str) -> Result<IoComposite<Automaton>, String> {
    cli::compile_with(CaSort::default(), &request(file, main))
        .map(|c| c.instances)
        .map_err(|e| format!("{file} {main}: {}", e.message))
}

fn criterion_3() -> Outcome {
    for k in 2..=4 {
        let iterative = instances("alternator.treo", &format!("alt{k}"))?;
        let unrolled = instances("alternator_unrolled.treo", &format!("alt{k}"))?;
        let recursive = instances("recursive_alternator.treo", &format!("ralt{k}"))?;
        ensure(iterative.len() == 3 * k - 2, || format!("k = {k}: {} instances", iterative.len()))?;
        ensure(same_up_to_hiding(&iterative, &unrolled), || format!("k = {k}: iterative differs from unrolled"))?;
        ensure(same_up_to_hiding(&iterative, &recursive), || format!("k = {k}: recursive differs from iterative"))?;
        if k < 4 {
            let bigger = instances("alternator_unrolled.treo", &format!("alt{}", k + 1))?;
            ensure(!same_up_to_hiding(&iterative, &bigger), || format!("k = {k}: matches k + 1"))?;
        }
    }
    let mut strict = request("recursive_alternator.treo", "ralt3");
    strict.strict_no_recursion = true;
    match cli::compile_with(CaSort::default(), &strict) {
        Ok(_) => Err("strict mode accepted the recursive alternator".into()),
        Err(e) if e.code == EXIT_EVAL && e.message.contains("recursion rejected (strict semantics)") => {
            Ok("k = 2,3,4 iterative = unrolled = recursive; strict mode rejects recursion".into())
        }
        Err(e) => Err(format!("unexpected strict-mode error: {}", e.message)),
    }
}

fn opaque(label: &str, inputs: &[&str], outputs: &[&str]) -> treo::sorts::IoPrimitive<OpaqueComponent> {
    let names = |xs: &[&str]| xs.iter().map(|x| Name::new(*x)).collect::<BTreeSet<_>>();
    IoSort::new(OpaqueSort).wrap(
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

fn criterion_4() -> Outcome {
    let sort = IoSort::new(OpaqueSort);
    for case in 0..200u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(case);
        let p = random_composite(&mut rng);
        let s = surgery(&sort, &p);
        ensure(check_well_formed(&s).is_empty(), || format!("case {case}: result is not well-formed"))?;
        let expected = p.len() + p.support().len();
        ensure(s.len() == expected, || format!("case {case}: {} elements, expected {expected}", s.len()))?;
        ensure(open_names(&s) == open_names(&p), || format!("case {case}: boundary names changed"))?;
    }
    let p = IoComposite {
        elements: vec![opaque("P1", &["x"], &["y"]), opaque("P2", &["y"], &[]), opaque("P3", &["z"], &["y"])],
    };
    let s = surgery(&sort, &p);
    let show = |xs: &BTreeSet<Name>| xs.iter().map(Name::to_string).collect::<Vec<_>>().join(",");
    let got: Vec<String> = s
        .elements
        .iter()
        .map(|e| {
            let label = match &e.kind {
                ElementKind::Primitive { definition, .. } => definition.clone(),
                ElementKind::Node { default } => format!("N_{default}"),
            };
            format!("{label} {{{}}} {{{}}}", show(&e.inputs), show(&e.outputs))
        })
        .collect();
    let expected = [
        "P1 {x@1} {y@1}",
        "P2 {y@2} {}",
        "P3 {z@3} {y@3}",
        "N_x {x} {x@1}",
        "N_y {y@1,y@3} {y@2}",
        "N_z {z} {z@3}",
    ];
    ensure(got == expected, || format!("mixed example gives {got:?}"))?;
    Ok("200 random composites; mixed example gives N_y in {y@1,y@3} out {y@2}".into())
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let mut unbounded = 0;
    for case in 0..500u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(case);
        let p = random_pred(&mut rng, 3);
        let k = (case % 4) as i64;
        let src = p.to_source();
        let expected = brute_force(&p, k);
        let got = common::solve(&src, k);
        ensure(got == expected, || format!("`{src}` with k = {k}: solver {got:?}, oracle {expected:?}"))?;
        unbounded += usize::from(expected.is_none());
    }
    let t = within(start, Duration::from_secs(10))?;
    Ok(format!("500 predicates ({unbounded} unbounded), 0 discrepancies, {t:?}"))
}

fn criterion_6() -> Outcome {
    let prod = |a: &Automaton, b: &Automaton| ca::product(a, b, DEFAULT_STATE_CAP).map_err(|e| e.to_string());
    for case in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(case);
        let ports = random_interfaces(&mut rng);
        let [a, b, c] = ports.map(|p| random_automaton(&mut rng, &p));
        let absent = Substitution::from([(Name::new("absent"), Replacement::Name(Name::new("other")))]);
        for x in [&a, &b, &c] {
            ensure(x.substitute(&absent) == *x, || format!("case {case}: substitution changed {x}"))?;
            let io: BTreeSet<Name> = x.inputs().union(&x.outputs()).cloned().collect();
            ensure(x.support() == io, || format!("case {case}: supp differs from I and O"))?;
            let unit = prod(x, &Automaton::trivial())?;
            ensure(same_traces(&unit, x, 4), || format!("case {case}: trivial is not a unit"))?;
        }
        ensure(same_traces(&prod(&a, &b)?, &prod(&b, &a)?, 4), || format!("case {case}: not commutative"))?;
        let left = prod(&prod(&a, &b)?, &c)?;
        let right = prod(&a, &prod(&b, &c)?)?;
        ensure(same_traces(&left, &right, 4), || format!("case {case}: not associative"))?;
    }
    Ok("100 automaton triples satisfy identity, support, unit, commutativity, associativity".into())
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let req = CompileRequest::new("fuzz.treo");
    let mut kinds: BTreeMap<&str, usize> = BTreeMap::new();
    for case in 0..1000 {
        let (kind, src) = ill_typed(&mut rng);
        let result = catch_unwind(AssertUnwindSafe(|| cli::compile_source_with(CaSort::default(), &src, &req)))
            .map_err(|_| format!("case {case} ({kind}) panicked:\n{src}"))?;
        match result {
            Ok(_) => return Err(format!("case {case} ({kind}) was accepted:\n{src}")),
            Err(e) => ensure(e.code == EXIT_EVAL && e.message.starts_with('⚡'), || {
                format!("case {case} ({kind}): exit {} `{}`", e.code, e.message)
            })?,
        }
        *kinds.entry(kind).or_default() += 1;
    }
    let summary: Vec<String> = kinds.iter().map(|(k, n)| format!("{k} {n}")).collect();
    Ok(format!("1000 rejected with ⚡ diagnostics ({})", summary.join(", ")))
}

fn binary(args: &[&str], dir: &Path) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_treo"))
        .args(args)
        .current_dir(dir)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || String::from_utf8_lossy(&out.stderr).to_string())?;
    Ok(out.stdout)
}

fn criterion_8() -> Outcome {
    let dir = common::corpus("");
    let mut req = request("alternator.treo", "alt3");
    req.seed = 42;
    let script = common::corpus("alternator3.script");
    let mut dot = req.clone();
    dot.format = Format::Dot;
    let first = (
        cli::compile(&req).map_err(|e| e.message)?,
        cli::compile(&dot).map_err(|e| e.message)?,
        cli::run(&req, &script, None).map_err(|e| e.message)?,
    );
    let compile_args = ["compile", "alternator.treo", "-m", "alt3", "--seed", "42"];
    let run_args = ["run", "alternator.treo", "alternator3.script", "-m", "alt3", "--seed", "42"];
    let bin_first = (binary(&compile_args, &dir)?, binary(&run_args, &dir)?);
    ensure(bin_first.1 == first.2.as_bytes(), || "binary trace differs from library trace".into())?;
    for rep in 1..10 {
        let again = (
            cli::compile(&req).map_err(|e| e.message)?,
            cli::compile(&dot).map_err(|e| e.message)?,
            cli::run(&req, &script, None).map_err(|e| e.message)?,
        );
        ensure(again == first, || format!("repetition {rep} differs in process"))?;
        let bin = (binary(&compile_args, &dir)?, binary(&run_args, &dir)?);
        ensure(bin == bin_first, || format!("repetition {rep} of the binary differs"))?;
    }
    Ok("10 repetitions of compile and run are byte-identical, in process and via the binary".into())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 8] = [
        ("fragment corpus parses and round-trips", criterion_1),
        ("alternator behaviour", criterion_2),
        ("expansion equivalence", criterion_3),
        ("surgery laws", criterion_4),
        ("solver matches brute force", criterion_5),
        ("ca sort axioms", criterion_6),
        ("ill-typed programs are diagnosed", criterion_7),
        ("determinism", criterion_8),
    ];
    let mut failed = Vec::new();
    for (i, (title, check)) in criteria.iter().enumerate() {
        let n = i + 1;
        let outcome = catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS [{n}] {title}: {detail}"),
            Err(why) => {
                println!("FAIL [{n}] {title}: {why}");
                failed.push(n);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
