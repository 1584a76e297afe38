//! Generator of small programs that must be rejected by the evaluator.

use rand::seq::SliceRandom;
use rand::Rng;

const PRELUDE: &str = "import sync; import fifo1; import syncdrain;\n";

fn ident<R: Rng>(rng: &mut R) -> String {
    let stems = ["a", "b", "c", "x", "y", "in", "out", "p"];
    format!("{}{}", stems.choose(rng).unwrap(), rng.gen_range(0..4))
}

/// Two distinct identifiers.
fn two<R: Rng>(rng: &mut R) -> (String, String) {
    let a = ident(rng);
    loop {
        let b = ident(rng);
        if b != a {
            return (a, b);
        }
    }
}

/// Wraps a body in a comprehension or condition that always holds.
fn wrap<R: Rng>(rng: &mut R, body: String) -> String {
    match rng.gen_range(0..4) {
        0 => format!("{{ {body} | i in [1] }}"),
        1 => format!("if (1 < 2) {{ {body} }}"),
        _ => body,
    }
}

/// A program and the kind of mistake it contains.
pub fn ill_typed<R: Rng>(rng: &mut R) -> (&'static str, String) {
    let (a, b) = two(rng);
    let main = format!("m{}", rng.gen_range(0..10));
    match rng.gen_range(0..6) {
        0 => {
            let prim = ["sync", "fifo1", "syncdrain"].choose(rng).unwrap();
            let extra = ident(rng);
            let body = wrap(rng, format!("{prim}({a},{b},{extra}{extra})"));
            ("arity", format!("{PRELUDE}{main}({a},{b}) {{ {body} }}\n"))
        }
        1 => {
            let body = wrap(rng, format!("sync({a},{a})"));
            ("duplicate interface", format!("{PRELUDE}{main}({a},{a}) {{ {body} }}\n"))
        }
        2 => {
            let var = ["n", "k", "q"].choose(rng).unwrap();
            let body = wrap(rng, format!("sync({a}[{var}],{b})"));
            ("unbound variable", format!("{PRELUDE}{main}({a}[1],{b}) {{ {body} }}\n"))
        }
        3 => {
            let stray = format!("{b}z");
            let body = format!("q -{{{a},{stray}}},true-> q;");
            (
                "atom port",
                format!("prim({a}?,{b}!) {{ {body} }}\n{main}({a},{b}) {{ prim({a},{b}) }}\n"),
            )
        }
        4 => {
            let n = rng.gen_range(0..9);
            let body = wrap(rng, format!("nothing{n}({a},{b})"));
            ("unknown definition", format!("{PRELUDE}{main}({a},{b}) {{ {body} }}\n"))
        }
        _ => {
            let n = rng.gen_range(3..6);
            let body = wrap(rng, format!("pair({a}[1:{n}],{b})"));
            (
                "shape",
                format!(
                    "{PRELUDE}pair(x[1:2],y) {{ sync(x[1],y) }}\n{main}({a}[1:{n}],{b}) {{ {body} }}\n"
                ),
            )
        }
    }
}
