//! Random comprehension predicates and a brute-force reference solver.
//!
//! A candidate scope binds any subset of the variables to values drawn from
//! the membership lists. It is a solution when some satisfied branch of the
//! predicate binds exactly the new variables through positive memberships.
//! Solutions are then reduced to those with minimal domains.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;

pub const VARS: [&str; 3] = ["i", "j", "l"];

#[derive(Clone, Debug)]
pub enum Term {
    Var(usize),
    Const(i64),
    /// The variable `k`, bound in the base scope.
    K,
}

#[derive(Clone, Copy, Debug)]
pub enum Rel {
    Lt,
    Le,
    Gt,
    Ge,
    Eq,
    Ne,
}

#[derive(Clone, Debug)]
pub enum Pred {
    Member(usize, Vec<i64>),
    Rel(Rel, Term, Term),
    Not(Box<Pred>),
    And(Box<Pred>, Box<Pred>),
    Or(Box<Pred>, Box<Pred>),
}

fn random_term<R: Rng>(rng: &mut R) -> Term {
    match rng.gen_range(0..5) {
        0 | 1 => Term::Var(rng.gen_range(0..VARS.len())),
        2 => Term::K,
        _ => Term::Const(rng.gen_range(-2..6)),
    }
}

pub fn random_pred<R: Rng>(rng: &mut R, depth: u32) -> Pred {
    let leaf = depth == 0 || rng.gen_bool(0.35);
    if leaf {
        if rng.gen_bool(0.6) {
            let n = rng.gen_range(0..=5);
            let list = (0..n).map(|_| rng.gen_range(-2..6)).collect();
            Pred::Member(rng.gen_range(0..VARS.len()), list)
        } else {
            let op = [Rel::Lt, Rel::Le, Rel::Gt, Rel::Ge, Rel::Eq, Rel::Ne][rng.gen_range(0..6)];
            Pred::Rel(op, random_term(rng), random_term(rng))
        }
    } else {
        match rng.gen_range(0..5) {
            0 => Pred::Not(Box::new(random_pred(rng, depth - 1))),
            1 | 2 => Pred::And(Box::new(random_pred(rng, depth - 1)), Box::new(random_pred(rng, depth - 1))),
            _ => Pred::Or(Box::new(random_pred(rng, depth - 1)), Box::new(random_pred(rng, depth - 1))),
        }
    }
}

fn term_src(t: &Term) -> String {
    match t {
        Term::Var(v) => VARS[*v].to_string(),
        Term::Const(c) => c.to_string(),
        Term::K => "k".to_string(),
    }
}

impl Pred {
    pub fn to_source(&self) -> String {
        match self {
            Pred::Member(v, list) => {
                let items: Vec<_> = list.iter().map(i64::to_string).collect();
                format!("{} in [{}]", VARS[*v], items.join(", "))
            }
            Pred::Rel(op, a, b) => {
                let sym = match op {
                    Rel::Lt => "<",
                    Rel::Le => "<=",
                    Rel::Gt => ">",
                    Rel::Ge => ">=",
                    Rel::Eq => "=",
                    Rel::Ne => "!=",
                };
                format!("{} {sym} {}", term_src(a), term_src(b))
            }
            Pred::Not(p) => format!("not ({})", p.to_source()),
            Pred::And(a, b) => format!("({}) and ({})", a.to_source(), b.to_source()),
            Pred::Or(a, b) => format!("({}) or ({})", a.to_source(), b.to_source()),
        }
    }

    fn vars(&self, out: &mut BTreeSet<usize>) {
        let mut term = |t: &Term| {
            if let Term::Var(v) = t {
                out.insert(*v);
            }
        };
        match self {
            Pred::Member(v, _) => {
                out.insert(*v);
            }
            Pred::Rel(_, a, b) => {
                term(a);
                term(b);
            }
            Pred::Not(p) => p.vars(out),
            Pred::And(a, b) | Pred::Or(a, b) => {
                a.vars(out);
                b.vars(out);
            }
        }
    }

    fn positive_members(&self, out: &mut BTreeSet<usize>) {
        match self {
            Pred::Member(v, _) => {
                out.insert(*v);
            }
            Pred::And(a, b) | Pred::Or(a, b) => {
                a.positive_members(out);
                b.positive_members(out);
            }
            _ => {}
        }
    }

    /// Every variable occurs on the left of a membership outside negation.
    pub fn bounded(&self) -> bool {
        let (mut all, mut pos) = (BTreeSet::new(), BTreeSet::new());
        self.vars(&mut all);
        self.positive_members(&mut pos);
        all.is_subset(&pos)
    }

    fn values(&self, out: &mut BTreeSet<i64>) {
        match self {
            Pred::Member(_, list) => out.extend(list),
            Pred::Rel(..) => {}
            Pred::Not(p) => p.values(out),
            Pred::And(a, b) | Pred::Or(a, b) => {
                a.values(out);
                b.values(out);
            }
        }
    }

    /// Sets of variables whose bindings are justified by the positive
    /// memberships of some satisfied branch. Empty when false.
    fn witnesses(&self, env: &[Option<i64>; 3], k: i64) -> Vec<BTreeSet<usize>> {
        let val = |t: &Term| match t {
            Term::Var(v) => env[*v],
            Term::Const(c) => Some(*c),
            Term::K => Some(k),
        };
        match self {
            Pred::Member(v, list) => match env[*v] {
                Some(x) if list.contains(&x) => vec![BTreeSet::from([*v])],
                _ => vec![],
            },
            Pred::Rel(op, a, b) => match (val(a), val(b)) {
                (Some(x), Some(y)) => {
                    let holds = match op {
                        Rel::Lt => x < y,
                        Rel::Le => x <= y,
                        Rel::Gt => x > y,
                        Rel::Ge => x >= y,
                        Rel::Eq => x == y,
                        Rel::Ne => x != y,
                    };
                    if holds {
                        vec![BTreeSet::new()]
                    } else {
                        vec![]
                    }
                }
                _ => vec![],
            },
            Pred::Not(p) => {
                let mut vs = BTreeSet::new();
                p.vars(&mut vs);
                let all_bound = vs.iter().all(|v| env[*v].is_some());
                if all_bound && p.witnesses(env, k).is_empty() {
                    vec![BTreeSet::new()]
                } else {
                    vec![]
                }
            }
            Pred::And(a, b) => {
                let wb = b.witnesses(env, k);
                a.witnesses(env, k)
                    .into_iter()
                    .flat_map(|x| wb.iter().map(move |y| x.union(y).cloned().collect()))
                    .collect()
            }
            Pred::Or(a, b) => {
                let mut w = a.witnesses(env, k);
                w.extend(b.witnesses(env, k));
                w
            }
        }
    }
}

pub type Solution = BTreeMap<String, i64>;

/// `None` when the predicate leaves some variable unbounded.
pub fn brute_force(p: &Pred, k: i64) -> Option<Vec<Solution>> {
    if !p.bounded() {
        return None;
    }
    let mut universe = BTreeSet::new();
    p.values(&mut universe);
    let choices: Vec<Option<i64>> = std::iter::once(None).chain(universe.into_iter().map(Some)).collect();
    let mut found: Vec<[Option<i64>; 3]> = Vec::new();
    for &a in &choices {
        for &b in &choices {
            for &c in &choices {
                let env = [a, b, c];
                let bound: BTreeSet<usize> = (0..3).filter(|v| env[*v].is_some()).collect();
                if p.witnesses(&env, k).contains(&bound) {
                    found.push(env);
                }
            }
        }
    }
    let domain = |e: &[Option<i64>; 3]| -> BTreeSet<usize> { (0..3).filter(|v| e[*v].is_some()).collect() };
    let mut out: Vec<Solution> = found
        .iter()
        .filter(|e| {
            let d = domain(e);
            !found.iter().any(|o| {
                let od = domain(o);
                od.len() < d.len() && od.is_subset(&d)
            })
        })
        .map(|e| {
            (0..3)
                .filter_map(|v| e[v].map(|x| (VARS[v].to_string(), x)))
                .collect()
        })
        .collect();
    out.sort();
    out.dedup();
    Some(out)
}
