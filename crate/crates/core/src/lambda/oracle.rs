//! A brute-force joinability oracle, used only to test the reduction engine.
//!
//! It deliberately shares nothing with the engine: terms are converted to a
//! named representation, substitution renames binders on capture, and every
//! β- and η-redex at every position is contracted.

use std::collections::{BTreeSet, HashSet};

use crate::erasure::PureTerm;
use crate::syntax::Var;

#[derive(Clone, Debug)]
enum Tm {
    V(String),
    L(String, Box<Tm>),
    A(Box<Tm>, Box<Tm>),
}

struct Fresh(u64);

impl Fresh {
    fn next(&mut self) -> String {
        self.0 += 1;
        format!("%{}", self.0)
    }
}

fn from_pure(p: &PureTerm, env: &mut Vec<String>, fresh: &mut Fresh) -> Tm {
    match p {
        PureTerm::Var(Var::Bound(i)) => match env.len().checked_sub(i + 1) {
            Some(pos) => Tm::V(env[pos].clone()),
            None => Tm::V(format!("^{}", i - env.len())),
        },
        PureTerm::Var(Var::Free(n)) => Tm::V(format!("{}#{}", n.spelling(), n.id())),
        PureTerm::Lam(_, b) => {
            let x = fresh.next();
            env.push(x.clone());
            let b = from_pure(b, env, fresh);
            env.pop();
            Tm::L(x, Box::new(b))
        }
        PureTerm::App(f, a) => Tm::A(
            Box::new(from_pure(f, env, fresh)),
            Box::new(from_pure(a, env, fresh)),
        ),
    }
}

fn free(t: &Tm) -> BTreeSet<String> {
    match t {
        Tm::V(x) => BTreeSet::from([x.clone()]),
        Tm::L(x, b) => {
            let mut s = free(b);
            s.remove(x);
            s
        }
        Tm::A(f, a) => {
            let mut s = free(f);
            s.extend(free(a));
            s
        }
    }
}

fn subst(t: &Tm, x: &str, s: &Tm, fresh: &mut Fresh) -> Tm {
    match t {
        Tm::V(y) if y == x => s.clone(),
        Tm::V(_) => t.clone(),
        Tm::A(f, a) => Tm::A(Box::new(subst(f, x, s, fresh)), Box::new(subst(a, x, s, fresh))),
        Tm::L(y, _) if y == x => t.clone(),
        Tm::L(y, b) => {
            if free(s).contains(y) {
                let z = fresh.next();
                let b = subst(b, y, &Tm::V(z.clone()), fresh);
                Tm::L(z, Box::new(subst(&b, x, s, fresh)))
            } else {
                Tm::L(y.clone(), Box::new(subst(b, x, s, fresh)))
            }
        }
    }
}

// Every one-step β- or η-reduct, at any position.
fn reducts(t: &Tm, fresh: &mut Fresh) -> Vec<Tm> {
    let mut out = Vec::new();
    match t {
        Tm::V(_) => {}
        Tm::L(x, b) => {
            if let Tm::A(f, a) = &**b {
                if matches!(&**a, Tm::V(y) if y == x) && !free(f).contains(x) {
                    out.push((**f).clone());
                }
            }
            for r in reducts(b, fresh) {
                out.push(Tm::L(x.clone(), Box::new(r)));
            }
        }
        Tm::A(f, a) => {
            if let Tm::L(x, b) = &**f {
                out.push(subst(b, x, a, fresh));
            }
            for r in reducts(f, fresh) {
                out.push(Tm::A(Box::new(r), a.clone()));
            }
            for r in reducts(a, fresh) {
                out.push(Tm::A(f.clone(), Box::new(r)));
            }
        }
    }
    out
}

// A string equal for exactly the α-equivalent terms.
fn key(t: &Tm) -> String {
    fn go(t: &Tm, env: &mut Vec<String>, out: &mut String) {
        match t {
            Tm::V(x) => match env.iter().rev().position(|y| y == x) {
                Some(i) => out.push_str(&format!("{i} ")),
                None => out.push_str(&format!("'{x} ")),
            },
            Tm::L(x, b) => {
                out.push_str("L ");
                env.push(x.clone());
                go(b, env, out);
                env.pop();
            }
            Tm::A(f, a) => {
                out.push_str("A ");
                go(f, env, out);
                go(a, env, out);
            }
        }
    }
    let mut out = String::new();
    go(t, &mut Vec::new(), &mut out);
    out
}

/// The α-classes reachable from a term within a bounded number of steps.
#[derive(Clone, Debug)]
pub struct Reachable {
    classes: HashSet<String>,
    normal: BTreeSet<String>,
    complete: bool,
}

impl Reachable {
    /// True when every reduct of every reached term was also reached.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// The α-classes of reached terms that have no redex.
    pub fn normal_forms(&self) -> &BTreeSet<String> {
        &self.normal
    }

    pub fn contains(&self, p: &PureTerm) -> bool {
        self.classes.contains(&alpha_key(p))
    }
}

/// Canonical α-class key of a pure term.
pub fn alpha_key(p: &PureTerm) -> String {
    key(&from_pure(p, &mut Vec::new(), &mut Fresh(0)))
}

/// Breadth-first enumeration of all reducts of `p` up to `depth` steps.
pub fn reachable(p: &PureTerm, depth: usize) -> Reachable {
    let mut fresh = Fresh(0);
    let start = from_pure(p, &mut Vec::new(), &mut fresh);
    let mut classes = HashSet::from([key(&start)]);
    let mut normal = BTreeSet::new();
    let mut frontier = vec![start];
    for _ in 0..depth {
        let mut next = Vec::new();
        for t in &frontier {
            let rs = reducts(t, &mut fresh);
            if rs.is_empty() {
                normal.insert(key(t));
            }
            for r in rs {
                if classes.insert(key(&r)) {
                    next.push(r);
                }
            }
        }
        frontier = next;
    }
    let mut complete = true;
    for t in &frontier {
        let rs = reducts(t, &mut fresh);
        if rs.is_empty() {
            normal.insert(key(t));
        }
        if rs.iter().any(|r| !classes.contains(&key(r))) {
            complete = false;
        }
    }
    Reachable {
        classes,
        normal,
        complete,
    }
}

/// Joinability verdict from two enumerations: `Some(true)` if they share a
/// class, `Some(false)` if both are complete and disjoint, else `None`.
pub fn joinable(a: &Reachable, b: &Reachable) -> Option<bool> {
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    if small.classes.iter().any(|k| large.classes.contains(k)) {
        Some(true)
    } else if a.complete && b.complete {
        Some(false)
    } else {
        None
    }
}

/// Whether `p` and `q` are βη-joinable, judged by enumerating reducts of
/// each to `depth` steps.
pub fn oracle_equal(p: &PureTerm, q: &PureTerm, depth: usize) -> Option<bool> {
    joinable(&reachable(p, depth), &reachable(q, depth))
}
