//! Fuel-bounded βη-reduction on pure terms.
//!
//! The strategy is leftmost-outermost β; η-contraction is only attempted
//! once the term is β-normal, and η-contracting a β-normal term never
//! creates a β-redex. A term therefore reaches its βη-normal form whenever
//! it has one, given enough fuel.

pub mod oracle;

use std::fmt;

use crate::erasure::PureTerm;
use crate::syntax::Var;

/// Default number of reduction steps granted to one top-level check.
pub const DEFAULT_FUEL: u64 = 100_000;

/// A step counter shared by every reduction in one judgment.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    initial: u64,
    remaining: u64,
}

impl Budget {
    pub fn new(steps: u64) -> Budget {
        Budget {
            initial: steps,
            remaining: steps,
        }
    }

    pub fn remaining(&self) -> u64 {
        self.remaining
    }

    pub fn initial(&self) -> u64 {
        self.initial
    }

    pub fn used(&self) -> u64 {
        self.initial - self.remaining
    }

    pub fn is_exhausted(&self) -> bool {
        self.remaining == 0
    }

    /// Takes one step from the budget; false if none is left.
    pub fn charge(&mut self) -> bool {
        if self.remaining == 0 {
            false
        } else {
            self.remaining -= 1;
            true
        }
    }
}

impl Default for Budget {
    fn default() -> Budget {
        Budget::new(DEFAULT_FUEL)
    }
}

/// Outcome of [`normalize`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormResult {
    Normal(PureTerm),
    /// Fuel ran out; carries the term reached and the steps taken.
    Exhausted(PureTerm, u64),
}

impl NormResult {
    pub fn normal(self) -> Option<PureTerm> {
        match self {
            NormResult::Normal(p) => Some(p),
            NormResult::Exhausted(..) => None,
        }
    }
}

/// Outcome of [`beta_eta_equal`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Equality {
    Equal,
    NotEqual,
    Exhausted,
}

impl fmt::Display for Equality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Equality::Equal => "equal",
            Equality::NotEqual => "not equal",
            Equality::Exhausted => "fuel exhausted",
        })
    }
}

fn shift(p: &PureTerm, cutoff: usize, amount: isize) -> PureTerm {
    match p {
        PureTerm::Var(Var::Bound(i)) if *i >= cutoff => PureTerm::bound((*i as isize + amount) as usize),
        PureTerm::Var(_) => p.clone(),
        PureTerm::Lam(h, b) => PureTerm::Lam(h.clone(), Box::new(shift(b, cutoff + 1, amount))),
        PureTerm::App(f, a) => PureTerm::app(shift(f, cutoff, amount), shift(a, cutoff, amount)),
    }
}

// [arg/depth]body, lowering the indices above `depth`.
fn subst_at(body: &PureTerm, depth: usize, arg: &PureTerm) -> PureTerm {
    match body {
        PureTerm::Var(Var::Bound(i)) => {
            if *i == depth {
                shift(arg, 0, depth as isize)
            } else if *i > depth {
                PureTerm::bound(i - 1)
            } else {
                body.clone()
            }
        }
        PureTerm::Var(Var::Free(_)) => body.clone(),
        PureTerm::Lam(h, b) => PureTerm::Lam(h.clone(), Box::new(subst_at(b, depth + 1, arg))),
        PureTerm::App(f, a) => PureTerm::app(subst_at(f, depth, arg), subst_at(a, depth, arg)),
    }
}

fn occurs(p: &PureTerm, index: usize) -> bool {
    match p {
        PureTerm::Var(Var::Bound(i)) => *i == index,
        PureTerm::Var(Var::Free(_)) => false,
        PureTerm::Lam(_, b) => occurs(b, index + 1),
        PureTerm::App(f, a) => occurs(f, index) || occurs(a, index),
    }
}

fn beta_step(p: &PureTerm) -> Option<PureTerm> {
    match p {
        PureTerm::Var(_) => None,
        PureTerm::Lam(h, b) => beta_step(b).map(|b| PureTerm::Lam(h.clone(), Box::new(b))),
        PureTerm::App(f, a) => {
            if let PureTerm::Lam(_, body) = &**f {
                return Some(subst_at(body, 0, a));
            }
            if let Some(f2) = beta_step(f) {
                return Some(PureTerm::app(f2, (**a).clone()));
            }
            beta_step(a).map(|a2| PureTerm::app((**f).clone(), a2))
        }
    }
}

fn eta_step(p: &PureTerm) -> Option<PureTerm> {
    match p {
        PureTerm::Var(_) => None,
        PureTerm::Lam(h, b) => {
            if let PureTerm::App(f, a) = &**b {
                if **a == PureTerm::bound(0) && !occurs(f, 0) {
                    return Some(shift(f, 0, -1));
                }
            }
            eta_step(b).map(|b| PureTerm::Lam(h.clone(), Box::new(b)))
        }
        PureTerm::App(f, a) => {
            if let Some(f2) = eta_step(f) {
                return Some(PureTerm::app(f2, (**a).clone()));
            }
            eta_step(a).map(|a2| PureTerm::app((**f).clone(), a2))
        }
    }
}

/// One reduction step, or `None` if `p` is βη-normal.
pub fn step(p: &PureTerm) -> Option<PureTerm> {
    beta_step(p).or_else(|| eta_step(p))
}

/// Reduces until normal or until the budget runs out.
pub fn normalize(p: &PureTerm, budget: &mut Budget) -> NormResult {
    let mut cur = p.clone();
    let mut steps = 0;
    loop {
        let Some(next) = step(&cur) else {
            return NormResult::Normal(cur);
        };
        if !budget.charge() {
            return NormResult::Exhausted(cur, steps);
        }
        steps += 1;
        cur = next;
    }
}

/// Decides `p =βη q` within the budget.
///
/// Syntactically identical terms are equal without any reduction.
pub fn beta_eta_equal(p: &PureTerm, q: &PureTerm, budget: &mut Budget) -> Equality {
    if p == q {
        return Equality::Equal;
    }
    let NormResult::Normal(np) = normalize(p, budget) else {
        return Equality::Exhausted;
    };
    let NormResult::Normal(nq) = normalize(q, budget) else {
        return Equality::Exhausted;
    };
    if np == nq {
        Equality::Equal
    } else {
        Equality::NotEqual
    }
}
