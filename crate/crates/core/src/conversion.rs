//! Type-level β-reduction and the conversion relations on types and kinds.
//!
//! Types are compared after full β-normalization. Embedded terms (equation
//! sides and arguments of type-level applications) are compared by
//! βη-equality of their erasures. Bodies under binders are compared by
//! index, which is the same as comparing them under a common fresh name.

use std::fmt;

use crate::erasure::erase;
use crate::lambda::{beta_eta_equal, Budget, Equality};
use crate::syntax::{KindExpr, Syntax, TypeExpr};

/// The budget ran out during type-level reduction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OutOfFuel;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConvOutcome {
    Convertible,
    NotConvertible,
    Exhausted,
}

impl ConvOutcome {
    pub fn is_convertible(self) -> bool {
        self == ConvOutcome::Convertible
    }

    // Sequential composition: the first failing component decides.
    fn and_then(self, next: impl FnOnce() -> ConvOutcome) -> ConvOutcome {
        match self {
            ConvOutcome::Convertible => next(),
            other => other,
        }
    }
}

impl From<Equality> for ConvOutcome {
    fn from(e: Equality) -> ConvOutcome {
        match e {
            Equality::Equal => ConvOutcome::Convertible,
            Equality::NotEqual => ConvOutcome::NotConvertible,
            Equality::Exhausted => ConvOutcome::Exhausted,
        }
    }
}

impl fmt::Display for ConvOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConvOutcome::Convertible => "convertible",
            ConvOutcome::NotConvertible => "not convertible",
            ConvOutcome::Exhausted => "fuel exhausted",
        })
    }
}

fn contract(t: &TypeExpr) -> Option<TypeExpr> {
    match t {
        TypeExpr::AppTerm(f, a) => match &**f {
            TypeExpr::LamTerm(_, _, body) => Some(body.instantiate_term(a)),
            _ => None,
        },
        TypeExpr::AppType(f, a) => match &**f {
            TypeExpr::LamType(_, _, body) => Some(body.instantiate_type(a)),
            _ => None,
        },
        _ => None,
    }
}

/// One leftmost-outermost type-level β-step anywhere in `t`, including
/// inside kinds, or `None` if there is no redex.
pub fn type_beta_step(t: &TypeExpr) -> Option<TypeExpr> {
    use TypeExpr::*;
    if let Some(r) = contract(t) {
        return Some(r);
    }
    let bx = |t: TypeExpr| Box::new(t);
    match t {
        Var(_) | Eq(..) => None,
        AllType(h, k, b) | LamType(h, k, b) => {
            let rebuild = |k: KindExpr, b: TypeExpr| match t {
                AllType(..) => AllType(h.clone(), Box::new(k), bx(b)),
                _ => LamType(h.clone(), Box::new(k), bx(b)),
            };
            if let Some(k2) = kind_beta_step(k) {
                return Some(rebuild(k2, (**b).clone()));
            }
            type_beta_step(b).map(|b2| rebuild((**k).clone(), b2))
        }
        AllTerm(h, d, b) | Pi(h, d, b) | Iota(h, d, b) | LamTerm(h, d, b) => {
            let rebuild = |d: TypeExpr, b: TypeExpr| match t {
                AllTerm(..) => AllTerm(h.clone(), bx(d), bx(b)),
                Pi(..) => Pi(h.clone(), bx(d), bx(b)),
                Iota(..) => Iota(h.clone(), bx(d), bx(b)),
                _ => LamTerm(h.clone(), bx(d), bx(b)),
            };
            if let Some(d2) = type_beta_step(d) {
                return Some(rebuild(d2, (**b).clone()));
            }
            type_beta_step(b).map(|b2| rebuild((**d).clone(), b2))
        }
        AppTerm(f, a) => type_beta_step(f).map(|f2| AppTerm(bx(f2), a.clone())),
        AppType(f, a) => {
            if let Some(f2) = type_beta_step(f) {
                return Some(AppType(bx(f2), a.clone()));
            }
            type_beta_step(a).map(|a2| AppType(f.clone(), bx(a2)))
        }
    }
}

/// One leftmost-outermost type-level β-step inside a kind.
pub fn kind_beta_step(k: &KindExpr) -> Option<KindExpr> {
    match k {
        KindExpr::Star => None,
        KindExpr::PiTerm(h, d, b) => {
            if let Some(d2) = type_beta_step(d) {
                return Some(KindExpr::PiTerm(h.clone(), Box::new(d2), b.clone()));
            }
            kind_beta_step(b).map(|b2| KindExpr::PiTerm(h.clone(), d.clone(), Box::new(b2)))
        }
        KindExpr::PiType(h, d, b) => {
            if let Some(d2) = kind_beta_step(d) {
                return Some(KindExpr::PiType(h.clone(), Box::new(d2), b.clone()));
            }
            kind_beta_step(b).map(|b2| KindExpr::PiType(h.clone(), d.clone(), Box::new(b2)))
        }
    }
}

/// Contracts head redexes until the head is a type former or a variable.
pub fn type_whnf(t: &TypeExpr, budget: &mut Budget) -> Result<TypeExpr, OutOfFuel> {
    let head = match t {
        TypeExpr::AppTerm(f, a) => TypeExpr::AppTerm(Box::new(type_whnf(f, budget)?), a.clone()),
        TypeExpr::AppType(f, a) => TypeExpr::AppType(Box::new(type_whnf(f, budget)?), a.clone()),
        _ => return Ok(t.clone()),
    };
    match contract(&head) {
        Some(r) => {
            if !budget.charge() {
                return Err(OutOfFuel);
            }
            type_whnf(&r, budget)
        }
        None => Ok(head),
    }
}

/// Full type-level β-normal form. Terms embedded in the type are left as
/// they are.
pub fn type_beta_normalize(t: &TypeExpr, budget: &mut Budget) -> Result<TypeExpr, OutOfFuel> {
    use TypeExpr::*;
    let h = type_whnf(t, budget)?;
    let bx = |t: TypeExpr| Box::new(t);
    Ok(match h {
        Var(_) | Eq(..) => h,
        AllType(x, k, b) => AllType(
            x,
            Box::new(kind_beta_normalize(&k, budget)?),
            bx(type_beta_normalize(&b, budget)?),
        ),
        LamType(x, k, b) => LamType(
            x,
            Box::new(kind_beta_normalize(&k, budget)?),
            bx(type_beta_normalize(&b, budget)?),
        ),
        AllTerm(x, d, b) => AllTerm(
            x,
            bx(type_beta_normalize(&d, budget)?),
            bx(type_beta_normalize(&b, budget)?),
        ),
        Pi(x, d, b) => Pi(
            x,
            bx(type_beta_normalize(&d, budget)?),
            bx(type_beta_normalize(&b, budget)?),
        ),
        Iota(x, d, b) => Iota(
            x,
            bx(type_beta_normalize(&d, budget)?),
            bx(type_beta_normalize(&b, budget)?),
        ),
        LamTerm(x, d, b) => LamTerm(
            x,
            bx(type_beta_normalize(&d, budget)?),
            bx(type_beta_normalize(&b, budget)?),
        ),
        AppTerm(f, a) => AppTerm(bx(type_beta_normalize(&f, budget)?), a),
        AppType(f, a) => AppType(
            bx(type_beta_normalize(&f, budget)?),
            bx(type_beta_normalize(&a, budget)?),
        ),
    })
}

/// β-normalizes every type inside a kind.
pub fn kind_beta_normalize(k: &KindExpr, budget: &mut Budget) -> Result<KindExpr, OutOfFuel> {
    Ok(match k {
        KindExpr::Star => KindExpr::Star,
        KindExpr::PiTerm(x, d, b) => KindExpr::PiTerm(
            x.clone(),
            Box::new(type_beta_normalize(d, budget)?),
            Box::new(kind_beta_normalize(b, budget)?),
        ),
        KindExpr::PiType(x, d, b) => KindExpr::PiType(
            x.clone(),
            Box::new(kind_beta_normalize(d, budget)?),
            Box::new(kind_beta_normalize(b, budget)?),
        ),
    })
}

/// `T ≅ T′`: β-normalize both sides, then compare structurally.
pub fn convert_types(a: &TypeExpr, b: &TypeExpr, budget: &mut Budget) -> ConvOutcome {
    if a == b {
        return ConvOutcome::Convertible;
    }
    let Ok(na) = type_beta_normalize(a, budget) else {
        return ConvOutcome::Exhausted;
    };
    let Ok(nb) = type_beta_normalize(b, budget) else {
        return ConvOutcome::Exhausted;
    };
    same_type(&na, &nb, budget)
}

/// `κ ≅ κ′`, by congruence on Π-kinds.
pub fn convert_kinds(a: &KindExpr, b: &KindExpr, budget: &mut Budget) -> ConvOutcome {
    if a == b {
        return ConvOutcome::Convertible;
    }
    let Ok(na) = kind_beta_normalize(a, budget) else {
        return ConvOutcome::Exhausted;
    };
    let Ok(nb) = kind_beta_normalize(b, budget) else {
        return ConvOutcome::Exhausted;
    };
    same_kind(&na, &nb, budget)
}

// Structural comparison of β-normal types.
fn same_type(a: &TypeExpr, b: &TypeExpr, budget: &mut Budget) -> ConvOutcome {
    use TypeExpr::*;
    if a == b {
        return ConvOutcome::Convertible;
    }
    match (a, b) {
        (AllType(_, k1, b1), AllType(_, k2, b2)) | (LamType(_, k1, b1), LamType(_, k2, b2)) => {
            same_kind(k1, k2, budget).and_then(|| same_type(b1, b2, budget))
        }
        (AllTerm(_, d1, b1), AllTerm(_, d2, b2))
        | (Pi(_, d1, b1), Pi(_, d2, b2))
        | (Iota(_, d1, b1), Iota(_, d2, b2))
        | (LamTerm(_, d1, b1), LamTerm(_, d2, b2)) => {
            same_type(d1, d2, budget).and_then(|| same_type(b1, b2, budget))
        }
        (AppTerm(f1, t1), AppTerm(f2, t2)) => {
            same_type(f1, f2, budget).and_then(|| beta_eta_equal(&erase(t1), &erase(t2), budget).into())
        }
        (AppType(f1, a1), AppType(f2, a2)) => {
            same_type(f1, f2, budget).and_then(|| same_type(a1, a2, budget))
        }
        (Eq(l1, r1), Eq(l2, r2)) => ConvOutcome::from(beta_eta_equal(&erase(l1), &erase(l2), budget))
            .and_then(|| beta_eta_equal(&erase(r1), &erase(r2), budget).into()),
        _ => ConvOutcome::NotConvertible,
    }
}

fn same_kind(a: &KindExpr, b: &KindExpr, budget: &mut Budget) -> ConvOutcome {
    use KindExpr::*;
    if a == b {
        return ConvOutcome::Convertible;
    }
    match (a, b) {
        (PiTerm(_, d1, b1), PiTerm(_, d2, b2)) => {
            same_type(d1, d2, budget).and_then(|| same_kind(b1, b2, budget))
        }
        (PiType(_, d1, b1), PiType(_, d2, b2)) => {
            same_kind(d1, d2, budget).and_then(|| same_kind(b1, b2, budget))
        }
        _ => ConvOutcome::NotConvertible,
    }
}
