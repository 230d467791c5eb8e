//! Abstract syntax for kinds, types and annotated terms.
//!
//! Binding is locally nameless: bound variables are de Bruijn indices, kept
//! in two independent index spaces (one for term binders, one for type
//! binders), while free variables are [`Name`]s. Binders keep a [`Hint`]
//! with the user's spelling for printing; hints never take part in
//! equality, so `==` on syntax is α-equivalence.

mod context;
mod subst;

use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

pub use context::{Context, Entry};
pub use subst::{Definiens, Depth};

/// The two disjoint variable sorts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Namespace {
    Term,
    Type,
}

impl Namespace {
    /// Identifiers starting with an uppercase ASCII letter name types.
    pub fn of_spelling(spelling: &str) -> Namespace {
        match spelling.chars().next() {
            Some(c) if c.is_ascii_uppercase() => Namespace::Type,
            _ => Namespace::Term,
        }
    }
}

/// A free variable.
///
/// Names read from source have `id == 0`; the checker mints names with
/// positive ids when it opens binders, so they never collide with user
/// names of the same spelling.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Name {
    namespace: Namespace,
    spelling: Arc<str>,
    id: u32,
}

impl Name {
    pub fn new(namespace: Namespace, spelling: &str) -> Name {
        Name::with_id(namespace, spelling, 0)
    }

    pub fn with_id(namespace: Namespace, spelling: &str, id: u32) -> Name {
        Name {
            namespace,
            spelling: spelling.into(),
            id,
        }
    }

    /// Term variable named by `spelling`.
    pub fn term(spelling: &str) -> Name {
        Name::new(Namespace::Term, spelling)
    }

    /// Type variable named by `spelling`.
    pub fn ty(spelling: &str) -> Name {
        Name::new(Namespace::Type, spelling)
    }

    pub fn namespace(&self) -> Namespace {
        self.namespace
    }

    pub fn spelling(&self) -> &str {
        &self.spelling
    }

    pub fn id(&self) -> u32 {
        self.id
    }
}

impl fmt::Debug for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.id == 0 {
            write!(f, "{}", self.spelling)
        } else {
            write!(f, "{}#{}", self.spelling, self.id)
        }
    }
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spelling)
    }
}

/// Spelling attached to a binder. Ignored by `==` and `Hash`.
#[derive(Clone)]
pub struct Hint(Arc<str>);

impl Hint {
    pub fn new(spelling: &str) -> Hint {
        Hint(spelling.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl PartialEq for Hint {
    fn eq(&self, _: &Hint) -> bool {
        true
    }
}

impl Eq for Hint {}

impl Hash for Hint {
    fn hash<H: Hasher>(&self, _: &mut H) {}
}

impl fmt::Debug for Hint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Hint {
    fn from(s: &str) -> Hint {
        Hint::new(s)
    }
}

/// A variable occurrence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    Bound(usize),
    Free(Name),
}

/// Binder of a `Λ`-abstraction: it abstracts either a term or a type.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TLamBinder {
    Term(Hint),
    Type(Hint),
}

/// Annotated terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AnnTerm {
    Var(Var),
    Lam(Hint, Box<AnnTerm>),
    TLam(TLamBinder, Box<AnnTerm>),
    App(Box<AnnTerm>, Box<AnnTerm>),
    ErasedApp(Box<AnnTerm>, Box<AnnTerm>),
    TypeApp(Box<AnnTerm>, Box<TypeExpr>),
    Pair(Box<AnnTerm>, Box<AnnTerm>),
    Proj1(Box<AnnTerm>),
    Proj2(Box<AnnTerm>),
    Beta(Box<AnnTerm>),
    Delta(Box<AnnTerm>),
    /// `ρ eq - body`
    Rho(Box<AnnTerm>, Box<AnnTerm>),
    /// `χ T - body`
    Chi(Box<TypeExpr>, Box<AnnTerm>),
    /// `φ eq - typed {target}`
    Phi(Box<AnnTerm>, Box<AnnTerm>, Box<AnnTerm>),
}

/// Types.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TypeExpr {
    Var(Var),
    AllType(Hint, Box<KindExpr>, Box<TypeExpr>),
    AllTerm(Hint, Box<TypeExpr>, Box<TypeExpr>),
    Pi(Hint, Box<TypeExpr>, Box<TypeExpr>),
    Iota(Hint, Box<TypeExpr>, Box<TypeExpr>),
    LamTerm(Hint, Box<TypeExpr>, Box<TypeExpr>),
    LamType(Hint, Box<KindExpr>, Box<TypeExpr>),
    AppTerm(Box<TypeExpr>, Box<AnnTerm>),
    AppType(Box<TypeExpr>, Box<TypeExpr>),
    Eq(Box<AnnTerm>, Box<AnnTerm>),
}

/// Kinds.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum KindExpr {
    Star,
    PiTerm(Hint, Box<TypeExpr>, Box<KindExpr>),
    PiType(Hint, Box<KindExpr>, Box<KindExpr>),
}

impl AnnTerm {
    pub fn free(name: Name) -> AnnTerm {
        debug_assert_eq!(name.namespace(), Namespace::Term);
        AnnTerm::Var(Var::Free(name))
    }

    pub fn bound(index: usize) -> AnnTerm {
        AnnTerm::Var(Var::Bound(index))
    }

    /// `λ x . body`, abstracting the free name `x`.
    pub fn lam(x: &Name, body: AnnTerm) -> AnnTerm {
        AnnTerm::Lam(Hint::new(x.spelling()), Box::new(body.close_term(x)))
    }

    /// `Λ x . body` or `Λ X . body` depending on the namespace of `x`.
    pub fn tlam(x: &Name, body: AnnTerm) -> AnnTerm {
        let hint = Hint::new(x.spelling());
        match x.namespace() {
            Namespace::Term => AnnTerm::TLam(TLamBinder::Term(hint), Box::new(body.close_term(x))),
            Namespace::Type => AnnTerm::TLam(TLamBinder::Type(hint), Box::new(body.close_type(x))),
        }
    }

    pub fn app(f: AnnTerm, a: AnnTerm) -> AnnTerm {
        AnnTerm::App(Box::new(f), Box::new(a))
    }

    pub fn erased_app(f: AnnTerm, a: AnnTerm) -> AnnTerm {
        AnnTerm::ErasedApp(Box::new(f), Box::new(a))
    }

    pub fn type_app(f: AnnTerm, a: TypeExpr) -> AnnTerm {
        AnnTerm::TypeApp(Box::new(f), Box::new(a))
    }

    pub fn pair(a: AnnTerm, b: AnnTerm) -> AnnTerm {
        AnnTerm::Pair(Box::new(a), Box::new(b))
    }

    pub fn proj1(t: AnnTerm) -> AnnTerm {
        AnnTerm::Proj1(Box::new(t))
    }

    pub fn proj2(t: AnnTerm) -> AnnTerm {
        AnnTerm::Proj2(Box::new(t))
    }

    pub fn beta(t: AnnTerm) -> AnnTerm {
        AnnTerm::Beta(Box::new(t))
    }

    pub fn delta(t: AnnTerm) -> AnnTerm {
        AnnTerm::Delta(Box::new(t))
    }

    pub fn rho(eq: AnnTerm, body: AnnTerm) -> AnnTerm {
        AnnTerm::Rho(Box::new(eq), Box::new(body))
    }

    pub fn chi(ty: TypeExpr, body: AnnTerm) -> AnnTerm {
        AnnTerm::Chi(Box::new(ty), Box::new(body))
    }

    pub fn phi(eq: AnnTerm, typed: AnnTerm, target: AnnTerm) -> AnnTerm {
        AnnTerm::Phi(Box::new(eq), Box::new(typed), Box::new(target))
    }
}

impl TypeExpr {
    pub fn free(name: Name) -> TypeExpr {
        debug_assert_eq!(name.namespace(), Namespace::Type);
        TypeExpr::Var(Var::Free(name))
    }

    pub fn bound(index: usize) -> TypeExpr {
        TypeExpr::Var(Var::Bound(index))
    }

    pub fn all_type(x: &Name, kind: KindExpr, body: TypeExpr) -> TypeExpr {
        TypeExpr::AllType(x.spelling().into(), Box::new(kind), Box::new(body.close_type(x)))
    }

    pub fn all_term(x: &Name, dom: TypeExpr, body: TypeExpr) -> TypeExpr {
        TypeExpr::AllTerm(x.spelling().into(), Box::new(dom), Box::new(body.close_term(x)))
    }

    pub fn pi(x: &Name, dom: TypeExpr, body: TypeExpr) -> TypeExpr {
        TypeExpr::Pi(x.spelling().into(), Box::new(dom), Box::new(body.close_term(x)))
    }

    pub fn iota(x: &Name, dom: TypeExpr, body: TypeExpr) -> TypeExpr {
        TypeExpr::Iota(x.spelling().into(), Box::new(dom), Box::new(body.close_term(x)))
    }

    pub fn lam_term(x: &Name, dom: TypeExpr, body: TypeExpr) -> TypeExpr {
        TypeExpr::LamTerm(x.spelling().into(), Box::new(dom), Box::new(body.close_term(x)))
    }

    pub fn lam_type(x: &Name, kind: KindExpr, body: TypeExpr) -> TypeExpr {
        TypeExpr::LamType(x.spelling().into(), Box::new(kind), Box::new(body.close_type(x)))
    }

    pub fn app_term(f: TypeExpr, a: AnnTerm) -> TypeExpr {
        TypeExpr::AppTerm(Box::new(f), Box::new(a))
    }

    pub fn app_type(f: TypeExpr, a: TypeExpr) -> TypeExpr {
        TypeExpr::AppType(Box::new(f), Box::new(a))
    }

    pub fn eq(lhs: AnnTerm, rhs: AnnTerm) -> TypeExpr {
        TypeExpr::Eq(Box::new(lhs), Box::new(rhs))
    }
}

impl KindExpr {
    pub fn pi_term(x: &Name, dom: TypeExpr, body: KindExpr) -> KindExpr {
        KindExpr::PiTerm(x.spelling().into(), Box::new(dom), Box::new(body.close_term(x)))
    }

    pub fn pi_type(x: &Name, dom: KindExpr, body: KindExpr) -> KindExpr {
        KindExpr::PiType(x.spelling().into(), Box::new(dom), Box::new(body.close_type(x)))
    }
}

/// Operations shared by the three annotated syntactic categories.
pub trait Syntax: Clone + PartialEq + fmt::Debug {
    #[doc(hidden)]
    fn map_vars(&self, depth: Depth, f: &mut dyn subst::VarMap) -> Self;
    #[doc(hidden)]
    fn visit_vars(&self, depth: Depth, f: &mut dyn FnMut(Namespace, &Var, Depth));

    /// Free names of both namespaces.
    fn fv(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.visit_vars(Depth::ZERO, &mut |_, v, _| {
            if let Var::Free(n) = v {
                out.insert(n.clone());
            }
        });
        out
    }

    /// True when no bound index escapes the expression.
    fn is_locally_closed(&self) -> bool {
        let mut closed = true;
        self.visit_vars(Depth::ZERO, &mut |ns, v, d| {
            if let Var::Bound(i) = v {
                if *i >= d.get(ns) {
                    closed = false;
                }
            }
        });
        closed
    }

    /// Capture-avoiding substitution of `t` for the free term variable `x`.
    fn subst_term(&self, x: &Name, t: &AnnTerm) -> Self {
        debug_assert_eq!(x.namespace(), Namespace::Term);
        self.map_vars(Depth::ZERO, &mut subst::SubstFree::term(x, t))
    }

    /// Capture-avoiding substitution of `s` for the free type variable `x`.
    fn subst_type(&self, x: &Name, s: &TypeExpr) -> Self {
        debug_assert_eq!(x.namespace(), Namespace::Type);
        self.map_vars(Depth::ZERO, &mut subst::SubstFree::ty(x, s))
    }

    /// Replace bound term index 0 by `t`, lowering the other term indices.
    fn instantiate_term(&self, t: &AnnTerm) -> Self {
        self.map_vars(Depth::ZERO, &mut subst::Instantiate::term(t))
    }

    /// Replace bound type index 0 by `s`, lowering the other type indices.
    fn instantiate_type(&self, s: &TypeExpr) -> Self {
        self.map_vars(Depth::ZERO, &mut subst::Instantiate::ty(s))
    }

    /// Abstract the free term name `x` as bound index 0.
    fn close_term(&self, x: &Name) -> Self {
        self.map_vars(Depth::ZERO, &mut subst::Close::new(x))
    }

    /// Abstract the free type name `x` as bound index 0.
    fn close_type(&self, x: &Name) -> Self {
        self.map_vars(Depth::ZERO, &mut subst::Close::new(x))
    }

    /// Replace every free name the lookup knows by its definiens.
    fn inline(&self, lookup: &dyn Fn(&Name) -> Option<Definiens>) -> Self {
        self.map_vars(Depth::ZERO, &mut subst::Inline { lookup })
    }

    /// Add `amount` to every index of namespace `ns` at or above `cutoff`.
    fn shift(&self, ns: Namespace, cutoff: usize, amount: isize) -> Self {
        self.map_vars(Depth::ZERO, &mut subst::Shift { ns, cutoff, amount })
    }

    /// Shift both index spaces by the given binder depths.
    fn shift_by(&self, depth: Depth) -> Self {
        if depth == Depth::ZERO {
            return self.clone();
        }
        self.shift(Namespace::Term, 0, depth.term as isize)
            .shift(Namespace::Type, 0, depth.ty as isize)
    }
}

/// Free names of any syntactic category.
pub fn fv<S: Syntax>(expr: &S) -> BTreeSet<Name> {
    expr.fv()
}

/// α-equivalence; with nameless binders this is structural equality.
pub fn alpha_eq<S: PartialEq>(a: &S, b: &S) -> bool {
    a == b
}
