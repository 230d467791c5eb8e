//! Kind well-formedness, kind synthesis, and bidirectional type checking.
//!
//! Every judgment draws on one shared [`Budget`]; running out anywhere
//! rejects with [`Code::FuelExhausted`].

mod rho;

pub use rho::rho_rewrite;

use crate::conversion::{convert_kinds, convert_types, type_whnf, ConvOutcome, OutOfFuel};
use crate::diagnostic::{Code, Diagnostic, FuelReport};
use crate::erasure::{erase, PureTerm};
use crate::lambda::{beta_eta_equal, Budget, Equality};
use crate::syntax::{AnnTerm, Context, Hint, KindExpr, Name, Namespace, Syntax, TLamBinder, TypeExpr};

pub type Judgment<T> = Result<T, Diagnostic>;

/// The direction a term is processed in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mode {
    Check(TypeExpr),
    Synth,
}

/// Runs the judgments against one budget, collecting warnings and, when
/// enabled, one trace line per rule applied.
pub struct Checker<'b> {
    budget: &'b mut Budget,
    trace: Option<Vec<String>>,
    depth: usize,
    warnings: Vec<Diagnostic>,
}

/// `λ x . λ y . x`
pub fn church_true() -> AnnTerm {
    let (x, y) = (Name::term("x"), Name::term("y"));
    AnnTerm::lam(&x, AnnTerm::lam(&y, AnnTerm::free(x.clone())))
}

/// `λ x . λ y . y`
pub fn church_false() -> AnnTerm {
    let (x, y) = (Name::term("x"), Name::term("y"));
    AnnTerm::lam(&x, AnnTerm::lam(&y, AnnTerm::free(y.clone())))
}

fn names_in<'a>(names: impl IntoIterator<Item = &'a Name>, ctx: &Context) -> Option<&'a Name> {
    names.into_iter().find(|n| !ctx.contains(n))
}

impl<'b> Checker<'b> {
    pub fn new(budget: &'b mut Budget) -> Checker<'b> {
        Checker {
            budget,
            trace: None,
            depth: 0,
            warnings: Vec::new(),
        }
    }

    pub fn with_trace(mut self) -> Checker<'b> {
        self.trace = Some(Vec::new());
        self
    }

    pub fn take_trace(&mut self) -> Vec<String> {
        self.trace.as_mut().map(std::mem::take).unwrap_or_default()
    }

    pub fn take_warnings(&mut self) -> Vec<Diagnostic> {
        std::mem::take(&mut self.warnings)
    }

    pub fn budget(&self) -> &Budget {
        self.budget
    }

    pub fn budget_mut(&mut self) -> &mut Budget {
        self.budget
    }

    fn log(&mut self, rule: &str, judgment: impl FnOnce() -> String) {
        if let Some(lines) = &mut self.trace {
            let indent = "  ".repeat(self.depth.saturating_sub(1));
            lines.push(format!("{indent}{rule}: {}", judgment()));
        }
    }

    fn nested<T>(&mut self, f: impl FnOnce(&mut Self) -> T) -> T {
        self.depth += 1;
        let r = f(self);
        self.depth -= 1;
        r
    }

    fn out_of_fuel(&self, what: &str) -> Diagnostic {
        Diagnostic::new(Code::FuelExhausted, format!("fuel exhausted while {what}")).with_fuel(FuelReport {
            initial: self.budget.initial(),
            used: self.budget.used(),
        })
    }

    fn whnf(&mut self, t: &TypeExpr) -> Judgment<TypeExpr> {
        type_whnf(t, self.budget).map_err(|OutOfFuel| self.out_of_fuel("reducing a type"))
    }

    fn conv(&mut self, expected: &TypeExpr, actual: &TypeExpr, what: &str) -> Judgment<()> {
        match convert_types(actual, expected, self.budget) {
            ConvOutcome::Convertible => Ok(()),
            ConvOutcome::NotConvertible => Err(Diagnostic::new(
                Code::ConversionFailed,
                format!("type mismatch in {what}"),
            )
            .with_types(expected, actual)),
            ConvOutcome::Exhausted => Err(self.out_of_fuel("comparing types").with_types(expected, actual)),
        }
    }

    fn bee(&mut self, a: &PureTerm, b: &PureTerm) -> Equality {
        beta_eta_equal(a, b, self.budget)
    }

    fn unbound(n: &Name) -> Diagnostic {
        Diagnostic::new(Code::UnboundVariable, format!("unbound variable {n}"))
    }

    fn dangling(i: usize) -> Diagnostic {
        Diagnostic::new(Code::UnboundVariable, format!("dangling bound index {i}"))
    }

    fn fresh(ctx: &Context, ns: Namespace, hint: &Hint) -> Name {
        ctx.fresh(ns, hint.as_str())
    }

    // ---- kinds ----

    /// `Γ ⊢ κ`
    pub fn wf_kind(&mut self, ctx: &Context, k: &KindExpr) -> Judgment<()> {
        self.nested(|c| c.wf_kind_inner(ctx, k))
    }

    fn wf_kind_inner(&mut self, ctx: &Context, k: &KindExpr) -> Judgment<()> {
        match k {
            KindExpr::Star => {
                self.log("kind ★", || "★ well-formed".into());
                Ok(())
            }
            KindExpr::PiTerm(h, dom, body) => {
                self.log("kind Π", || format!("{k} well-formed"));
                self.expect_star(ctx, dom)?;
                let x = Self::fresh(ctx, Namespace::Term, h);
                let body = body.instantiate_term(&AnnTerm::free(x.clone()));
                self.wf_kind(&ctx.with_term(x, (**dom).clone()), &body)
            }
            KindExpr::PiType(h, dom, body) => {
                self.log("kind Π", || format!("{k} well-formed"));
                self.wf_kind(ctx, dom)?;
                let x = Self::fresh(ctx, Namespace::Type, h);
                let body = body.instantiate_type(&TypeExpr::free(x.clone()));
                self.wf_kind(&ctx.with_type(x, (**dom).clone()), &body)
            }
        }
    }

    /// Requires `Γ ⊢ T ⇒ ★`.
    pub fn expect_star(&mut self, ctx: &Context, t: &TypeExpr) -> Judgment<()> {
        let k = self.kind_synth(ctx, t)?;
        if k == KindExpr::Star {
            Ok(())
        } else {
            Err(
                Diagnostic::new(Code::KindMismatch, format!("{t} is not a type of kind ★"))
                    .with_types(KindExpr::Star, k),
            )
        }
    }

    /// `Γ ⊢ T ⇒ κ`
    pub fn kind_synth(&mut self, ctx: &Context, t: &TypeExpr) -> Judgment<KindExpr> {
        self.nested(|c| c.kind_synth_inner(ctx, t))
    }

    fn kind_synth_inner(&mut self, ctx: &Context, t: &TypeExpr) -> Judgment<KindExpr> {
        use TypeExpr::*;
        match t {
            Var(crate::syntax::Var::Free(n)) => {
                self.log("type variable", || format!("{t}"));
                ctx.lookup_type(n).cloned().ok_or_else(|| Self::unbound(n))
            }
            Var(crate::syntax::Var::Bound(i)) => Err(Self::dangling(*i)),
            AllType(h, k, body) => {
                self.log("∀-form", || format!("{t} ⇒ ★"));
                self.wf_kind(ctx, k)?;
                let x = Self::fresh(ctx, Namespace::Type, h);
                let body = body.instantiate_type(&TypeExpr::free(x.clone()));
                self.expect_star(&ctx.with_type(x, (**k).clone()), &body)?;
                Ok(KindExpr::Star)
            }
            AllTerm(h, dom, body) | Pi(h, dom, body) | Iota(h, dom, body) => {
                let rule = match t {
                    AllTerm(..) => "∀-form",
                    Pi(..) => "Π-form",
                    _ => "ι-form",
                };
                self.log(rule, || format!("{t} ⇒ ★"));
                self.expect_star(ctx, dom)?;
                let x = Self::fresh(ctx, Namespace::Term, h);
                let body = body.instantiate_term(&AnnTerm::free(x.clone()));
                self.expect_star(&ctx.with_term(x, (**dom).clone()), &body)?;
                Ok(KindExpr::Star)
            }
            LamTerm(h, dom, body) => {
                self.log("λ-form", || format!("{t}"));
                self.expect_star(ctx, dom)?;
                let x = Self::fresh(ctx, Namespace::Term, h);
                let body = body.instantiate_term(&AnnTerm::free(x.clone()));
                let k = self.kind_synth(&ctx.with_term(x.clone(), (**dom).clone()), &body)?;
                Ok(KindExpr::pi_term(&x, (**dom).clone(), k))
            }
            LamType(h, k, body) => {
                self.log("λ-form", || format!("{t}"));
                self.wf_kind(ctx, k)?;
                let x = Self::fresh(ctx, Namespace::Type, h);
                let body = body.instantiate_type(&TypeExpr::free(x.clone()));
                let kb = self.kind_synth(&ctx.with_type(x.clone(), (**k).clone()), &body)?;
                Ok(KindExpr::pi_type(&x, (**k).clone(), kb))
            }
            AppTerm(f, a) => {
                self.log("application-form", || format!("{t}"));
                match self.kind_synth(ctx, f)? {
                    KindExpr::PiTerm(_, dom, body) => {
                        self.check(ctx, a, &dom)?;
                        Ok(body.instantiate_term(a))
                    }
                    k => Err(Diagnostic::new(
                        Code::HeadMismatch,
                        format!("{f} is applied to a term but has kind {k}"),
                    )),
                }
            }
            AppType(f, a) => {
                self.log("application-form", || format!("{t}"));
                match self.kind_synth(ctx, f)? {
                    KindExpr::PiType(_, dom, body) => {
                        let ka = self.kind_synth(ctx, a)?;
                        match convert_kinds(&ka, &dom, self.budget) {
                            ConvOutcome::Convertible => Ok(body.instantiate_type(a)),
                            ConvOutcome::NotConvertible => Err(Diagnostic::new(
                                Code::KindMismatch,
                                format!("type argument {a} has the wrong kind"),
                            )
                            .with_types(&*dom, ka)),
                            ConvOutcome::Exhausted => Err(self.out_of_fuel("comparing kinds")),
                        }
                    }
                    k => Err(Diagnostic::new(
                        Code::HeadMismatch,
                        format!("{f} is applied to a type but has kind {k}"),
                    )),
                }
            }
            Eq(l, r) => {
                self.log("equality-form", || format!("{t} ⇒ ★"));
                let (fl, fr) = (l.fv(), r.fv());
                match names_in(fl.iter().chain(fr.iter()), ctx) {
                    Some(n) => Err(Self::unbound(n)),
                    None => Ok(KindExpr::Star),
                }
            }
        }
    }

    // ---- terms ----

    /// `Γ ⊢ t ⇐ T`; `T` must already be well-kinded.
    pub fn check(&mut self, ctx: &Context, t: &AnnTerm, ty: &TypeExpr) -> Judgment<()> {
        self.nested(|c| c.check_inner(ctx, t, ty))
    }

    fn head_mismatch(&self, what: &str, ty: &TypeExpr) -> Diagnostic {
        Diagnostic::new(Code::HeadMismatch, format!("{what}, but the type is {ty}"))
    }

    fn check_inner(&mut self, ctx: &Context, t: &AnnTerm, ty: &TypeExpr) -> Judgment<()> {
        use AnnTerm::*;
        match t {
            Lam(h, body) => {
                self.log("Π-intro", || format!("{t} ⇐ {ty}"));
                let TypeExpr::Pi(_, dom, cod) = self.whnf(ty)? else {
                    return Err(self.head_mismatch("a λ-abstraction needs a Π-type", ty));
                };
                let x = Self::fresh(ctx, Namespace::Term, h);
                let xv = AnnTerm::free(x.clone());
                self.check(
                    &ctx.with_term(x, *dom),
                    &body.instantiate_term(&xv),
                    &cod.instantiate_term(&xv),
                )
            }
            TLam(TLamBinder::Type(h), body) => {
                self.log("∀-intro", || format!("{t} ⇐ {ty}"));
                let TypeExpr::AllType(_, k, cod) = self.whnf(ty)? else {
                    return Err(self.head_mismatch("a type abstraction needs a type-quantified ∀-type", ty));
                };
                let x = Self::fresh(ctx, Namespace::Type, h);
                let xv = TypeExpr::free(x.clone());
                self.check(
                    &ctx.with_type(x, *k),
                    &body.instantiate_type(&xv),
                    &cod.instantiate_type(&xv),
                )
            }
            TLam(TLamBinder::Term(h), body) => {
                self.log("∀-intro", || format!("{t} ⇐ {ty}"));
                let TypeExpr::AllTerm(_, dom, cod) = self.whnf(ty)? else {
                    return Err(
                        self.head_mismatch("an erased abstraction needs a term-quantified ∀-type", ty)
                    );
                };
                let x = Self::fresh(ctx, Namespace::Term, h);
                let xv = AnnTerm::free(x.clone());
                let body = body.instantiate_term(&xv);
                if erase(&body).fv().contains(&x) {
                    return Err(Diagnostic::new(
                        Code::ErasedVarEscapes,
                        format!("erased variable {x} occurs in the erasure of {body}"),
                    ));
                }
                self.check(&ctx.with_term(x, *dom), &body, &cod.instantiate_term(&xv))
            }
            Pair(a, b) => {
                self.log("ι-intro", || format!("{t} ⇐ {ty}"));
                let TypeExpr::Iota(_, dom, cod) = self.whnf(ty)? else {
                    return Err(self.head_mismatch("a pair needs an ι-type", ty));
                };
                self.check(ctx, a, &dom)?;
                self.check(ctx, b, &cod.instantiate_term(a))?;
                let (ea, eb) = (erase(a), erase(b));
                match self.bee(&ea, &eb) {
                    Equality::Equal => Ok(()),
                    Equality::NotEqual => Err(Diagnostic::new(
                        Code::IntersectionErasureMismatch,
                        format!("the components of {t} have different erasures"),
                    )
                    .with_types(ea, eb)),
                    Equality::Exhausted => Err(self.out_of_fuel("comparing pair components")),
                }
            }
            Beta(w) => {
                self.log("β", || format!("{t} ⇐ {ty}"));
                let TypeExpr::Eq(l, r) = self.whnf(ty)? else {
                    return Err(self.head_mismatch("β needs an equation type", ty));
                };
                let (fl, fr) = (l.fv(), r.fv());
                if let Some(n) = names_in(fl.iter().chain(fr.iter()), ctx) {
                    return Err(Diagnostic::new(
                        Code::KleeneScope,
                        format!("equation mentions undeclared {n}"),
                    ));
                }
                let ew = erase(w);
                if let Some(n) = names_in(ew.fv().iter(), ctx) {
                    return Err(Diagnostic::new(
                        Code::KleeneScope,
                        format!("the erasure of the witness {w} mentions undeclared {n}"),
                    ));
                }
                let (el, er) = (erase(&l), erase(&r));
                match self.bee(&el, &er) {
                    Equality::Equal => Ok(()),
                    Equality::NotEqual => Err(Diagnostic::new(
                        Code::BetaUnequal,
                        "the sides of the equation are not βη-equal",
                    )
                    .with_types(el, er)),
                    Equality::Exhausted => Err(self.out_of_fuel("comparing the sides of an equation")),
                }
            }
            Delta(q) => {
                self.log("δ", || format!("{t} ⇐ {ty}"));
                let absurd = TypeExpr::eq(church_true(), church_false());
                self.check(ctx, q, &absurd).map_err(|e| {
                    if e.code == Code::FuelExhausted {
                        return e;
                    }
                    let mut d = Diagnostic::new(
                        Code::DeltaPremise,
                        format!("δ needs a proof of {absurd}: {}", e.message),
                    );
                    d.expected = e.expected;
                    d.actual = e.actual;
                    d
                })
            }
            Rho(q, body) => {
                self.log("ρ", || format!("{t} ⇐ {ty}"));
                let (l, r) = self.synth_equation(ctx, q)?;
                let (rewritten, n) = rho_rewrite(ty, &r, &l);
                if n == 0 {
                    self.warnings.push(Diagnostic::new(
                        Code::RhoNoMatch,
                        format!("rewriting with {q} matched nothing in {ty}"),
                    ));
                }
                self.check(ctx, body, &rewritten)
            }
            Chi(s, body) => {
                self.log("χ", || format!("{t} ⇐ {ty}"));
                self.expect_star(ctx, s)?;
                self.check(ctx, body, s)?;
                self.conv(ty, s, "χ annotation")
            }
            Phi(q, a, b) => {
                self.log("φ", || format!("{t} ⇐ {ty}"));
                self.check(ctx, a, ty)?;
                self.phi_premise(ctx, q, a, b)
            }
            Var(_) | App(..) | ErasedApp(..) | TypeApp(..) | Proj1(_) | Proj2(_) => {
                self.log("conversion", || format!("{t} ⇐ {ty}"));
                let actual = self.synth(ctx, t)?;
                self.conv(ty, &actual, "a checked term")
            }
        }
    }

    fn phi_premise(&mut self, ctx: &Context, q: &AnnTerm, a: &AnnTerm, b: &AnnTerm) -> Judgment<()> {
        if let Some(n) = names_in(b.fv().iter(), ctx) {
            return Err(Self::unbound(n));
        }
        self.check(ctx, q, &TypeExpr::eq(a.clone(), b.clone()))
    }

    // Synthesizes the type of an equation proof and splits it into sides.
    fn synth_equation(&mut self, ctx: &Context, q: &AnnTerm) -> Judgment<(AnnTerm, AnnTerm)> {
        let qt = self.synth(ctx, q)?;
        match self.whnf(&qt)? {
            TypeExpr::Eq(l, r) => Ok((*l, *r)),
            other => Err(self.head_mismatch(&format!("{q} is used as an equation proof"), &other)),
        }
    }

    /// `Γ ⊢ t ⇒ T`
    pub fn synth(&mut self, ctx: &Context, t: &AnnTerm) -> Judgment<TypeExpr> {
        self.nested(|c| c.synth_inner(ctx, t))
    }

    fn synth_inner(&mut self, ctx: &Context, t: &AnnTerm) -> Judgment<TypeExpr> {
        use AnnTerm::*;
        match t {
            Var(crate::syntax::Var::Free(n)) => {
                self.log("variable", || format!("{t}"));
                ctx.lookup_term(n).cloned().ok_or_else(|| Self::unbound(n))
            }
            Var(crate::syntax::Var::Bound(i)) => Err(Self::dangling(*i)),
            App(f, a) => {
                self.log("Π-elim", || format!("{t}"));
                let ft = self.synth(ctx, f)?;
                let TypeExpr::Pi(_, dom, cod) = self.whnf(&ft)? else {
                    return Err(self.head_mismatch(&format!("{f} is applied to a term"), &ft));
                };
                self.check(ctx, a, &dom)?;
                Ok(cod.instantiate_term(a))
            }
            ErasedApp(f, a) => {
                self.log("∀-elim", || format!("{t}"));
                let ft = self.synth(ctx, f)?;
                let TypeExpr::AllTerm(_, dom, cod) = self.whnf(&ft)? else {
                    return Err(self.head_mismatch(&format!("{f} is applied to an erased term"), &ft));
                };
                self.check(ctx, a, &dom)?;
                Ok(cod.instantiate_term(a))
            }
            TypeApp(f, s) => {
                self.log("∀-elim", || format!("{t}"));
                let ft = self.synth(ctx, f)?;
                let TypeExpr::AllType(_, k, cod) = self.whnf(&ft)? else {
                    return Err(self.head_mismatch(&format!("{f} is applied to a type"), &ft));
                };
                let ks = self.kind_synth(ctx, s)?;
                match convert_kinds(&ks, &k, self.budget) {
                    ConvOutcome::Convertible => Ok(cod.instantiate_type(s)),
                    ConvOutcome::NotConvertible => Err(Diagnostic::new(
                        Code::KindMismatch,
                        format!("type argument {s} has the wrong kind"),
                    )
                    .with_types(&*k, ks)),
                    ConvOutcome::Exhausted => Err(self.out_of_fuel("comparing kinds")),
                }
            }
            Proj1(p) | Proj2(p) => {
                let first = matches!(t, Proj1(_));
                self.log(if first { "ι-elim1" } else { "ι-elim2" }, || format!("{t}"));
                let pt = self.synth(ctx, p)?;
                let TypeExpr::Iota(_, dom, cod) = self.whnf(&pt)? else {
                    return Err(self.head_mismatch(&format!("{p} is projected"), &pt));
                };
                if first {
                    Ok(*dom)
                } else {
                    Ok(cod.instantiate_term(&AnnTerm::proj1((**p).clone())))
                }
            }
            Chi(s, body) => {
                self.log("χ", || format!("{t}"));
                self.expect_star(ctx, s)?;
                self.check(ctx, body, s)?;
                Ok((**s).clone())
            }
            Rho(q, body) => {
                self.log("ρ", || format!("{t}"));
                let (l, r) = self.synth_equation(ctx, q)?;
                let bt = self.synth(ctx, body)?;
                let (rewritten, n) = rho_rewrite(&bt, &l, &r);
                if n == 0 {
                    self.warnings.push(Diagnostic::new(
                        Code::RhoNoMatch,
                        format!("rewriting with {q} matched nothing in {bt}"),
                    ));
                }
                Ok(rewritten)
            }
            Phi(q, a, b) => {
                self.log("φ", || format!("{t}"));
                let at = self.synth(ctx, a)?;
                self.phi_premise(ctx, q, a, b)?;
                Ok(at)
            }
            Lam(..) | TLam(..) | Pair(..) | Beta(_) | Delta(_) => Err(Diagnostic::new(
                Code::NotSynthesizable,
                format!("cannot synthesize a type for {t}, annotate with χ"),
            )),
        }
    }
}

/// `Γ ⊢ κ` with its own checker.
pub fn wf_kind(ctx: &Context, k: &KindExpr, budget: &mut Budget) -> Judgment<()> {
    Checker::new(budget).wf_kind(ctx, k)
}

/// `Γ ⊢ T ⇒ κ` with its own checker.
pub fn kind_synth(ctx: &Context, t: &TypeExpr, budget: &mut Budget) -> Judgment<KindExpr> {
    Checker::new(budget).kind_synth(ctx, t)
}

/// `Γ ⊢ t ⇐ T` with its own checker; warnings are dropped.
pub fn type_check(ctx: &Context, t: &AnnTerm, ty: &TypeExpr, budget: &mut Budget) -> Judgment<()> {
    Checker::new(budget).check(ctx, t, ty)
}

/// `Γ ⊢ t ⇒ T` with its own checker; warnings are dropped.
pub fn type_synth(ctx: &Context, t: &AnnTerm, budget: &mut Budget) -> Judgment<TypeExpr> {
    Checker::new(budget).synth(ctx, t)
}

/// Either judgment, selected by mode; synthesis returns the type found and
/// checking returns the expected type.
pub fn type_mode(ctx: &Context, t: &AnnTerm, mode: &Mode, budget: &mut Budget) -> Judgment<TypeExpr> {
    match mode {
        Mode::Check(ty) => type_check(ctx, t, ty, budget).map(|()| ty.clone()),
        Mode::Synth => type_synth(ctx, t, budget),
    }
}
