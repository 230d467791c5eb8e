use std::collections::HashMap;

use crate::classifier::Checker;
use crate::conversion::{convert_kinds, convert_types, ConvOutcome};
use crate::diagnostic::{Code, Diagnostic, FuelReport, SourceSpan};
use crate::erasure::erase;
use crate::lambda::{normalize, Budget, NormResult, DEFAULT_FUEL};
use crate::syntax::{AnnTerm, Context, Definiens, Name, Syntax};

use super::{Decl, DeclKind, Definition};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    /// Step budget granted to each declaration.
    pub fuel: u64,
    pub trace: bool,
    pub print_erased: bool,
}

impl Default for Options {
    fn default() -> Options {
        Options {
            fuel: DEFAULT_FUEL,
            trace: false,
            print_erased: false,
        }
    }
}

/// What happened to one declaration.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct DeclReport {
    /// Errors first, then warnings.
    pub diagnostics: Vec<Diagnostic>,
    /// Lines printed by directives.
    pub output: Vec<String>,
    pub trace: Vec<String>,
    /// Steps taken from this declaration's budget.
    pub fuel_used: u64,
}

impl DeclReport {
    pub fn is_ok(&self) -> bool {
        self.diagnostics.iter().all(Diagnostic::is_warning)
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub decls: Vec<DeclReport>,
}

impl Report {
    pub fn is_ok(&self) -> bool {
        self.decls.iter().all(DeclReport::is_ok)
    }

    pub fn diagnostics(&self) -> impl Iterator<Item = &Diagnostic> {
        self.decls.iter().flat_map(|d| d.diagnostics.iter())
    }

    pub fn errors(&self) -> impl Iterator<Item = &Diagnostic> {
        self.diagnostics().filter(|d| !d.is_warning())
    }
}

struct Elaborator {
    opts: Options,
    defs: HashMap<Name, Definiens>,
}

/// Checks declarations in order. Each definition is inlined into every later
/// declaration; a term definition is inlined as `χ T - body` so it keeps its
/// declared type. The kernel context stays empty.
pub fn elaborate(decls: &[Decl], opts: Options) -> Report {
    let mut el = Elaborator {
        opts,
        defs: HashMap::new(),
    };
    Report {
        decls: decls.iter().map(|d| el.decl(d)).collect(),
    }
}

impl Elaborator {
    fn inline<S: Syntax>(&self, e: &S) -> S {
        if self.defs.is_empty() {
            return e.clone();
        }
        e.inline(&|n| self.defs.get(n).cloned())
    }

    // The first identifier occurrence neither defined nor bound.
    fn unbound<'a>(&self, d: &'a Decl, pick: impl Fn(&Name) -> bool) -> Option<&'a (Name, SourceSpan)> {
        d.free.iter().find(|(n, _)| pick(n) && !self.defs.contains_key(n))
    }

    fn decl(&mut self, d: &Decl) -> DeclReport {
        let mut budget = Budget::new(self.opts.fuel);
        let mut checker = Checker::new(&mut budget);
        if self.opts.trace {
            checker = checker.with_trace();
        }
        let mut output = Vec::new();
        let result = self.run(d, &mut checker, &mut output);
        let mut diagnostics = Vec::new();
        if let Err(e) = result {
            diagnostics.push(e.or_span(&d.span));
        }
        for w in checker.take_warnings() {
            diagnostics.push(w.or_span(&d.span));
        }
        let trace = checker.take_trace();
        drop(checker);
        DeclReport {
            diagnostics,
            output,
            trace,
            fuel_used: budget.used(),
        }
    }

    fn run(&mut self, d: &Decl, c: &mut Checker<'_>, output: &mut Vec<String>) -> Result<(), Diagnostic> {
        let ctx = Context::new();
        match &d.kind {
            DeclKind::Define(name, def) => {
                if self.defs.contains_key(name) {
                    return Err(Diagnostic::new(
                        Code::DuplicateDefinition,
                        format!("{name} is already defined"),
                    ));
                }
                let scoped = self.unbound(d, |n| n != name).cloned();
                // Record the definition even if it fails, so later
                // declarations report their own problems rather than an
                // unbound name.
                match def {
                    Definition::Term { ty, body } => {
                        let (ty, body) = (self.inline(ty), self.inline(body));
                        self.defs.insert(
                            name.clone(),
                            Definiens::Term(AnnTerm::chi(ty.clone(), body.clone())),
                        );
                        if self.opts.print_erased {
                            output.push(format!("{name} = {}", erase(&body)));
                        }
                        self.scope_check(scoped)?;
                        c.expect_star(&ctx, &ty)?;
                        c.check(&ctx, &body, &ty)
                    }
                    Definition::Type { kind, body } => {
                        let (kind, body) = (self.inline(kind), self.inline(body));
                        self.defs.insert(name.clone(), Definiens::Type(body.clone()));
                        self.scope_check(scoped)?;
                        c.wf_kind(&ctx, &kind)?;
                        let actual = c.kind_synth(&ctx, &body)?;
                        match convert_kinds(&actual, &kind, c.budget_mut()) {
                            ConvOutcome::Convertible => Ok(()),
                            ConvOutcome::NotConvertible => Err(Diagnostic::new(
                                Code::KindMismatch,
                                format!("{name} does not have its declared kind"),
                            )
                            .with_types(&kind, &actual)),
                            ConvOutcome::Exhausted => Err(fuel_error(c.budget(), "comparing kinds")),
                        }
                    }
                }
            }
            DeclKind::Check(t, ty) => {
                self.scope_check(self.unbound(d, |_| true).cloned())?;
                let (t, ty) = (self.inline(t), self.inline(ty));
                if self.opts.print_erased {
                    output.push(erase(&t).to_string());
                }
                c.expect_star(&ctx, &ty)?;
                c.check(&ctx, &t, &ty)
            }
            DeclKind::Fail(t, ty) => {
                let ty_scoped = self.unbound(d, |n| ty.fv().contains(n)).cloned();
                self.scope_check(ty_scoped)?;
                let (t, ty) = (self.inline(t), self.inline(ty));
                c.expect_star(&ctx, &ty)?;
                match c.check(&ctx, &t, &ty) {
                    Ok(()) => Err(Diagnostic::new(
                        Code::UnexpectedSuccess,
                        format!("expected {t} to be rejected at {ty}, but it checks"),
                    )),
                    Err(_) => {
                        // Warnings from a rejected attempt are not interesting.
                        c.take_warnings();
                        Ok(())
                    }
                }
            }
            DeclKind::Conv(a, b) => {
                let (a, b) = (self.inline(a), self.inline(b));
                match convert_types(&a, &b, c.budget_mut()) {
                    ConvOutcome::Convertible => Ok(()),
                    ConvOutcome::NotConvertible => Err(Diagnostic::new(
                        Code::ConversionFailed,
                        "the types are not convertible",
                    )
                    .with_types(&a, &b)),
                    ConvOutcome::Exhausted => Err(fuel_error(c.budget(), "comparing types")),
                }
            }
            DeclKind::Norm(t) => {
                let p = erase(&self.inline(t));
                match normalize(&p, c.budget_mut()) {
                    NormResult::Normal(n) => output.push(n.to_string()),
                    NormResult::Exhausted(partial, steps) => {
                        output.push(format!("exhausted after {steps} steps at {partial}"))
                    }
                }
                Ok(())
            }
            DeclKind::Synth(t) => {
                self.scope_check(self.unbound(d, |_| true).cloned())?;
                let t = self.inline(t);
                let ty = c.synth(&ctx, &t)?;
                output.push(ty.to_string());
                Ok(())
            }
        }
    }

    fn scope_check(&self, unbound: Option<(Name, SourceSpan)>) -> Result<(), Diagnostic> {
        match unbound {
            Some((n, sp)) => {
                Err(Diagnostic::new(Code::UnboundVariable, format!("unbound variable {n}")).with_span(sp))
            }
            None => Ok(()),
        }
    }
}

fn fuel_error(budget: &Budget, what: &str) -> Diagnostic {
    Diagnostic::new(Code::FuelExhausted, format!("fuel exhausted while {what}")).with_fuel(FuelReport {
        initial: budget.initial(),
        used: budget.used(),
    })
}
