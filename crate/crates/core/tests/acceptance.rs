//! Acceptance criteria 1 to 11. Runs without the test harness so that one
//! `[PASS]`/`[FAIL]` line per criterion is always printed.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use cdle_core::classifier::{type_check, type_synth};
use cdle_core::conversion::{convert_types, type_beta_step, ConvOutcome};
use cdle_core::frontend::{
    elaborate, parse_file, parse_kind, parse_term, parse_type, Decl, DeclKind, Definition, Options,
};
use cdle_core::lambda::oracle::{joinable, reachable};
use cdle_core::syntax::Syntax;
use cdle_core::{beta_eta_equal, erase, AnnTerm, Budget, Context, Equality, NormResult, PureTerm, TypeExpr};
use common::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:.2?}, limit {limit:?}"))
}

fn pure(s: &str) -> PureTerm {
    erase(&parse_term(s).unwrap())
}

fn erasure_table() -> Outcome {
    let start = Instant::now();
    let cases = [
        ("x", "x"),
        ("λ x . x y", "λ x . x y"),
        ("f a", "f a"),
        ("f · A", "f"),
        ("Λ X . Λ x . λ y . y", "λ y . y"),
        ("f -a", "f"),
        ("[a, b]", "a"),
        ("p.1", "p"),
        ("p.2", "p"),
        ("β{λ z . z z}", "λ z . z z"),
        ("δ q", "q"),
        ("ρ q - (f a)", "f a"),
        ("φ q - f {λ y . y y}", "λ y . y y"),
        ("χ A - (λ x . x)", "λ x . x"),
    ];
    for (src, expected) in cases {
        let got = erase(&parse_term(src).unwrap());
        ensure(got == pure(expected), || {
            format!("|{src}| = {got}, expected {expected}")
        })?;
    }
    within(start, Duration::from_secs(1))?;
    Ok(format!("{} equations", cases.len()))
}

fn oracle_agreement() -> Outcome {
    let start = Instant::now();
    let terms = closed_pure_terms(7);
    let reach: Vec<_> = terms.iter().map(|p| reachable(p, 6)).collect();
    let (mut conclusive, mut inconclusive) = (0usize, 0usize);
    for i in 0..terms.len() {
        for j in i..terms.len() {
            let Some(verdict) = joinable(&reach[i], &reach[j]) else {
                inconclusive += 1;
                continue;
            };
            conclusive += 1;
            let got = beta_eta_equal(&terms[i], &terms[j], &mut Budget::new(10_000));
            let want = if verdict {
                Equality::Equal
            } else {
                Equality::NotEqual
            };
            ensure(got == want, || {
                format!("{} vs {}: oracle {want}, engine {got}", terms[i], terms[j])
            })?;
        }
    }
    within(start, Duration::from_secs(300))?;
    Ok(format!(
        "{} terms, {conclusive} conclusive pairs agree, {inconclusive} inconclusive",
        terms.len()
    ))
}

fn confluence() -> Outcome {
    let terms = closed_pure_terms(7);
    let mut normalizing = 0;
    for p in &terms {
        let r = reachable(p, 6);
        ensure(r.normal_forms().len() <= 1, || {
            format!("{p} reaches {} distinct normal forms", r.normal_forms().len())
        })?;
        if r.is_complete() && !r.normal_forms().is_empty() {
            normalizing += 1;
            let n = cdle_core::normalize(p, &mut Budget::new(10_000)).normal();
            ensure(n.as_ref().is_some_and(|n| r.contains(n)), || {
                format!("{p}: engine normal form is not the enumerated one")
            })?;
        }
    }
    Ok(format!(
        "{normalizing} of {} terms fully explored, one normal form each",
        terms.len()
    ))
}

fn kleene_trick() -> Outcome {
    let src = "#check β{(λ x . x x) (λ x . x x)} : { λ x . x ≃ λ x . x } .";
    let report = elaborate(&parse_file("kleene", src).unwrap(), Options::default());
    ensure(report.is_ok(), || {
        format!("{:?}", report.errors().collect::<Vec<_>>())
    })?;
    let omega = pure("(λ x . x x) (λ x . x x)");
    let fuels = [1, 10, 100, 1_000, 10_000, 100_000, 1_000_000];
    for f in fuels {
        match cdle_core::normalize(&omega, &mut Budget::new(f)) {
            NormResult::Exhausted(_, steps) => ensure(steps == f, || format!("fuel {f}: used {steps}"))?,
            NormResult::Normal(n) => return Err(format!("fuel {f}: normalized to {n}")),
        }
    }
    let report = elaborate(&parse_corpus("kleene.ced"), Options::default());
    ensure(report.is_ok(), || {
        format!("kleene.ced: {:?}", report.errors().collect::<Vec<_>>())
    })?;
    Ok(format!(
        "witness checks; #norm exhausts at fuels up to {}",
        fuels[fuels.len() - 1]
    ))
}

fn contains_phi_of_delta(t: &AnnTerm) -> bool {
    let mut found = false;
    visit_term(t, &mut |s| {
        if let AnnTerm::Phi(eq, _, _) = s {
            found |= matches!(**eq, AnnTerm::Delta(_));
        }
    });
    found
}

fn contains_self_application(p: &PureTerm) -> bool {
    let omega_half = pure("λ z . z z");
    fn go(p: &PureTerm, w: &PureTerm) -> bool {
        match p {
            PureTerm::App(f, a) => (**f == *w && **a == *w) || go(f, w) || go(a, w),
            PureTerm::Lam(_, b) => go(b, w),
            PureTerm::Var(_) => false,
        }
    }
    go(p, &omega_half)
}

fn non_normalization() -> Outcome {
    let decls = parse_corpus("nonnorm.ced");
    let report = elaborate(&decls, Options::default());
    ensure(report.is_ok(), || {
        format!("{:?}", report.errors().collect::<Vec<_>>())
    })?;
    let classifier = parse_type(
        "∀ x : { λ a . λ b . a ≃ λ a . λ b . b } . Π y : (∀ X : ★ . Π z : X . X) . (∀ X : ★ . Π z : X . X)",
    )
    .unwrap();
    let body = decls
        .iter()
        .find_map(|d| match &d.kind {
            DeclKind::Define(n, Definition::Term { ty, body }) if n.spelling() == "nonNorm" => {
                Some((ty.clone(), body.clone()))
            }
            _ => None,
        })
        .ok_or("nonNorm is not defined")?;
    ensure(body.0 == classifier, || {
        format!("nonNorm has classifier {}", body.0)
    })?;
    ensure(contains_phi_of_delta(&body.1), || "no φ over δ in nonNorm".into())?;
    let erased = erase(&body.1);
    ensure(contains_self_application(&erased), || {
        format!("erasure {erased} has no self-application")
    })?;
    let applied = PureTerm::app(erased, pure("λ x . x"));
    for f in [1_000, 100_000, 1_000_000] {
        if let NormResult::Normal(n) = cdle_core::normalize(&applied, &mut Budget::new(f)) {
            return Err(format!("nonNorm (λ x . x) normalized to {n}"));
        }
    }
    Ok("nonNorm accepted; nonNorm (λ x . x) exhausts fuel".into())
}

fn consistency() -> Outcome {
    let decls = parse_corpus("consistency.ced");
    let absurd = parse_type("∀ X : ★ . X").unwrap();
    let n = decls
        .iter()
        .filter(|d| matches!(&d.kind, DeclKind::Fail(_, ty) if *ty == absurd))
        .count();
    ensure(n >= 10, || format!("only {n} candidate proofs of ∀ X : ★ . X"))?;
    let report = elaborate(&decls, Options::default());
    ensure(report.is_ok(), || {
        format!("{:?}", report.errors().collect::<Vec<_>>())
    })?;
    Ok(format!("{n} candidate proofs rejected"))
}

fn defines(decls: &[Decl], names: &[&str]) -> Result<(), String> {
    for want in names {
        let found = decls
            .iter()
            .any(|d| matches!(&d.kind, DeclKind::Define(n, _) if n.spelling() == *want));
        ensure(found, || format!("{want} is not defined"))?;
    }
    Ok(())
}

fn induction() -> Outcome {
    let start = Instant::now();
    let decls = parse_corpus("induction.ced");
    defines(&decls, &["CNat", "Nat", "zero", "suc", "ind"])?;
    let report = elaborate(&decls, Options::default());
    ensure(report.is_ok(), || {
        format!("{:?}", report.errors().collect::<Vec<_>>())
    })?;
    within(start, Duration::from_secs(10))?;
    Ok(format!("{} declarations in {:.2?}", decls.len(), start.elapsed()))
}

fn equality_corpus() -> Outcome {
    let decls = parse_corpus("equality.ced");
    defines(&decls, &["sym", "trans"])?;
    let uses = |pick: fn(&AnnTerm) -> bool, fail: bool| {
        decls.iter().any(|d| match &d.kind {
            DeclKind::Check(t, _) if !fail => pick(t),
            DeclKind::Fail(t, _) if fail => pick(t),
            _ => false,
        })
    };
    let is_phi: fn(&AnnTerm) -> bool = |t| matches!(t, AnnTerm::Phi(..));
    let is_chi: fn(&AnnTerm) -> bool = |t| matches!(t, AnnTerm::Chi(..));
    for (what, pick) in [("φ", is_phi), ("χ", is_chi)] {
        ensure(uses(pick, false), || format!("no {what} example"))?;
        ensure(uses(pick, true), || format!("no failing {what} example"))?;
    }
    let fails = decls
        .iter()
        .filter(|d| matches!(d.kind, DeclKind::Fail(..)))
        .count();
    ensure(fails >= 4, || format!("only {fails} #fail directives"))?;
    let report = elaborate(&decls, Options::default());
    ensure(report.is_ok(), || {
        format!("{:?}", report.errors().collect::<Vec<_>>())
    })?;
    Ok(format!(
        "{} declarations, {fails} broken variants rejected",
        decls.len()
    ))
}

// Visit `t` and every subterm, including terms inside types.
fn visit_term(t: &AnnTerm, f: &mut dyn FnMut(&AnnTerm)) {
    f(t);
    match t {
        AnnTerm::Var(_) => {}
        AnnTerm::Lam(_, b) | AnnTerm::TLam(_, b) => visit_term(b, f),
        AnnTerm::Proj1(b) | AnnTerm::Proj2(b) | AnnTerm::Beta(b) | AnnTerm::Delta(b) => visit_term(b, f),
        AnnTerm::App(a, b) | AnnTerm::ErasedApp(a, b) | AnnTerm::Pair(a, b) | AnnTerm::Rho(a, b) => {
            visit_term(a, f);
            visit_term(b, f);
        }
        AnnTerm::TypeApp(a, ty) => {
            visit_term(a, f);
            visit_type_terms(ty, f);
        }
        AnnTerm::Chi(ty, b) => {
            visit_type_terms(ty, f);
            visit_term(b, f);
        }
        AnnTerm::Phi(a, b, c) => {
            visit_term(a, f);
            visit_term(b, f);
            visit_term(c, f);
        }
    }
}

fn visit_type_terms(t: &TypeExpr, f: &mut dyn FnMut(&AnnTerm)) {
    match t {
        TypeExpr::Var(_) => {}
        TypeExpr::AllType(_, _, b) | TypeExpr::LamType(_, _, b) => visit_type_terms(b, f),
        TypeExpr::AllTerm(_, a, b)
        | TypeExpr::Pi(_, a, b)
        | TypeExpr::Iota(_, a, b)
        | TypeExpr::LamTerm(_, a, b)
        | TypeExpr::AppType(a, b) => {
            visit_type_terms(a, f);
            visit_type_terms(b, f);
        }
        TypeExpr::AppTerm(a, t) => {
            visit_type_terms(a, f);
            visit_term(t, f);
        }
        TypeExpr::Eq(l, r) => {
            visit_term(l, f);
            visit_term(r, f);
        }
    }
}

fn mode_coherence() -> Outcome {
    let (mut synthesized, mut total) = (0, 0);
    for path in corpus_files() {
        let text = std::fs::read_to_string(&path).unwrap();
        let decls = parse_file(&path.display().to_string(), &text).map_err(|d| d.to_string())?;
        for kind in inlined(&decls) {
            let roots: Vec<&AnnTerm> = match &kind {
                DeclKind::Define(_, Definition::Term { body, .. }) => vec![body],
                DeclKind::Check(t, _) | DeclKind::Synth(t) => vec![t],
                _ => vec![],
            };
            for root in roots {
                let mut subterms = Vec::new();
                visit_term(root, &mut |s| {
                    if s.is_locally_closed() && s.fv().is_empty() {
                        subterms.push(s.clone());
                    }
                });
                for s in subterms {
                    total += 1;
                    let ctx = Context::new();
                    let Ok(ty) = type_synth(&ctx, &s, &mut Budget::default()) else {
                        continue;
                    };
                    synthesized += 1;
                    type_check(&ctx, &s, &ty, &mut Budget::default()).map_err(|d| {
                        format!("{}: {s} synthesizes {ty} but does not check: {d}", path.display())
                    })?;
                }
            }
        }
    }
    ensure(synthesized > 0, || "nothing synthesized".into())?;
    Ok(format!(
        "{synthesized} of {total} closed subterms synthesize and re-check"
    ))
}

fn corpus_types() -> Result<Vec<TypeExpr>, String> {
    let mut out = Vec::new();
    for path in corpus_files() {
        let text = std::fs::read_to_string(&path).unwrap();
        let decls = parse_file(&path.display().to_string(), &text).map_err(|d| d.to_string())?;
        for kind in inlined(&decls) {
            match kind {
                DeclKind::Define(_, Definition::Term { ty, .. }) => out.push(ty),
                DeclKind::Define(_, Definition::Type { body, .. }) => out.push(body),
                DeclKind::Check(_, ty) | DeclKind::Fail(_, ty) => out.push(ty),
                DeclKind::Conv(a, b) => out.extend([a, b]),
                _ => {}
            }
        }
    }
    out.dedup();
    Ok(out)
}

fn conversion_properties() -> Outcome {
    let types = corpus_types()?;
    let conv = |a: &TypeExpr, b: &TypeExpr| convert_types(a, b, &mut Budget::default());
    let mut steps = 0;
    for a in &types {
        ensure(conv(a, a) == ConvOutcome::Convertible, || {
            format!("{a} is not convertible with itself")
        })?;
        let mut cur = a.clone();
        for _ in 0..8 {
            let Some(next) = type_beta_step(&cur) else { break };
            steps += 1;
            ensure(conv(a, &next) == ConvOutcome::Convertible, || {
                format!("{a} does not convert with its reduct {next}")
            })?;
            cur = next;
        }
    }
    let mut pairs = 0;
    for a in &types {
        for b in &types {
            pairs += 1;
            let (ab, ba) = (conv(a, b), conv(b, a));
            ensure(ab == ba, || format!("{a} vs {b}: {ab} one way, {ba} the other"))?;
        }
    }
    let lhs = parse_type("{ (λ x . x) a ≃ b }").unwrap();
    let rhs = parse_type("{ a ≃ b }").unwrap();
    ensure(conv(&lhs, &rhs) == ConvOutcome::Convertible, || {
        "{ (λ x . x) a ≃ b } ≇ { a ≃ b }".into()
    })?;
    Ok(format!(
        "{} types, {steps} β-reducts, {pairs} ordered pairs",
        types.len()
    ))
}

fn round_trip() -> Outcome {
    let mut checked = 0;
    for path in corpus_files() {
        let text = std::fs::read_to_string(&path).unwrap();
        let decls = parse_file("corpus", &text).map_err(|d| d.to_string())?;
        let printed: String = decls
            .iter()
            .map(|d| format!("{}\n", print_decl(&d.kind)))
            .collect();
        let again =
            parse_file("printed", &printed).map_err(|d| format!("{}: {d}\n{printed}", path.display()))?;
        ensure(again.len() == decls.len(), || {
            format!("{}: declaration count changed", path.display())
        })?;
        for (a, b) in decls.iter().zip(&again) {
            ensure(a.kind == b.kind, || {
                format!(
                    "{}: `{}` reparsed differently",
                    path.display(),
                    print_decl(&a.kind)
                )
            })?;
        }
        checked += decls.len();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut g = Gen::new(&mut rng);
    for i in 0..1000 {
        let size = 2 + i % 12;
        match i % 3 {
            0 => {
                let t = g.term(size);
                let back = parse_term(&t.to_string()).map_err(|d| format!("{t}: {d}"))?;
                ensure(back == t, || format!("term {t} reparsed as {back}"))?;
            }
            1 => {
                let t = g.ty(size);
                let back = parse_type(&t.to_string()).map_err(|d| format!("{t}: {d}"))?;
                ensure(back == t, || format!("type {t} reparsed as {back}"))?;
            }
            _ => {
                let k = g.kind(size);
                let back = parse_kind(&k.to_string()).map_err(|d| format!("{k}: {d}"))?;
                ensure(back == k, || format!("kind {k} reparsed as {back}"))?;
            }
        }
    }
    Ok(format!(
        "{checked} corpus declarations and 1000 random expressions"
    ))
}

fn print_decl(k: &DeclKind) -> String {
    match k {
        DeclKind::Define(n, Definition::Term { ty, body }) => format!("def {n} : {ty} = {body} ."),
        DeclKind::Define(n, Definition::Type { kind, body }) => format!("def {n} : {kind} = {body} ."),
        DeclKind::Check(t, ty) => format!("#check {t} : {ty} ."),
        DeclKind::Fail(t, ty) => format!("#fail {t} : {ty} ."),
        DeclKind::Conv(a, b) => format!("#conv {a} ≅ {b} ."),
        DeclKind::Norm(t) => format!("#norm {t} ."),
        DeclKind::Synth(t) => format!("#synth {t} ."),
    }
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("erasure table", erasure_table),
        ("oracle agreement", oracle_agreement),
        ("confluence", confluence),
        ("Kleene trick", kleene_trick),
        ("typable non-normalizing term", non_normalization),
        ("consistency smoke", consistency),
        ("induction corpus", induction),
        ("ρ/χ/φ corpus", equality_corpus),
        ("mode coherence", mode_coherence),
        ("conversion properties", conversion_properties),
        ("parse/print round trip", round_trip),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("[PASS] {:>2} {name} ({t:.2?}): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {:>2} {name} ({t:.2?}): {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
