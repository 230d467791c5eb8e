use std::path::PathBuf;
use std::process::Command;

fn write(name: &str, text: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("cdle-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, text).unwrap();
    path
}

fn corpus(name: &str) -> String {
    format!("{}/../../corpus/{name}", env!("CARGO_MANIFEST_DIR"))
}

// Runs in-process and returns (exit code, stdout, stderr).
fn run(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("cdle").chain(args.iter().copied());
    let code = cdle_cli::run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn accepted_file_exits_zero() {
    let f = write(
        "top.ced",
        "def Top : ★ = { λ x . x ≃ λ x . x } .\n#check β{λ x . x x} : Top .\n",
    );
    let (code, _, err) = run(&["check", f.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    assert!(err.is_empty());
}

#[test]
fn rejected_declaration_exits_one() {
    let f = write("absurd.ced", "#check λ x . x : ∀ X : ★ . X .\n");
    let file = f.to_str().unwrap();
    let (code, _, err) = run(&["check", file]);
    assert_eq!(code, 1);
    assert!(err.starts_with(&format!("{file}:1:1: HeadMismatch: ")), "{err}");
}

#[test]
fn usage_and_parse_errors_exit_two() {
    let f = write("ok.ced", "#norm λ x . x .\n");
    assert_eq!(run(&["check", "--fuel", "0", f.to_str().unwrap()]).0, 2);
    assert_eq!(run(&["check"]).0, 2);
    assert_eq!(run(&["check", "/nonexistent/file.ced"]).0, 2);
    let bad = write("bad.ced", "#check λ x . : X .\n");
    let (code, _, err) = run(&["check", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("ParseError"), "{err}");
}

#[test]
fn the_most_severe_file_decides_the_exit_code() {
    let ok = write("sev-ok.ced", "#norm λ x . x .\n");
    let fails = write("sev-fail.ced", "#check λ x . x : ∀ X : ★ . X .\n");
    let (ok, fails) = (ok.to_str().unwrap(), fails.to_str().unwrap());
    assert_eq!(run(&["check", ok, fails]).0, 1);
    assert_eq!(run(&["check", ok, fails, "/nonexistent.ced"]).0, 2);
}

#[test]
fn json_errors_are_one_object_per_line() {
    let f = write(
        "json.ced",
        "#check λ x . x : ∀ X : ★ . X .\n#check a : ∀ X : ★ . X .\n",
    );
    let (code, _, err) = run(&["check", "--json-errors", f.to_str().unwrap()]);
    assert_eq!(code, 1);
    let objs: Vec<serde_json::Value> = err.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(objs.len(), 2);
    assert_eq!(objs[0]["code"], "HeadMismatch");
    assert_eq!(objs[1]["code"], "UnboundVariable");
    assert_eq!(objs[1]["line"], 2);
    assert_eq!(objs[1]["col"], 8);
}

#[test]
fn directives_print_to_stdout() {
    let (code, out, _) = run(&["check", &corpus("basics.ced")]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l == "λ s . λ z . s (s (s (s z)))"), "{out}");
}

#[test]
fn print_erased_and_trace() {
    let f = write("trace.ced", "#check Λ X . λ x . x : ∀ X : ★ . Π x : X . X .\n");
    let (code, out, err) = run(&["check", "--print-erased", "--trace", f.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(out, "λ x . x\n");
    let lines: Vec<&str> = err.lines().collect();
    assert!(lines[0].starts_with("∀-form: "), "{err}");
    let i = lines.iter().position(|l| l.starts_with("∀-intro: ")).expect(&err);
    assert!(lines[i + 1].starts_with("  Π-intro: "), "{err}");
}

#[test]
fn output_is_deterministic() {
    let files: Vec<String> = ["basics.ced", "equality.ced", "induction.ced", "kleene.ced"]
        .iter()
        .map(|f| corpus(f))
        .collect();
    let mut args = vec!["check"];
    args.extend(files.iter().map(String::as_str));
    let first = run(&args);
    for _ in 0..3 {
        assert_eq!(run(&args), first);
    }
}

#[test]
fn fuel_exhaustion_reports_steps_used() {
    let f = write(
        "fuel.ced",
        "#check β{λ x . x} : { (λ x . x x) (λ x . x x) ≃ λ x . x } .\n",
    );
    let (code, _, err) = run(&["check", "--fuel", "200", f.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("FuelExhausted"), "{err}");
    assert!(err.trim_end().ends_with("[200 of 200 steps]"), "{err}");
}

#[test]
fn fuel_comes_from_the_environment() {
    let f = write("env.ced", "#norm (λ x . x x) (λ x . x x) .\n");
    let out = Command::new(env!("CARGO_BIN_EXE_cdle"))
        .args(["check", f.to_str().unwrap()])
        .env("CDLE_FUEL", "7")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.starts_with("exhausted after 7 steps"), "{stdout}");

    // An explicit flag wins over the environment.
    let out = Command::new(env!("CARGO_BIN_EXE_cdle"))
        .args(["check", "--fuel", "3", f.to_str().unwrap()])
        .env("CDLE_FUEL", "7")
        .output()
        .unwrap();
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .starts_with("exhausted after 3 steps"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_cdle");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(status(&["check", &corpus("consistency.ced")]), Some(0));
    let f = write("bin.ced", "#check λ x . x : ∀ X : ★ . X .\n");
    assert_eq!(status(&["check", f.to_str().unwrap()]), Some(1));
    assert_eq!(status(&["frobnicate"]), Some(2));
    assert_eq!(status(&["--help"]), Some(0));
}
