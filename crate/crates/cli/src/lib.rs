//! The `cdle` command: checks declaration files and reports diagnostics.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use cdle_core::diagnostic::Diagnostic;
use cdle_core::frontend::{elaborate, parse_file, Options};
use cdle_core::lambda::DEFAULT_FUEL;
use clap::{Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(
    name = "cdle",
    version,
    about = "Kernel type checker for CDLE declaration files"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check every declaration in the given files.
    Check(CheckArgs),
}

#[derive(clap::Args, Debug)]
struct CheckArgs {
    /// Reduction steps allowed per declaration.
    #[arg(long, env = "CDLE_FUEL", default_value_t = DEFAULT_FUEL,
          value_parser = clap::value_parser!(u64).range(1..))]
    fuel: u64,
    /// Print the erasure of each checked term.
    #[arg(long)]
    print_erased: bool,
    /// Report diagnostics as JSON objects, one per line.
    #[arg(long)]
    json_errors: bool,
    /// Log each typing rule applied, indented by derivation depth.
    #[arg(long)]
    trace: bool,
    #[arg(required = true, value_name = "FILE")]
    files: Vec<PathBuf>,
}

/// Exit status, ordered by severity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Status {
    Ok = 0,
    CheckFailed = 1,
    Usage = 2,
}

struct FileResult {
    stdout: String,
    stderr: String,
    status: Status,
}

fn render(file: &str, d: &Diagnostic, json: bool) -> String {
    let (line, col) = d.span.as_ref().map_or((0, 0), |s| (s.line, s.col));
    if json {
        let v = serde_json::json!({
            "file": file,
            "line": line,
            "col": col,
            "code": d.code.as_str(),
            "message": d.message,
            "expected": d.expected,
            "actual": d.actual,
        });
        return format!("{v}\n");
    }
    let mut s = format!("{file}:{line}:{col}: {}: {}", d.code, d.message);
    if let (Some(e), Some(a)) = (&d.expected, &d.actual) {
        s.push_str(&format!("; expected {e}, found {a}"));
    }
    if let Some(f) = &d.fuel {
        s.push_str(&format!(" [{} of {} steps]", f.used, f.initial));
    }
    s.push('\n');
    s
}

fn check_file(path: &PathBuf, args: &CheckArgs) -> FileResult {
    let file = path.display().to_string();
    let mut res = FileResult {
        stdout: String::new(),
        stderr: String::new(),
        status: Status::Ok,
    };
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            res.stderr = format!("{file}: cannot read: {e}\n");
            res.status = Status::Usage;
            return res;
        }
    };
    let decls = match parse_file(&file, &text) {
        Ok(d) => d,
        Err(d) => {
            res.stderr = render(&file, &d, args.json_errors);
            res.status = Status::Usage;
            return res;
        }
    };
    let opts = Options {
        fuel: args.fuel,
        trace: args.trace,
        print_erased: args.print_erased,
    };
    let report = elaborate(&decls, opts);
    for d in &report.decls {
        for line in &d.trace {
            res.stderr.push_str(line);
            res.stderr.push('\n');
        }
        for line in &d.output {
            res.stdout.push_str(line);
            res.stdout.push('\n');
        }
        for diag in &d.diagnostics {
            res.stderr.push_str(&render(&file, diag, args.json_errors));
        }
    }
    if !report.is_ok() {
        res.status = Status::CheckFailed;
    }
    res
}

/// Runs the command line `args` (including the program name), writing
/// results to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
                Status::Usage as i32
            } else {
                let _ = out.write_all(text.as_bytes());
                0
            };
        }
    };
    let Command::Check(args) = cli.command;

    // Files are independent; check them in parallel and print in input order.
    let results: Vec<FileResult> = std::thread::scope(|s| {
        let handles: Vec<_> = args
            .files
            .iter()
            .map(|p| {
                let args = &args;
                s.spawn(move || check_file(p, args))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("checker thread panicked"))
            .collect()
    });

    let mut status = Status::Ok;
    for r in &results {
        let _ = out.write_all(r.stdout.as_bytes());
        let _ = err.write_all(r.stderr.as_bytes());
        status = status.max(r.status);
    }
    let _ = out.flush();
    let _ = err.flush();
    status as i32
}
