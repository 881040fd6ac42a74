//! Command-line front end.

use std::ffi::OsString;
use std::io::Write;
use std::ops::Range;

use clap::{Parser, Subcommand};
use thiserror::Error;

use crate::corpus;
use crate::erasure::{erase, RcPure};
use crate::normalize::{conv, is_identity, normalize, NormError, DEFAULT_FUEL};
use crate::signature::Signature;
use crate::syntax::{Charset, ParseError};
use crate::typecheck::{check_items, CheckReport, ReportItem, Status};

#[derive(Debug, Parser)]
#[command(
    name = "cedlite",
    version,
    about = "Check and evaluate cedlite developments"
)]
struct Cli {
    /// Reduction steps allowed per normalization
    #[arg(long, global = true, env = "CEDLITE_FUEL", default_value_t = DEFAULT_FUEL)]
    fuel: u64,
    /// Print terms with ASCII symbols
    #[arg(long, global = true)]
    ascii: bool,
    /// Line-oriented output for scripts
    #[arg(long, global = true)]
    porcelain: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Type check files in order and evaluate their assertions
    Check {
        #[arg(required = true)]
        files: Vec<String>,
    },
    /// Print the erasure of a term
    Erase { file: String, term: String },
    /// Print the normal form of a term's erasure
    Norm { file: String, term: String },
    /// Decide whether a term erases to the identity function
    AssertId { file: String, term: String },
    /// Decide whether two terms have convertible erasures
    Eq {
        file: String,
        left: String,
        right: String,
    },
    /// Check the bundled development
    Corpus {
        /// List the bundled files instead of checking them
        #[arg(long)]
        list: bool,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{file}: {source}")]
    Io {
        file: String,
        source: std::io::Error,
    },
    #[error("{file}:{source}")]
    Parse { file: String, source: ParseError },
    #[error("{0}")]
    Load(#[from] corpus::LoadError),
    #[error("{0}")]
    Norm(#[from] NormError),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Norm(_) => 1,
            _ => 2,
        }
    }
}

struct Output<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    charset: Charset,
    porcelain: bool,
}

/// Run the command line `args` (including the program name) and return the
/// process exit code: 0 on success, 1 on a failed check, 2 on usage or
/// input errors.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let charset = if cli.ascii {
        Charset::Ascii
    } else {
        Charset::Unicode
    };
    let mut o = Output {
        out,
        err,
        charset,
        porcelain: cli.porcelain,
    };
    match execute(&cli.command, cli.fuel, &mut o) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(o.err, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(command: &Command, fuel: u64, o: &mut Output<'_>) -> Result<i32, CliError> {
    match command {
        Command::Check { files } => {
            let (sig, ranges) = load(files)?;
            let mut report = CheckReport::default();
            for r in ranges {
                report.items.extend(check_items(&sig, r, fuel).items);
            }
            Ok(render_report(&report, o))
        }
        Command::Corpus { list: true } => {
            for f in corpus::FILES {
                let _ = writeln!(o.out, "{}", f.name);
            }
            Ok(0)
        }
        Command::Corpus { list: false } => {
            let sig = corpus::signature()?;
            let report = check_items(&sig, 0..sig.items().len(), fuel);
            Ok(render_report(&report, o))
        }
        Command::Erase { file, term } => {
            let (sig, _) = load(std::slice::from_ref(file))?;
            let t = term_erasure(&sig, file, term)?;
            let _ = writeln!(o.out, "{}", t.display(o.charset));
            Ok(0)
        }
        Command::Norm { file, term } => {
            let (sig, _) = load(std::slice::from_ref(file))?;
            let t = term_erasure(&sig, file, term)?;
            let nf = normalize(&sig, &t, fuel)?;
            let _ = writeln!(o.out, "{}", nf.display(o.charset));
            Ok(0)
        }
        Command::AssertId { file, term } => {
            let (sig, _) = load(std::slice::from_ref(file))?;
            let t = term_erasure(&sig, file, term)?;
            let yes = is_identity(&sig, &t, fuel)?;
            let _ = writeln!(o.out, "identity: {}", if yes { "yes" } else { "no" });
            Ok(if yes { 0 } else { 1 })
        }
        Command::Eq { file, left, right } => {
            let (sig, _) = load(std::slice::from_ref(file))?;
            let a = term_erasure(&sig, file, left)?;
            let b = term_erasure(&sig, file, right)?;
            let yes = conv(&sig, &a, &b, fuel)?;
            let _ = writeln!(o.out, "convertible: {}", if yes { "yes" } else { "no" });
            Ok(if yes { 0 } else { 1 })
        }
    }
}

/// Load files in order. A file named like a bundled one is preceded by the
/// bundled files it depends on, unless they were given explicitly, and is
/// read from the bundle when it does not exist on disk. Returns
/// the item ranges that came from the given files.
fn load(files: &[String]) -> Result<(Signature, Vec<Range<usize>>), CliError> {
    let mut sig = Signature::new();
    let mut loaded = vec![false; corpus::FILES.len()];
    let mut ranges = Vec::new();
    for file in files {
        let bundled = corpus::find(file);
        let text = match std::fs::read_to_string(file) {
            Ok(text) => text,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound && bundled.is_some() => {
                corpus::FILES[bundled.unwrap_or_default()].text.to_string()
            }
            Err(source) => {
                return Err(CliError::Io {
                    file: file.clone(),
                    source,
                })
            }
        };
        if let Some(i) = bundled {
            for (j, dep) in corpus::FILES[..i].iter().enumerate() {
                if !loaded[j] {
                    sig.extend(dep.text).map_err(|source| corpus::LoadError {
                        file: dep.name.to_string(),
                        source,
                    })?;
                    loaded[j] = true;
                }
            }
            loaded[i] = true;
        }
        let range = sig.extend(&text).map_err(|source| CliError::Parse {
            file: file.clone(),
            source,
        })?;
        ranges.push(range);
    }
    Ok((sig, ranges))
}

fn term_erasure(sig: &Signature, file: &str, term: &str) -> Result<RcPure, CliError> {
    let e = sig.parse_expr(term).map_err(|source| CliError::Parse {
        file: format!("{file}: `{term}`"),
        source,
    })?;
    Ok(erase(&e))
}

fn render_report(report: &CheckReport, o: &mut Output<'_>) -> i32 {
    let (mut decls, mut asserts) = (0, 0);
    for item in &report.items {
        match item {
            ReportItem::Decl(d) => {
                decls += 1;
                for w in &d.warnings {
                    let _ = writeln!(o.err, "warning: {} (line {}): {w}", d.name, d.line);
                }
                let line = match (&d.status, o.porcelain) {
                    (Status::Ok, true) => format!("OK {} fuel={}", d.name, d.fuel_used),
                    (Status::Ok, false) => format!("ok      {}", d.name),
                    (Status::TypeError(e), true) => format!("ERR {} {}: {e}", d.name, e.class()),
                    (Status::TypeError(e), false) => {
                        format!("error   {} (line {}): {e}", d.name, d.line)
                    }
                };
                let _ = writeln!(o.out, "{line}");
            }
            ReportItem::Assertion(a) => {
                asserts += 1;
                let line = match (a.passed, o.porcelain) {
                    (true, true) => format!("OK {}@{} {}", a.directive, a.line, a.detail),
                    (true, false) => format!("ok      #{} {}", a.directive, a.subject),
                    (false, true) => format!("ASSERT-FAIL {}@{} {}", a.directive, a.line, a.detail),
                    (false, false) => {
                        format!(
                            "FAILED  #{} {} (line {}): {}",
                            a.directive, a.subject, a.line, a.detail
                        )
                    }
                };
                let _ = writeln!(o.out, "{line}");
            }
        }
    }
    let failures = report.failures();
    if !o.porcelain {
        let _ = writeln!(
            o.out,
            "{decls} declarations, {asserts} assertions, {failures} failures"
        );
    }
    i32::from(failures > 0)
}
