//! The `patsel` command line: `show`, `select` and `rewrite`.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};

use crate::position::Position;
use crate::rewrite::{patsubst, Mode, RewriteError};
use crate::select::eval_pattern;
use crate::syntax::{parse_pattern_expr, parse_rules, parse_term, print_marked, print_term, ParseError, PatternExpr};
use crate::term::Term;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_EMPTY_SELECTION: i32 = 2;
pub const EXIT_NOT_APPLICABLE: i32 = 3;
pub const EXIT_NAME_CLASH: i32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Print the term in canonical form.
    Show,
    /// Mark the subterms a pattern selects.
    Select,
    /// Rewrite the selected subterms with a rule.
    Rewrite,
}

#[derive(Debug, Clone, Parser)]
#[command(name = "patsel", version, about = "Pattern-based subterm selection and rewriting")]
pub struct CliConfig {
    #[arg(value_enum)]
    pub command: Command,
    /// File holding a single term.
    pub term_path: PathBuf,
    /// Pattern expression, e.g. `at "a + _" in concl`.
    #[arg(long)]
    pub pattern: Option<String>,
    /// Rule file, one `name : lhs == rhs` per line.
    #[arg(long = "rules")]
    pub rules_path: Option<PathBuf>,
    #[arg(long = "rule")]
    pub rule_name: Option<String>,
    /// Instantiation `?name = term`; may be repeated.
    #[arg(long = "where")]
    pub where_bindings: Vec<String>,
    /// Use the rule right to left.
    #[arg(long)]
    pub symmetric: bool,
    /// Rewrite every applicable selection instead of the first.
    #[arg(long)]
    pub all: bool,
    /// ASCII selection markers.
    #[arg(long)]
    pub ascii: bool,
    /// Also print the raw de Bruijn form (`show` only).
    #[arg(long)]
    pub debruijn: bool,
}

/// What a command printed and how it exited.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn fail(code: i32, msg: impl Into<String>) -> Outcome {
        let mut stderr = msg.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Outcome {
            stdout: String::new(),
            stderr,
            code,
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match CliConfig::try_parse_from(args) {
        Ok(cfg) => run(&cfg),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome::fail(EXIT_INPUT, text)
            } else {
                Outcome {
                    stdout: text,
                    stderr: String::new(),
                    code: EXIT_OK,
                }
            }
        }
    }
}

pub fn run(cfg: &CliConfig) -> Outcome {
    let result = match cfg.command {
        Command::Show => cmd_show(cfg),
        Command::Select => cmd_select(cfg),
        Command::Rewrite => cmd_rewrite(cfg),
    };
    result.unwrap_or_else(|o| o)
}

fn read(path: &Path) -> Result<String, Outcome> {
    std::fs::read_to_string(path)
        .map_err(|e| Outcome::fail(EXIT_INPUT, format!("{}: {e}", path.display())))
}

fn parse_error(what: &str, e: &ParseError) -> Outcome {
    Outcome::fail(EXIT_INPUT, format!("{what}:{e}"))
}

fn load_term(cfg: &CliConfig) -> Result<Term, Outcome> {
    let text = read(&cfg.term_path)?;
    parse_term(&text).map_err(|e| parse_error(&cfg.term_path.display().to_string(), &e))
}

fn load_pattern(cfg: &CliConfig) -> Result<PatternExpr, Outcome> {
    let Some(src) = &cfg.pattern else {
        return Err(Outcome::fail(EXIT_INPUT, "--pattern is required"));
    };
    parse_pattern_expr(src).map_err(|e| parse_error("pattern", &e))
}

fn render_pos(p: &Position, ascii: bool) -> String {
    if ascii {
        p.render("eps")
    } else {
        p.to_string()
    }
}

/// Constructor-style dump, e.g. `Abs(x, App(Free(f), Bound(0)))`.
pub fn debruijn(t: &Term) -> String {
    match t {
        Term::Free(n) => format!("Free({n})"),
        Term::Schematic(n) => format!("Schematic({n})"),
        Term::Bound(i) => format!("Bound({i})"),
        Term::App(f, x) => format!("App({}, {})", debruijn(f), debruijn(x)),
        Term::Abs(h, b) => format!("Abs({h}, {})", debruijn(b)),
    }
}

pub fn cmd_show(cfg: &CliConfig) -> Result<Outcome, Outcome> {
    let t = load_term(cfg)?;
    let mut stdout = print_term(&t) + "\n";
    if cfg.debruijn {
        stdout.push_str(&debruijn(&t));
        stdout.push('\n');
    }
    Ok(Outcome {
        stdout,
        ..Outcome::default()
    })
}

pub fn cmd_select(cfg: &CliConfig) -> Result<Outcome, Outcome> {
    let t = load_term(cfg)?;
    let pe = load_pattern(cfg)?;
    let set = eval_pattern(&pe, &t).map_err(|e| Outcome::fail(EXIT_INPUT, format!("pattern: {e}")))?;
    let marks: BTreeSet<Position> = set.positions().into_iter().collect();
    let mut out = Outcome {
        stdout: print_marked(&t, &marks, cfg.ascii) + "\n",
        ..Outcome::default()
    };
    let _ = writeln!(out.stdout, "selections: {}", set.len());
    for p in set.positions() {
        let _ = writeln!(out.stdout, "{}", render_pos(&p, cfg.ascii));
    }
    for d in set.diagnostics() {
        let _ = writeln!(out.stderr, "{d}");
    }
    Ok(out)
}

/// Splits `?name = term` at the first `=`.
pub fn parse_where(s: &str) -> Option<(String, String)> {
    let (name, text) = s.split_once('=')?;
    let name = name.trim();
    (!name.trim_start_matches('?').is_empty()).then(|| (name.to_string(), text.trim().to_string()))
}

fn split_where(s: &str) -> Result<(String, String), Outcome> {
    parse_where(s).ok_or_else(|| {
        Outcome::fail(
            EXIT_NAME_CLASH,
            format!("where-binding `{s}` is not of the form `?name = term`"),
        )
    })
}

/// Exit code the command line uses for a rewriting failure.
pub fn exit_code(e: &RewriteError) -> i32 {
    match e {
        RewriteError::EmptySelection => EXIT_EMPTY_SELECTION,
        RewriteError::Mismatch
        | RewriteError::CaptureViolation(_)
        | RewriteError::UninstantiatedVariable(_)
        | RewriteError::InvalidPosition(_)
        | RewriteError::NoApplicableSelection(_) => EXIT_NOT_APPLICABLE,
        RewriteError::NameClash(_)
        | RewriteError::UnknownSchematic(_)
        | RewriteError::DuplicateBinding(_)
        | RewriteError::WhereParse { .. } => EXIT_NAME_CLASH,
        RewriteError::Select(_) => EXIT_INPUT,
    }
}

pub fn cmd_rewrite(cfg: &CliConfig) -> Result<Outcome, Outcome> {
    let t = load_term(cfg)?;
    let pe = load_pattern(cfg)?;
    let Some(rules_path) = &cfg.rules_path else {
        return Err(Outcome::fail(EXIT_INPUT, "--rules is required"));
    };
    let Some(rule_name) = &cfg.rule_name else {
        return Err(Outcome::fail(EXIT_INPUT, "--rule is required"));
    };
    let rules = parse_rules(&read(rules_path)?)
        .map_err(|e| parse_error(&rules_path.display().to_string(), &e))?;
    let Some(rule) = rules.iter().find(|r| &r.name == rule_name) else {
        return Err(Outcome::fail(
            EXIT_INPUT,
            format!("no rule named `{rule_name}` in {}", rules_path.display()),
        ));
    };
    let bindings = cfg
        .where_bindings
        .iter()
        .map(|s| split_where(s))
        .collect::<Result<Vec<_>, _>>()?;
    let mode = if cfg.all { Mode::All } else { Mode::First };
    let (out, reports) = patsubst(&t, &pe, rule, &bindings, cfg.symmetric, mode)
        .map_err(|e| Outcome::fail(exit_code(&e), e.to_string()))?;

    let mut stdout = print_term(&out) + "\n";
    for r in &reports {
        let _ = write!(
            stdout,
            "{} at {} {}",
            r.rule_name,
            render_pos(&r.position, cfg.ascii),
            r.substitution
        );
        if !r.binder_names.is_empty() {
            let names: Vec<String> = r
                .binder_names
                .iter()
                .map(|(d, n)| format!("{d}:{n}"))
                .collect();
            let _ = write!(stdout, " binders [{}]", names.join(", "));
        }
        stdout.push('\n');
    }
    Ok(Outcome {
        stdout,
        ..Outcome::default()
    })
}
