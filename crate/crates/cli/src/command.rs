//! Scripts: `name = expression` definitions followed by one command line
//! `verb arg… --flag value…`.
//!
//! Arguments are names of definitions, integers, or expressions; spaces
//! split arguments only outside brackets, and braces group anything. Each argument is typed by
//! its position in the verb's signature.

use std::collections::BTreeMap;
use std::fmt;

use synthkit::{Exponential, LaurentPoly, Measure, Polynomial};

use crate::dsl::{self, to_exponential, Val};
use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Verb {
    Solve,
    Roots,
    Member,
    RootOrder,
    DualSpace,
    ApplyDerivation,
    Verify,
    DemoRank,
}

impl Verb {
    pub const ALL: [Verb; 8] = [
        Verb::Solve,
        Verb::Roots,
        Verb::Member,
        Verb::RootOrder,
        Verb::DualSpace,
        Verb::ApplyDerivation,
        Verb::Verify,
        Verb::DemoRank,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Verb::Solve => "solve",
            Verb::Roots => "roots",
            Verb::Member => "member",
            Verb::RootOrder => "root-order",
            Verb::DualSpace => "dual-space",
            Verb::ApplyDerivation => "apply-derivation",
            Verb::Verify => "verify",
            Verb::DemoRank => "demo-rank",
        }
    }

    pub fn from_name(s: &str) -> Option<Verb> {
        Verb::ALL.into_iter().find(|v| v.name() == s)
    }

    fn signature(self) -> &'static [Slot] {
        use Slot::*;
        match self {
            Verb::Solve => &[System, OptRoots],
            Verb::Roots => &[Ideal],
            Verb::Member => &[Ideal, Laurent],
            Verb::RootOrder | Verb::DualSpace => &[Ideal, Exponential],
            Verb::ApplyDerivation => &[Polynomial, Measure, Exponential],
            Verb::Verify => &[Suites],
            Verb::DemoRank => &[Natural],
        }
    }

    /// Verbs whose inputs live in `Z^d`.
    pub fn uses_dimension(self) -> bool {
        !matches!(self, Verb::Verify | Verb::DemoRank)
    }
}

impl fmt::Display for Verb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Slot {
    System,
    OptRoots,
    Ideal,
    Laurent,
    Exponential,
    Polynomial,
    Measure,
    Suites,
    Natural,
}

/// A typed command input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Input {
    /// Generators of a convolution system.
    System(Vec<Measure>),
    /// Generators of an ideal of transforms.
    Ideal(Vec<LaurentPoly>),
    Laurent(LaurentPoly),
    Measure(Measure),
    Polynomial(Polynomial),
    Exponential(Exponential),
    Roots(Vec<Exponential>),
    Natural(usize),
    Suite(String),
}

impl fmt::Display for Input {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn join<T: fmt::Display>(items: &[T]) -> String {
            items.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(", ")
        }
        match self {
            Input::System(ms) => write!(f, "{{<{}>}}", join(ms)),
            Input::Ideal(ls) => write!(f, "{{<{}>}}", join(ls)),
            Input::Laurent(l) => write!(f, "{{{l}}}"),
            Input::Measure(m) => write!(f, "{{{m}}}"),
            Input::Polynomial(p) => write!(f, "{{{p}}}"),
            Input::Exponential(c) => write!(f, "{{{c}}}"),
            Input::Roots(cs) => write!(f, "{{[{}]}}", join(cs)),
            Input::Natural(n) => write!(f, "{n}"),
            Input::Suite(s) => f.write_str(s),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Json,
    Text,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Text => "text",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Options {
    pub dim: Option<usize>,
    pub degbound: Option<usize>,
    pub cutoff: Option<usize>,
    /// Cube `{lo, …, hi}^d` for the window oracle.
    pub window: Option<(i64, i64)>,
    pub format: Format,
    pub trials: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Command {
    pub verb: Verb,
    pub inputs: Vec<Input>,
    pub options: Options,
}

impl Command {
    /// Canonical one-line script for the command; parsing it gives back an
    /// equal command.
    pub fn format(&self) -> String {
        let mut out = self.verb.name().to_string();
        for i in &self.inputs {
            out.push(' ');
            out.push_str(&i.to_string());
        }
        let o = &self.options;
        if let Some(d) = o.dim {
            out.push_str(&format!(" --dim {d}"));
        }
        if let Some(n) = o.degbound {
            out.push_str(&format!(" --degbound {n}"));
        }
        if let Some(n) = o.cutoff {
            out.push_str(&format!(" --cutoff {n}"));
        }
        if let Some((lo, hi)) = o.window {
            out.push_str(&format!(" --window {lo}:{hi}"));
        }
        if o.format != Format::Json {
            out.push_str(&format!(" --format {}", o.format.name()));
        }
        if let Some(n) = o.trials {
            out.push_str(&format!(" --trials {n}"));
        }
        out
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format())
    }
}

/// A word of the command line with its starting column.
#[derive(Clone, Debug)]
struct Word {
    text: String,
    col: usize,
}

fn split_words(line: &str, lineno: usize) -> Result<Vec<Word>, CliError> {
    let mut words = Vec::new();
    let mut depth = 0usize;
    let mut current = String::new();
    let mut start = 0;
    for (i, c) in line.chars().enumerate() {
        match c {
            '{' | '(' | '[' | '<' => depth += 1,
            '}' | ')' | ']' | '>' => {
                depth = depth
                    .checked_sub(1)
                    .ok_or_else(|| CliError::syntax(lineno, i + 1, format!("unbalanced `{c}`")))?
            }
            _ => {}
        }
        if c.is_whitespace() && depth == 0 {
            if !current.is_empty() {
                words.push(Word {
                    text: std::mem::take(&mut current),
                    col: start + 1,
                });
            }
            continue;
        }
        if current.is_empty() {
            start = i;
        }
        current.push(c);
    }
    if depth != 0 {
        return Err(CliError::syntax(lineno, line.chars().count() + 1, "unclosed bracket"));
    }
    if !current.is_empty() {
        words.push(Word { text: current, col: start + 1 });
    }
    Ok(words)
}

fn definition_name(line: &str) -> Option<(&str, &str)> {
    let (lhs, rhs) = line.split_once('=')?;
    let name = lhs.trim();
    let mut chars = name.chars();
    let first = chars.next()?;
    if !(first.is_alphabetic() || first == '_') || !chars.all(|c| c.is_alphanumeric() || c == '_') {
        return None;
    }
    Some((name, rhs))
}

fn parse_natural(s: &str, what: &str, line: usize, col: usize) -> Result<usize, CliError> {
    s.parse()
        .map_err(|_| CliError::syntax(line, col, format!("{what} expects a natural number, found `{s}`")))
}

/// Parses a script with exactly one command line.
pub fn parse(text: &str) -> Result<Command, CliError> {
    parse_script(text, None, "")
}

/// Parses a script; `command` replaces the script's own command line and
/// `extra_flags` are appended to the command line in effect.
pub fn parse_script(text: &str, command: Option<&str>, extra_flags: &str) -> Result<Command, CliError> {
    let mut defs: BTreeMap<String, Val> = BTreeMap::new();
    let mut found: Option<(usize, String)> = None;
    let lines: Vec<&str> = text.lines().collect();
    for (k, raw) in lines.iter().enumerate() {
        let lineno = k + 1;
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        if let Some((name, rhs)) = definition_name(line) {
            if dsl::is_reserved(name) {
                return Err(CliError::syntax(lineno, 1, format!("`{name}` is reserved")));
            }
            let col0 = line[..line.len() - rhs.len()].chars().count() + 1;
            let v = dsl::eval_expr(rhs, lineno, col0, &defs)?;
            defs.insert(name.to_string(), v);
            continue;
        }
        if found.is_some() {
            return Err(CliError::syntax(lineno, 1, "a script holds a single command"));
        }
        found = Some((lineno, line.to_string()));
    }
    let (lineno, mut line) = match command {
        Some(c) => (lines.len() + 1, c.to_string()),
        None => found.ok_or_else(|| CliError::new("E_SYNTAX", "no command given"))?,
    };
    if !extra_flags.is_empty() {
        line.push(' ');
        line.push_str(extra_flags);
    }
    parse_command_line(&line, lineno, &defs)
}

fn parse_command_line(line: &str, lineno: usize, defs: &BTreeMap<String, Val>) -> Result<Command, CliError> {
    let words = split_words(line, lineno)?;
    let Some((head, rest)) = words.split_first() else {
        return Err(CliError::syntax(lineno, 1, "empty command"));
    };
    let verb = Verb::from_name(&head.text).ok_or_else(|| {
        CliError::syntax(lineno, head.col, format!("unknown verb `{}`", head.text))
    })?;

    let mut options = Options::default();
    let mut args: Vec<&Word> = Vec::new();
    let mut k = 0;
    while k < rest.len() {
        let w = &rest[k];
        let Some(flag) = w.text.strip_prefix("--") else {
            args.push(w);
            k += 1;
            continue;
        };
        let (flag, value) = match flag.split_once('=') {
            Some((f, v)) => (f, Some(v.to_string())),
            None => (flag, None),
        };
        let value = match value {
            Some(v) => v,
            None => {
                k += 1;
                rest.get(k)
                    .map(|v| v.text.clone())
                    .ok_or_else(|| CliError::syntax(lineno, w.col, format!("flag --{flag} needs a value")))?
            }
        };
        let col = w.col;
        match flag {
            "dim" => options.dim = Some(parse_natural(&value, "--dim", lineno, col)?),
            "degbound" => options.degbound = Some(parse_natural(&value, "--degbound", lineno, col)?),
            "cutoff" => options.cutoff = Some(parse_natural(&value, "--cutoff", lineno, col)?),
            "trials" => options.trials = Some(parse_natural(&value, "--trials", lineno, col)?),
            "window" => {
                let bad = || CliError::syntax(lineno, col, format!("--window expects lo:hi, found `{value}`"));
                let (lo, hi) = value.split_once(':').ok_or_else(bad)?;
                let lo: i64 = lo.parse().map_err(|_| bad())?;
                let hi: i64 = hi.parse().map_err(|_| bad())?;
                if lo > hi {
                    return Err(bad());
                }
                options.window = Some((lo, hi));
            }
            "format" => {
                options.format = match value.as_str() {
                    "json" => Format::Json,
                    "text" => Format::Text,
                    _ => return Err(CliError::syntax(lineno, col, format!("unknown format `{value}`"))),
                }
            }
            _ => return Err(CliError::syntax(lineno, col, format!("unknown flag --{flag}"))),
        }
        k += 1;
    }
    if options.dim == Some(0) {
        return Err(synthkit::Error::ZeroDimension.into());
    }

    let sig = verb.signature();
    if sig == [Slot::Suites] {
        let inputs = args.iter().map(|w| Input::Suite(w.text.clone())).collect();
        return Ok(Command { verb, inputs, options });
    }
    let required = sig.iter().filter(|s| **s != Slot::OptRoots).count();
    if args.len() < required || args.len() > sig.len() {
        return Err(CliError::new(
            "E_ARITY",
            format!("{verb} takes {} argument(s), found {}", describe_arity(sig), args.len()),
        )
        .at(lineno, head.col));
    }
    if sig == [Slot::Natural] {
        let n = parse_natural(&args[0].text, verb.name(), lineno, args[0].col)?;
        return Ok(Command {
            verb,
            inputs: vec![Input::Natural(n)],
            options,
        });
    }

    let vals: Vec<Val> = args
        .iter()
        .map(|w| arg_value(w, lineno, defs))
        .collect::<Result<_, _>>()?;
    let dim = resolve_dim(&vals, options.dim).map_err(|e| e.at(lineno, head.col))?;
    options.dim = Some(dim);
    let inputs = sig
        .iter()
        .zip(vals.iter().zip(&args))
        .map(|(slot, (v, w))| coerce(*slot, v, dim).map_err(|e| e.at(lineno, w.col)))
        .collect::<Result<_, _>>()?;
    Ok(Command { verb, inputs, options })
}

fn describe_arity(sig: &[Slot]) -> String {
    let required = sig.iter().filter(|s| **s != Slot::OptRoots).count();
    if required == sig.len() {
        required.to_string()
    } else {
        format!("{required} or {}", sig.len())
    }
}

fn arg_value(w: &Word, lineno: usize, defs: &BTreeMap<String, Val>) -> Result<Val, CliError> {
    let (body, col) = match w.text.strip_prefix('{').and_then(|t| t.strip_suffix('}')) {
        Some(inner) => (inner, w.col + 1),
        None => (w.text.as_str(), w.col),
    };
    dsl::eval_expr(body, lineno, col, defs)
}

fn resolve_dim(vals: &[Val], explicit: Option<usize>) -> Result<usize, CliError> {
    let mut min = 1;
    let mut forced: Vec<usize> = Vec::new();
    for v in vals {
        let (m, f) = v.dims();
        min = min.max(m);
        forced.extend(f);
    }
    let dim = match explicit.or_else(|| forced.first().copied()) {
        Some(d) => d,
        None => min,
    };
    if let Some(&bad) = forced.iter().find(|&&f| f != dim) {
        return Err(synthkit::Error::DimensionMismatch { expected: dim, found: bad }.into());
    }
    if min > dim {
        return Err(synthkit::Error::DimensionMismatch { expected: dim, found: min }.into());
    }
    Ok(dim)
}

fn items(v: &Val) -> Vec<&Val> {
    match v {
        Val::Ideal(xs) | Val::List(xs) => xs.iter().collect(),
        _ => vec![v],
    }
}

fn as_form(v: &Val) -> Result<&dsl::Form, String> {
    match v {
        Val::Form(f) => Ok(f),
        _ => Err("expected a measure or polynomial, found a tuple or list".into()),
    }
}

fn coerce(slot: Slot, v: &Val, dim: usize) -> Result<Input, CliError> {
    let typed = |m: String| CliError::new("E_TYPE", m);
    Ok(match slot {
        Slot::System => Input::System(
            items(v)
                .into_iter()
                .map(|x| as_form(x)?.to_measure(dim))
                .collect::<Result<_, _>>()
                .map_err(typed)?,
        ),
        Slot::Ideal => Input::Ideal(
            items(v)
                .into_iter()
                .map(|x| as_form(x)?.to_laurent(dim))
                .collect::<Result<_, _>>()
                .map_err(typed)?,
        ),
        Slot::Laurent => Input::Laurent(as_form(v).and_then(|f| f.to_laurent(dim)).map_err(typed)?),
        Slot::Measure => Input::Measure(as_form(v).and_then(|f| f.to_measure(dim)).map_err(typed)?),
        Slot::Polynomial => {
            let f = as_form(v).map_err(typed)?;
            if f.measure_len().is_some() && !f.is_constant() {
                return Err(typed("expected an x-polynomial, found a measure".into()));
            }
            Input::Polynomial(f.to_polynomial(dim).map_err(typed)?)
        }
        Slot::Exponential => Input::Exponential(to_exponential(v, dim)?),
        Slot::OptRoots => Input::Roots(match v {
            Val::List(xs) => xs.iter().map(|x| to_exponential(x, dim)).collect::<Result<_, _>>()?,
            _ => vec![to_exponential(v, dim)?],
        }),
        Slot::Suites | Slot::Natural => unreachable!("handled before coercion"),
    })
}
