use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use synthkit_cli::{parse_script, run, CliError, Format, Outcome};

/// Exact spectral-synthesis workbench on Z^d.
///
/// The command is given either as trailing words (`synthkit solve {z^2 - 1}`)
/// or as the command line of a script passed with --input; trailing words
/// replace the script's own command and may use its definitions.
#[derive(Parser, Debug)]
#[command(name = "synthkit", version)]
struct Args {
    /// Script with definitions and optionally a command
    #[arg(long, value_name = "FILE")]
    input: Option<PathBuf>,
    /// Output format: json or text
    #[arg(long)]
    format: Option<String>,
    /// Dimension d of Z^d
    #[arg(long)]
    dim: Option<usize>,
    /// Degree bound for solution polynomials
    #[arg(long)]
    degbound: Option<usize>,
    /// Degree cutoff for local dual spaces
    #[arg(long)]
    cutoff: Option<usize>,
    /// Window cube lo:hi for the brute-force oracle
    #[arg(long, value_name = "LO:HI", allow_hyphen_values = true)]
    window: Option<String>,
    /// Trials per property suite
    #[arg(long)]
    trials: Option<usize>,
    /// Verb and arguments
    #[arg(allow_hyphen_values = true)]
    words: Vec<String>,
}

fn quote(word: &str) -> String {
    if word.chars().any(char::is_whitespace) && !word.starts_with('{') {
        format!("{{{word}}}")
    } else {
        word.to_string()
    }
}

/// Command-line flags in script syntax.
fn flags(args: &Args) -> String {
    let flags = [
        ("dim", args.dim.map(|v| v.to_string())),
        ("degbound", args.degbound.map(|v| v.to_string())),
        ("cutoff", args.cutoff.map(|v| v.to_string())),
        ("window", args.window.clone()),
        ("format", args.format.clone()),
        ("trials", args.trials.map(|v| v.to_string())),
    ];
    flags
        .into_iter()
        .filter_map(|(name, v)| v.map(|v| format!("--{name}={v}")))
        .collect::<Vec<_>>()
        .join(" ")
}

fn main() -> ExitCode {
    let args = Args::parse();
    let fallback = match args.format.as_deref() {
        Some("text") => Format::Text,
        _ => Format::Json,
    };
    let text = match &args.input {
        Some(path) => match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => {
                let err = CliError::new("E_IO", format!("{}: {e}", path.display()));
                return finish(&Outcome::error(&err), fallback);
            }
        },
        None => String::new(),
    };
    let words = (!args.words.is_empty()).then(|| args.words.iter().map(|w| quote(w)).collect::<Vec<_>>().join(" "));
    match parse_script(&text, words.as_deref(), &flags(&args)) {
        Ok(cmd) => finish(&run(&cmd), cmd.options.format),
        Err(e) => finish(&Outcome::error(&e), fallback),
    }
}

fn finish(out: &Outcome, format: Format) -> ExitCode {
    print!("{}", out.render(format));
    ExitCode::from(out.exit_code() as u8)
}
