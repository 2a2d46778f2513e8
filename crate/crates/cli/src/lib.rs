//! Script language and command-line front end for `synthkit`.

pub mod command;
pub mod dsl;
pub mod error;
pub mod run;

pub use command::{parse, parse_script, Command, Format, Input, Options, Verb};
pub use error::CliError;
pub use run::{run, Outcome, Status};
