use std::fmt;

/// An error with a stable code and, for script errors, a position.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct CliError {
    pub code: &'static str,
    pub message: String,
    pub line: Option<usize>,
    pub col: Option<usize>,
}

impl CliError {
    pub fn new(code: &'static str, message: impl Into<String>) -> Self {
        CliError {
            code,
            message: message.into(),
            line: None,
            col: None,
        }
    }

    pub fn syntax(line: usize, col: usize, message: impl Into<String>) -> Self {
        CliError::new("E_SYNTAX", message).at(line, col)
    }

    pub fn at(mut self, line: usize, col: usize) -> Self {
        self.line = Some(line);
        self.col = Some(col);
        self
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.line, self.col) {
            (Some(l), Some(c)) => write!(f, "{l}:{c}: {}", self.message),
            _ => f.write_str(&self.message),
        }
    }
}

impl From<synthkit::Error> for CliError {
    fn from(e: synthkit::Error) -> Self {
        CliError::new(e.code(), e.to_string())
    }
}
