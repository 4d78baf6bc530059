use std::fmt::{self, Write as _};

/// Text printed on stdout and the exit status that goes with it.
#[derive(Debug)]
pub struct Report {
    pub code: u8,
    pub text: String,
}

impl Report {
    /// A yes/no verdict line under `label`; exit status follows the verdict.
    pub fn verdict(label: &str, yes: bool) -> Self {
        Report {
            code: if yes { 0 } else { 1 },
            text: format!("{label}: {}\n", if yes { "yes" } else { "no" }),
        }
    }

    pub fn success() -> Self {
        Report { code: 0, text: String::new() }
    }

    pub fn line(&mut self, s: impl fmt::Display) {
        let _ = writeln!(self.text, "{s}");
    }

    /// Appends a multi-line block such as a serialized structure.
    pub fn block(&mut self, s: &str) {
        self.text.push_str(s);
        if !s.ends_with('\n') {
            self.text.push('\n');
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Core(ualg::Error),
    Io(String, std::io::Error),
    Usage(String),
    Verification(String),
    Timeout(f64),
}

impl CliError {
    /// Whether the command gave up on a resource limit rather than failing.
    pub fn is_cap(&self) -> bool {
        matches!(self, CliError::Core(ualg::Error::CapExceeded { .. }) | CliError::Timeout(_))
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(path, e) => write!(f, "{path}: {e}"),
            CliError::Usage(msg) => f.write_str(msg),
            CliError::Verification(msg) => write!(f, "witness verification failed: {msg}"),
            CliError::Timeout(s) => write!(f, "time budget of {s}s exhausted"),
        }
    }
}

impl From<ualg::Error> for CliError {
    fn from(e: ualg::Error) -> Self {
        CliError::Core(e)
    }
}
