use std::fmt;

use sha2::{Digest, Sha256};

/// Outcome of one command. Printed as `key=value` lines in a fixed order:
/// `command=`, `inputs=`, the outcome lines, then `status=`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunReport {
    pub command: String,
    /// SHA-256 of the input file and the arguments, in hex.
    pub digest: String,
    pub lines: Vec<String>,
    pub status: u8,
}

impl RunReport {
    pub fn new(command: &str, input: Option<&str>, args: &[String]) -> Self {
        let mut h = Sha256::new();
        h.update(command.as_bytes());
        h.update([0]);
        h.update(input.unwrap_or("").as_bytes());
        for a in args {
            h.update([0]);
            h.update(a.as_bytes());
        }
        let digest = h.finalize().iter().map(|b| format!("{b:02x}")).collect();
        Self { command: command.to_string(), digest, lines: Vec::new(), status: 0 }
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "command={}", self.command)?;
        writeln!(f, "inputs={}", self.digest)?;
        for l in &self.lines {
            writeln!(f, "{l}")?;
        }
        writeln!(f, "status={}", self.status)
    }
}
