use std::fmt::{self, Write as _};
use std::path::Path;

use anyhow::Context;

/// A failure of the computation itself, as opposed to bad input. Maps to
/// exit code 1.
#[derive(Debug)]
pub struct Domain(pub String);

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Domain {}

pub fn domain(e: impl fmt::Display) -> anyhow::Error {
    Domain(e.to_string()).into()
}

/// Plain `key: value` lines, with raw blocks for embedded file formats.
#[derive(Default, Debug)]
pub struct Report {
    pub text: String,
    /// Set when the run completed but the answer is a domain failure.
    pub failure: Option<String>,
}

impl Report {
    pub fn field(&mut self, key: &str, value: impl fmt::Display) -> &mut Self {
        let _ = writeln!(self.text, "{key}: {value}");
        self
    }

    /// `key:` on its own line, then the block verbatim.
    pub fn block(&mut self, key: &str, body: &str) -> &mut Self {
        let _ = writeln!(self.text, "{key}:");
        self.raw(body)
    }

    pub fn raw(&mut self, body: &str) -> &mut Self {
        self.text.push_str(body);
        if !body.is_empty() && !body.ends_with('\n') {
            self.text.push('\n');
        }
        self
    }

    pub fn fail(&mut self, reason: impl Into<String>) -> &mut Self {
        self.failure = Some(reason.into());
        self
    }
}

pub fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

pub fn write(path: &Path, text: &str) -> anyhow::Result<()> {
    std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Nonblank lines of a statement file, `#` comments removed.
pub fn statement_lines(text: &str) -> Vec<String> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(String::from)
        .collect()
}
