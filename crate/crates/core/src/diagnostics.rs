//! Structured pass/fail reports.
//!
//! Predicates in this crate report every violated check instead of
//! stopping at the first, so a `Diagnostics` is a list of named failures.

use std::fmt;

/// One violated check: which predicate, where, and what went wrong.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub check: String,
    pub location: String,
    pub message: String,
}

/// Outcome of a validity, stability, or membership predicate.
///
/// `pass` holds exactly when `failures` is empty.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Diagnostics {
    failures: Vec<Failure>,
}

impl Diagnostics {
    pub fn new() -> Self {
        Diagnostics::default()
    }

    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failures(&self) -> &[Failure] {
        &self.failures
    }

    pub fn fail(&mut self, check: impl Into<String>, location: impl Into<String>, message: impl Into<String>) {
        self.failures.push(Failure {
            check: check.into(),
            location: location.into(),
            message: message.into(),
        });
    }

    /// Records a failure unless `ok` holds.
    pub fn check(
        &mut self,
        ok: bool,
        check: impl Into<String>,
        location: impl Into<String>,
        message: impl Into<String>,
    ) {
        if !ok {
            self.fail(check, location, message);
        }
    }

    pub fn merge(&mut self, other: Diagnostics) {
        self.failures.extend(other.failures);
    }
}

impl fmt::Display for Diagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pass() {
            return write!(f, "PASS");
        }
        writeln!(f, "FAIL ({} checks)", self.failures.len())?;
        for failure in &self.failures {
            writeln!(f, "  [{}] {}: {}", failure.check, failure.location, failure.message)?;
        }
        Ok(())
    }
}
