//! Structured verdicts for axiom and identity checks.
//!
//! Checks never panic on mathematical failure: a failing identity is reported
//! with a nonzero witness so the caller can diagnose the input.

use std::fmt;

/// One named check with its verdict and, on failure, a witness.
#[derive(Clone, Debug, PartialEq)]
pub struct AxiomCheck {
    pub name: String,
    pub passed: bool,
    /// Rendered nonzero residual or diagnostic; present exactly when failing.
    pub witness: Option<String>,
}

/// A bundle of checks about one subject (a structure, a connection, ...).
#[derive(Clone, Debug, PartialEq)]
pub struct AxiomReport {
    pub subject: String,
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn new(subject: impl Into<String>) -> Self {
        AxiomReport {
            subject: subject.into(),
            checks: Vec::new(),
        }
    }

    pub fn pass(&mut self, name: impl Into<String>) {
        self.checks.push(AxiomCheck {
            name: name.into(),
            passed: true,
            witness: None,
        });
    }

    pub fn fail(&mut self, name: impl Into<String>, witness: impl Into<String>) {
        self.checks.push(AxiomCheck {
            name: name.into(),
            passed: false,
            witness: Some(witness.into()),
        });
    }

    /// Record `name` as passing iff `witness_if_nonzero` is `None`.
    pub fn record(&mut self, name: impl Into<String>, witness_if_nonzero: Option<String>) {
        match witness_if_nonzero {
            None => self.pass(name),
            Some(w) => self.fail(name, w),
        }
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn merge(&mut self, other: AxiomReport) {
        self.checks.extend(other.checks);
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.subject)?;
        for c in &self.checks {
            write!(f, "  {:<28} {}", c.name, if c.passed { "pass" } else { "FAIL" })?;
            if let Some(w) = &c.witness {
                write!(f, "  [{w}]")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
