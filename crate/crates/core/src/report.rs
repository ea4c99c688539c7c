use std::fmt;

use serde::Serialize;

/// A single failed law, with the tuple of ids that witnesses the failure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub law: String,
    pub witness: Vec<usize>,
}

/// Outcome of an exhaustive law check. Empty means every law held.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, law: impl Into<String>, witness: &[usize]) {
        self.violations.push(Violation {
            law: law.into(),
            witness: witness.to_vec(),
        });
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
    }

    /// Distinct law names that failed, in first-seen order.
    pub fn failed_laws(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for v in &self.violations {
            if !out.contains(&v.law.as_str()) {
                out.push(&v.law);
            }
        }
        out
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "all laws hold");
        }
        writeln!(f, "{} violation(s)", self.violations.len())?;
        for v in self.violations.iter().take(20) {
            writeln!(f, "  {} at {:?}", v.law, v.witness)?;
        }
        if self.violations.len() > 20 {
            writeln!(f, "  ...")?;
        }
        Ok(())
    }
}
