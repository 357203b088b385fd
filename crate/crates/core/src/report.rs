//! Structured pass/fail records for property checks.

use serde::Serialize;

use crate::subset::Subset;

/// A named set attached to a failure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub description: String,
    pub sets: Vec<Subset>,
}

impl Witness {
    pub fn new(description: impl Into<String>, sets: Vec<Subset>) -> Self {
        Witness {
            description: description.into(),
            sets,
        }
    }
}

/// Outcome of one check over many instances. `passed` is true exactly when
/// `failures` is empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub check: String,
    pub passed: bool,
    pub checked: usize,
    pub failures: Vec<Witness>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(check: impl Into<String>) -> Self {
        VerificationReport {
            check: check.into(),
            passed: true,
            checked: 0,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    /// Records one instance; a failing instance stores its witness.
    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> Witness) {
        self.checked += 1;
        if !ok {
            self.passed = false;
            self.failures.push(witness());
        }
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.checked += other.checked;
        self.passed &= other.passed;
        self.failures.extend(other.failures);
        self.notes.extend(other.notes);
    }

    pub fn first_failure(&self) -> Option<&Witness> {
        self.failures.first()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn passed_tracks_failures() {
        let mut r = VerificationReport::new("demo");
        r.record(true, || unreachable!());
        assert!(r.passed);
        r.record(false, || Witness::new("bad", vec![Subset::singleton(0)]));
        assert!(!r.passed);
        assert_eq!(r.checked, 2);
        assert_eq!(r.failures.len(), 1);
    }
}
