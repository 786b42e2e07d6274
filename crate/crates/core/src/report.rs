//! Validation reports: a verdict plus one entry per violated condition.

use serde_json::{json, Value};

#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub condition: String,
    pub witness: Vec<String>,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport {
    pub kind: String,
    pub violations: Vec<Violation>,
    pub notes: Vec<String>,
}

impl ValidationReport {
    pub fn new(kind: impl Into<String>) -> Self {
        ValidationReport {
            kind: kind.into(),
            violations: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violate<I, S>(&mut self, condition: &str, witness: I, message: impl Into<String>)
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.violations.push(Violation {
            condition: condition.to_string(),
            witness: witness.into_iter().map(Into::into).collect(),
            message: message.into(),
        });
    }

    pub fn note(&mut self, text: impl Into<String>) {
        let text = text.into();
        if !self.notes.contains(&text) {
            self.notes.push(text);
        }
    }

    /// True when some violation carries this condition id.
    pub fn has(&self, condition: &str) -> bool {
        self.violations.iter().any(|v| v.condition == condition)
    }

    pub fn witness_of(&self, condition: &str) -> Option<&[String]> {
        self.violations
            .iter()
            .find(|v| v.condition == condition)
            .map(|v| v.witness.as_slice())
    }

    /// Pulls in the violations of a sub-report, prefixing their messages.
    pub fn absorb(&mut self, prefix: &str, other: ValidationReport) {
        for v in other.violations {
            self.violations.push(Violation {
                message: format!("{prefix}: {}", v.message),
                ..v
            });
        }
        for n in other.notes {
            self.note(n);
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": self.kind,
            "verdict": if self.passed() { "pass" } else { "fail" },
            "violations": self.violations.iter().map(|v| json!({
                "condition": v.condition,
                "witness": v.witness,
                "message": v.message,
            })).collect::<Vec<_>>(),
            "notes": self.notes,
        })
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.kind, if self.passed() { "pass" } else { "fail" })?;
        for v in &self.violations {
            write!(f, "\n  [{}] ({}) {}", v.condition, v.witness.join(", "), v.message)?;
        }
        Ok(())
    }
}
