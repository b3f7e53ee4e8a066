//! Pass/fail reports produced by the law checkers.

use std::fmt;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One input on which the two sides of a checked identity disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub input: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    /// Name of the law, e.g. `"coassociativity"`.
    pub law: String,
    /// Human-readable scope, e.g. `"degree ≤ 4"`.
    pub scope: String,
    pub status: Status,
    /// Number of inputs examined.
    pub checked: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl CheckReport {
    pub fn new(law: impl Into<String>, scope: impl Into<String>) -> Self {
        CheckReport {
            law: law.into(),
            scope: scope.into(),
            status: Status::Pass,
            checked: 0,
            counterexamples: Vec::new(),
        }
    }

    /// Records one examined input; a mismatch marks the report failed.
    pub fn record<T: PartialEq + fmt::Display>(&mut self, input: impl fmt::Display, expected: &T, actual: &T) {
        self.checked += 1;
        if expected != actual {
            self.fail(input, expected, actual);
        }
    }

    /// As [`record`](Self::record) for values that only implement `Debug`.
    pub fn record_debug<T: PartialEq + fmt::Debug>(&mut self, input: impl fmt::Display, expected: &T, actual: &T) {
        self.checked += 1;
        if expected != actual {
            self.fail(input, format!("{expected:?}"), format!("{actual:?}"));
        }
    }

    pub fn fail(&mut self, input: impl fmt::Display, expected: impl fmt::Display, actual: impl fmt::Display) {
        self.status = Status::Fail;
        self.counterexamples.push(Counterexample {
            input: input.to_string(),
            expected: expected.to_string(),
            actual: actual.to_string(),
        });
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        };
        write!(f, "{tag} ({}, {})", self.law, self.scope)?;
        for c in &self.counterexamples {
            write!(
                f,
                "\n  input: {}\n    expected: {}\n    actual:   {}",
                c.input, c.expected, c.actual
            )?;
        }
        Ok(())
    }
}
