use serde::Serialize;
use serde_json::Value;

/// Outcome of a verification suite.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub pass: bool,
    pub checked: u64,
    pub counterexample: Option<Counterexample>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counterexample {
    pub identity: String,
    pub vector: Value,
    pub lhs: Value,
    pub rhs: Value,
}

impl Report {
    pub fn new() -> Self {
        Report { pass: true, checked: 0, counterexample: None }
    }

    /// Records one check; keeps the first failure only.
    pub fn record(&mut self, ok: bool, fail: impl FnOnce() -> Counterexample) {
        self.checked += 1;
        if !ok && self.pass {
            self.pass = false;
            self.counterexample = Some(fail());
        }
    }

    pub fn merge(&mut self, other: Report) {
        self.checked += other.checked;
        if !other.pass && self.pass {
            self.pass = false;
            self.counterexample = other.counterexample;
        }
    }
}

impl Default for Report {
    fn default() -> Self {
        Self::new()
    }
}
