//! Structured pass/fail results with witnesses.

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Clause {
    pub id: String,
    pub status: Status,
    pub detail: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<Value>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct VerificationReport {
    pub clauses: Vec<Clause>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, id: &str, status: Status, detail: impl Into<String>, witnesses: Vec<Value>) {
        self.clauses.push(Clause {
            id: id.to_string(),
            status,
            detail: detail.into(),
            witnesses,
        });
    }

    /// Records pass when `witnesses` is empty, fail otherwise.
    pub fn expect_none(&mut self, id: &str, detail: impl Into<String>, witnesses: Vec<Value>) {
        let status = if witnesses.is_empty() { Status::Pass } else { Status::Fail };
        self.push(id, status, detail, witnesses);
    }

    pub fn check(&mut self, id: &str, ok: bool, detail: impl Into<String>) {
        self.push(id, if ok { Status::Pass } else { Status::Fail }, detail, Vec::new());
    }

    pub fn skip(&mut self, id: &str, reason: impl Into<String>) {
        self.push(id, Status::Skipped, reason, Vec::new());
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.clauses.extend(other.clauses);
    }

    /// Fail if any clause failed, skipped if nothing ran, pass otherwise.
    pub fn status(&self) -> Status {
        if self.clauses.iter().any(|c| c.status == Status::Fail) {
            Status::Fail
        } else if self.clauses.iter().all(|c| c.status == Status::Skipped) {
            Status::Skipped
        } else {
            Status::Pass
        }
    }

    pub fn passed(&self) -> bool {
        self.status() == Status::Pass
    }

    pub fn failures(&self) -> impl Iterator<Item = &Clause> {
        self.clauses.iter().filter(|c| c.status == Status::Fail)
    }
}
