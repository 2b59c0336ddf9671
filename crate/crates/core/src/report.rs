//! Structured outcome of a verification suite.

use alloc::string::String;
use alloc::vec::Vec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    Pass,
    Fail,
    /// The printed closed form disagrees with the derived one, which passes.
    DocumentedMisprint,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::DocumentedMisprint => "documented-misprint",
        }
    }
}

/// One verified identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub id: String,
    /// Short quotation locating the identity in the source text.
    pub anchor: String,
    pub status: Status,
    /// `"0"` for exact agreement, otherwise a serialized residual or a
    /// divisibility exponent.
    pub residual: String,
    pub printed: Option<String>,
    pub derived: Option<String>,
}

impl Check {
    pub fn new(id: &str, anchor: &str, status: Status, residual: String) -> Self {
        Check {
            id: String::from(id),
            anchor: String::from(anchor),
            status,
            residual,
            printed: None,
            derived: None,
        }
    }

    /// Pass with residual `"0"` when `ok`, otherwise fail with `residual`.
    pub fn exact(id: &str, anchor: &str, ok: bool, residual: impl FnOnce() -> String) -> Self {
        if ok {
            Self::new(id, anchor, Status::Pass, String::from("0"))
        } else {
            Self::new(id, anchor, Status::Fail, residual())
        }
    }

    pub fn misprint(
        id: &str,
        anchor: &str,
        residual: String,
        printed: String,
        derived: String,
    ) -> Self {
        Check {
            id: String::from(id),
            anchor: String::from(anchor),
            status: Status::DocumentedMisprint,
            residual,
            printed: Some(printed),
            derived: Some(derived),
        }
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

/// Auxiliary tabular record attached to a report.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub suite: String,
    /// Configuration echo as ordered `(key, value)` pairs.
    pub params: Vec<(String, String)>,
    pub checks: Vec<Check>,
    pub tables: Vec<Table>,
}

impl VerificationReport {
    pub fn new(suite: &str) -> Self {
        VerificationReport {
            suite: String::from(suite),
            params: Vec::new(),
            checks: Vec::new(),
            tables: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: String) {
        self.params.push((String::from(key), value));
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
        self.tables.extend(other.tables);
    }

    /// Sorts checks by id so output is deterministic.
    pub fn sort(&mut self) {
        self.checks.sort_by(|a, b| a.id.cmp(&b.id));
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn get(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }
}
