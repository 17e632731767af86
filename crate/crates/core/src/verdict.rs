use std::fmt;

use serde::Serialize;

/// Both sides of a failed exact comparison, already rendered.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub what: String,
    pub left: String,
    pub right: String,
}

/// Outcome of an exact identity check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Pass,
    Fail(Mismatch),
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    /// `Pass` iff `left == right`, otherwise a rendered counterexample.
    pub fn compare<T: PartialEq + fmt::Display>(what: impl Into<String>, left: &T, right: &T) -> Self {
        if left == right {
            Verdict::Pass
        } else {
            Verdict::Fail(Mismatch { what: what.into(), left: left.to_string(), right: right.to_string() })
        }
    }

    pub fn fail(what: impl Into<String>, left: impl Into<String>, right: impl Into<String>) -> Self {
        Verdict::Fail(Mismatch { what: what.into(), left: left.into(), right: right.into() })
    }

    /// First failure wins.
    pub fn and(self, other: Verdict) -> Verdict {
        if self.is_pass() {
            other
        } else {
            self
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => f.write_str("pass"),
            Verdict::Fail(m) => write!(f, "FAIL {}: {} != {}", m.what, m.left, m.right),
        }
    }
}
