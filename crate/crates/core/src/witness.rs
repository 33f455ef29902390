//! Failure witnesses and per-identity verdicts shared by every checker.

use std::fmt;

use serde::Serialize;

use crate::linalg::scalar::{self, Scalar};

/// First failing basis tuple (lexicographic) and the nonzero residual there.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub tuple: Vec<String>,
    #[serde(serialize_with = "serialize_residual")]
    pub residual: Vec<(String, Scalar)>,
}

fn serialize_residual<S: serde::Serializer>(r: &[(String, Scalar)], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(r.len()))?;
    for (label, q) in r {
        seq.serialize_element(&(label, scalar::format(q)))?;
    }
    seq.end()
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.residual.iter().map(|(l, q)| format!("{}*{l}", scalar::format(q))).collect();
        write!(f, "at ({}) residual {}", self.tuple.join(", "), terms.join(" + "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(Witness),
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Pass => None,
            Verdict::Fail(w) => Some(w),
        }
    }
}

/// Outcome of one named identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub identity: String,
    pub verdict: Verdict,
}

/// Ordered outcomes of a checker that verifies several identities.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub checks: Vec<IdentityCheck>,
}

impl CheckReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, identity: impl Into<String>, verdict: Verdict) {
        self.checks.push(IdentityCheck { identity: identity.into(), verdict });
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.verdict.passed())
    }

    pub fn first_failure(&self) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| !c.verdict.passed())
    }

    pub fn get(&self, identity: &str) -> Option<&Verdict> {
        self.checks.iter().find(|c| c.identity == identity).map(|c| &c.verdict)
    }

    /// Converts the first failure into an axiom error.
    pub fn into_result(self) -> crate::Result<()> {
        match self.checks.into_iter().find(|c| !c.verdict.passed()) {
            None => Ok(()),
            Some(IdentityCheck { identity, verdict: Verdict::Fail(witness) }) => {
                Err(crate::Error::Axiom { axiom: identity, witness })
            }
            Some(_) => unreachable!(),
        }
    }
}
