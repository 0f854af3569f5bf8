use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::SpecError;

/// A checkable statement about σ-permutable subgroups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClaimId {
    T1,
    T2,
    T3a,
    T3b,
    T4,
    T5,
    L1,
    L2,
    L4,
    L5,
    C1,
    C2,
    C3,
    C4,
    C5,
    C6,
    C7,
    Conj1,
}

impl ClaimId {
    pub const ALL: [ClaimId; 18] = [
        ClaimId::T1,
        ClaimId::T2,
        ClaimId::T3a,
        ClaimId::T3b,
        ClaimId::T4,
        ClaimId::T5,
        ClaimId::L1,
        ClaimId::L2,
        ClaimId::L4,
        ClaimId::L5,
        ClaimId::C1,
        ClaimId::C2,
        ClaimId::C3,
        ClaimId::C4,
        ClaimId::C5,
        ClaimId::C6,
        ClaimId::C7,
        ClaimId::Conj1,
    ];

    /// Proved statements; a failure means an engine bug.
    pub fn is_theorem(self) -> bool {
        self != ClaimId::Conj1
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ClaimId::T1 => "T1",
            ClaimId::T2 => "T2",
            ClaimId::T3a => "T3a",
            ClaimId::T3b => "T3b",
            ClaimId::T4 => "T4",
            ClaimId::T5 => "T5",
            ClaimId::L1 => "L1",
            ClaimId::L2 => "L2",
            ClaimId::L4 => "L4",
            ClaimId::L5 => "L5",
            ClaimId::C1 => "C1",
            ClaimId::C2 => "C2",
            ClaimId::C3 => "C3",
            ClaimId::C4 => "C4",
            ClaimId::C5 => "C5",
            ClaimId::C6 => "C6",
            ClaimId::C7 => "C7",
            ClaimId::Conj1 => "CONJ1",
        }
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClaimId {
    type Err = SpecError;

    fn from_str(s: &str) -> Result<Self, SpecError> {
        let t = s.trim();
        ClaimId::ALL
            .into_iter()
            .find(|c| c.as_str().eq_ignore_ascii_case(t))
            .ok_or_else(|| SpecError::UnknownClaim(t.to_string()))
    }
}

impl Serialize for ClaimId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// Parses a comma-separated claim list; `all` selects every claim.
pub fn parse_claim_filter(text: &str) -> Result<Vec<ClaimId>, SpecError> {
    let mut out = Vec::new();
    for tok in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        if tok.eq_ignore_ascii_case("all") {
            out.extend(ClaimId::ALL);
        } else {
            out.push(tok.parse()?);
        }
    }
    out.sort();
    out.dedup();
    if out.is_empty() {
        return Err(SpecError::EmptyClaimFilter);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inapplicable,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inapplicable => "inapplicable",
        })
    }
}

/// One counterexample to a claim: the subgroup(s) involved, the block, and the
/// object that breaks the claim.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessRecord {
    pub subgroups: Vec<String>,
    pub block: Option<String>,
    pub offending: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub group_id: String,
    pub sigma: String,
    pub claim_id: ClaimId,
    pub status: Status,
    pub witnesses: Vec<WitnessRecord>,
    pub timing_ms: f64,
}

impl VerificationReport {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn is_theorem_failure(&self) -> bool {
        self.status == Status::Fail && self.claim_id.is_theorem()
    }

    pub fn is_conjecture_finding(&self) -> bool {
        self.status == Status::Fail && self.claim_id == ClaimId::Conj1
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<12} {:<10} {:<10} {:<6} {}",
            self.status.to_string().to_uppercase(),
            self.group_id,
            self.sigma,
            self.claim_id,
            self.witnesses.len()
        )?;
        for w in &self.witnesses {
            write!(f, "\n    subgroups: {}", w.subgroups.join("; "))?;
            if let Some(b) = &w.block {
                write!(f, "\n    block: {{{b}}}")?;
            }
            write!(f, "\n    offending: {}", w.offending)?;
        }
        Ok(())
    }
}
