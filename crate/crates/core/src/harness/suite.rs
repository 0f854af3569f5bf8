use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::CatalogEntry;
use crate::error::SpecError;
use crate::primes::prime_support;
use crate::sigma::{enumerate_sigma_partitions, SigmaAnalysis};

use super::report::{ClaimId, Status, VerificationReport};
use super::{verify_with, GroupContext};

/// Aggregate counts over a set of reports.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub groups: usize,
    pub sigma_units: usize,
    pub reports: usize,
    pub pass: usize,
    pub fail: usize,
    pub inapplicable: usize,
    pub theorem_failures: usize,
    pub conjecture_findings: usize,
    pub exit_code: i32,
}

impl Summary {
    pub fn from_reports(reports: &[VerificationReport]) -> Summary {
        let mut groups: Vec<&str> = reports.iter().map(|r| r.group_id.as_str()).collect();
        groups.dedup();
        let mut units: Vec<(&str, &str)> = reports
            .iter()
            .map(|r| (r.group_id.as_str(), r.sigma.as_str()))
            .collect();
        units.dedup();
        let count = |s| reports.iter().filter(|r| r.status == s).count();
        let theorem_failures = reports.iter().filter(|r| r.is_theorem_failure()).count();
        let conjecture_findings = reports.iter().filter(|r| r.is_conjecture_finding()).count();
        Summary {
            groups: groups.len(),
            sigma_units: units.len(),
            reports: reports.len(),
            pass: count(Status::Pass),
            fail: count(Status::Fail),
            inapplicable: count(Status::Inapplicable),
            theorem_failures,
            conjecture_findings,
            exit_code: if theorem_failures > 0 {
                1
            } else if conjecture_findings > 0 {
                3
            } else {
                0
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("summary serializes")
    }
}

/// Reports in canonical order (catalog order, then σ, then claim) with their summary.
#[derive(Clone, Debug)]
pub struct SuiteOutcome {
    pub reports: Vec<VerificationReport>,
    pub summary: Summary,
}

impl SuiteOutcome {
    pub fn from_reports(reports: Vec<VerificationReport>) -> Self {
        let summary = Summary::from_reports(&reports);
        SuiteOutcome { reports, summary }
    }

    pub fn exit_code(&self) -> i32 {
        self.summary.exit_code
    }

    /// Zeroes every timing, leaving output that depends only on the inputs.
    pub fn without_timing(mut self) -> Self {
        for r in &mut self.reports {
            r.timing_ms = 0.0;
        }
        self
    }
}

/// Runs every claim in `claim_filter` on every catalog group of order at most
/// `max_order`, under every σ-partition of `π(G)`.
pub fn run_suite(
    catalog: &[CatalogEntry],
    max_order: usize,
    claim_filter: &[ClaimId],
) -> Result<SuiteOutcome, SpecError> {
    if claim_filter.is_empty() {
        return Err(SpecError::EmptyClaimFilter);
    }
    let mut claims = claim_filter.to_vec();
    claims.sort();
    claims.dedup();
    let per_group: Vec<Result<Vec<VerificationReport>, SpecError>> = catalog
        .par_iter()
        .filter(|e| e.group().order() <= max_order)
        .map(|entry| {
            let ctx = GroupContext::from_entry(entry);
            let sigmas = enumerate_sigma_partitions(&prime_support(entry.group().order()))?;
            let mut out = Vec::new();
            for sigma in sigmas {
                let analysis = SigmaAnalysis::new(ctx.lattice(), sigma)?;
                out.extend(claims.iter().map(|&c| verify_with(&ctx, &analysis, c)));
            }
            Ok(out)
        })
        .collect();
    let mut reports = Vec::new();
    for r in per_group {
        reports.extend(r?);
    }
    Ok(SuiteOutcome::from_reports(reports))
}

/// One CONJ1 report per (group, σ-partition) for catalog groups up to `max_order`.
pub fn check_conjecture1(catalog: &[CatalogEntry], max_order: usize) -> Vec<VerificationReport> {
    run_suite(catalog, max_order, &[ClaimId::Conj1])
        .expect("catalog groups have at most six prime divisors")
        .reports
}
