//! Exhaustive checks of the σ-permutability theorems on concrete groups.
//!
//! A [`GroupContext`] holds one group's lattice and memoized quotients; a
//! [`SigmaAnalysis`] holds the level sets for one σ. Every claim reads these
//! and reports the subgroups that break it.

mod claims;
mod report;
mod suite;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};
use std::time::Instant;

pub use report::{parse_claim_filter, ClaimId, Status, VerificationReport, WitnessRecord};
pub use suite::{check_conjecture1, run_suite, SuiteOutcome, Summary};

use crate::catalog::CatalogEntry;
use crate::error::SpecError;
use crate::lattice::SubgroupLattice;
use crate::sigma::{SigmaAnalysis, SigmaPartition};
use crate::subgroup::Quotient;

/// `G/N` with its lattice, built on first use.
pub(crate) struct QuotientData {
    pub quotient: Quotient,
    lattice: OnceLock<SubgroupLattice>,
}

impl QuotientData {
    pub fn lattice(&self) -> &SubgroupLattice {
        self.lattice.get_or_init(|| {
            crate::lattice::all_subgroups(Arc::new(self.quotient.group().clone()))
                .expect("quotient lattice is smaller than the group's")
        })
    }
}

/// One group under test, shared by every σ and claim.
pub struct GroupContext {
    label: String,
    lattice: Arc<SubgroupLattice>,
    quotients: Mutex<HashMap<usize, Arc<QuotientData>>>,
}

impl GroupContext {
    pub fn new(label: impl Into<String>, lattice: Arc<SubgroupLattice>) -> Self {
        GroupContext {
            label: label.into(),
            lattice,
            quotients: Mutex::new(HashMap::new()),
        }
    }

    pub fn from_entry(entry: &CatalogEntry) -> Self {
        Self::new(entry.label.clone(), entry.lattice.clone())
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn lattice(&self) -> &SubgroupLattice {
        &self.lattice
    }

    /// `G/N` for the normal subgroup at lattice index `n`.
    pub(crate) fn quotient(&self, n: usize) -> Arc<QuotientData> {
        if let Some(q) = self.quotients.lock().unwrap().get(&n) {
            return q.clone();
        }
        let g = self.lattice.group();
        let quotient = g
            .quotient(self.lattice.subgroup(n))
            .expect("index refers to a normal subgroup");
        let data = Arc::new(QuotientData {
            quotient,
            lattice: OnceLock::new(),
        });
        self.quotients
            .lock()
            .unwrap()
            .entry(n)
            .or_insert(data)
            .clone()
    }
}

/// Checks one claim for one (group, σ).
pub fn verify_claim(
    ctx: &GroupContext,
    sigma: &SigmaPartition,
    claim: ClaimId,
) -> Result<VerificationReport, SpecError> {
    let analysis = SigmaAnalysis::new(ctx.lattice(), sigma.clone())?;
    Ok(verify_with(ctx, &analysis, claim))
}

/// Checks one claim reusing an existing analysis of the context's lattice.
pub fn verify_with(
    ctx: &GroupContext,
    analysis: &SigmaAnalysis<'_>,
    claim: ClaimId,
) -> VerificationReport {
    let start = Instant::now();
    let (status, witnesses) = match claims::check(ctx, analysis, claim) {
        None => (Status::Inapplicable, Vec::new()),
        Some(w) if w.is_empty() => (Status::Pass, w),
        Some(w) => (Status::Fail, w),
    };
    VerificationReport {
        group_id: ctx.label.clone(),
        sigma: analysis.sigma().to_string(),
        claim_id: claim,
        status,
        witnesses,
        timing_ms: start.elapsed().as_secs_f64() * 1000.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::GroupSpec;
    use crate::group::DEFAULT_ORDER_CAP;
    use crate::primes::prime_support;
    use crate::sigma::{parse_sigma_spec, PermutabilityLevel};

    fn entry(spec: &str) -> CatalogEntry {
        CatalogEntry::from_spec(spec.parse::<GroupSpec>().unwrap(), DEFAULT_ORDER_CAP).unwrap()
    }

    fn sigma_for(lat: &SubgroupLattice, spec: &str) -> SigmaPartition {
        parse_sigma_spec(spec)
            .unwrap()
            .resolve(&prime_support(lat.group().order()))
            .unwrap()
    }

    #[test]
    fn s4_sigma_one_level3_set_and_t2() {
        let e = entry("S4");
        let ctx = GroupContext::from_entry(&e);
        let sigma = sigma_for(ctx.lattice(), "s1");
        let an = SigmaAnalysis::new(ctx.lattice(), sigma.clone()).unwrap();
        let orders: Vec<usize> = an
            .permutable_set(PermutabilityLevel::Three)
            .iter()
            .map(|&h| ctx.lattice().order(h))
            .collect();
        assert_eq!(orders, vec![1, 4, 12, 24]);
        let r = verify_claim(&ctx, &sigma, ClaimId::T2).unwrap();
        assert_eq!(r.status, Status::Pass);
        assert!(r.witnesses.is_empty());
    }

    #[test]
    fn a5_level3_set_is_trivial_or_whole() {
        let e = entry("A5");
        let ctx = GroupContext::from_entry(&e);
        let sigma = sigma_for(ctx.lattice(), "2,5|3");
        let an = SigmaAnalysis::new(ctx.lattice(), sigma.clone()).unwrap();
        assert_eq!(
            an.permutable_set(PermutabilityLevel::Three),
            vec![ctx.lattice().trivial(), ctx.lattice().whole()]
        );
        assert_eq!(
            verify_claim(&ctx, &sigma, ClaimId::T2).unwrap().status,
            Status::Pass
        );
    }

    #[test]
    fn trivial_group_passes_t1() {
        let e = entry("C1");
        let ctx = GroupContext::from_entry(&e);
        let sigma = sigma_for(ctx.lattice(), "s1");
        assert_eq!(
            verify_claim(&ctx, &sigma, ClaimId::T1).unwrap().status,
            Status::Pass
        );
    }

    #[test]
    fn s3_full_suite_passes() {
        let out = run_suite(&[entry("S3")], 6, &ClaimId::ALL).unwrap();
        assert_eq!(out.reports.len(), 2 * ClaimId::ALL.len());
        assert!(
            out.reports.iter().all(|r| r.status != Status::Fail),
            "{:?}",
            out.reports
        );
        assert_eq!(out.exit_code(), 0);
        // σ₁-only corollaries are inapplicable under the one-block partition.
        let c1: Vec<Status> = out
            .reports
            .iter()
            .filter(|r| r.claim_id == ClaimId::C1)
            .map(|r| r.status)
            .collect();
        assert_eq!(c1, vec![Status::Pass, Status::Inapplicable]);
    }

    #[test]
    fn conjecture_scan_shapes() {
        let reports = check_conjecture1(&[entry("S3")], 6);
        assert_eq!(reports.len(), 2);
        assert!(reports.iter().all(|r| r.status == Status::Pass));
        assert!(check_conjecture1(&[], 60).is_empty());
    }

    #[test]
    fn empty_filter_is_rejected() {
        assert!(matches!(
            run_suite(&[], 60, &[]),
            Err(SpecError::EmptyClaimFilter)
        ));
    }

    #[test]
    fn skiba_claims_gate_on_hall_subgroups() {
        // A5 has no subgroup of order 15, so no Hall {3,5}-subgroup.
        let e = entry("A5");
        let ctx = GroupContext::from_entry(&e);
        let sigma = sigma_for(ctx.lattice(), "2|3,5");
        for c in [ClaimId::C2, ClaimId::C6] {
            assert_eq!(
                verify_claim(&ctx, &sigma, c).unwrap().status,
                Status::Inapplicable
            );
        }
    }

    #[test]
    fn fail_status_carries_witnesses() {
        let e = entry("S3");
        let ctx = GroupContext::from_entry(&e);
        let an = SigmaAnalysis::new(ctx.lattice(), sigma_for(ctx.lattice(), "s1")).unwrap();
        for c in ClaimId::ALL {
            let r = verify_with(&ctx, &an, c);
            assert_eq!(r.status == Status::Fail, !r.witnesses.is_empty());
        }
    }
}
