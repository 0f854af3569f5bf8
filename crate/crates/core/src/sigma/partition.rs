use std::fmt;

use crate::error::SigmaError;
use crate::primes::{is_prime, PrimeSet};

/// A partition of `π(G)` into disjoint nonempty blocks, sorted by least prime.
///
/// Blocks of a partition of all primes that miss `π(G)` are dropped: their
/// π-maximal subgroups and projectors are trivial and permute with everything.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SigmaPartition {
    blocks: Vec<PrimeSet>,
    context: PrimeSet,
}

impl SigmaPartition {
    pub fn blocks(&self) -> &[PrimeSet] {
        &self.blocks
    }

    /// The prime set (`π(G)`) this partition was canonicalized against.
    pub fn context(&self) -> &PrimeSet {
        &self.context
    }

    /// Every block a single prime (the partition σ₁ restricted to `π(G)`).
    pub fn is_singletons(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 1)
    }

    pub fn singletons(context: &PrimeSet) -> SigmaPartition {
        SigmaPartition {
            blocks: context
                .primes()
                .iter()
                .map(|&p| PrimeSet::singleton(p))
                .collect(),
            context: context.clone(),
        }
    }

    /// Block containing `p`, if any.
    pub fn block_of(&self, p: u32) -> Option<&PrimeSet> {
        self.blocks.iter().find(|b| b.contains(p))
    }

    /// The same partition cut down to a smaller prime set (for sections of `G`).
    pub fn restrict(&self, context: &PrimeSet) -> SigmaPartition {
        debug_assert!(context.is_subset(&self.context));
        let mut blocks: Vec<PrimeSet> = self
            .blocks
            .iter()
            .map(|b| b.intersection(context))
            .filter(|b| !b.is_empty())
            .collect();
        blocks.sort_by_key(|b| b.least());
        SigmaPartition {
            blocks,
            context: context.clone(),
        }
    }
}

impl fmt::Display for SigmaPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            return f.write_str("-");
        }
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

/// Intersects each block with `context`, drops empty blocks and sorts.
///
/// Fails if the blocks overlap or leave a prime of `context` uncovered.
pub fn canonicalize_sigma(
    blocks: &[PrimeSet],
    context: &PrimeSet,
) -> Result<SigmaPartition, SigmaError> {
    for (i, a) in blocks.iter().enumerate() {
        for b in &blocks[i + 1..] {
            if let Some(&p) = a.intersection(b).primes().first() {
                return Err(SigmaError::Overlap(p));
            }
        }
    }
    if let Some(&p) = context
        .primes()
        .iter()
        .find(|&&p| !blocks.iter().any(|b| b.contains(p)))
    {
        return Err(SigmaError::Uncovered(p));
    }
    let mut out: Vec<PrimeSet> = blocks
        .iter()
        .map(|b| b.intersection(context))
        .filter(|b| !b.is_empty())
        .collect();
    out.sort_by_key(|b| b.least());
    Ok(SigmaPartition {
        blocks: out,
        context: context.clone(),
    })
}

/// Every set partition of `context`, canonically ordered.
pub fn enumerate_sigma_partitions(context: &PrimeSet) -> Result<Vec<SigmaPartition>, SigmaError> {
    let primes = context.primes();
    if primes.len() > 6 {
        return Err(SigmaError::TooManyPrimes(primes.len()));
    }
    // Restricted growth strings: label[i] <= 1 + max(label[..i]).
    let mut out = Vec::new();
    let mut labels = vec![0usize; primes.len()];
    loop {
        let count = labels.iter().max().map_or(0, |m| m + 1);
        let mut blocks: Vec<Vec<u32>> = vec![Vec::new(); count];
        for (i, &l) in labels.iter().enumerate() {
            blocks[l].push(primes[i]);
        }
        let blocks: Vec<PrimeSet> = blocks
            .into_iter()
            .map(|b| PrimeSet::new(b).expect("primes"))
            .collect();
        out.push(canonicalize_sigma(&blocks, context)?);

        // Next restricted growth string, or stop.
        let mut i = labels.len();
        loop {
            if i <= 1 {
                out.sort();
                out.dedup();
                return Ok(out);
            }
            i -= 1;
            let prefix_max = labels[..i].iter().copied().max().unwrap_or(0);
            if labels[i] <= prefix_max {
                labels[i] += 1;
                for l in &mut labels[i + 1..] {
                    *l = 0;
                }
                break;
            }
        }
    }
}

/// A parsed σ-spec, not yet tied to a group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SigmaSpec {
    /// `s1`: every prime in its own block.
    Singletons,
    /// Explicit blocks; `rest` collects every uncovered prime into one extra block.
    Blocks { blocks: Vec<PrimeSet>, rest: bool },
}

/// Parses `2,5|3`, `s1`, or `2|*`.
pub fn parse_sigma_spec(text: &str) -> Result<SigmaSpec, SigmaError> {
    let text = text.trim();
    if text.eq_ignore_ascii_case("s1") {
        return Ok(SigmaSpec::Singletons);
    }
    let mut blocks = Vec::new();
    let mut rest = false;
    let parts: Vec<&str> = text.split('|').collect();
    for (i, part) in parts.iter().enumerate() {
        let part = part.trim();
        if part == "*" && i + 1 == parts.len() {
            rest = true;
            continue;
        }
        let mut primes = Vec::new();
        for tok in part.split(',') {
            let tok = tok.trim();
            if tok.is_empty() {
                return Err(SigmaError::EmptyBlock);
            }
            let p: u32 = tok
                .parse()
                .map_err(|_| SigmaError::NotPrime(tok.to_string()))?;
            if !is_prime(p) {
                return Err(SigmaError::NotPrime(tok.to_string()));
            }
            primes.push(p);
        }
        blocks.push(PrimeSet::new(primes)?);
    }
    for (i, a) in blocks.iter().enumerate() {
        for b in &blocks[i + 1..] {
            if let Some(&p) = a.intersection(b).primes().first() {
                return Err(SigmaError::Overlap(p));
            }
        }
    }
    Ok(SigmaSpec::Blocks { blocks, rest })
}

impl SigmaSpec {
    /// Canonical partition of `context` described by this spec.
    pub fn resolve(&self, context: &PrimeSet) -> Result<SigmaPartition, SigmaError> {
        match self {
            SigmaSpec::Singletons => Ok(SigmaPartition::singletons(context)),
            SigmaSpec::Blocks { blocks, rest } => {
                let mut blocks = blocks.clone();
                if *rest {
                    let covered = blocks.iter().fold(PrimeSet::empty(), |acc, b| acc.union(b));
                    let remaining = covered.complement_in(context);
                    if !remaining.is_empty() {
                        blocks.push(remaining);
                    }
                }
                canonicalize_sigma(&blocks, context)
            }
        }
    }
}
