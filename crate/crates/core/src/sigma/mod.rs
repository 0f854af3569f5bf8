//! σ-partitions and the σ-permutability, σ-subnormality and σ-nilpotency predicates.

mod partition;

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

pub use partition::{
    canonicalize_sigma, enumerate_sigma_partitions, parse_sigma_spec, SigmaPartition, SigmaSpec,
};

use crate::bitset::ElementSet;
use crate::error::SigmaError;
use crate::group::FiniteGroup;
use crate::lattice::SubgroupLattice;
use crate::pi::{pi_data, sylow_subgroups, PiData};
use crate::primes::{is_pi_number, pi_part, prime_support, PrimeSet};

/// Which generalization of S-permutability to test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PermutabilityLevel {
    /// Permutes with every π_i-maximal subgroup.
    One,
    /// Permutes with every 𝔊_{π_i}-projector.
    Two,
    /// Some 𝔊_{π_i}-projector has all its conjugates permuting with `H`.
    Three,
    /// Some Hall π_i-subgroup has all its conjugates permuting with `H`.
    Skiba,
}

impl PermutabilityLevel {
    pub fn parse(text: &str) -> Option<Self> {
        match text.trim() {
            "1" => Some(Self::One),
            "2" => Some(Self::Two),
            "3" => Some(Self::Three),
            "skiba" | "Skiba" => Some(Self::Skiba),
            _ => None,
        }
    }
}

impl fmt::Display for PermutabilityLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::One => "1",
            Self::Two => "2",
            Self::Three => "3",
            Self::Skiba => "skiba",
        })
    }
}

/// Why a permutability test failed: the block and a subgroup `H` does not permute with.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutabilityWitness {
    pub block: PrimeSet,
    pub subgroup: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Permutability {
    Holds,
    Fails(PermutabilityWitness),
    /// Skiba's definition needs a Hall π_i-subgroup and this block has none.
    Undefined {
        block: PrimeSet,
    },
}

impl Permutability {
    pub fn holds(&self) -> bool {
        matches!(self, Permutability::Holds)
    }
}

fn check_context(lattice: &SubgroupLattice, sigma: &SigmaPartition) -> Result<(), SigmaError> {
    if sigma.context() == &prime_support(lattice.group().order()) {
        Ok(())
    } else {
        Err(SigmaError::NotCanonical)
    }
}

fn block_data(lattice: &SubgroupLattice, sigma: &SigmaPartition) -> Vec<Arc<PiData>> {
    sigma.blocks().iter().map(|b| pi_data(lattice, b)).collect()
}

/// Whether subgroup `h` of the lattice's group is σ-permutable at `level`.
pub fn sigma_permutable(
    lattice: &SubgroupLattice,
    h: usize,
    sigma: &SigmaPartition,
    level: PermutabilityLevel,
) -> Result<Permutability, SigmaError> {
    check_context(lattice, sigma)?;
    Ok(permutability_with(
        lattice,
        h,
        &block_data(lattice, sigma),
        level,
    ))
}

fn permutability_with(
    lattice: &SubgroupLattice,
    h: usize,
    blocks: &[Arc<PiData>],
    level: PermutabilityLevel,
) -> Permutability {
    if level == PermutabilityLevel::Skiba {
        if let Some(d) = blocks.iter().find(|d| d.halls.is_empty()) {
            return Permutability::Undefined {
                block: d.pi.clone(),
            };
        }
    }
    for d in blocks {
        let fail = |s: usize| {
            Permutability::Fails(PermutabilityWitness {
                block: d.pi.clone(),
                subgroup: s,
            })
        };
        match level {
            PermutabilityLevel::One | PermutabilityLevel::Two => {
                let targets = if level == PermutabilityLevel::One {
                    &d.maximal
                } else {
                    &d.projectors
                };
                if let Some(&s) = targets.iter().find(|&&s| !lattice.permutes(h, s)) {
                    return fail(s);
                }
            }
            PermutabilityLevel::Three | PermutabilityLevel::Skiba => {
                let candidates = if level == PermutabilityLevel::Three {
                    &d.projectors
                } else {
                    &d.halls
                };
                // Candidate sets are unions of conjugacy classes; test one class at a time.
                let mut first_failure = None;
                let mut found = false;
                let mut tried = Vec::new();
                for &p in candidates {
                    let class = lattice.class_of(p);
                    if tried.contains(&class) {
                        continue;
                    }
                    tried.push(class);
                    match lattice.class(p).iter().find(|&&c| !lattice.permutes(h, c)) {
                        None => {
                            found = true;
                            break;
                        }
                        Some(&c) => {
                            first_failure.get_or_insert(c);
                        }
                    }
                }
                if !found {
                    return fail(first_failure.expect("projector list is nonempty"));
                }
            }
        }
    }
    Permutability::Holds
}

/// S-permutability: `H` permutes with every Sylow subgroup, tested with product sets.
pub fn s_permutable(lattice: &SubgroupLattice, h: usize) -> bool {
    let g = lattice.group();
    let hs = lattice.subgroup(h);
    prime_support(g.order()).primes().iter().all(|&p| {
        sylow_subgroups(lattice, p)
            .into_iter()
            .all(|s| g.permutes(hs, lattice.subgroup(s)).expect("same parent"))
    })
}

/// σ-subnormality of `h` in the whole group.
pub fn sigma_subnormal(
    lattice: &SubgroupLattice,
    h: usize,
    sigma: &SigmaPartition,
) -> Result<bool, SigmaError> {
    check_context(lattice, sigma)?;
    Ok(sigma_subnormal_set_in(lattice, lattice.whole(), sigma)[h])
}

/// One step `A ≤ B` of a σ-subnormal chain: `A ⊴ B`, or `|B : A_B|` is a π_i-number.
fn chain_step(lattice: &SubgroupLattice, a: usize, b: usize, sigma: &SigmaPartition) -> bool {
    if lattice.normalized_by(a, b) {
        return true;
    }
    let section = lattice.order(b) / lattice.order(lattice.core_in(a, b));
    let support = prime_support(section);
    sigma.blocks().iter().any(|blk| support.is_subset(blk))
}

/// For every subgroup `A`, whether `A` is σ-subnormal in `top` (false when `A ≰ top`).
///
/// Chains may have length zero, so `top` is σ-subnormal in itself.
pub fn sigma_subnormal_set_in(
    lattice: &SubgroupLattice,
    top: usize,
    sigma: &SigmaPartition,
) -> Vec<bool> {
    let mut reach = vec![false; lattice.len()];
    reach[top] = true;
    let below: Vec<usize> = lattice.subgroups_of(top);
    // Lattice indices ascend with order, so every proper overgroup is settled first.
    for &a in below.iter().rev() {
        if a == top {
            continue;
        }
        reach[a] =
            below.iter().rev().take_while(|&&b| b > a).any(|&b| {
                reach[b] && lattice.is_subgroup(a, b) && chain_step(lattice, a, b, sigma)
            });
    }
    reach
}

/// σ-nilpotency of a group: for every block, the π_i-elements form a subgroup of
/// full π_i-part order (then it is the normal Hall π_i-subgroup, and the group is
/// their direct product).
pub fn sigma_nilpotent(group: &FiniteGroup, sigma: &SigmaPartition) -> Result<bool, SigmaError> {
    sigma_nilpotent_members(group, &group.all(), sigma)
}

/// σ-nilpotency of the subgroup with the given members.
pub fn sigma_nilpotent_members(
    group: &FiniteGroup,
    members: &ElementSet,
    sigma: &SigmaPartition,
) -> Result<bool, SigmaError> {
    let order = members.len();
    let covered = sigma
        .blocks()
        .iter()
        .fold(PrimeSet::empty(), |a, b| a.union(b));
    if !prime_support(order).is_subset(&covered) {
        return Err(SigmaError::NotCanonical);
    }
    let orders: Vec<(usize, usize)> = members
        .iter()
        .map(|g| (g, group.element_order(g).expect("member index")))
        .collect();
    for block in sigma.blocks() {
        let part: Vec<usize> = orders
            .iter()
            .filter(|(_, o)| is_pi_number(*o, block))
            .map(|&(g, _)| g)
            .collect();
        if part.len() != pi_part(order, block) {
            return Ok(false);
        }
        let set = ElementSet::from_indices(group.order(), part.iter().copied());
        if !part
            .iter()
            .all(|&a| part.iter().all(|&b| set.contains(group.mul(a, b))))
        {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Permutability level sets for one (group, σ), computed once and shared.
pub struct SigmaAnalysis<'l> {
    lattice: &'l SubgroupLattice,
    sigma: SigmaPartition,
    blocks: Vec<Arc<PiData>>,
    levels: [OnceLock<Vec<Permutability>>; 4],
    subnormal: OnceLock<Vec<bool>>,
}

impl<'l> SigmaAnalysis<'l> {
    pub fn new(lattice: &'l SubgroupLattice, sigma: SigmaPartition) -> Result<Self, SigmaError> {
        check_context(lattice, &sigma)?;
        let blocks = block_data(lattice, &sigma);
        Ok(SigmaAnalysis {
            lattice,
            sigma,
            blocks,
            levels: Default::default(),
            subnormal: OnceLock::new(),
        })
    }

    pub fn lattice(&self) -> &'l SubgroupLattice {
        self.lattice
    }

    pub fn sigma(&self) -> &SigmaPartition {
        &self.sigma
    }

    pub fn block_data(&self) -> &[Arc<PiData>] {
        &self.blocks
    }

    fn slot(level: PermutabilityLevel) -> usize {
        match level {
            PermutabilityLevel::One => 0,
            PermutabilityLevel::Two => 1,
            PermutabilityLevel::Three => 2,
            PermutabilityLevel::Skiba => 3,
        }
    }

    /// Outcome for every subgroup, in lattice order.
    pub fn outcomes(&self, level: PermutabilityLevel) -> &[Permutability] {
        self.levels[Self::slot(level)].get_or_init(|| {
            (0..self.lattice.len())
                .map(|h| permutability_with(self.lattice, h, &self.blocks, level))
                .collect()
        })
    }

    pub fn outcome(&self, h: usize, level: PermutabilityLevel) -> &Permutability {
        &self.outcomes(level)[h]
    }

    pub fn is_permutable(&self, h: usize, level: PermutabilityLevel) -> bool {
        self.outcome(h, level).holds()
    }

    /// Indices of subgroups permutable at `level`.
    pub fn permutable_set(&self, level: PermutabilityLevel) -> Vec<usize> {
        (0..self.lattice.len())
            .filter(|&h| self.is_permutable(h, level))
            .collect()
    }

    /// Whether some block lacks Hall subgroups (Skiba's notion is then undefined).
    pub fn skiba_defined(&self) -> bool {
        self.blocks.iter().all(|d| !d.halls.is_empty())
    }

    pub fn is_subnormal(&self, h: usize) -> bool {
        self.subnormal
            .get_or_init(|| sigma_subnormal_set_in(self.lattice, self.lattice.whole(), &self.sigma))
            [h]
    }

    pub fn is_sigma_nilpotent_subgroup(&self, h: usize) -> bool {
        sigma_nilpotent_members(self.lattice.group(), self.lattice.members(h), &self.sigma)
            .expect("sigma covers the group")
    }
}
