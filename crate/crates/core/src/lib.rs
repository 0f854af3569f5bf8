//! Finite permutation groups, their subgroup lattices, and the σ-permutability
//! family of predicates, together with a harness that checks the known theorems
//! about them exhaustively on small groups.
//!
//! Everything is computed from fully enumerated element tables: a
//! [`FiniteGroup`] stores its multiplication table, a [`Subgroup`] is a bitset
//! over element indices, and a [`SubgroupLattice`] lists every subgroup.

pub mod bitset;
pub mod catalog;
pub mod error;
pub mod group;
pub mod harness;
pub mod lattice;
pub mod perm;
pub mod pi;
pub mod primes;
pub mod sigma;
pub mod subgroup;

pub use bitset::ElementSet;
pub use catalog::{build_group, catalog, CatalogEntry, GroupSpec, NamedGroup};
pub use error::{GroupError, SigmaError, SpecError};
pub use group::{generate_closure, FiniteGroup, DEFAULT_ORDER_CAP, DEGREE_CAP};
pub use harness::{
    check_conjecture1, parse_claim_filter, run_suite, verify_claim, ClaimId, GroupContext, Status,
    SuiteOutcome, Summary, VerificationReport, WitnessRecord,
};
pub use lattice::{all_subgroups, SubgroupLattice, DEFAULT_SUBGROUP_LIMIT};
pub use perm::{parse_cycles, Permutation};
pub use primes::{is_pi_number, prime_support, PrimeSet};
pub use sigma::{
    canonicalize_sigma, enumerate_sigma_partitions, parse_sigma_spec, sigma_nilpotent,
    sigma_permutable, sigma_subnormal, Permutability, PermutabilityLevel, SigmaAnalysis,
    SigmaPartition, SigmaSpec,
};
pub use subgroup::{Quotient, Subgroup};
