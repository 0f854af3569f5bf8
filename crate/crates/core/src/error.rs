use thiserror::Error;

/// Errors raised by group construction and subgroup operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("point {point} exceeds degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },

    #[error("malformed cycle token `{0}`")]
    MalformedToken(String),

    #[error("point {0} repeated within one cycle")]
    RepeatedPoint(usize),

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("degree {degree} exceeds the cap of {cap} points")]
    DegreeCapExceeded { degree: usize, cap: usize },

    #[error("group order exceeds cap {cap} (closure aborted after {partial} elements)")]
    OrderCapExceeded { cap: usize, partial: usize },

    #[error("empty generator list")]
    NoGenerators,

    #[error("invalid permutation image array")]
    NotABijection,

    #[error("subgroups belong to different parent groups")]
    ParentMismatch,

    #[error("element index {0} out of range")]
    ElementOutOfRange(usize),

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("subgroup enumeration exceeded the work limit of {limit} subgroups")]
    WorkLimitExceeded { limit: usize },

    #[error("element set is not a subgroup of this group")]
    NotASubgroup,

    #[error("lattice cache: {0}")]
    Cache(String),
}

/// Errors raised while interpreting sigma-partitions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SigmaError {
    #[error("blocks overlap on prime {0}")]
    Overlap(u32),

    #[error("prime {0} of the group order is not covered by any block")]
    Uncovered(u32),

    #[error("`{0}` is not a prime")]
    NotPrime(String),

    #[error("empty block in sigma spec")]
    EmptyBlock,

    #[error("too many primes ({0}) for exhaustive partition enumeration")]
    TooManyPrimes(usize),

    #[error("partition is not canonicalized against this group")]
    NotCanonical,
}

/// Errors raised by the command surface (spec parsing and suite configuration).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("unknown group name `{0}`")]
    UnknownGroup(String),

    #[error("malformed group spec `{0}`")]
    Malformed(String),

    #[error("unknown claim id `{0}`")]
    UnknownClaim(String),

    #[error("empty claim filter")]
    EmptyClaimFilter,

    #[error(transparent)]
    Group(#[from] GroupError),

    #[error(transparent)]
    Sigma(#[from] SigmaError),
}
