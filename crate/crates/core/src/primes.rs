use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::SigmaError;

/// A finite set of primes, kept sorted and duplicate-free.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeSet(Vec<u32>);

pub fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Set of primes dividing `n`; empty for `n = 1`.
pub fn prime_support(n: usize) -> PrimeSet {
    let mut n = n;
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d as u32);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n as u32);
    }
    PrimeSet(out)
}

/// Whether every prime divisor of `n` lies in `pi`.
pub fn is_pi_number(n: usize, pi: &PrimeSet) -> bool {
    prime_support(n).is_subset(pi)
}

/// Largest divisor of `n` that is a `pi`-number.
pub fn pi_part(n: usize, pi: &PrimeSet) -> usize {
    let mut n = n;
    let mut part = 1;
    for &p in &pi.0 {
        let p = p as usize;
        while n.is_multiple_of(p) {
            n /= p;
            part *= p;
        }
    }
    part
}

impl PrimeSet {
    pub fn new(primes: impl IntoIterator<Item = u32>) -> Result<Self, SigmaError> {
        let mut v: Vec<u32> = primes.into_iter().collect();
        if let Some(&bad) = v.iter().find(|&&p| !is_prime(p)) {
            return Err(SigmaError::NotPrime(bad.to_string()));
        }
        v.sort_unstable();
        v.dedup();
        Ok(PrimeSet(v))
    }

    pub fn empty() -> Self {
        PrimeSet(Vec::new())
    }

    pub fn singleton(p: u32) -> Self {
        debug_assert!(is_prime(p));
        PrimeSet(vec![p])
    }

    pub fn primes(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, p: u32) -> bool {
        self.0.binary_search(&p).is_ok()
    }

    pub fn least(&self) -> Option<u32> {
        self.0.first().copied()
    }

    pub fn is_subset(&self, other: &PrimeSet) -> bool {
        self.0.iter().all(|&p| other.contains(p))
    }

    pub fn intersection(&self, other: &PrimeSet) -> PrimeSet {
        PrimeSet(
            self.0
                .iter()
                .copied()
                .filter(|&p| other.contains(p))
                .collect(),
        )
    }

    pub fn union(&self, other: &PrimeSet) -> PrimeSet {
        let mut v: Vec<u32> = self.0.iter().chain(&other.0).copied().collect();
        v.sort_unstable();
        v.dedup();
        PrimeSet(v)
    }

    /// `universe \ self`.
    pub fn complement_in(&self, universe: &PrimeSet) -> PrimeSet {
        PrimeSet(
            universe
                .0
                .iter()
                .copied()
                .filter(|&p| !self.contains(p))
                .collect(),
        )
    }

    pub fn is_disjoint(&self, other: &PrimeSet) -> bool {
        self.0.iter().all(|&p| !other.contains(p))
    }
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl Serialize for PrimeSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}
