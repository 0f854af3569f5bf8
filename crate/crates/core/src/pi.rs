//! Subgroups indexed by a set of primes: π-maximal, Sylow and Hall subgroups,
//! `O_π`, `O^π`, and 𝔊_π-projectors.
//!
//! The `_in` variants work inside a subgroup `top` of the lattice's group
//! (subgroups of `top`, conjugation by elements of `top`); the plain variants
//! use the whole group.
//!
//! A 𝔊_π-projector is a subgroup `H` such that `HN/N` is π-maximal in `G/N`
//! for every normal `N`. Subgroups of `G/N` correspond to subgroups of `G`
//! containing `N`, so the test runs inside the lattice of `G`: `HN/N` is
//! π-maximal in `G/N` exactly when no subgroup `K > HN` has `|K : N|` a
//! π-number.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::bitset::ElementSet;
use crate::lattice::SubgroupLattice;
use crate::primes::{is_pi_number, pi_part, prime_support, PrimeSet};
use crate::subgroup::Subgroup;

/// Per-lattice memo of π-data for the whole group, keyed by `π ∩ π(G)`.
#[derive(Default)]
pub(crate) struct PiCache {
    map: Mutex<HashMap<PrimeSet, Arc<PiData>>>,
}

/// π-maximal subgroups, projectors and Hall subgroups of the whole group for one π.
#[derive(Debug, Clone)]
pub struct PiData {
    pub pi: PrimeSet,
    pub maximal: Vec<usize>,
    pub projectors: Vec<usize>,
    pub halls: Vec<usize>,
}

/// Cached π-data for the lattice's group.
pub fn pi_data(lattice: &SubgroupLattice, pi: &PrimeSet) -> Arc<PiData> {
    let key = pi.intersection(&prime_support(lattice.group().order()));
    if let Some(d) = lattice.pi_cache.map.lock().unwrap().get(&key) {
        return d.clone();
    }
    // Computed outside the lock; concurrent duplicates insert equal values.
    let maximal = pi_maximal_subgroups(lattice, &key);
    let projectors = projectors_from_maximal(lattice, &key, &maximal);
    let halls = hall_subgroups(lattice, &key);
    let data = Arc::new(PiData {
        pi: key.clone(),
        maximal,
        projectors,
        halls,
    });
    lattice
        .pi_cache
        .map
        .lock()
        .unwrap()
        .entry(key)
        .or_insert(data)
        .clone()
}

pub fn is_pi_group(h: &Subgroup, pi: &PrimeSet) -> bool {
    is_pi_number(h.order(), pi)
}

/// Maximal members (under inclusion) among the π-subgroups of the whole group.
pub fn pi_maximal_subgroups(lattice: &SubgroupLattice, pi: &PrimeSet) -> Vec<usize> {
    pi_maximal_subgroups_in(lattice, lattice.whole(), pi)
}

pub fn pi_maximal_subgroups_in(lattice: &SubgroupLattice, top: usize, pi: &PrimeSet) -> Vec<usize> {
    let mut maximal: Vec<usize> = Vec::new();
    // Descending order: anything properly containing a candidate was seen first,
    // and lies inside some maximal subgroup already recorded.
    for s in (0..=top).rev() {
        if !is_pi_number(lattice.order(s), pi) || !lattice.is_subgroup(s, top) {
            continue;
        }
        if maximal.iter().all(|&m| !lattice.is_subgroup(s, m)) {
            maximal.push(s);
        }
    }
    maximal.sort_unstable();
    maximal
}

/// Sylow `p`-subgroups; `{1}` when `p` does not divide the group order.
pub fn sylow_subgroups(lattice: &SubgroupLattice, p: u32) -> Vec<usize> {
    hall_subgroups(lattice, &PrimeSet::singleton(p))
}

/// Hall π-subgroups (π-subgroups of π'-index). May be empty.
pub fn hall_subgroups(lattice: &SubgroupLattice, pi: &PrimeSet) -> Vec<usize> {
    hall_subgroups_in(lattice, lattice.whole(), pi)
}

pub fn hall_subgroups_in(lattice: &SubgroupLattice, top: usize, pi: &PrimeSet) -> Vec<usize> {
    let target = pi_part(lattice.order(top), pi);
    (0..=top)
        .filter(|&s| lattice.order(s) == target && lattice.is_subgroup(s, top))
        .collect()
}

/// `O_π(G)`: the largest normal π-subgroup.
pub fn o_pi(lattice: &SubgroupLattice, pi: &PrimeSet) -> usize {
    o_pi_in(lattice, lattice.whole(), pi)
}

pub fn o_pi_in(lattice: &SubgroupLattice, top: usize, pi: &PrimeSet) -> usize {
    // The join of normal π-subgroups is again one, so the largest is unique.
    (0..=top)
        .rev()
        .find(|&s| {
            is_pi_number(lattice.order(s), pi)
                && lattice.is_subgroup(s, top)
                && lattice.normalized_by(s, top)
        })
        .expect("the trivial subgroup is a normal π-subgroup")
}

/// `O^π(G)`: the smallest normal subgroup with π-group quotient.
pub fn o_upper_pi(lattice: &SubgroupLattice, pi: &PrimeSet) -> usize {
    o_upper_pi_in(lattice, lattice.whole(), pi)
}

pub fn o_upper_pi_in(lattice: &SubgroupLattice, top: usize, pi: &PrimeSet) -> usize {
    let top_order = lattice.order(top);
    let mut members: ElementSet = lattice.members(top).clone();
    for s in 0..=top {
        if lattice.is_subgroup(s, top)
            && lattice.normalized_by(s, top)
            && is_pi_number(top_order / lattice.order(s), pi)
        {
            members.intersect_with(lattice.members(s));
        }
    }
    lattice
        .index_of(&members)
        .expect("intersection of subgroups is a subgroup")
}

/// All 𝔊_π-projectors of the whole group.
///
/// # Panics
///
/// Panics if no projector is found, which would contradict the existence of
/// 𝔊_π-projectors in every finite group and indicates an engine bug.
pub fn gpi_projectors(lattice: &SubgroupLattice, pi: &PrimeSet) -> Vec<usize> {
    pi_data(lattice, pi).projectors.clone()
}

fn projectors_from_maximal(
    lattice: &SubgroupLattice,
    pi: &PrimeSet,
    maximal: &[usize],
) -> Vec<usize> {
    let normals: Vec<usize> = lattice
        .normal_subgroups()
        .into_iter()
        .filter(|&n| n != lattice.trivial() && n != lattice.whole())
        .collect();
    // For each normal N: subgroups K ≥ N with |K : N| a π-number that are maximal such.
    let maximal_mod: Vec<Vec<usize>> = normals
        .iter()
        .map(|&n| {
            let mut tops: Vec<usize> = Vec::new();
            for k in (0..lattice.len()).rev() {
                if !lattice.is_subgroup(n, k)
                    || !is_pi_number(lattice.order(k) / lattice.order(n), pi)
                {
                    continue;
                }
                if tops.iter().all(|&t| !lattice.is_subgroup(k, t)) {
                    tops.push(k);
                }
            }
            tops
        })
        .collect();
    let projectors: Vec<usize> = maximal
        .iter()
        .copied()
        .filter(|&h| {
            normals
                .iter()
                .zip(&maximal_mod)
                .all(|(&n, tops)| tops.contains(&lattice.join(h, n)))
        })
        .collect();
    assert!(
        !projectors.is_empty(),
        "no G_pi-projector found for pi = {{{pi}}} in a group of order {}",
        lattice.group().order()
    );
    projectors
}

/// Whether Hall π-subgroups exist, are conjugate, and contain every π-subgroup up to conjugacy.
pub fn has_d_pi_property(lattice: &SubgroupLattice, pi: &PrimeSet) -> bool {
    has_d_pi_property_in(lattice, lattice.whole(), pi)
}

pub fn has_d_pi_property_in(lattice: &SubgroupLattice, top: usize, pi: &PrimeSet) -> bool {
    let halls = hall_subgroups_in(lattice, top, pi);
    let Some(&first) = halls.first() else {
        return false;
    };
    let orbit: Vec<usize> = lattice
        .members(top)
        .iter()
        .map(|x| lattice.conjugate(first, x))
        .collect();
    if halls.iter().any(|h| !orbit.contains(h)) {
        return false;
    }
    (0..=top)
        .filter(|&s| is_pi_number(lattice.order(s), pi) && lattice.is_subgroup(s, top))
        .all(|s| halls.iter().any(|&h| lattice.is_subgroup(s, h)))
}
