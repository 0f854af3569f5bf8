//! Complete subgroup lattices.
//!
//! Subgroups are found by seeding with every cyclic subgroup and repeatedly
//! joining each known subgroup with each cyclic subgroup until nothing new
//! appears. Every subgroup is a join of cyclic subgroups, so the fixpoint is
//! the whole lattice.

use std::collections::HashMap;
use std::io::{BufRead, Write};
use std::sync::atomic::{AtomicU8, Ordering as AtomicOrdering};
use std::sync::{Arc, OnceLock};

use crate::bitset::ElementSet;
use crate::error::GroupError;
use crate::group::FiniteGroup;
use crate::pi::PiCache;
use crate::subgroup::{Subgroup, SubgroupIndex};

/// Default ceiling on the number of subgroups enumerated.
pub const DEFAULT_SUBGROUP_LIMIT: usize = 10_000;

/// All subgroups of a group, sorted by order and then by member list.
pub struct SubgroupLattice {
    group: Arc<FiniteGroup>,
    subgroups: Vec<Subgroup>,
    index: SubgroupIndex,
    normal: Vec<bool>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    conj: OnceLock<Vec<u32>>,
    cores: OnceLock<Vec<u32>>,
    // 0 = unknown, 1 = no, 2 = yes
    permutes: OnceLock<Vec<AtomicU8>>,
    pub(crate) pi_cache: PiCache,
}

impl std::fmt::Debug for SubgroupLattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SubgroupLattice")
            .field("group_order", &self.group.order())
            .field("subgroups", &self.subgroups.len())
            .finish()
    }
}

/// Enumerates every subgroup of `group` with the default work limit.
pub fn all_subgroups(group: Arc<FiniteGroup>) -> Result<SubgroupLattice, GroupError> {
    SubgroupLattice::build(group, DEFAULT_SUBGROUP_LIMIT)
}

impl SubgroupLattice {
    pub fn build(group: Arc<FiniteGroup>, limit: usize) -> Result<Self, GroupError> {
        let g = &*group;
        let n = g.order();

        let mut found: Vec<(ElementSet, Vec<usize>)> = Vec::new();
        let mut seen: SubgroupIndex = HashMap::new();
        let mut cyclic_gens: Vec<usize> = Vec::new();
        let mut covered = ElementSet::empty(n);
        for x in 0..n {
            if covered.contains(x) {
                continue;
            }
            let members = g.closure(&[x]);
            // Every generator of this cyclic subgroup yields the same subgroup.
            for y in members.iter() {
                if g.closure(&[y]).len() == members.len() {
                    covered.insert(y);
                }
            }
            if !seen.contains_key(&members) {
                seen.insert(members.clone(), found.len());
                let gens = if x == 0 { Vec::new() } else { vec![x] };
                found.push((members, gens));
                if x != 0 {
                    cyclic_gens.push(x);
                }
            }
        }

        let mut i = 0;
        while i < found.len() {
            for &c in &cyclic_gens {
                if found[i].0.contains(c) {
                    continue;
                }
                let mut gens = found[i].1.clone();
                gens.push(c);
                let joined = g.extend_closure(&found[i].0, &gens);
                if !seen.contains_key(&joined) {
                    if found.len() >= limit {
                        return Err(GroupError::WorkLimitExceeded { limit });
                    }
                    seen.insert(joined.clone(), found.len());
                    found.push((joined, gens));
                }
            }
            i += 1;
        }

        Ok(Self::from_parts(group, found))
    }

    fn from_parts(group: Arc<FiniteGroup>, mut found: Vec<(ElementSet, Vec<usize>)>) -> Self {
        found.sort_by(|a, b| {
            a.0.len()
                .cmp(&b.0.len())
                .then_with(|| a.0.cmp_members(&b.0))
        });
        let subgroups: Vec<Subgroup> = found
            .into_iter()
            .map(|(m, _)| {
                // Generators depend only on the member set, however it was found.
                let gens = group.small_generators(&m);
                group.make_subgroup(m, gens)
            })
            .collect();
        let index: SubgroupIndex = subgroups
            .iter()
            .enumerate()
            .map(|(i, s)| (s.members().clone(), i))
            .collect();
        let normal = subgroups
            .iter()
            .map(|s| group.is_normal_members(s.members()))
            .collect();

        // Conjugacy classes as orbits under the group generators.
        let count = subgroups.len();
        let mut class_of = vec![usize::MAX; count];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for start in 0..count {
            if class_of[start] != usize::MAX {
                continue;
            }
            let c = classes.len();
            let mut orbit = vec![start];
            class_of[start] = c;
            let mut k = 0;
            while k < orbit.len() {
                let s = &subgroups[orbit[k]];
                for &x in group.generators() {
                    let img = index[&group.conjugate_members(s.members(), x)];
                    if class_of[img] == usize::MAX {
                        class_of[img] = c;
                        orbit.push(img);
                    }
                }
                k += 1;
            }
            orbit.sort_unstable();
            classes.push(orbit);
        }

        SubgroupLattice {
            permutes: OnceLock::new(),
            group,
            subgroups,
            index,
            normal,
            classes,
            class_of,
            conj: OnceLock::new(),
            cores: OnceLock::new(),
            pi_cache: PiCache::default(),
        }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn group_arc(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn subgroup(&self, i: usize) -> &Subgroup {
        &self.subgroups[i]
    }

    pub fn order(&self, i: usize) -> usize {
        self.subgroups[i].order()
    }

    pub fn members(&self, i: usize) -> &ElementSet {
        self.subgroups[i].members()
    }

    pub fn trivial(&self) -> usize {
        0
    }

    pub fn whole(&self) -> usize {
        self.subgroups.len() - 1
    }

    pub fn index_of(&self, members: &ElementSet) -> Option<usize> {
        self.index.get(members).copied()
    }

    pub fn find(&self, h: &Subgroup) -> Option<usize> {
        if h.parent_fingerprint() != self.group.fingerprint() {
            return None;
        }
        self.index_of(h.members())
    }

    fn lookup(&self, members: &ElementSet) -> usize {
        *self
            .index
            .get(members)
            .expect("lattice is closed under subgroup operations")
    }

    /// `<gens> order n`, with generators in cycle notation.
    pub fn describe(&self, i: usize) -> String {
        let g = self.group();
        let gens: Vec<String> = self.subgroups[i]
            .generators()
            .iter()
            .map(|&x| g.element(x).to_string())
            .collect();
        format!("<{}> order {}", gens.join(", "), self.order(i))
    }

    pub fn is_normal(&self, i: usize) -> bool {
        self.normal[i]
    }

    pub fn normal_subgroups(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.normal[i]).collect()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    /// Conjugates of subgroup `i`.
    pub fn class(&self, i: usize) -> &[usize] {
        &self.classes[self.class_of[i]]
    }

    /// `a ≤ b`.
    pub fn is_subgroup(&self, a: usize, b: usize) -> bool {
        self.members(a).is_subset(self.members(b))
    }

    fn conj_table(&self) -> &[u32] {
        self.conj.get_or_init(|| {
            let g = &*self.group;
            let n = g.order();
            let mut table = vec![0u32; self.len() * n];
            for (i, s) in self.subgroups.iter().enumerate() {
                if self.normal[i] {
                    table[i * n..(i + 1) * n].fill(i as u32);
                    continue;
                }
                for x in 0..n {
                    table[i * n + x] = self.lookup(&g.conjugate_members(s.members(), x)) as u32;
                }
            }
            table
        })
    }

    /// Index of `H^x`.
    pub fn conjugate(&self, i: usize, x: usize) -> usize {
        self.conj_table()[i * self.group.order() + x] as usize
    }

    /// Whether subgroups `i` and `j` permute. Memoized.
    pub fn permutes(&self, i: usize, j: usize) -> bool {
        let n = self.len();
        let memo = self
            .permutes
            .get_or_init(|| (0..n * n).map(|_| AtomicU8::new(0)).collect());
        let slot = &memo[i * n + j];
        match slot.load(AtomicOrdering::Relaxed) {
            1 => return false,
            2 => return true,
            _ => {}
        }
        let value = self.compute_permutes(i, j);
        let code = if value { 2 } else { 1 };
        slot.store(code, AtomicOrdering::Relaxed);
        memo[j * n + i].store(code, AtomicOrdering::Relaxed);
        value
    }

    fn compute_permutes(&self, i: usize, j: usize) -> bool {
        if self.normal[i] || self.normal[j] || self.is_subgroup(i, j) || self.is_subgroup(j, i) {
            return true;
        }
        let (a, b) = (self.members(i), self.members(j));
        let meet = a.intersection(b).len();
        let product = self.order(i) * self.order(j) / meet;
        if !self.group.order().is_multiple_of(product) {
            return false;
        }
        self.group.permutes_members(a, b)
    }

    pub fn intersect(&self, i: usize, j: usize) -> usize {
        self.lookup(&self.members(i).intersection(self.members(j)))
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        if self.is_subgroup(i, j) {
            return j;
        }
        if self.is_subgroup(j, i) {
            return i;
        }
        let mut gens = self.subgroups[i].generators().to_vec();
        gens.extend_from_slice(self.subgroups[j].generators());
        self.lookup(&self.group.extend_closure(self.members(i), &gens))
    }

    /// `N_G(H)`.
    pub fn normalizer(&self, i: usize) -> usize {
        self.normalizer_in(i, self.whole())
    }

    /// `N_B(A)` for subgroups `A`, `B` of the group.
    pub fn normalizer_in(&self, a: usize, b: usize) -> usize {
        let members = ElementSet::from_indices(
            self.group.order(),
            self.members(b)
                .iter()
                .filter(|&x| self.conjugate(a, x) == a),
        );
        self.lookup(&members)
    }

    /// Whether `A` is normalized by every element of `B` (`A ⊴ B` when `A ≤ B`).
    pub fn normalized_by(&self, a: usize, b: usize) -> bool {
        if self.normal[a] {
            return true;
        }
        self.subgroups[b]
            .generators()
            .iter()
            .all(|&x| self.conjugate(a, x) == a)
    }

    /// Largest subgroup of `A` normal in `B` (the core of `A` in `B`), for `A ≤ B`.
    pub fn core_in(&self, a: usize, b: usize) -> usize {
        let n = self.len();
        let table = self.cores.get_or_init(|| {
            let mut t = vec![u32::MAX; n * n];
            for b in 0..n {
                for a in 0..=b {
                    if self.is_subgroup(a, b) {
                        t[a * n + b] = self.compute_core_in(a, b) as u32;
                    }
                }
            }
            t
        });
        match table[a * n + b] {
            u32::MAX => self.compute_core_in(a, b),
            c => c as usize,
        }
    }

    fn compute_core_in(&self, a: usize, b: usize) -> usize {
        if self.normalized_by(a, b) {
            return a;
        }
        let mut members = self.members(a).clone();
        let mut done = ElementSet::empty(self.len());
        for x in self.members(b).iter() {
            let c = self.conjugate(a, x);
            if done.insert(c) {
                members.intersect_with(self.members(c));
            }
        }
        self.lookup(&members)
    }

    /// `H_G`.
    pub fn core(&self, i: usize) -> usize {
        if self.normal[i] {
            return i;
        }
        let mut members = self.members(i).clone();
        for &c in self.class(i) {
            members.intersect_with(self.members(c));
        }
        self.lookup(&members)
    }

    /// `H^G`.
    pub fn normal_closure(&self, i: usize) -> usize {
        if self.normal[i] {
            return i;
        }
        let mut gens = Vec::new();
        for &c in self.class(i) {
            gens.extend_from_slice(self.subgroups[c].generators());
        }
        self.lookup(&self.group.extend_closure(self.members(i), &gens))
    }

    /// Subgroups of `top`, as indices in ascending order.
    pub fn subgroups_of(&self, top: usize) -> Vec<usize> {
        (0..=top).filter(|&i| self.is_subgroup(i, top)).collect()
    }

    /// Writes the lattice as line-oriented text keyed by the group fingerprint.
    pub fn write_cache<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(
            out,
            "sigperm-lattice 1 {:016x} {} {}",
            self.group.fingerprint(),
            self.group.order(),
            self.len()
        )?;
        for (i, s) in self.subgroups.iter().enumerate() {
            let members: Vec<String> = s.elements().map(|m| m.to_string()).collect();
            writeln!(
                out,
                "{} {} {}",
                s.order(),
                u8::from(self.normal[i]),
                members.join(",")
            )?;
        }
        Ok(())
    }

    /// Reads a lattice written by [`write_cache`](Self::write_cache) for the same group.
    pub fn read_cache<R: BufRead>(group: Arc<FiniteGroup>, input: R) -> Result<Self, GroupError> {
        let bad = |msg: &str| GroupError::Cache(msg.to_string());
        let mut lines = input.lines();
        let header = lines
            .next()
            .ok_or_else(|| bad("empty file"))?
            .map_err(|e| bad(&e.to_string()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 5 || fields[0] != "sigperm-lattice" || fields[1] != "1" {
            return Err(bad("unrecognized header"));
        }
        let fp = u64::from_str_radix(fields[2], 16).map_err(|_| bad("bad fingerprint"))?;
        if fp != group.fingerprint() {
            return Err(bad("fingerprint does not match group"));
        }
        let count: usize = fields[4].parse().map_err(|_| bad("bad count"))?;
        let n = group.order();
        let mut found = Vec::with_capacity(count);
        for line in lines {
            let line = line.map_err(|e| bad(&e.to_string()))?;
            let mut parts = line.split_whitespace();
            let order: usize = parts
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| bad("bad order"))?;
            let normal = match parts.next() {
                Some("0") => false,
                Some("1") => true,
                _ => return Err(bad("bad normal flag")),
            };
            let mut members = ElementSet::empty(n);
            for tok in parts
                .next()
                .ok_or_else(|| bad("missing members"))?
                .split(',')
            {
                let m: usize = tok.parse().map_err(|_| bad("bad member"))?;
                if m >= n {
                    return Err(bad("member out of range"));
                }
                members.insert(m);
            }
            if members.len() != order || !group.is_closed(&members) {
                return Err(bad("record is not a subgroup"));
            }
            if group.is_normal_members(&members) != normal {
                return Err(bad("normal flag disagrees with the group"));
            }
            let gens = group.small_generators(&members);
            found.push((members, gens));
        }
        if found.len() != count {
            return Err(bad("record count mismatch"));
        }
        Ok(Self::from_parts(group, found))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::generate_closure;
    use crate::perm::parse_cycles;

    fn lattice(specs: &[&str], n: usize) -> SubgroupLattice {
        let gens: Vec<_> = specs.iter().map(|s| parse_cycles(s, n).unwrap()).collect();
        all_subgroups(Arc::new(generate_closure(&gens, 512).unwrap())).unwrap()
    }

    /// Every subset of a tiny group tested for closure.
    fn brute_force_count(g: &FiniteGroup) -> usize {
        let n = g.order();
        (0u64..1 << n)
            .filter(|mask| {
                let set = ElementSet::from_indices(n, (0..n).filter(|i| mask >> i & 1 == 1));
                g.is_closed(&set)
            })
            .count()
    }

    #[test]
    fn sym3_has_six_subgroups() {
        let l = lattice(&["(1 2)", "(1 2 3)"], 3);
        assert_eq!(l.len(), 6);
        assert_eq!(brute_force_count(l.group()), 6);
        assert_eq!(l.normal_subgroups().len(), 3);
        assert_eq!(l.classes().len(), 4);
    }

    #[test]
    fn trivial_group_has_one_subgroup() {
        let l = lattice(&["()"], 2);
        assert_eq!(l.len(), 1);
        assert_eq!(l.trivial(), l.whole());
    }

    #[test]
    fn sorted_by_order_then_members() {
        let l = lattice(&["(1 2 3 4)", "(1 2)"], 4);
        assert_eq!(l.len(), 30);
        for w in l.subgroups().windows(2) {
            let ord = w[0]
                .order()
                .cmp(&w[1].order())
                .then_with(|| w[0].members().cmp_members(w[1].members()));
            assert_eq!(ord, std::cmp::Ordering::Less);
        }
    }

    #[test]
    fn work_limit() {
        let gens: Vec<_> = ["(1 2 3 4)", "(1 2)"]
            .iter()
            .map(|s| parse_cycles(s, 4).unwrap())
            .collect();
        let g = Arc::new(generate_closure(&gens, 512).unwrap());
        assert_eq!(
            SubgroupLattice::build(g, 20).unwrap_err(),
            GroupError::WorkLimitExceeded { limit: 20 }
        );
    }

    #[test]
    fn closed_under_meet_join_and_conjugation() {
        let l = lattice(&["(1 2 3 4)", "(1 2)"], 4);
        let g = l.group();
        for i in 0..l.len() {
            for j in 0..l.len() {
                let meet = l.intersect(i, j);
                assert_eq!(l.members(meet), &l.members(i).intersection(l.members(j)));
                let join = l.join(i, j);
                let direct = g.join(l.subgroup(i), l.subgroup(j)).unwrap();
                assert_eq!(l.subgroup(join), &direct);
            }
            for x in 0..g.order() {
                assert_eq!(l.order(l.conjugate(i, x)), l.order(i));
            }
        }
    }

    #[test]
    fn core_and_closure_two_ways() {
        let l = lattice(&["(1 2 3 4)", "(1 2)"], 4);
        let g = l.group();
        for i in 0..l.len() {
            let h = l.subgroup(i);
            assert_eq!(l.subgroup(l.core(i)), &g.core(h).unwrap());
            assert_eq!(
                l.subgroup(l.normal_closure(i)),
                &g.normal_closure(h).unwrap()
            );
            assert_eq!(l.subgroup(l.normalizer(i)), &g.normalizer(h).unwrap());
            assert_eq!(l.core_in(i, l.whole()), l.core(i));
        }
    }

    #[test]
    fn permutes_agrees_with_product_set_criteria() {
        let l = lattice(&["(1 2 3 4)", "(1 2)"], 4);
        let g = l.group();
        for i in 0..l.len() {
            for j in 0..l.len() {
                let (h, k) = (l.subgroup(i), l.subgroup(j));
                let hk = g.product_set(h, k).unwrap();
                let meet = g.intersect(h, k).unwrap().order();
                assert_eq!(hk.len(), h.order() * k.order() / meet);
                assert_eq!(l.permutes(i, j), g.is_closed(&hk));
                assert_eq!(l.permutes(i, j), g.permutes(h, k).unwrap());
            }
        }
    }

    #[test]
    fn cache_round_trip() {
        let l = lattice(&["(1 2 3 4)", "(1 2)"], 4);
        let mut buf = Vec::new();
        l.write_cache(&mut buf).unwrap();
        let back = SubgroupLattice::read_cache(l.group_arc().clone(), &buf[..]).unwrap();
        assert_eq!(back.subgroups(), l.subgroups());
        assert_eq!(back.normal_subgroups(), l.normal_subgroups());
        let mut again = Vec::new();
        back.write_cache(&mut again).unwrap();
        assert_eq!(buf, again);
    }

    #[test]
    fn cache_rejects_other_group() {
        let l = lattice(&["(1 2 3 4)", "(1 2)"], 4);
        let other = lattice(&["(1 2 3 4)"], 4);
        let mut buf = Vec::new();
        l.write_cache(&mut buf).unwrap();
        assert!(SubgroupLattice::read_cache(other.group_arc().clone(), &buf[..]).is_err());
    }
}
