//! Subgroups as member bitsets, and the closure operators on them.

use std::collections::HashMap;

use crate::bitset::ElementSet;
use crate::error::GroupError;
use crate::group::FiniteGroup;
use crate::perm::Permutation;

/// A subgroup of a [`FiniteGroup`], identified by its member set.
///
/// `parent` is the parent's content fingerprint; operations mixing subgroups of
/// different parents fail with [`GroupError::ParentMismatch`].
#[derive(Clone, Debug)]
pub struct Subgroup {
    parent: u64,
    members: ElementSet,
    order: usize,
    gens: Vec<usize>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent == other.parent && self.members == other.members
    }
}

impl Eq for Subgroup {}

impl std::hash::Hash for Subgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.parent.hash(state);
        self.members.hash(state);
    }
}

impl Subgroup {
    pub fn members(&self) -> &ElementSet {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Generators this subgroup was built from (not necessarily minimal).
    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    pub fn parent_fingerprint(&self) -> u64 {
        self.parent
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members.contains(g)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter()
    }
}

impl FiniteGroup {
    pub(crate) fn make_subgroup(&self, members: ElementSet, gens: Vec<usize>) -> Subgroup {
        Subgroup {
            parent: self.fingerprint(),
            order: members.len(),
            members,
            gens,
        }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        self.make_subgroup(ElementSet::from_indices(self.order(), [0]), Vec::new())
    }

    pub fn whole(&self) -> Subgroup {
        self.make_subgroup(self.all(), self.generators().to_vec())
    }

    /// Subgroup generated by the given element indices.
    pub fn subgroup(&self, gens: &[usize]) -> Result<Subgroup, GroupError> {
        for &g in gens {
            self.check_index(g)?;
        }
        let gens: Vec<usize> = gens.iter().copied().filter(|&g| g != 0).collect();
        Ok(self.make_subgroup(self.closure(&gens), gens))
    }

    /// Subgroup generated by explicit permutations, which must lie in this group.
    pub fn subgroup_from_perms(&self, perms: &[Permutation]) -> Result<Subgroup, GroupError> {
        let mut idx = Vec::with_capacity(perms.len());
        for p in perms {
            if p.degree() != self.degree() {
                return Err(GroupError::DegreeMismatch {
                    left: self.degree(),
                    right: p.degree(),
                });
            }
            idx.push(self.index_of(p).ok_or(GroupError::NotASubgroup)?);
        }
        self.subgroup(&idx)
    }

    /// Wraps a member set that is already known to be a subgroup.
    pub fn subgroup_from_set(&self, members: ElementSet) -> Result<Subgroup, GroupError> {
        if members.universe_words() != self.order().div_ceil(64) || !self.is_closed(&members) {
            return Err(GroupError::NotASubgroup);
        }
        let gens = self.small_generators(&members);
        Ok(self.make_subgroup(members, gens))
    }

    fn owns(&self, h: &Subgroup) -> Result<(), GroupError> {
        if h.parent == self.fingerprint() {
            Ok(())
        } else {
            Err(GroupError::ParentMismatch)
        }
    }

    /// `{hk : h ∈ H, k ∈ K}`.
    pub fn product_set(&self, h: &Subgroup, k: &Subgroup) -> Result<ElementSet, GroupError> {
        self.owns(h)?;
        self.owns(k)?;
        Ok(self.product_members(&h.members, &k.members))
    }

    pub(crate) fn product_members(&self, h: &ElementSet, k: &ElementSet) -> ElementSet {
        let ks: Vec<usize> = k.iter().collect();
        let mut out = ElementSet::empty(self.order());
        for a in h.iter() {
            for &b in &ks {
                out.insert(self.mul(a, b));
            }
        }
        out
    }

    /// Whether `HK = KH`, i.e. `HK` is a subgroup.
    pub fn permutes(&self, h: &Subgroup, k: &Subgroup) -> Result<bool, GroupError> {
        self.owns(h)?;
        self.owns(k)?;
        Ok(self.permutes_members(&h.members, &k.members))
    }

    /// `HK = KH` test on raw member sets: build `HK`, then require `kh ∈ HK` for all
    /// `k, h` (equal cardinalities make inclusion sufficient).
    pub(crate) fn permutes_members(&self, h: &ElementSet, k: &ElementSet) -> bool {
        if h.is_subset(k) || k.is_subset(h) {
            return true;
        }
        let hk = self.product_members(h, k);
        let hs: Vec<usize> = h.iter().collect();
        k.iter()
            .all(|b| hs.iter().all(|&a| hk.contains(self.mul(b, a))))
    }

    pub fn join(&self, h: &Subgroup, k: &Subgroup) -> Result<Subgroup, GroupError> {
        self.owns(h)?;
        self.owns(k)?;
        if k.is_subgroup_of(h) {
            return Ok(h.clone());
        }
        if h.is_subgroup_of(k) {
            return Ok(k.clone());
        }
        let mut gens = h.gens.clone();
        gens.extend(k.gens.iter().copied().filter(|g| !h.contains(*g)));
        let members = self.extend_closure(&h.members, &gens);
        Ok(self.make_subgroup(members, gens))
    }

    pub fn intersect(&self, h: &Subgroup, k: &Subgroup) -> Result<Subgroup, GroupError> {
        self.owns(h)?;
        self.owns(k)?;
        let members = h.members.intersection(&k.members);
        let gens = self.small_generators(&members);
        Ok(self.make_subgroup(members, gens))
    }

    /// `H^x = {x⁻¹hx : h ∈ H}`.
    pub fn conjugate_subgroup(&self, h: &Subgroup, x: usize) -> Result<Subgroup, GroupError> {
        self.owns(h)?;
        self.check_index(x)?;
        let members = self.conjugate_members(&h.members, x);
        let gens = h.gens.iter().map(|&g| self.conjugate(g, x)).collect();
        Ok(self.make_subgroup(members, gens))
    }

    pub(crate) fn conjugate_members(&self, h: &ElementSet, x: usize) -> ElementSet {
        let mut out = ElementSet::empty(self.order());
        for a in h.iter() {
            out.insert(self.conjugate(a, x));
        }
        out
    }

    /// Normality by conjugating with each generator of the group.
    pub fn is_normal(&self, h: &Subgroup) -> Result<bool, GroupError> {
        self.owns(h)?;
        Ok(self.is_normal_members(&h.members))
    }

    pub(crate) fn is_normal_members(&self, h: &ElementSet) -> bool {
        self.generators()
            .iter()
            .all(|&x| h.iter().all(|a| h.contains(self.conjugate(a, x))))
    }

    /// `N_G(H) = {x : H^x = H}`.
    pub fn normalizer(&self, h: &Subgroup) -> Result<Subgroup, GroupError> {
        self.owns(h)?;
        let hs: Vec<usize> = h.members.iter().collect();
        let members = ElementSet::from_indices(
            self.order(),
            (0..self.order()).filter(|&x| hs.iter().all(|&a| h.contains(self.conjugate(a, x)))),
        );
        let gens = self.small_generators(&members);
        Ok(self.make_subgroup(members, gens))
    }

    /// Smallest normal subgroup containing `H`.
    pub fn normal_closure(&self, h: &Subgroup) -> Result<Subgroup, GroupError> {
        self.owns(h)?;
        // Close the generators of H under conjugation by the group generators.
        let mut gens: Vec<usize> = h.gens.clone();
        let mut seen = ElementSet::from_indices(self.order(), gens.iter().copied());
        let mut i = 0;
        while i < gens.len() {
            for &x in self.generators() {
                let c = self.conjugate(gens[i], x);
                if seen.insert(c) {
                    gens.push(c);
                }
            }
            i += 1;
        }
        let members = self.extend_closure(&h.members, &gens);
        let gens = self.small_generators(&members);
        Ok(self.make_subgroup(members, gens))
    }

    /// Largest normal subgroup contained in `H`.
    pub fn core(&self, h: &Subgroup) -> Result<Subgroup, GroupError> {
        self.owns(h)?;
        let mut members = h.members.clone();
        for x in 0..self.order() {
            members.intersect_with(&self.conjugate_members(&h.members, x));
        }
        let gens = self.small_generators(&members);
        Ok(self.make_subgroup(members, gens))
    }

    /// The factor group `G/N` acting on the right cosets of `N`.
    pub fn quotient(&self, n: &Subgroup) -> Result<Quotient, GroupError> {
        self.owns(n)?;
        if !self.is_normal_members(&n.members) {
            return Err(GroupError::NotNormal);
        }
        let order = self.order();
        let ns: Vec<usize> = n.members.iter().collect();
        let mut coset_of = vec![usize::MAX; order];
        let mut reps = Vec::new();
        for g in 0..order {
            if coset_of[g] == usize::MAX {
                let c = reps.len();
                reps.push(g);
                for &m in &ns {
                    coset_of[self.mul(m, g)] = c;
                }
            }
        }
        let index = reps.len();
        // Coset action of each element; elements in the same coset act identically.
        let action = |x: usize| {
            Permutation::from_zero_based(
                reps.iter()
                    .map(|&r| coset_of[self.mul(r, x)] as u16)
                    .collect(),
            )
        };
        let perms: Vec<Permutation> = reps.iter().map(|&r| action(r)).collect();
        let mut table = vec![0u32; index * index];
        for a in 0..index {
            for b in 0..index {
                table[a * index + b] = coset_of[self.mul(reps[a], reps[b])] as u32;
            }
        }
        let gens: Vec<usize> = self.generators().iter().map(|&g| coset_of[g]).collect();
        let group = FiniteGroup::from_table(index, perms.clone(), &table, &gens);
        let to_group: Vec<usize> = perms.iter().map(|p| group.index_of(p).unwrap()).collect();
        let projection = (0..order).map(|g| to_group[coset_of[g]]).collect();
        Ok(Quotient {
            group,
            projection,
            kernel: n.clone(),
            parent: self.fingerprint(),
        })
    }
}

/// `G/N` together with the canonical projection `G → G/N`.
#[derive(Clone, Debug)]
pub struct Quotient {
    group: FiniteGroup,
    projection: Vec<usize>,
    kernel: Subgroup,
    parent: u64,
}

impl Quotient {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    /// Element index in `G/N` of the coset containing `g`.
    pub fn project(&self, g: usize) -> usize {
        self.projection[g]
    }

    pub fn projection(&self) -> &[usize] {
        &self.projection
    }

    /// `HN/N` as a subgroup of the quotient.
    pub fn image(&self, h: &Subgroup) -> Result<Subgroup, GroupError> {
        if h.parent != self.parent {
            return Err(GroupError::ParentMismatch);
        }
        let members = self.image_members(&h.members);
        let gens = h
            .gens
            .iter()
            .map(|&g| self.projection[g])
            .filter(|&g| g != 0)
            .collect();
        Ok(self.group.make_subgroup(members, gens))
    }

    pub(crate) fn image_members(&self, h: &ElementSet) -> ElementSet {
        ElementSet::from_indices(self.group.order(), h.iter().map(|g| self.projection[g]))
    }

    /// Full preimage in `G` of a subgroup of the quotient.
    pub fn preimage(&self, q: &Subgroup, parent: &FiniteGroup) -> Result<Subgroup, GroupError> {
        if q.parent != self.group.fingerprint() || parent.fingerprint() != self.parent {
            return Err(GroupError::ParentMismatch);
        }
        let members = self.preimage_members(&q.members);
        let gens = parent.small_generators(&members);
        Ok(parent.make_subgroup(members, gens))
    }

    pub(crate) fn preimage_members(&self, q: &ElementSet) -> ElementSet {
        ElementSet::from_indices(
            self.projection.len(),
            (0..self.projection.len()).filter(|&g| q.contains(self.projection[g])),
        )
    }
}

/// Subgroups keyed by member set, for deduplication.
pub(crate) type SubgroupIndex = HashMap<ElementSet, usize>;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::generate_closure;
    use crate::perm::parse_cycles;

    fn group(specs: &[&str], n: usize) -> FiniteGroup {
        let gens: Vec<_> = specs.iter().map(|s| parse_cycles(s, n).unwrap()).collect();
        generate_closure(&gens, 512).unwrap()
    }

    fn sub(g: &FiniteGroup, specs: &[&str]) -> Subgroup {
        let perms: Vec<_> = specs
            .iter()
            .map(|s| parse_cycles(s, g.degree()).unwrap())
            .collect();
        g.subgroup_from_perms(&perms).unwrap()
    }

    fn s3() -> FiniteGroup {
        group(&["(1 2)", "(1 2 3)"], 3)
    }

    #[test]
    fn product_of_complementary_subgroups_is_everything() {
        let g = s3();
        let hk = g
            .product_set(&sub(&g, &["(1 2)"]), &sub(&g, &["(1 2 3)"]))
            .unwrap();
        assert_eq!(hk.len(), 6);
    }

    #[test]
    fn product_with_self_is_self() {
        let g = s3();
        let h = sub(&g, &["(1 2)"]);
        assert_eq!(&g.product_set(&h, &h).unwrap(), h.members());
    }

    #[test]
    fn two_transpositions_do_not_permute() {
        let g = s3();
        let (h, k) = (sub(&g, &["(1 2)"]), sub(&g, &["(1 3)"]));
        let hk = g.product_set(&h, &k).unwrap();
        assert_eq!(hk.len(), 4);
        assert!(!g.is_closed(&hk));
        assert!(!g.permutes(&h, &k).unwrap());
        assert!(g.permutes(&h, &sub(&g, &["(1 2 3)"])).unwrap());
    }

    #[test]
    fn join_and_intersect() {
        let g = s3();
        let (h, k) = (sub(&g, &["(1 2)"]), sub(&g, &["(1 3)"]));
        assert_eq!(g.join(&h, &k).unwrap(), g.whole());
        assert_eq!(g.intersect(&h, &h).unwrap(), h);
        assert_eq!(
            g.intersect(&h, &sub(&g, &["(1 2 3)"])).unwrap(),
            g.trivial_subgroup()
        );
    }

    #[test]
    fn conjugation() {
        let g = s3();
        let h = sub(&g, &["(1 2)"]);
        let x = g.index_of(&parse_cycles("(1 3)", 3).unwrap()).unwrap();
        assert_eq!(g.conjugate_subgroup(&h, x).unwrap(), sub(&g, &["(2 3)"]));
        assert_eq!(g.conjugate_subgroup(&h, 0).unwrap(), h);
        let a3 = sub(&g, &["(1 2 3)"]);
        for x in 0..6 {
            assert_eq!(g.conjugate_subgroup(&a3, x).unwrap(), a3);
        }
    }

    #[test]
    fn normalizers() {
        let g = s3();
        assert_eq!(g.normalizer(&sub(&g, &["(1 2 3)"])).unwrap(), g.whole());
        let h = sub(&g, &["(1 2)"]);
        assert_eq!(g.normalizer(&h).unwrap(), h);
        assert_eq!(g.normalizer(&g.whole()).unwrap(), g.whole());
    }

    #[test]
    fn closure_and_core() {
        let g = s3();
        let h = sub(&g, &["(1 2)"]);
        assert_eq!(g.normal_closure(&h).unwrap(), g.whole());
        assert_eq!(g.core(&h).unwrap(), g.trivial_subgroup());
        let a3 = sub(&g, &["(1 2 3)"]);
        assert_eq!(g.normal_closure(&a3).unwrap(), a3);
        assert_eq!(g.core(&a3).unwrap(), a3);
    }

    #[test]
    fn quotient_of_s4_by_v4() {
        let g = group(&["(1 2 3 4)", "(1 2)"], 4);
        let v4 = sub(&g, &["(1 2)(3 4)", "(1 3)(2 4)"]);
        let q = g.quotient(&v4).unwrap();
        assert_eq!(q.group().order(), 6);
        assert_eq!(q.group().degree(), 6);
        assert!(!q.group().is_abelian());
        for a in 0..g.order() {
            for b in 0..g.order() {
                assert_eq!(
                    q.project(g.mul(a, b)),
                    q.group().mul(q.project(a), q.project(b))
                );
            }
        }
        let h = sub(&g, &["(1 2)"]);
        let back = q.preimage(&q.image(&h).unwrap(), &g).unwrap();
        assert_eq!(
            back.members(),
            &g.product_members(h.members(), v4.members())
        );
        assert_eq!(back.order(), 8);
    }

    #[test]
    fn degenerate_quotients() {
        let g = s3();
        assert_eq!(
            g.quotient(&g.trivial_subgroup()).unwrap().group().order(),
            6
        );
        assert_eq!(g.quotient(&g.whole()).unwrap().group().order(), 1);
        assert_eq!(
            g.quotient(&sub(&g, &["(1 2)"])).unwrap_err(),
            GroupError::NotNormal
        );
    }

    #[test]
    fn parent_mismatch() {
        let g = s3();
        let other = group(&["(1 2 3 4)"], 4);
        assert_eq!(
            g.permutes(&g.whole(), &other.whole()),
            Err(GroupError::ParentMismatch)
        );
    }
}
