//! Fully enumerated finite permutation groups.

use std::collections::HashMap;

use crate::bitset::ElementSet;
use crate::error::GroupError;
use crate::perm::Permutation;

/// Default ceiling on group order for closure.
pub const DEFAULT_ORDER_CAP: usize = 512;

/// Ceiling on the degree of user-supplied generators.
pub const DEGREE_CAP: usize = 64;

/// A finite group with its full element table.
///
/// Elements are ordered canonically: lexicographically by image array, which
/// puts the identity at index 0. Multiplication follows the left-to-right
/// convention of [`Permutation::compose`].
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    degree: usize,
    elements: Vec<Permutation>,
    generators: Vec<usize>,
    mul: Vec<u32>,
    inv: Vec<u32>,
    lookup: HashMap<Permutation, u32>,
    fingerprint: u64,
}

/// Smallest group containing `gens`, aborting once more than `order_cap` elements appear.
pub fn generate_closure(gens: &[Permutation], order_cap: usize) -> Result<FiniteGroup, GroupError> {
    let first = gens.first().ok_or(GroupError::NoGenerators)?;
    let degree = first.degree();
    if let Some(bad) = gens.iter().find(|g| g.degree() != degree) {
        return Err(GroupError::DegreeMismatch {
            left: degree,
            right: bad.degree(),
        });
    }

    // Breadth-first closure; each non-identity element remembers (parent, generator)
    // so that it equals elements[parent] * gens[generator].
    let mut elements = vec![Permutation::identity(degree)];
    let mut words: Vec<(usize, usize)> = vec![(0, 0)];
    let mut seen: HashMap<Permutation, usize> = HashMap::new();
    seen.insert(elements[0].clone(), 0);
    let mut i = 0;
    while i < elements.len() {
        for (j, g) in gens.iter().enumerate() {
            let next = elements[i].compose_unchecked(g);
            if !seen.contains_key(&next) {
                if elements.len() >= order_cap {
                    return Err(GroupError::OrderCapExceeded {
                        cap: order_cap,
                        partial: elements.len() + 1,
                    });
                }
                seen.insert(next.clone(), elements.len());
                elements.push(next);
                words.push((i, j));
            }
        }
        i += 1;
    }

    let n = elements.len();
    let k = gens.len();
    // Right multiplication by each generator, in breadth-first indices.
    let mut by_gen = vec![0u32; n * k];
    for a in 0..n {
        for (j, g) in gens.iter().enumerate() {
            by_gen[a * k + j] = seen[&elements[a].compose_unchecked(g)] as u32;
        }
    }
    let mut bfs_mul = vec![0u32; n * n];
    for a in 0..n {
        bfs_mul[a * n] = a as u32;
        for b in 1..n {
            let (parent, gen) = words[b];
            let ap = bfs_mul[a * n + parent] as usize;
            bfs_mul[a * n + b] = by_gen[ap * k + gen];
        }
    }

    let gen_bfs: Vec<usize> = gens.iter().map(|g| seen[g]).collect();
    Ok(FiniteGroup::from_table(
        degree, elements, &bfs_mul, &gen_bfs,
    ))
}

impl FiniteGroup {
    /// Builds a group from an element list and a multiplication table in the
    /// list's own indexing, reordering everything canonically.
    pub(crate) fn from_table(
        degree: usize,
        elements: Vec<Permutation>,
        table: &[u32],
        generators: &[usize],
    ) -> FiniteGroup {
        let n = elements.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| elements[a].cmp(&elements[b]));
        let mut rank = vec![0usize; n];
        for (new, &old) in order.iter().enumerate() {
            rank[old] = new;
        }
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[rank[a] * n + rank[b]] = rank[table[a * n + b] as usize] as u32;
            }
        }
        let mut inv = vec![0u32; n];
        for a in 0..n {
            let row = &mul[a * n..(a + 1) * n];
            inv[a] = row
                .iter()
                .position(|&c| c == 0)
                .expect("group table has inverses") as u32;
        }
        let mut elements_sorted: Vec<Permutation> = Vec::with_capacity(n);
        let mut slots: Vec<Option<Permutation>> = elements.into_iter().map(Some).collect();
        for &old in &order {
            elements_sorted.push(slots[old].take().unwrap());
        }
        let mut gens: Vec<usize> = Vec::new();
        for &g in generators {
            let r = rank[g];
            if !gens.contains(&r) {
                gens.push(r);
            }
        }
        let lookup = elements_sorted
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as u32))
            .collect();
        let fingerprint = content_hash(degree, &elements_sorted);
        FiniteGroup {
            degree,
            elements: elements_sorted,
            generators: gens,
            mul,
            inv,
            lookup,
            fingerprint,
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.elements.len() + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `x⁻¹ h x`.
    #[inline]
    pub fn conjugate(&self, h: usize, x: usize) -> usize {
        self.mul(self.mul(self.inv(x), h), x)
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.lookup.get(p).map(|&i| i as usize)
    }

    /// Content hash of the element table, stable across runs and platforms.
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn check_index(&self, g: usize) -> Result<(), GroupError> {
        if g < self.order() {
            Ok(())
        } else {
            Err(GroupError::ElementOutOfRange(g))
        }
    }

    pub fn element_order(&self, g: usize) -> Result<usize, GroupError> {
        self.check_index(g)?;
        let mut k = 1;
        let mut x = g;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        Ok(k)
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().all(|&a| {
            self.generators
                .iter()
                .all(|&b| self.mul(a, b) == self.mul(b, a))
        })
    }

    pub fn all(&self) -> ElementSet {
        ElementSet::full(self.order())
    }

    /// Subgroup generated by `gens`, as a member set.
    pub fn closure(&self, gens: &[usize]) -> ElementSet {
        let mut set = ElementSet::empty(self.order());
        set.insert(0);
        let mut queue = vec![0usize];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    queue.push(y);
                }
            }
            i += 1;
        }
        set
    }

    /// Extends the subgroup `base` to the group generated by `gens` (which must
    /// include generators of `base`), adding whole right cosets `base·t` at a time.
    pub fn extend_closure(&self, base: &ElementSet, gens: &[usize]) -> ElementSet {
        let base_elems: Vec<usize> = base.iter().collect();
        let mut set = base.clone();
        let mut reps = vec![0usize];
        let mut i = 0;
        while i < reps.len() {
            let r = reps[i];
            for &s in gens {
                let t = self.mul(r, s);
                if !set.contains(t) {
                    for &b in &base_elems {
                        set.insert(self.mul(b, t));
                    }
                    reps.push(t);
                }
            }
            i += 1;
        }
        set
    }

    /// A small generating set for the subgroup `members`, chosen greedily in element order.
    pub fn small_generators(&self, members: &ElementSet) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut current = ElementSet::from_indices(self.order(), [0]);
        for m in members.iter() {
            if !current.contains(m) {
                gens.push(m);
                current = self.extend_closure(&current, &gens);
            }
        }
        gens
    }

    /// Whether `set` is closed under multiplication and contains the identity.
    pub fn is_closed(&self, set: &ElementSet) -> bool {
        if !set.contains(0) {
            return false;
        }
        let elems: Vec<usize> = set.iter().collect();
        elems
            .iter()
            .all(|&a| elems.iter().all(|&b| set.contains(self.mul(a, b))))
    }

    /// Group formed by the given member set, as a standalone group on the same points.
    pub fn subgroup_as_group(&self, members: &ElementSet) -> FiniteGroup {
        let idx: Vec<usize> = members.iter().collect();
        let m = idx.len();
        let mut local = vec![usize::MAX; self.order()];
        for (i, &g) in idx.iter().enumerate() {
            local[g] = i;
        }
        let mut table = vec![0u32; m * m];
        for (i, &a) in idx.iter().enumerate() {
            for (j, &b) in idx.iter().enumerate() {
                table[i * m + j] = local[self.mul(a, b)] as u32;
            }
        }
        let elements = idx.iter().map(|&g| self.elements[g].clone()).collect();
        let gens: Vec<usize> = self
            .small_generators(members)
            .into_iter()
            .map(|g| local[g])
            .collect();
        FiniteGroup::from_table(self.degree, elements, &table, &gens)
    }

    /// Closure of all commutators `a⁻¹b⁻¹ab` with `a, b` in `members`.
    pub fn derived_subgroup(&self, members: &ElementSet) -> ElementSet {
        let elems: Vec<usize> = members.iter().collect();
        let mut comms = ElementSet::empty(self.order());
        for &a in &elems {
            for &b in &elems {
                let c = self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b));
                comms.insert(c);
            }
        }
        let gens: Vec<usize> = comms.iter().filter(|&c| c != 0).collect();
        self.closure(&gens)
    }

    pub fn is_soluble(&self) -> bool {
        let mut current = self.all();
        loop {
            if current.len() == 1 {
                return true;
            }
            let next = self.derived_subgroup(&current);
            if next.len() == current.len() {
                return false;
            }
            current = next;
        }
    }
}

/// FNV-1a over the degree and every element's image array.
fn content_hash(degree: usize, elements: &[Permutation]) -> u64 {
    const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
    const PRIME: u64 = 0x0000_0100_0000_01b3;
    let mut h = OFFSET;
    let mut feed = |byte: u8| {
        h ^= byte as u64;
        h = h.wrapping_mul(PRIME);
    };
    for b in (degree as u64).to_le_bytes() {
        feed(b);
    }
    for e in elements {
        for &x in e.raw() {
            for b in x.to_le_bytes() {
                feed(b);
            }
        }
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::parse_cycles;

    fn gens(specs: &[&str], n: usize) -> Vec<Permutation> {
        specs.iter().map(|s| parse_cycles(s, n).unwrap()).collect()
    }

    fn naive_closure_order(gens: &[Permutation]) -> usize {
        let mut set = std::collections::BTreeSet::new();
        set.insert(Permutation::identity(gens[0].degree()));
        loop {
            let snapshot: Vec<_> = set.iter().cloned().collect();
            let before = set.len();
            for a in &snapshot {
                for g in gens {
                    set.insert(a.compose(g).unwrap());
                }
            }
            if set.len() == before {
                return set.len();
            }
        }
    }

    #[test]
    fn sym3_has_order_six() {
        let g = generate_closure(&gens(&["(1 2)", "(1 2 3)"], 3), 512).unwrap();
        assert_eq!(g.order(), 6);
        assert!(g.element(0).is_identity());
    }

    #[test]
    fn trivial_group() {
        let g = generate_closure(&[Permutation::identity(3)], 512).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.element_order(0).unwrap(), 1);
    }

    #[test]
    fn alt5_matches_naive_closure() {
        let gs = gens(&["(1 2 3 4 5)", "(1 2 3)"], 5);
        let g = generate_closure(&gs, 512).unwrap();
        assert_eq!(g.order(), naive_closure_order(&gs));
        assert_eq!(g.order(), 60);
    }

    #[test]
    fn elements_are_canonically_ordered() {
        let g = generate_closure(&gens(&["(1 2 3 4)", "(1 2)"], 4), 512).unwrap();
        assert!(g.elements().windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn table_agrees_with_composition() {
        let g = generate_closure(&gens(&["(1 2 3 4)", "(1 2)"], 4), 512).unwrap();
        for a in 0..g.order() {
            for b in 0..g.order() {
                let ab = g.element(a).compose(g.element(b)).unwrap();
                assert_eq!(g.element(g.mul(a, b)), &ab);
            }
            assert!(g.element(g.inv(a)) == &g.element(a).inverse());
        }
    }

    #[test]
    fn element_orders() {
        let g = generate_closure(&gens(&["(1 2 3 4 5)", "(1 2)"], 5), 512).unwrap();
        let find = |s: &str| g.index_of(&parse_cycles(s, 5).unwrap()).unwrap();
        assert_eq!(g.element_order(0).unwrap(), 1);
        assert_eq!(g.element_order(find("(1 2 3)")).unwrap(), 3);
        assert_eq!(g.element_order(find("(1 2)(3 4 5)")).unwrap(), 6);
        assert!(g.element_order(999).is_err());
    }

    #[test]
    fn order_cap_aborts() {
        let err = generate_closure(&gens(&["(1 2 3 4 5)", "(1 2)"], 5), 100).unwrap_err();
        assert!(matches!(err, GroupError::OrderCapExceeded { cap: 100, partial } if partial > 100));
    }

    #[test]
    fn degree_mismatch_and_empty() {
        assert_eq!(
            generate_closure(&[], 10).unwrap_err(),
            GroupError::NoGenerators
        );
        let mixed = vec![
            parse_cycles("(1 2)", 2).unwrap(),
            parse_cycles("(1 2)", 3).unwrap(),
        ];
        assert!(matches!(
            generate_closure(&mixed, 10),
            Err(GroupError::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn regeneration_is_idempotent() {
        let g = generate_closure(&gens(&["(1 2 3 4)", "(1 3)"], 4), 512).unwrap();
        let again = generate_closure(g.elements(), 512).unwrap();
        assert_eq!(again.order(), g.order());
        assert_eq!(again.elements(), g.elements());
        assert_eq!(again.fingerprint(), g.fingerprint());
    }

    #[test]
    fn extend_closure_matches_bfs_closure() {
        let g = generate_closure(&gens(&["(1 2 3 4 5)", "(1 2)"], 5), 512).unwrap();
        let a = g.index_of(&parse_cycles("(1 2 3)", 5).unwrap()).unwrap();
        let b = g.index_of(&parse_cycles("(3 4)", 5).unwrap()).unwrap();
        let base = g.closure(&[a]);
        assert_eq!(g.extend_closure(&base, &[a, b]), g.closure(&[a, b]));
        assert_eq!(g.closure(&[a, b]).len(), 24);
    }

    #[test]
    fn solubility() {
        let s4 = generate_closure(&gens(&["(1 2 3 4)", "(1 2)"], 4), 512).unwrap();
        let a5 = generate_closure(&gens(&["(1 2 3 4 5)", "(1 2 3)"], 5), 512).unwrap();
        assert!(s4.is_soluble());
        assert!(!a5.is_soluble());
    }
}
