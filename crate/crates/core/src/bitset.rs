use std::cmp::Ordering;

/// Fixed-universe bitset over element indices of one group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ElementSet {
    words: Vec<u64>,
}

impl ElementSet {
    pub fn empty(universe: usize) -> Self {
        ElementSet {
            words: vec![0; universe.div_ceil(64)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        for i in 0..universe {
            s.insert(i);
        }
        s
    }

    pub fn from_indices(universe: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(universe);
        for i in indices {
            s.insert(i);
        }
        s
    }

    #[inline]
    pub fn insert(&mut self, i: usize) -> bool {
        let (w, b) = (i / 64, 1u64 << (i % 64));
        let fresh = self.words[w] & b == 0;
        self.words[w] |= b;
        fresh
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.words
            .get(i / 64)
            .is_some_and(|w| w & (1u64 << (i % 64)) != 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn universe_words(&self) -> usize {
        self.words.len()
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        ElementSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        ElementSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a | b)
                .collect(),
        }
    }

    pub fn intersect_with(&mut self, other: &ElementSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }

    /// Lexicographic comparison of the ascending member lists.
    pub fn cmp_members(&self, other: &ElementSet) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn basic_ops() {
        let mut s = ElementSet::empty(130);
        assert!(s.insert(0));
        assert!(s.insert(129));
        assert!(!s.insert(129));
        assert_eq!(s.len(), 2);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 129]);
        assert!(!s.contains(64));
        assert!(s.is_subset(&ElementSet::full(130)));
    }

    #[test]
    fn member_order_is_lexicographic() {
        let a = ElementSet::from_indices(10, [0, 1, 5]);
        let b = ElementSet::from_indices(10, [0, 2]);
        assert_eq!(a.cmp_members(&b), Ordering::Less);
    }

    proptest! {
        #[test]
        fn set_algebra_matches_btreeset(xs in proptest::collection::btree_set(0usize..200, 0..40),
                                        ys in proptest::collection::btree_set(0usize..200, 0..40)) {
            let a = ElementSet::from_indices(200, xs.iter().copied());
            let b = ElementSet::from_indices(200, ys.iter().copied());
            let inter: Vec<_> = xs.intersection(&ys).copied().collect();
            let uni: Vec<_> = xs.union(&ys).copied().collect();
            prop_assert_eq!(a.intersection(&b).iter().collect::<Vec<_>>(), inter);
            prop_assert_eq!(a.union(&b).iter().collect::<Vec<_>>(), uni);
            prop_assert_eq!(a.is_subset(&b), xs.is_subset(&ys));
            prop_assert_eq!(a.len(), xs.len());
        }
    }
}
