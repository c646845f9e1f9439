use std::collections::{BTreeSet, HashMap, VecDeque};

use fixedbitset::FixedBitSet;

use super::perm::Permutation;
use super::GroupError;

/// Default bound on the order of groups we are willing to enumerate.
pub const DEFAULT_ORDER_CAP: usize = 10_000;

/// Largest order for which a full multiplication table is cached.
const TABLE_LIMIT: usize = 1024;

/// Index of a group element in the canonical (sorted) element list.
pub type Elem = u32;

/// A finite permutation group with every element enumerated.
///
/// Elements are sorted lexicographically by image array, so the identity is
/// always element `0`.
#[derive(Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, Elem>,
    inverse: Vec<Elem>,
    table: Option<Vec<Elem>>,
}

impl PermGroup {
    /// Closure of `gens` under composition.
    pub fn generate(gens: Vec<Permutation>, degree: usize, cap: usize) -> Result<Self, GroupError> {
        for g in &gens {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch { expected: degree, found: g.degree() });
            }
        }
        let id = Permutation::identity(degree);
        let mut seen: BTreeSet<Permutation> = BTreeSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = x.compose(g);
                if !seen.contains(&y) {
                    if seen.len() >= cap {
                        return Err(GroupError::OrderCapExceeded { cap });
                    }
                    seen.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        Ok(Self::from_sorted_elements(gens, seen.into_iter().collect(), degree))
    }

    /// Builds the group from a list that is already closed and sorted.
    pub(crate) fn from_sorted_elements(generators: Vec<Permutation>, elements: Vec<Permutation>, degree: usize) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        let index: HashMap<Permutation, Elem> =
            elements.iter().enumerate().map(|(i, p)| (p.clone(), i as Elem)).collect();
        let inverse = elements.iter().map(|p| index[&p.inverse()]).collect();
        let n = elements.len();
        let table = (n <= TABLE_LIMIT).then(|| {
            let mut t = Vec::with_capacity(n * n);
            for a in &elements {
                for b in &elements {
                    t.push(index[&a.compose(b)]);
                }
            }
            t
        });
        PermGroup { degree, generators, elements, index, inverse, table }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: Elem) -> &Permutation {
        &self.elements[i as usize]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<Elem> {
        self.index.get(p).copied()
    }

    pub fn identity(&self) -> Elem {
        0
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.table {
            Some(t) => t[a as usize * self.order() + b as usize],
            None => self.index[&self.elements[a as usize].compose(&self.elements[b as usize])],
        }
    }

    pub fn inv(&self, a: Elem) -> Elem {
        self.inverse[a as usize]
    }

    /// `g h g⁻¹`.
    pub fn conj(&self, g: Elem, h: Elem) -> Elem {
        self.mul(self.mul(g, h), self.inverse[g as usize])
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order() as Elem;
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Least `k ≥ 1` with `a^k = e`.
    pub fn element_order(&self, a: Elem) -> usize {
        self.elements[a as usize].order()
    }

    /// Subgroup generated by `gens`, as a membership set over element indices.
    pub fn closure(&self, gens: &[Elem]) -> FixedBitSet {
        let mut bits = FixedBitSet::with_capacity(self.order());
        bits.insert(0);
        let mut queue = vec![0 as Elem];
        while let Some(x) = queue.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !bits.contains(y as usize) {
                    bits.insert(y as usize);
                    queue.push(y);
                }
            }
        }
        bits
    }

    /// Conjugacy classes of elements: `(representative, class size)`, with
    /// the least element of each class as representative, in increasing order.
    pub fn element_classes(&self) -> Vec<(Elem, usize)> {
        let n = self.order();
        let mut seen = FixedBitSet::with_capacity(n);
        let mut out = Vec::new();
        for h in 0..n as Elem {
            if seen.contains(h as usize) {
                continue;
            }
            let mut size = 0;
            for g in 0..n as Elem {
                let c = self.conj(g, h) as usize;
                if !seen.contains(c) {
                    seen.insert(c);
                    size += 1;
                }
            }
            out.push((h, size));
        }
        out
    }

    /// A deterministic small generating set: scan elements in canonical order,
    /// keeping each one not already generated.
    pub fn greedy_generators(&self, members: &[Elem]) -> Vec<Elem> {
        let mut gens = Vec::new();
        let mut current = self.closure(&gens);
        for &m in members {
            if !current.contains(m as usize) {
                gens.push(m);
                current = self.closure(&gens);
            }
        }
        gens
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(n: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(n, s).unwrap()
    }

    #[test]
    fn trivial_group() {
        let g = PermGroup::generate(vec![], 3, DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(g.order(), 1);
        assert!(g.element(0).is_identity());
    }

    #[test]
    fn symmetric_group_s4() {
        let g = PermGroup::generate(vec![perm(4, "(0 1)"), perm(4, "(0 1 2 3)")], 4, DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(g.order(), 24);
        assert_eq!(24 % g.order(), 0);
    }

    #[test]
    fn alternating_group_a4_by_closure_oracle() {
        // Independent oracle: brute-force the even permutations of 4 points.
        let even = (0..4u32)
            .flat_map(|a| (0..4u32).flat_map(move |b| (0..4u32).flat_map(move |c| (0..4u32).map(move |d| vec![a, b, c, d]))))
            .filter_map(|v| Permutation::from_images(v).ok())
            .filter(|p| p.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0)
            .count();
        let g = PermGroup::generate(vec![perm(4, "(0 1 2)"), perm(4, "(0 1)(2 3)")], 4, DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(g.order(), even);
        assert_eq!(g.order(), 12);
    }

    #[test]
    fn cap_and_degree_errors() {
        let err = PermGroup::generate(vec![perm(4, "(0 1)"), perm(4, "(0 1 2 3)")], 4, 10).unwrap_err();
        assert_eq!(err, GroupError::OrderCapExceeded { cap: 10 });
        let err = PermGroup::generate(vec![perm(3, "(0 1)")], 4, 100).unwrap_err();
        assert!(matches!(err, GroupError::DegreeMismatch { .. }));
    }

    #[test]
    fn closure_is_a_group() {
        let g = PermGroup::generate(vec![perm(4, "(0 1)"), perm(4, "(0 1 2 3)")], 4, DEFAULT_ORDER_CAP).unwrap();
        for a in 0..24 {
            assert_eq!(g.mul(a, g.inv(a)), 0);
            assert_eq!(g.element(g.mul(a, 5)), &g.element(a).compose(g.element(5)));
        }
    }

    #[test]
    fn s4_element_classes() {
        let g = PermGroup::generate(vec![perm(4, "(0 1)"), perm(4, "(0 1 2 3)")], 4, DEFAULT_ORDER_CAP).unwrap();
        let mut sizes: Vec<usize> = g.element_classes().iter().map(|c| c.1).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 3, 6, 6, 8]);
        assert_eq!(sizes.iter().sum::<usize>(), 24);
    }
}
