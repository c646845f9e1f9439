use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use super::group::{Elem, PermGroup};
use super::GroupError;

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// A subgroup of a parent group, held as a sorted list of element indices.
///
/// Because parent elements are sorted by image array, the sorted index list
/// orders subgroups exactly like their sorted lists of image arrays.
#[derive(Clone)]
pub struct Subgroup {
    group: Arc<PermGroup>,
    elems: Vec<Elem>,
    bits: FixedBitSet,
}

impl Subgroup {
    pub fn from_bits(group: Arc<PermGroup>, bits: FixedBitSet) -> Self {
        let elems = bits.ones().map(|i| i as Elem).collect();
        Subgroup { group, elems, bits }
    }

    /// The subgroup generated by the given elements.
    pub fn generated(group: &Arc<PermGroup>, gens: &[Elem]) -> Self {
        Self::from_bits(group.clone(), group.closure(gens))
    }

    /// Checks closure before wrapping an arbitrary element set.
    pub fn from_elements(group: &Arc<PermGroup>, elems: &[Elem]) -> Result<Self, GroupError> {
        let mut bits = FixedBitSet::with_capacity(group.order());
        for &e in elems {
            if e as usize >= group.order() {
                return Err(GroupError::NotSubgroup);
            }
            bits.insert(e as usize);
        }
        let closed = bits.contains(0) && bits.ones().all(|a| bits.ones().all(|b| bits.contains(group.mul(a as Elem, b as Elem) as usize)));
        if !closed {
            return Err(GroupError::NotSubgroup);
        }
        Ok(Self::from_bits(group.clone(), bits))
    }

    pub fn whole(group: &Arc<PermGroup>) -> Self {
        let mut bits = FixedBitSet::with_capacity(group.order());
        bits.insert_range(..);
        Self::from_bits(group.clone(), bits)
    }

    pub fn trivial(group: &Arc<PermGroup>) -> Self {
        Self::generated(group, &[])
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elems
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.bits
    }

    /// The canonical key: the sorted element list.
    pub fn key(&self) -> &[Elem] {
        &self.elems
    }

    pub fn contains(&self, g: Elem) -> bool {
        self.bits.contains(g as usize)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.order() <= other.order() && self.bits.is_subset(&other.bits)
    }

    pub fn index_in(&self, other: &Subgroup) -> usize {
        other.order() / self.order()
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        Self::from_bits(self.group.clone(), bits)
    }

    /// `g H g⁻¹`.
    pub fn conjugate(&self, g: Elem) -> Subgroup {
        let mut bits = FixedBitSet::with_capacity(self.group.order());
        for &h in &self.elems {
            bits.insert(self.group.conj(g, h) as usize);
        }
        Self::from_bits(self.group.clone(), bits)
    }

    pub fn is_cyclic(&self) -> bool {
        self.elems.iter().any(|&h| self.group.element_order(h) == self.order())
    }

    pub fn is_p_group(&self, p: u64) -> bool {
        let mut n = self.order() as u64;
        while n.is_multiple_of(p) {
            n /= p;
        }
        n == 1
    }

    pub fn is_normal_in(&self, other: &Subgroup) -> bool {
        other.elems.iter().all(|&g| self.elems.iter().all(|&h| self.contains(self.group.conj(g, h))))
    }

    /// Whether `self / n` is cyclic for a normal subgroup `n`: some coset `hN`
    /// must have order `|self : n|`.
    pub fn quotient_is_cyclic(&self, n: &Subgroup) -> bool {
        let index = self.order() / n.order();
        self.elems.iter().any(|&h| {
            let mut x = h;
            let mut k = 1;
            while !n.contains(x) {
                x = self.group.mul(x, h);
                k += 1;
            }
            k == index
        })
    }

    pub fn centralizer(&self) -> Subgroup {
        let g = &self.group;
        let mut bits = FixedBitSet::with_capacity(g.order());
        for x in 0..g.order() as Elem {
            if self.elems.iter().all(|&h| g.mul(x, h) == g.mul(h, x)) {
                bits.insert(x as usize);
            }
        }
        Self::from_bits(g.clone(), bits)
    }

    pub fn normalizer(&self) -> Subgroup {
        let g = &self.group;
        let mut bits = FixedBitSet::with_capacity(g.order());
        for x in 0..g.order() as Elem {
            if self.elems.iter().all(|&h| self.contains(g.conj(x, h))) {
                bits.insert(x as usize);
            }
        }
        Self::from_bits(g.clone(), bits)
    }

    /// Number of cosets `xH` fixed by `g`, i.e. `|{x : x⁻¹gx ∈ H}| / |H|`.
    pub fn fixed_points(&self, g: Elem) -> usize {
        let grp = &self.group;
        let hits = (0..grp.order() as Elem).filter(|&x| self.contains(grp.conj(grp.inv(x), g))).count();
        hits / self.order()
    }

    /// Greedy generators in canonical element order.
    pub fn generators(&self) -> Vec<Elem> {
        self.group.greedy_generators(&self.elems)
    }

    /// This subgroup as a permutation group in its own right.
    pub fn to_group(&self) -> PermGroup {
        let gens = self.generators().iter().map(|&g| self.group.element(g).clone()).collect();
        let elems = self.elems.iter().map(|&g| self.group.element(g).clone()).collect();
        PermGroup::from_sorted_elements(gens, elems, self.group.degree())
    }

    /// The same set of permutations as a subgroup of `target`, if every element lies there.
    pub fn transport(&self, target: &Arc<PermGroup>) -> Option<Subgroup> {
        if Arc::ptr_eq(&self.group, target) {
            return Some(self.clone());
        }
        let mut bits = FixedBitSet::with_capacity(target.order());
        for &e in &self.elems {
            bits.insert(target.index_of(self.group.element(e))? as usize);
        }
        Some(Self::from_bits(target.clone(), bits))
    }

    /// Human-readable label built from the greedy generators, e.g. `<(0 1),(2 3)>`.
    pub fn label(&self) -> String {
        let gens: Vec<String> = self.generators().iter().map(|&g| self.group.element(g).to_string()).collect();
        format!("<{}>", gens.join(","))
    }

    /// The largest normal `p`-subgroup, computed standalone as the
    /// intersection of the Sylow `p`-subgroups found in this subgroup's own
    /// lattice.
    pub fn p_core(&self, p: u64) -> Result<Subgroup, GroupError> {
        if !is_prime(p) {
            return Err(GroupError::NotPrime(p));
        }
        let own = Arc::new(self.to_group());
        let lattice = SubgroupLattice::new(own.clone());
        let core = lattice.p_core(&Subgroup::whole(&own), p)?;
        let elems: Vec<Elem> = core.elems.iter().map(|&e| self.group.index_of(own.element(e)).expect("element of parent")).collect();
        Subgroup::from_elements(&self.group, &elems)
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group) && self.elems == other.elems
    }
}

impl Eq for Subgroup {}

impl std::hash::Hash for Subgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.elems.hash(state)
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Order first, then canonical key.
impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order().cmp(&other.order()).then_with(|| self.elems.cmp(&other.elems))
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.label(), self.order())
    }
}

/// One conjugacy class of subgroups, as indices into the lattice's subgroup list.
#[derive(Clone, Debug)]
pub struct SubgroupClass {
    pub members: Vec<usize>,
    pub normalizer_order: usize,
}

impl SubgroupClass {
    /// The member with the least canonical key.
    pub fn representative(&self) -> usize {
        self.members[0]
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// All subgroups of a group, sorted by (order, key), with their conjugacy classes.
pub struct SubgroupLattice {
    group: Arc<PermGroup>,
    subgroups: Vec<Subgroup>,
    index: HashMap<FixedBitSet, usize>,
    classes: Vec<SubgroupClass>,
    class_of: Vec<usize>,
}

impl SubgroupLattice {
    pub fn new(group: Arc<PermGroup>) -> Self {
        let subgroups = all_subgroups(&group);
        let index: HashMap<FixedBitSet, usize> = subgroups.iter().enumerate().map(|(i, s)| (s.bits.clone(), i)).collect();
        let mut class_of = vec![usize::MAX; subgroups.len()];
        let mut classes = Vec::new();
        for i in 0..subgroups.len() {
            if class_of[i] != usize::MAX {
                continue;
            }
            let c = classes.len();
            let mut members = Vec::new();
            for g in 0..group.order() as Elem {
                let j = index[&subgroups[i].conjugate(g).bits];
                if class_of[j] == usize::MAX {
                    class_of[j] = c;
                    members.push(j);
                }
            }
            members.sort();
            let normalizer_order = group.order() / members.len();
            classes.push(SubgroupClass { members, normalizer_order });
        }
        SubgroupLattice { group, subgroups, index, classes, class_of }
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn subgroup(&self, i: usize) -> &Subgroup {
        &self.subgroups[i]
    }

    pub fn classes(&self) -> &[SubgroupClass] {
        &self.classes
    }

    pub fn class(&self, c: usize) -> &SubgroupClass {
        &self.classes[c]
    }

    /// Representative subgroup of class `c`.
    pub fn class_rep(&self, c: usize) -> &Subgroup {
        &self.subgroups[self.classes[c].representative()]
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    pub fn index_of(&self, h: &Subgroup) -> Option<usize> {
        self.index.get(&h.bits).copied()
    }

    /// Class index of an arbitrary subgroup of this group.
    pub fn class_of_subgroup(&self, h: &Subgroup) -> Result<usize, GroupError> {
        self.index_of(h).map(|i| self.class_of[i]).ok_or(GroupError::NotSubgroup)
    }

    /// Lattice subgroup with the given element set, after checking it belongs here.
    pub fn lookup(&self, h: &Subgroup) -> Result<usize, GroupError> {
        if h.group.order() != self.group.order() || h.bits.len() != self.group.order() {
            return Err(GroupError::NotSubgroup);
        }
        self.index_of(h).ok_or(GroupError::NotSubgroup)
    }

    /// `|(G/H)^K| = #{conjugates of H containing K} · |N_G(H)| / |H|`, for class indices.
    pub fn mark(&self, h: usize, k: usize) -> usize {
        let class = &self.classes[h];
        let kk = self.class_rep(k);
        let hh = self.class_rep(h);
        if kk.order() > hh.order() || !hh.order().is_multiple_of(kk.order()) {
            return 0;
        }
        let containing = class.members.iter().filter(|&&m| kk.is_subgroup_of(&self.subgroups[m])).count();
        containing * class.normalizer_order / hh.order()
    }

    /// Subgroups contained in `h`, as lattice indices.
    pub fn subgroups_of(&self, h: &Subgroup) -> Vec<usize> {
        (0..self.subgroups.len()).filter(|&i| self.subgroups[i].is_subgroup_of(h)).collect()
    }

    /// The largest normal `p`-subgroup of `h`, as the intersection of the
    /// Sylow `p`-subgroups of `h` among this lattice's subgroups.
    pub fn p_core(&self, h: &Subgroup, p: u64) -> Result<Subgroup, GroupError> {
        if !is_prime(p) {
            return Err(GroupError::NotPrime(p));
        }
        let mut sylow_order = 1;
        while (h.order() / sylow_order).is_multiple_of(p as usize) {
            sylow_order *= p as usize;
        }
        let mut core = h.clone();
        for i in self.subgroups_of(h) {
            let s = &self.subgroups[i];
            if s.order() == sylow_order {
                core = core.intersection(s);
            }
        }
        Ok(core)
    }
}

/// Every subgroup exactly once, sorted by (order, key).
///
/// Starts from the cyclic subgroups and repeatedly joins each new subgroup
/// with one generator of every cyclic subgroup until nothing new appears.
pub fn all_subgroups(group: &Arc<PermGroup>) -> Vec<Subgroup> {
    let mut seen: HashMap<FixedBitSet, Vec<Elem>> = HashMap::new();
    let mut cyclic_gens = Vec::new();
    for g in 0..group.order() as Elem {
        let bits = group.closure(&[g]);
        if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(bits) {
            e.insert(vec![g]);
            cyclic_gens.push(g);
        }
    }
    let mut frontier: Vec<(FixedBitSet, Vec<Elem>)> = seen.iter().map(|(b, g)| (b.clone(), g.clone())).collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (bits, gens) in &frontier {
            for &c in &cyclic_gens {
                if bits.contains(c as usize) {
                    continue;
                }
                let mut joined = gens.clone();
                joined.push(c);
                let closure = group.closure(&joined);
                if !seen.contains_key(&closure) {
                    seen.insert(closure.clone(), joined.clone());
                    next.push((closure, joined));
                }
            }
        }
        frontier = next;
    }
    let mut subgroups: Vec<Subgroup> = seen.into_keys().map(|b| Subgroup::from_bits(group.clone(), b)).collect();
    subgroups.sort();
    subgroups
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::{named_group, Permutation, DEFAULT_ORDER_CAP};
    use std::collections::HashSet;

    fn grp(s: &str) -> Arc<PermGroup> {
        Arc::new(named_group(s, DEFAULT_ORDER_CAP).unwrap())
    }

    fn elem(g: &PermGroup, s: &str) -> Elem {
        g.index_of(&Permutation::parse_cycles(g.degree(), s).unwrap()).unwrap()
    }

    /// Independent oracle: closures of every subset with at most two generators.
    fn two_generated(g: &Arc<PermGroup>) -> HashSet<Vec<Elem>> {
        let n = g.order() as Elem;
        let mut out = HashSet::new();
        for a in 0..n {
            for b in a..n {
                out.insert(g.closure(&[a, b]).ones().map(|x| x as Elem).collect());
            }
        }
        out
    }

    #[test]
    fn s4_lattice() {
        let g = grp("S4");
        let lat = SubgroupLattice::new(g.clone());
        assert_eq!(lat.subgroups().len(), 30);
        assert_eq!(lat.classes().len(), 11);
        let oracle = two_generated(&g);
        let ours: HashSet<Vec<Elem>> = lat.subgroups().iter().map(|s| s.elements().to_vec()).collect();
        assert_eq!(ours, oracle);
        let total: usize = lat.classes().iter().map(|c| c.size()).sum();
        assert_eq!(total, 30);
    }

    #[test]
    fn small_lattices() {
        let v4 = SubgroupLattice::new(grp("V4"));
        assert_eq!(v4.subgroups().len(), 5);
        assert_eq!(v4.classes().len(), 5);
        let a4 = SubgroupLattice::new(grp("A4"));
        let orders: Vec<usize> = a4.classes().iter().map(|c| a4.subgroup(c.representative()).order()).collect();
        assert_eq!(orders, vec![1, 2, 3, 4, 12]);
        for p in [2, 3, 5, 7] {
            assert_eq!(SubgroupLattice::new(grp(&format!("C{p}"))).subgroups().len(), 2);
        }
        let c12 = SubgroupLattice::new(grp("C12"));
        assert_eq!(c12.subgroups().len(), 6);
        assert_eq!(c12.classes().len(), 6);
    }

    #[test]
    fn lattice_matches_two_generated_oracle_on_groups_where_it_is_complete() {
        // every subgroup of these groups is at most 2-generated
        for name in ["D8", "Q8", "D12", "A4", "C6", "D10", "S3"] {
            let g = grp(name);
            let lat = SubgroupLattice::new(g.clone());
            let ours: HashSet<Vec<Elem>> = lat.subgroups().iter().map(|s| s.elements().to_vec()).collect();
            assert_eq!(ours, two_generated(&g), "{name}");
        }
    }

    #[test]
    fn subgroups_sorted_and_lagrange() {
        let g = grp("S4");
        let lat = SubgroupLattice::new(g.clone());
        assert!(lat.subgroups().windows(2).all(|w| w[0] < w[1]));
        assert!(lat.subgroups().iter().all(|s| g.order().is_multiple_of(s.order())));
        for c in lat.classes() {
            assert_eq!(c.representative(), *c.members.iter().min().unwrap());
        }
    }

    #[test]
    fn centralizers_and_normalizers_in_s4() {
        let g = grp("S4");
        let t = Subgroup::generated(&g, &[elem(&g, "(0 1)")]);
        let c = t.centralizer();
        assert_eq!(c, Subgroup::generated(&g, &[elem(&g, "(0 1)"), elem(&g, "(2 3)")]));
        let dt = Subgroup::generated(&g, &[elem(&g, "(0 1)(2 3)")]);
        let d8 = Subgroup::generated(&g, &[elem(&g, "(0 1)"), elem(&g, "(0 2 1 3)")]);
        assert_eq!(d8.order(), 8);
        assert_eq!(dt.centralizer(), d8);
        assert_eq!(Subgroup::trivial(&g).centralizer().order(), 24);
        let c3 = Subgroup::generated(&g, &[elem(&g, "(0 1 2)")]);
        assert_eq!(c3.normalizer().order(), 6);
        assert_eq!(Subgroup::whole(&g).normalizer().order(), 24);
        let lat = SubgroupLattice::new(g.clone());
        for s in lat.subgroups() {
            assert!(s.centralizer().is_subgroup_of(&s.normalizer()));
            assert!(s.is_subgroup_of(&s.normalizer()));
        }
    }

    #[test]
    fn p_cores_of_s4() {
        let g = grp("S4");
        let lat = SubgroupLattice::new(g.clone());
        let whole = Subgroup::whole(&g);
        let v = lat.p_core(&whole, 2).unwrap();
        let klein: Vec<Elem> = ["()", "(0 1)(2 3)", "(0 2)(1 3)", "(0 3)(1 2)"].iter().map(|s| elem(&g, s)).collect::<std::collections::BTreeSet<_>>().into_iter().collect();
        assert_eq!(v.elements(), &klein[..]);
        assert_eq!(lat.p_core(&whole, 3).unwrap().order(), 1);
        let d8 = Subgroup::generated(&g, &[elem(&g, "(0 1)"), elem(&g, "(0 2 1 3)")]);
        assert_eq!(lat.p_core(&d8, 2).unwrap(), d8);
        assert_eq!(whole.p_core(2).unwrap(), v);
        assert_eq!(lat.p_core(&whole, 4).unwrap_err(), GroupError::NotPrime(4));
    }

    #[test]
    fn p_core_is_the_largest_normal_p_subgroup() {
        for name in ["S4", "D12", "A4", "Q8", "S3", "D8"] {
            let g = grp(name);
            let lat = SubgroupLattice::new(g.clone());
            for h in lat.subgroups() {
                for p in [2, 3] {
                    let core = lat.p_core(h, p).unwrap();
                    assert!(core.is_p_group(p) && core.is_normal_in(h));
                    for i in lat.subgroups_of(h) {
                        let n = lat.subgroup(i);
                        if n.is_p_group(p) && n.is_normal_in(h) {
                            assert!(n.is_subgroup_of(&core));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn cyclicity() {
        let g = grp("S4");
        assert!(Subgroup::trivial(&g).is_cyclic());
        assert!(Subgroup::generated(&g, &[elem(&g, "(0 1 2 3)")]).is_cyclic());
        assert!(!Subgroup::generated(&g, &[elem(&g, "(0 1)"), elem(&g, "(2 3)")]).is_cyclic());
    }

    #[test]
    fn fixed_points_on_cosets() {
        let g = grp("S4");
        let d8 = Subgroup::generated(&g, &[elem(&g, "(0 1)"), elem(&g, "(0 2 1 3)")]);
        assert_eq!(d8.fixed_points(0), 3);
        assert_eq!(d8.fixed_points(elem(&g, "(0 1)(2 3)")), 3);
        assert_eq!(d8.fixed_points(elem(&g, "(0 1 2)")), 0);
        // coset scan oracle
        for x in 0..24 {
            let cosets: HashSet<Vec<Elem>> = (0..24).map(|y| {
                let mut c: Vec<Elem> = d8.elements().iter().map(|&h| g.mul(y, h)).collect();
                c.sort();
                c
            }).collect();
            let fixed = cosets.iter().filter(|c| {
                let mut moved: Vec<Elem> = c.iter().map(|&y| g.mul(x, y)).collect();
                moved.sort();
                &&moved == c
            }).count();
            assert_eq!(d8.fixed_points(x), fixed);
        }
    }

    #[test]
    fn marks_match_coset_scan() {
        let g = grp("S4");
        let lat = SubgroupLattice::new(g.clone());
        for h in 0..lat.classes().len() {
            let hh = lat.class_rep(h);
            let cosets: HashSet<Vec<Elem>> = (0..24).map(|y| {
                let mut c: Vec<Elem> = hh.elements().iter().map(|&x| g.mul(y, x)).collect();
                c.sort();
                c
            }).collect();
            for k in 0..lat.classes().len() {
                let kk = lat.class_rep(k);
                let fixed = cosets.iter().filter(|c| kk.elements().iter().all(|&x| {
                    let mut moved: Vec<Elem> = c.iter().map(|&y| g.mul(x, y)).collect();
                    moved.sort();
                    &&moved == c
                })).count();
                assert_eq!(lat.mark(h, k), fixed);
            }
        }
    }

    #[test]
    fn quotient_cyclicity() {
        let g = grp("S4");
        let lat = SubgroupLattice::new(g.clone());
        let whole = Subgroup::whole(&g);
        let v = lat.p_core(&whole, 2).unwrap();
        assert!(!whole.quotient_is_cyclic(&v));
        let d8 = Subgroup::generated(&g, &[elem(&g, "(0 1)"), elem(&g, "(0 2 1 3)")]);
        assert!(d8.quotient_is_cyclic(&d8));
        let a4 = Subgroup::generated(&g, &[elem(&g, "(0 1 2)"), elem(&g, "(0 1)(2 3)")]);
        assert!(a4.quotient_is_cyclic(&v));
    }

    #[test]
    fn to_group_round_trip() {
        let g = grp("S4");
        let d8 = Subgroup::generated(&g, &[elem(&g, "(0 1)"), elem(&g, "(0 2 1 3)")]);
        let h = d8.to_group();
        assert_eq!(h.order(), 8);
        assert_eq!(SubgroupLattice::new(Arc::new(h)).subgroups().len(), 10);
        // greedy generators scan elements in image-array order
        assert_eq!(d8.label(), "<(2 3),(0 1),(0 2)(1 3)>");
        assert_eq!(Subgroup::generated(&g, &d8.generators()), d8);
    }
}
