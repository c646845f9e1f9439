//! The rational Burnside ring: transitive basis, table of marks, idempotent
//! coordinates, restriction and induction.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use num_traits::{One, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::exactnum::{rational, Rational};
use crate::permgroup::{Elem, Subgroup, SubgroupLattice};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BurnsideError {
    #[error("elements belong to different groups")]
    GroupMismatch,
    #[error("not a subgroup of the ambient group")]
    NotSubgroup,
    #[error("coordinate vector has length {found}, expected {expected}")]
    Length { expected: usize, found: usize },
}

/// `marks[h][k] = |(G/H)^K|` over subgroup classes in lattice order.
pub struct TableOfMarks {
    lattice: Arc<SubgroupLattice>,
    marks: Vec<Vec<u64>>,
}

impl TableOfMarks {
    pub fn new(lattice: Arc<SubgroupLattice>) -> Self {
        let n = lattice.classes().len();
        let marks = (0..n).map(|h| (0..n).map(|k| lattice.mark(h, k) as u64).collect()).collect();
        TableOfMarks { lattice, marks }
    }

    pub fn lattice(&self) -> &Arc<SubgroupLattice> {
        &self.lattice
    }

    pub fn len(&self) -> usize {
        self.marks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.marks.is_empty()
    }

    pub fn mark(&self, h: usize, k: usize) -> u64 {
        self.marks[h][k]
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.marks
    }

    fn check(&self, x: &BurnsideElement) -> Result<(), BurnsideError> {
        if Arc::ptr_eq(&self.lattice, &x.lattice) {
            Ok(())
        } else {
            Err(BurnsideError::GroupMismatch)
        }
    }

    /// `m_K(x)` for every class `K`.
    pub fn marks_of(&self, x: &BurnsideElement) -> Result<Vec<Rational>, BurnsideError> {
        self.check(x)?;
        let mut out = vec![Rational::zero(); self.len()];
        for (&h, c) in &x.coords {
            for (k, slot) in out.iter_mut().enumerate() {
                let m = self.marks[h][k];
                if m != 0 {
                    *slot += c * rational::int(m as i64);
                }
            }
        }
        Ok(out)
    }

    /// Coefficients on the primitive idempotents, which are the marks.
    pub fn to_idempotent_coords(&self, x: &BurnsideElement) -> Result<Vec<Rational>, BurnsideError> {
        self.marks_of(x)
    }

    /// Solves `Σ_H c_H marks[H][K] = v_K`. The system is triangular in lattice
    /// order, so it is solved from the largest class down.
    pub fn from_idempotent_coords(&self, v: &[Rational]) -> Result<BurnsideElement, BurnsideError> {
        let n = self.len();
        if v.len() != n {
            return Err(BurnsideError::Length { expected: n, found: v.len() });
        }
        let mut c = vec![Rational::zero(); n];
        for h in (0..n).rev() {
            let mut acc = v[h].clone();
            for (hp, ch) in c.iter().enumerate().skip(h + 1) {
                let m = self.marks[hp][h];
                if m != 0 && !ch.is_zero() {
                    acc -= ch * rational::int(m as i64);
                }
            }
            c[h] = acc / rational::int(self.marks[h][h] as i64);
        }
        Ok(BurnsideElement::from_coords(&self.lattice, c.into_iter().enumerate()))
    }

    /// Ring product, computed pointwise on marks.
    pub fn multiply(&self, x: &BurnsideElement, y: &BurnsideElement) -> Result<BurnsideElement, BurnsideError> {
        let a = self.marks_of(x)?;
        let b = self.marks_of(y)?;
        let prod: Vec<Rational> = a.iter().zip(&b).map(|(p, q)| p * q).collect();
        self.from_idempotent_coords(&prod)
    }

    /// `ε_E = Σ_{[H] ⊆ E} ε_H` for a set of classes.
    pub fn collection_idempotent(&self, classes: &[usize]) -> BurnsideElement {
        let mut v = vec![Rational::zero(); self.len()];
        for &c in classes {
            v[c] = Rational::one();
        }
        self.from_idempotent_coords(&v).expect("length matches")
    }
}

/// A rational combination of transitive G-sets `[G/H]`, keyed by class index.
#[derive(Clone)]
pub struct BurnsideElement {
    lattice: Arc<SubgroupLattice>,
    coords: BTreeMap<usize, Rational>,
}

impl BurnsideElement {
    pub fn zero(lattice: &Arc<SubgroupLattice>) -> Self {
        BurnsideElement { lattice: lattice.clone(), coords: BTreeMap::new() }
    }

    /// `[G/H]` for the class with index `class`.
    pub fn transitive(lattice: &Arc<SubgroupLattice>, class: usize) -> Self {
        Self::from_coords(lattice, [(class, Rational::one())])
    }

    /// `[G/G]`, the unit.
    pub fn one(lattice: &Arc<SubgroupLattice>) -> Self {
        Self::transitive(lattice, lattice.classes().len() - 1)
    }

    pub fn from_coords(lattice: &Arc<SubgroupLattice>, coords: impl IntoIterator<Item = (usize, Rational)>) -> Self {
        let mut x = Self::zero(lattice);
        for (c, v) in coords {
            x.add_term(c, v);
        }
        x
    }

    pub fn add_term(&mut self, class: usize, v: Rational) {
        let slot = self.coords.entry(class).or_insert_with(Rational::zero);
        *slot += v;
        if slot.is_zero() {
            self.coords.remove(&class);
        }
    }

    pub fn lattice(&self) -> &Arc<SubgroupLattice> {
        &self.lattice
    }

    pub fn coeff(&self, class: usize) -> Rational {
        self.coords.get(&class).cloned().unwrap_or_else(Rational::zero)
    }

    /// Nonzero `(class, coefficient)` pairs in class order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coords.iter().map(|(&c, v)| (c, v))
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn add(&self, other: &Self) -> Result<Self, BurnsideError> {
        if !Arc::ptr_eq(&self.lattice, &other.lattice) {
            return Err(BurnsideError::GroupMismatch);
        }
        let mut out = self.clone();
        for (c, v) in other.terms() {
            out.add_term(c, v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, BurnsideError> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::from_coords(&self.lattice, self.coords.iter().map(|(&c, v)| (c, v * s)))
    }

    /// Restriction to `K ≤ G`, landing in the Burnside ring of `K` whose lattice
    /// is `k_lattice`: each `[G/H]` splits into the `K`-orbits on `G/H`, with
    /// stabilizers `K ∩ gHg⁻¹`.
    pub fn restrict(&self, k: &Subgroup, k_lattice: &Arc<SubgroupLattice>) -> Result<BurnsideElement, BurnsideError> {
        let g = self.lattice.group();
        if !Arc::ptr_eq(k.group(), g) || self.lattice.index_of(k).is_none() {
            return Err(BurnsideError::NotSubgroup);
        }
        if k_lattice.group().order() != k.order() || Subgroup::whole(k_lattice.group()).transport(g).as_ref() != Some(k) {
            return Err(BurnsideError::NotSubgroup);
        }
        let mut out = BurnsideElement::zero(k_lattice);
        for (c, coeff) in self.terms() {
            for (stab, count) in k_orbit_stabilizers(&self.lattice, c, k) {
                let local = stab.transport(k_lattice.group()).expect("stabilizer lies in K");
                let kc = k_lattice.class_of_subgroup(&local).expect("subgroup of K");
                out.add_term(kc, coeff * rational::int(count as i64));
            }
        }
        Ok(out)
    }

    /// Induction from the group of this element's lattice, a subgroup of
    /// `g_lattice`'s group: `[K/L] ↦ [G/L]`.
    pub fn induce(&self, g_lattice: &Arc<SubgroupLattice>) -> Result<BurnsideElement, BurnsideError> {
        let mut out = BurnsideElement::zero(g_lattice);
        for (c, coeff) in self.terms() {
            let l = self.lattice.class_rep(c).transport(g_lattice.group()).ok_or(BurnsideError::NotSubgroup)?;
            let gc = g_lattice.class_of_subgroup(&l).map_err(|_| BurnsideError::NotSubgroup)?;
            out.add_term(gc, coeff.clone());
        }
        Ok(out)
    }

    /// JSON array of `{subgroup_class_key, order, index, class_size, coefficient}`.
    pub fn to_json(&self) -> Value {
        let g = self.lattice.group().order();
        Value::Array(
            self.terms()
                .map(|(c, v)| {
                    let rep = self.lattice.class_rep(c);
                    json!({
                        "subgroup_class_key": rep.label(),
                        "order": rep.order(),
                        "index": g / rep.order(),
                        "class_size": self.lattice.class(c).size(),
                        "coefficient": rational::to_string(v),
                    })
                })
                .collect(),
        )
    }
}

impl PartialEq for BurnsideElement {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.lattice, &other.lattice) && self.coords == other.coords
    }
}

impl fmt::Debug for BurnsideElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for BurnsideElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (c, v)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}[G/{}]", rational::to_string(v), self.lattice.class_rep(c).label())?;
        }
        Ok(())
    }
}

/// `K`-orbits on `G/H` (`H` the representative of class `c`), grouped by
/// the stabilizer `K ∩ gHg⁻¹` of an orbit representative.
fn k_orbit_stabilizers(lattice: &SubgroupLattice, c: usize, k: &Subgroup) -> Vec<(Subgroup, usize)> {
    let g = lattice.group();
    let h = lattice.class_rep(c);
    let n = g.order();
    // coset id of x is the least element of xH
    let coset_of = |x: Elem| h.elements().iter().map(|&y| g.mul(x, y)).min().expect("nonempty");
    let mut seen = FixedBitSet::with_capacity(n);
    let mut out: Vec<(Subgroup, usize)> = Vec::new();
    let kgens = k.generators();
    for x in 0..n as Elem {
        let cx = coset_of(x);
        if seen.contains(cx as usize) {
            continue;
        }
        seen.insert(cx as usize);
        let mut queue = VecDeque::from([cx]);
        while let Some(y) = queue.pop_front() {
            for &s in &kgens {
                let z = coset_of(g.mul(s, y));
                if !seen.contains(z as usize) {
                    seen.insert(z as usize);
                    queue.push_back(z);
                }
            }
        }
        let stab = k.intersection(&h.conjugate(cx));
        match out.iter_mut().find(|(s, _)| *s == stab) {
            Some(entry) => entry.1 += 1,
            None => out.push((stab, 1)),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::{int, ratio};
    use crate::permgroup::{named_group, Permutation, DEFAULT_ORDER_CAP};

    fn lat(s: &str) -> Arc<SubgroupLattice> {
        Arc::new(SubgroupLattice::new(Arc::new(named_group(s, DEFAULT_ORDER_CAP).unwrap())))
    }

    fn sub(l: &SubgroupLattice, gens: &[&str]) -> Subgroup {
        let g = l.group();
        let e: Vec<Elem> = gens.iter().map(|s| g.index_of(&Permutation::parse_cycles(g.degree(), s).unwrap()).unwrap()).collect();
        Subgroup::generated(g, &e)
    }

    fn sub_lattice(k: &Subgroup) -> Arc<SubgroupLattice> {
        Arc::new(SubgroupLattice::new(Arc::new(k.to_group())))
    }

    #[test]
    fn c2_marks_and_idempotents() {
        let l = lat("C2");
        let t = TableOfMarks::new(l.clone());
        assert_eq!(t.rows(), &[vec![2, 0], vec![1, 1]]);
        let e1 = t.from_idempotent_coords(&[int(1), int(0)]).unwrap();
        assert_eq!(e1, BurnsideElement::from_coords(&l, [(0, ratio(1, 2))]));
        let e2 = t.from_idempotent_coords(&[int(0), int(1)]).unwrap();
        assert_eq!(e2, BurnsideElement::from_coords(&l, [(1, int(1)), (0, ratio(-1, 2))]));
        assert_eq!(t.collection_idempotent(&[0]), e1);
        assert_eq!(t.collection_idempotent(&[0, 1]), BurnsideElement::one(&l));
        assert!(t.collection_idempotent(&[]).is_zero());
    }

    #[test]
    fn table_shape() {
        let l = lat("S4");
        let t = TableOfMarks::new(l.clone());
        let n = t.len();
        assert_eq!(n, 11);
        for k in 0..n {
            assert_eq!(t.mark(n - 1, k), 1);
        }
        for h in 0..n {
            let order = l.class_rep(h).order() as u64;
            assert_eq!(t.mark(h, 0), 24 / order);
            assert!(t.mark(h, h) > 0);
            for k in 0..n {
                if !order.is_multiple_of(l.class_rep(k).order() as u64) || k > h {
                    assert_eq!(t.mark(h, k), 0);
                }
            }
        }
        let one = BurnsideElement::one(&l);
        assert_eq!(t.marks_of(&one).unwrap(), vec![int(1); n]);
        let free = BurnsideElement::transitive(&l, 0);
        let mut expected = vec![int(0); n];
        expected[0] = int(24);
        assert_eq!(t.marks_of(&free).unwrap(), expected);
    }

    #[test]
    fn multiplication_and_round_trip() {
        let l = lat("S4");
        let t = TableOfMarks::new(l.clone());
        let x = BurnsideElement::from_coords(&l, [(3, ratio(2, 3)), (7, int(-1)), (10, int(5))]);
        let y = BurnsideElement::from_coords(&l, [(1, ratio(1, 2)), (9, int(3))]);
        assert_eq!(t.from_idempotent_coords(&t.to_idempotent_coords(&x).unwrap()).unwrap(), x);
        let xy = t.multiply(&x, &y).unwrap();
        let mx = t.marks_of(&x).unwrap();
        let my = t.marks_of(&y).unwrap();
        let mxy = t.marks_of(&xy).unwrap();
        for k in 0..t.len() {
            assert_eq!(mxy[k], &mx[k] * &my[k]);
        }
        // [G/H]·[G/G] = [G/H] and products of transitive sets are integral
        let one = BurnsideElement::one(&l);
        for h in 0..t.len() {
            let gh = BurnsideElement::transitive(&l, h);
            assert_eq!(t.multiply(&gh, &one).unwrap(), gh);
            for k in 0..t.len() {
                let p = t.multiply(&gh, &BurnsideElement::transitive(&l, k)).unwrap();
                assert!(p.terms().all(|(_, v)| v.is_integer() && *v > int(0)));
            }
        }
        let eps = t.collection_idempotent(&[0, 2, 5]);
        assert_eq!(t.multiply(&eps, &eps).unwrap(), eps);
    }

    #[test]
    fn restriction_examples() {
        let l = lat("S4");
        let a4 = sub(&l, &["(0 1 2)", "(0 1)(2 3)"]);
        let la4 = sub_lattice(&a4);
        let one = BurnsideElement::one(&l);
        assert_eq!(one.restrict(&a4, &la4).unwrap(), BurnsideElement::one(&la4));
        let free = BurnsideElement::transitive(&l, 0);
        assert_eq!(free.restrict(&a4, &la4).unwrap(), BurnsideElement::from_coords(&la4, [(0, int(2))]));
        let d8 = sub(&l, &["(0 1)", "(0 2 1 3)"]);
        let d8c = l.class_of_subgroup(&d8).unwrap();
        let r = BurnsideElement::transitive(&l, d8c).restrict(&a4, &la4).unwrap();
        let v4 = sub(&l, &["(0 1)(2 3)", "(0 2)(1 3)"]).transport(la4.group()).unwrap();
        assert_eq!(r, BurnsideElement::transitive(&la4, la4.class_of_subgroup(&v4).unwrap()));
    }

    #[test]
    fn restriction_preserves_marks() {
        let l = lat("S4");
        let t = TableOfMarks::new(l.clone());
        let x = BurnsideElement::from_coords(&l, (0..t.len()).map(|c| (c, ratio(c as i64 + 1, 7))));
        let mx = t.marks_of(&x).unwrap();
        for ki in 0..l.subgroups().len() {
            let k = l.subgroup(ki).clone();
            let lk = sub_lattice(&k);
            let tk = TableOfMarks::new(lk.clone());
            let r = x.restrict(&k, &lk).unwrap();
            let mr = tk.marks_of(&r).unwrap();
            for (c, m) in mr.iter().enumerate() {
                let in_g = lk.class_rep(c).transport(l.group()).unwrap();
                assert_eq!(*m, mx[l.class_of_subgroup(&in_g).unwrap()]);
            }
        }
    }

    #[test]
    fn induction() {
        let l = lat("S4");
        let d8 = sub(&l, &["(0 1)", "(0 2 1 3)"]);
        let ld8 = sub_lattice(&d8);
        let top = BurnsideElement::one(&ld8).induce(&l).unwrap();
        assert_eq!(top, BurnsideElement::transitive(&l, l.class_of_subgroup(&d8).unwrap()));
        assert_eq!(BurnsideElement::transitive(&ld8, 0).induce(&l).unwrap(), BurnsideElement::transitive(&l, 0));
    }

    #[test]
    fn mismatch_errors() {
        let a = lat("C2");
        let b = lat("C3");
        let t = TableOfMarks::new(a.clone());
        assert_eq!(t.marks_of(&BurnsideElement::one(&b)).unwrap_err(), BurnsideError::GroupMismatch);
        assert!(BurnsideElement::one(&a).add(&BurnsideElement::one(&b)).is_err());
        assert!(t.from_idempotent_coords(&[int(1)]).is_err());
    }

    #[test]
    fn json_and_display() {
        let l = lat("C2");
        let x = BurnsideElement::from_coords(&l, [(0, ratio(-1, 2)), (1, int(1))]);
        let v = x.to_json();
        assert_eq!(v[0]["coefficient"], "-1/2");
        assert_eq!(v[0]["index"], 2);
        assert_eq!(v[1]["subgroup_class_key"], "<(0 1)>");
        assert_eq!(x.to_string(), "-1/2[G/<>] + 1[G/<(0 1)>]");
    }
}
