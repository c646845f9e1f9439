//! Finite posets, Möbius functions and order-complex Euler characteristics.

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::exactnum::{Matrix, Rational};
use crate::permgroup::Subgroup;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("relation is not a partial order: {0}")]
    NotPartialOrder(String),
    #[error("label already present")]
    LabelCollision,
}

/// Which induced subposet `interval` extracts relative to a reference element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Interval {
    /// strictly above
    Above,
    /// strictly below
    Below,
    /// weakly above
    AtLeast,
    /// weakly below
    AtMost,
}

/// A finite poset with labelled elements; `up[i]` holds every `j` with `i ≤ j`.
#[derive(Clone, Debug)]
pub struct Poset<L> {
    labels: Vec<L>,
    up: Vec<FixedBitSet>,
}

impl<L: Clone> Poset<L> {
    /// Builds a poset from a relation, checking the partial-order axioms.
    pub fn new(labels: Vec<L>, leq: impl Fn(&L, &L) -> bool) -> Result<Self, PosetError> {
        let n = labels.len();
        let up: Vec<FixedBitSet> = (0..n)
            .map(|i| {
                let mut b = FixedBitSet::with_capacity(n);
                b.extend((0..n).filter(|&j| leq(&labels[i], &labels[j])));
                b
            })
            .collect();
        for i in 0..n {
            if !up[i].contains(i) {
                return Err(PosetError::NotPartialOrder(format!("element {i} is not reflexive")));
            }
            for j in up[i].ones() {
                if j != i && up[j].contains(i) {
                    return Err(PosetError::NotPartialOrder(format!("elements {i} and {j} violate antisymmetry")));
                }
                if !up[j].is_subset(&up[i]) {
                    return Err(PosetError::NotPartialOrder(format!("transitivity fails above {i} ≤ {j}")));
                }
            }
        }
        Ok(Poset { labels, up })
    }

    pub fn empty() -> Self {
        Poset { labels: Vec::new(), up: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[L] {
        &self.labels
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.up[i].contains(j)
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    pub fn zeta(&self) -> Matrix<Rational> {
        let n = self.len();
        Matrix::from_fn(n, n, |i, j| if self.leq(i, j) { Rational::one() } else { Rational::zero() })
    }

    /// Indices sorted so that `i < j` in the poset implies `i` comes first.
    pub fn linear_extension(&self) -> Vec<usize> {
        let below: Vec<usize> = (0..self.len()).map(|j| (0..self.len()).filter(|&i| self.leq(i, j)).count()).collect();
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| (below[i], i));
        order
    }

    /// The Möbius function, by back-substitution along a linear extension:
    /// `μ(x,x) = 1` and `μ(x,y) = −Σ_{x ≤ z < y} μ(x,z)`.
    pub fn mobius(&self) -> Matrix<Rational> {
        let m = self.mobius_int();
        let n = self.len();
        Matrix::from_fn(n, n, |i, j| Rational::from_integer(BigInt::from(m[i][j])))
    }

    fn mobius_int(&self) -> Vec<Vec<i64>> {
        let n = self.len();
        let order = self.linear_extension();
        let mut mu = vec![vec![0i64; n]; n];
        for x in 0..n {
            for &y in &order {
                if !self.leq(x, y) {
                    continue;
                }
                mu[x][y] = if x == y {
                    1
                } else {
                    let s = (0..n)
                        .filter(|&z| self.leq(x, z) && self.lt(z, y))
                        .try_fold(0i64, |acc, z| acc.checked_add(mu[x][z]))
                        .expect("Möbius value overflow");
                    -s
                };
            }
        }
        mu
    }

    /// `χ = Σ_{x ≤ y} μ(x,y)`.
    pub fn euler_char(&self) -> Rational {
        let total: i64 = self.mobius_int().iter().flatten().sum();
        Rational::from_integer(total.into())
    }

    /// `χ − 1`, so the empty poset has reduced Euler characteristic `−1`.
    pub fn reduced_euler_char(&self) -> Rational {
        self.euler_char() - Rational::one()
    }

    /// Adds a new element above everything.
    pub fn augment_top(&self, label: L) -> Result<Self, PosetError>
    where
        L: PartialEq,
    {
        self.augment(label, true)
    }

    /// Adds a new element below everything.
    pub fn augment_bottom(&self, label: L) -> Result<Self, PosetError>
    where
        L: PartialEq,
    {
        self.augment(label, false)
    }

    fn augment(&self, label: L, top: bool) -> Result<Self, PosetError>
    where
        L: PartialEq,
    {
        if self.labels.contains(&label) {
            return Err(PosetError::LabelCollision);
        }
        let n = self.len();
        let mut up: Vec<FixedBitSet> = self
            .up
            .iter()
            .map(|b| {
                let mut c = FixedBitSet::with_capacity(n + 1);
                c.union_with(b);
                if top {
                    c.insert(n);
                }
                c
            })
            .collect();
        let mut new = FixedBitSet::with_capacity(n + 1);
        new.insert(n);
        if !top {
            new.insert_range(..);
        }
        up.push(new);
        let mut labels = self.labels.clone();
        labels.push(label);
        Ok(Poset { labels, up })
    }

    /// Induced subposet on the indices selected by `keep`, in the original order.
    pub fn induced(&self, keep: impl Fn(usize) -> bool) -> Self {
        let idx: Vec<usize> = (0..self.len()).filter(|&i| keep(i)).collect();
        let up = idx
            .iter()
            .map(|&i| {
                let mut b = FixedBitSet::with_capacity(idx.len());
                b.extend((0..idx.len()).filter(|&k| self.leq(i, idx[k])));
                b
            })
            .collect();
        Poset { labels: idx.iter().map(|&i| self.labels[i].clone()).collect(), up }
    }

    /// Elements above or below the element at index `x`.
    pub fn interval(&self, x: usize, mode: Interval) -> Self {
        self.induced(|i| match mode {
            Interval::Above => self.lt(x, i),
            Interval::Below => self.lt(i, x),
            Interval::AtLeast => self.leq(x, i),
            Interval::AtMost => self.leq(i, x),
        })
    }

    /// Number of chains `x₀ < x₁ < … < x_n`.
    pub fn chain_count(&self, n: usize) -> BigInt {
        let order = self.linear_extension();
        let mut ending: Vec<BigInt> = vec![BigInt::one(); self.len()];
        for _ in 0..n {
            let mut next = vec![BigInt::zero(); self.len()];
            for &y in &order {
                for x in 0..self.len() {
                    if self.lt(x, y) {
                        next[y] += &ending[x];
                    }
                }
            }
            ending = next;
        }
        ending.into_iter().sum()
    }

    /// `Σ_n (−1)ⁿ · chain_count(n)`, summed until the chains run out.
    pub fn chain_euler_char(&self) -> Rational {
        let mut total = BigInt::zero();
        for n in 0..=self.len() {
            let c = self.chain_count(n);
            if c.is_zero() {
                break;
            }
            if n % 2 == 0 {
                total += c;
            } else {
                total -= c;
            }
        }
        Rational::from_integer(total)
    }

    /// Pairs `(i, j)` with `j` covering `i`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if self.lt(i, j) && !(0..n).any(|k| self.lt(i, k) && self.lt(k, j)) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// JSON adjacency: element labels plus the Hasse diagram edges.
    pub fn to_json(&self, label: impl Fn(&L) -> String) -> Value {
        json!({
            "elements": self.labels.iter().map(label).collect::<Vec<_>>(),
            "covers": self.covers().iter().map(|&(i, j)| [i, j]).collect::<Vec<_>>(),
        })
    }
}

impl Poset<Subgroup> {
    /// Subgroups ordered by inclusion.
    pub fn of_subgroups(members: Vec<Subgroup>) -> Self {
        Poset::new(members, |a, b| a.is_subgroup_of(b)).expect("inclusion is a partial order")
    }

    /// Members strictly/weakly above/below `h`, which need not be a member.
    pub fn subgroup_interval(&self, h: &Subgroup, mode: Interval) -> Self {
        self.induced(|i| {
            let x = &self.labels[i];
            match mode {
                Interval::Above => h.is_subgroup_of(x) && h != x,
                Interval::Below => x.is_subgroup_of(h) && h != x,
                Interval::AtLeast => h.is_subgroup_of(x),
                Interval::AtMost => x.is_subgroup_of(h),
            }
        })
    }

    pub fn subgroup_json(&self) -> Value {
        self.to_json(|s| s.label())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{inverse, rational::int};

    fn chain(n: usize) -> Poset<usize> {
        Poset::new((0..n).collect(), |a, b| a <= b).unwrap()
    }

    fn antichain(n: usize) -> Poset<usize> {
        Poset::new((0..n).collect(), |a, b| a == b).unwrap()
    }

    fn boolean(k: u32) -> Poset<u32> {
        Poset::new((0..1u32 << k).collect(), |a, b| a & b == *a).unwrap()
    }

    #[test]
    fn two_chain_mobius() {
        let mu = chain(2).mobius();
        assert_eq!(mu.to_rows(), vec![vec![int(1), int(-1)], vec![int(0), int(1)]]);
    }

    #[test]
    fn mobius_inverts_zeta() {
        for p in [boolean(3), Poset::new((1..=12u32).collect(), |a, b| b % a == 0).unwrap()] {
            let z = p.zeta();
            let mu = p.mobius();
            assert_eq!(mu.mul(&z), Matrix::identity(p.len()));
            assert_eq!(z.mul(&mu), Matrix::identity(p.len()));
            assert_eq!(inverse(&z).unwrap(), mu);
        }
    }

    #[test]
    fn rejects_non_orders() {
        assert!(Poset::new(vec![0, 1], |a, b| a != b || a == b && *a == 0).is_err());
        assert!(Poset::new(vec![0, 1], |_, _| true).is_err());
        assert!(Poset::new(vec![0, 1, 2], |a, b| a == b || (*a + 1 == *b)).is_err());
    }

    #[test]
    fn augmentation() {
        let one = Poset::<String>::empty().augment_top("inf".into()).unwrap();
        assert_eq!(one.len(), 1);
        let p = antichain(3).augment_bottom(99).unwrap();
        assert_eq!(p.len(), 4);
        assert_eq!(p.covers().len(), 3);
        assert_eq!(antichain(3).augment_top(1).unwrap_err(), PosetError::LabelCollision);
        let q = antichain(3).augment_top(99).unwrap();
        let mu = q.mobius();
        for x in 0..3 {
            assert_eq!(*mu.get(x, 3), int(-1));
        }
    }

    #[test]
    fn euler_characteristics() {
        assert_eq!(Poset::<u8>::empty().reduced_euler_char(), int(-1));
        assert_eq!(chain(4).reduced_euler_char(), int(0));
        assert_eq!(antichain(3).euler_char(), int(3));
        assert_eq!(antichain(3).reduced_euler_char(), int(2));
        // the boundary of a square: a circle
        let square = boolean(2).induced(|i| i != 0 && i != 3);
        assert_eq!(square.euler_char(), int(2));
        let hollow = boolean(3).induced(|i| i != 0 && i != 7);
        assert_eq!(hollow.euler_char(), int(0));
    }

    #[test]
    fn chain_counts() {
        assert_eq!(antichain(3).chain_count(0), 3.into());
        assert_eq!(antichain(3).chain_count(1), 0.into());
        let b2 = boolean(2);
        let counts: Vec<BigInt> = (0..4).map(|n| b2.chain_count(n)).collect();
        assert_eq!(counts, vec![4.into(), 5.into(), 2.into(), 0.into()]);
        assert_eq!(b2.chain_euler_char(), int(1));
        for n in 1..6 {
            assert_eq!(chain(n).chain_euler_char(), chain(n).euler_char());
        }
    }

    #[test]
    fn intervals() {
        let c = chain(3);
        let above = c.interval(1, Interval::Above);
        assert_eq!(above.labels(), &[2]);
        let b3 = boolean(3);
        assert_eq!(b3.interval(1, Interval::AtLeast).reduced_euler_char(), int(0));
        assert_eq!(b3.interval(7, Interval::Below).len(), 7);
    }

    #[test]
    fn json_shape() {
        let v = chain(3).to_json(|x| x.to_string());
        assert_eq!(v["elements"], json!(["0", "1", "2"]));
        assert_eq!(v["covers"], json!([[0, 1], [1, 2]]));
    }
}
