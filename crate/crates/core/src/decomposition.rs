//! Orbit and fusion categories of a subgroup collection, their closed-form
//! weightings, and the series Lefschetz invariants of the subgroup and
//! centralizer decompositions.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::burnside::{BurnsideElement, BurnsideError, TableOfMarks};
use crate::exactnum::{rational, Rational};
use crate::fincat::{FinCat, FinCatError, WeightFunction};
use crate::induction::{primordial_subgroups, RingSpec};
use crate::permgroup::{GroupError, Permutation, Subgroup, SubgroupLattice};
use crate::poset::{Interval, Poset};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompositionError {
    #[error("collection is not closed under conjugation")]
    NotConjugationClosed,
    #[error("malformed collection `{0}`")]
    MalformedCollection(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    FinCat(#[from] FinCatError),
    #[error(transparent)]
    Burnside(#[from] BurnsideError),
}

/// Which decomposition: subgroup (orbit category) or centralizer (fusion category).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Decomposition {
    Subgroup,
    Centralizer,
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Decomposition::Subgroup => "subgroup",
            Decomposition::Centralizer => "centralizer",
        })
    }
}

impl std::str::FromStr for Decomposition {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "subgroup" => Ok(Decomposition::Subgroup),
            "centralizer" => Ok(Decomposition::Centralizer),
            _ => Err(format!("unknown decomposition `{s}`")),
        }
    }
}

/// A conjugation-closed set of subgroups, as sorted lattice indices.
#[derive(Clone)]
pub struct SubgroupCollection {
    lattice: Arc<SubgroupLattice>,
    members: Vec<usize>,
    classes: Vec<usize>,
}

impl SubgroupCollection {
    /// Rejects sets that are not unions of conjugacy classes.
    pub fn new(lattice: &Arc<SubgroupLattice>, members: impl IntoIterator<Item = usize>) -> Result<Self, DecompositionError> {
        let (c, added) = Self::closure(lattice, members);
        if added {
            Err(DecompositionError::NotConjugationClosed)
        } else {
            Ok(c)
        }
    }

    /// Conjugation closure, reporting whether anything was added.
    pub fn closure(lattice: &Arc<SubgroupLattice>, members: impl IntoIterator<Item = usize>) -> (Self, bool) {
        let given: BTreeSet<usize> = members.into_iter().collect();
        let classes: BTreeSet<usize> = given.iter().map(|&i| lattice.class_of(i)).collect();
        let c = Self::from_classes(lattice, classes);
        let added = c.members.len() != given.len();
        (c, added)
    }

    pub fn from_classes(lattice: &Arc<SubgroupLattice>, classes: impl IntoIterator<Item = usize>) -> Self {
        let classes: BTreeSet<usize> = classes.into_iter().collect();
        let mut members: Vec<usize> = classes.iter().flat_map(|&c| lattice.class(c).members.iter().copied()).collect();
        members.sort();
        SubgroupCollection { lattice: lattice.clone(), members, classes: classes.into_iter().collect() }
    }

    pub fn from_subgroups<'a>(lattice: &Arc<SubgroupLattice>, subgroups: impl IntoIterator<Item = &'a Subgroup>) -> Result<(Self, bool), DecompositionError> {
        let idx = subgroups.into_iter().map(|s| lattice.lookup(s)).collect::<Result<Vec<_>, _>>()?;
        Ok(Self::closure(lattice, idx))
    }

    pub fn all(lattice: &Arc<SubgroupLattice>) -> Self {
        Self::from_classes(lattice, 0..lattice.classes().len())
    }

    pub fn cyclic(lattice: &Arc<SubgroupLattice>) -> Self {
        Self::from_classes(lattice, (0..lattice.classes().len()).filter(|&c| lattice.class_rep(c).is_cyclic()))
    }

    pub fn lattice(&self) -> &Arc<SubgroupLattice> {
        &self.lattice
    }

    /// Lattice indices of the members, in lattice order.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn subgroups(&self) -> impl Iterator<Item = &Subgroup> {
        self.members.iter().map(|&i| self.lattice.subgroup(i))
    }

    /// Class indices covered by the collection.
    pub fn classes(&self) -> &[usize] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, h: &Subgroup) -> bool {
        self.lattice.index_of(h).is_some_and(|i| self.members.binary_search(&i).is_ok())
    }

    pub fn contains_class(&self, c: usize) -> bool {
        self.classes.binary_search(&c).is_ok()
    }

    /// The members ordered by inclusion.
    pub fn poset(&self) -> Poset<Subgroup> {
        Poset::of_subgroups(self.subgroups().cloned().collect())
    }

    /// Closure under taking subgroups.
    pub fn subgroup_closure(&self) -> Self {
        let lat = &self.lattice;
        let classes = (0..lat.classes().len()).filter(|&c| {
            let rep = lat.class_rep(c);
            self.subgroups().any(|h| rep.is_subgroup_of(h))
        });
        Self::from_classes(lat, classes)
    }

    /// Conjugation closure of the centralizers of the members.
    pub fn centralizers(&self) -> Self {
        let lat = &self.lattice;
        let classes = self.classes.iter().map(|&c| lat.class_of_subgroup(&lat.class_rep(c).centralizer()).expect("centralizer is a subgroup"));
        Self::from_classes(lat, classes)
    }

    pub fn is_subgroup_closed(&self) -> bool {
        self.subgroup_closure().members.len() == self.members.len()
    }

    pub fn labels(&self) -> Vec<String> {
        self.subgroups().map(|s| s.label()).collect()
    }
}

/// The transitive G-set `G/K` (or a disjoint union of them) attached to each
/// object of a category, as subgroup class indices.
#[derive(Clone, Debug)]
pub struct GSetAssignment {
    pub values: Vec<Vec<usize>>,
}

impl GSetAssignment {
    pub fn transitive(classes: Vec<usize>) -> Self {
        GSetAssignment { values: classes.into_iter().map(|c| vec![c]).collect() }
    }
}

/// Objects are the members; `ζ(H,K) = |{gK : H ⊆ gKg⁻¹}|`.
pub fn orbit_category(e: &SubgroupCollection) -> FinCat {
    let lat = &e.lattice;
    let zeta = e
        .subgroups()
        .map(|h| {
            e.members
                .iter()
                .map(|&k| {
                    let class = lat.class(lat.class_of(k));
                    let kk = lat.subgroup(k);
                    let containing = class.members.iter().filter(|&&m| h.is_subgroup_of(lat.subgroup(m))).count();
                    (containing * class.normalizer_order / kk.order()) as u64
                })
                .collect()
        })
        .collect();
    FinCat::new(e.labels(), zeta, iso_classes(e), true).expect("orbit category is well formed")
}

/// Objects are the members; `ζ(H,K) = |{g : gHg⁻¹ ⊆ K}| / |C_G(H)|`.
pub fn fusion_category(e: &SubgroupCollection) -> FinCat {
    let lat = &e.lattice;
    let zeta = e
        .members
        .iter()
        .map(|&h| {
            let class = lat.class(lat.class_of(h));
            let hh = lat.subgroup(h);
            let per_conjugate = class.normalizer_order / hh.centralizer().order();
            e.subgroups()
                .map(|k| (class.members.iter().filter(|&&m| lat.subgroup(m).is_subgroup_of(k)).count() * per_conjugate) as u64)
                .collect()
        })
        .collect();
    FinCat::new(e.labels(), zeta, iso_classes(e), true).expect("fusion category is well formed")
}

fn iso_classes(e: &SubgroupCollection) -> Vec<Vec<usize>> {
    e.classes
        .iter()
        .map(|&c| (0..e.len()).filter(|&i| e.lattice.class_of(e.members[i]) == c).collect())
        .collect()
}

/// `k(H) = −χ̃(E_{>H}) / |G:H|` for each member.
pub fn orbit_weighting(e: &SubgroupCollection) -> WeightFunction {
    let p = e.poset();
    let g = e.lattice.group().order() as i64;
    let per_class: Vec<(usize, Rational)> = e
        .classes
        .iter()
        .map(|&c| {
            let h = e.lattice.class_rep(c);
            (c, -p.subgroup_interval(h, Interval::Above).reduced_euler_char() / rational::int(g / h.order() as i64))
        })
        .collect();
    spread(e, &per_class)
}

/// `t(K) = −χ̃(E_{<K}) / |G:C_G(K)|` for each member.
pub fn fusion_coweighting(e: &SubgroupCollection) -> WeightFunction {
    let p = e.poset();
    let g = e.lattice.group().order() as i64;
    let per_class: Vec<(usize, Rational)> = e
        .classes
        .iter()
        .map(|&c| {
            let k = e.lattice.class_rep(c);
            let index = g / k.centralizer().order() as i64;
            (c, -p.subgroup_interval(k, Interval::Below).reduced_euler_char() / rational::int(index))
        })
        .collect();
    spread(e, &per_class)
}

fn spread(e: &SubgroupCollection, per_class: &[(usize, Rational)]) -> WeightFunction {
    e.members
        .iter()
        .map(|&i| {
            let c = e.lattice.class_of(i);
            per_class.iter().find(|(d, _)| *d == c).expect("class of a member").1.clone()
        })
        .collect()
}

/// `Σ_x k_C(x) [F(x)]` over the objects of `c`, with `k_C` its skeletal weighting.
pub fn grothendieck_lefschetz(lattice: &Arc<SubgroupLattice>, c: &FinCat, f: &GSetAssignment) -> Result<BurnsideElement, DecompositionError> {
    let k = c.skeletal_weighting()?;
    let mut out = BurnsideElement::zero(lattice);
    for (w, classes) in k.iter().zip(&f.values) {
        for &cl in classes {
            out.add_term(cl, w.clone());
        }
    }
    Ok(out)
}

/// Unreduced invariant of the subgroup decomposition, `Σ_{H∈E} k(H) [G/H]`.
pub fn lefschetz_subgroup(e: &SubgroupCollection) -> BurnsideElement {
    let k = orbit_weighting(e);
    let mut out = BurnsideElement::zero(&e.lattice);
    for (i, w) in e.members.iter().zip(k) {
        out.add_term(e.lattice.class_of(*i), w);
    }
    out
}

/// Unreduced invariant of the centralizer decomposition, `Σ_{H∈E} t(H) [G/C_G(H)]`.
pub fn lefschetz_centralizer(e: &SubgroupCollection) -> BurnsideElement {
    let t = fusion_coweighting(e);
    let lat = &e.lattice;
    let cent = centralizer_classes(e);
    let mut out = BurnsideElement::zero(lat);
    for (i, w) in e.members.iter().zip(t) {
        out.add_term(cent[&lat.class_of(*i)], w);
    }
    out
}

pub fn lefschetz(e: &SubgroupCollection, which: Decomposition) -> BurnsideElement {
    match which {
        Decomposition::Subgroup => lefschetz_subgroup(e),
        Decomposition::Centralizer => lefschetz_centralizer(e),
    }
}

/// Class of `C_G(H)` for each class `H` in the collection.
fn centralizer_classes(e: &SubgroupCollection) -> std::collections::BTreeMap<usize, usize> {
    let lat = &e.lattice;
    e.classes
        .iter()
        .map(|&c| (c, lat.class_of_subgroup(&lat.class_rep(c).centralizer()).expect("centralizer is a subgroup")))
        .collect()
}

/// The `G`-set assignment under which the Grothendieck construction gives the
/// decomposition: `H ↦ G/H`, or `K ↦ G/C_G(K)` on the opposite fusion category.
pub fn decomposition_functor(e: &SubgroupCollection, which: Decomposition) -> (FinCat, GSetAssignment) {
    let lat = &e.lattice;
    match which {
        Decomposition::Subgroup => (orbit_category(e), GSetAssignment::transitive(e.members.iter().map(|&i| lat.class_of(i)).collect())),
        Decomposition::Centralizer => {
            let cent = centralizer_classes(e);
            let f = GSetAssignment::transitive(e.members.iter().map(|&i| cent[&lat.class_of(i)]).collect());
            (fusion_category(e).opposite(), f)
        }
    }
}

/// Closed-form idempotent coordinates of the reduced invariant, from poset
/// Euler characteristics alone.
pub fn idempotent_expansion_reduced(e: &SubgroupCollection, which: Decomposition) -> Vec<Rational> {
    let lat = &e.lattice;
    let p = e.poset();
    (0..lat.classes().len())
        .map(|c| {
            let k = lat.class_rep(c);
            match which {
                Decomposition::Subgroup if e.contains(k) => Rational::zero(),
                Decomposition::Subgroup => p.subgroup_interval(k, Interval::Above).reduced_euler_char(),
                Decomposition::Centralizer => {
                    let ck = k.centralizer();
                    if e.contains(&ck) {
                        Rational::zero()
                    } else {
                        p.subgroup_interval(&ck, Interval::Below).reduced_euler_char()
                    }
                }
            }
        })
        .collect()
}

/// `E_{≥H}` for the subgroup decomposition, `E_{≤C_G(H)}` for the centralizer one.
pub fn fixed_point_poset(e: &SubgroupCollection, which: Decomposition, h: &Subgroup) -> Poset<Subgroup> {
    let p = e.poset();
    match which {
        Decomposition::Subgroup => p.subgroup_interval(h, Interval::AtLeast),
        Decomposition::Centralizer => p.subgroup_interval(&h.centralizer(), Interval::AtMost),
    }
}

/// Marks of the invariant compared class by class with the Euler
/// characteristics of the fixed-point posets. Returns the mismatching classes.
pub fn dual_path_mismatches(tom: &TableOfMarks, e: &SubgroupCollection, which: Decomposition) -> Vec<usize> {
    let lat = &e.lattice;
    let marks = tom.marks_of(&lefschetz(e, which)).expect("same lattice");
    (0..lat.classes().len()).filter(|&c| marks[c] != fixed_point_poset(e, which, lat.class_rep(c)).euler_char()).collect()
}

/// A collection recipe that can be applied uniformly to any group.
#[derive(Clone, Debug, PartialEq)]
pub enum Recipe {
    All,
    Cyclic,
    Primordial(RingSpec),
    CentralizersOf(Box<Recipe>),
    SubgroupClosure(Box<Recipe>),
    /// Subgroups generated by each listed generator set.
    Explicit(Vec<Vec<Permutation>>),
}

impl Recipe {
    /// Parses `all`, `cyclic`, `primordial:p,q`, `centralizers-of:<recipe>`,
    /// `subgroup-closure:<recipe>` or a JSON list of generator lists such as
    /// `[["(0 1)"], ["(0 1 2)", "(0 1)"]]`. Explicit generators are read on
    /// `degree` points.
    pub fn parse(spec: &str, degree: usize) -> Result<Self, DecompositionError> {
        let bad = || DecompositionError::MalformedCollection(spec.to_string());
        let spec = spec.trim();
        if let Some(rest) = spec.strip_prefix("centralizers-of:") {
            return Ok(Recipe::CentralizersOf(Box::new(Self::parse(rest, degree)?)));
        }
        if let Some(rest) = spec.strip_prefix("subgroup-closure:") {
            return Ok(Recipe::SubgroupClosure(Box::new(Self::parse(rest, degree)?)));
        }
        if let Some(rest) = spec.strip_prefix("primordial:") {
            return Ok(Recipe::Primordial(rest.parse::<RingSpec>().map_err(|_| bad())?));
        }
        match spec {
            "all" => return Ok(Recipe::All),
            "cyclic" => return Ok(Recipe::Cyclic),
            "primordial" => return Ok(Recipe::Primordial(RingSpec::none())),
            _ => {}
        }
        if spec.starts_with('[') {
            let sets: Vec<Vec<String>> = serde_json::from_str(spec).map_err(|_| bad())?;
            let sets = sets
                .iter()
                .map(|gens| gens.iter().map(|g| Permutation::parse_cycles(degree, g)).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| bad())?;
            return Ok(Recipe::Explicit(sets));
        }
        Err(bad())
    }

    /// Builds the collection, returning whether conjugation closure added members.
    pub fn build(&self, lattice: &Arc<SubgroupLattice>) -> Result<(SubgroupCollection, bool), DecompositionError> {
        Ok(match self {
            Recipe::All => (SubgroupCollection::all(lattice), false),
            Recipe::Cyclic => (SubgroupCollection::cyclic(lattice), false),
            Recipe::Primordial(ring) => (primordial_subgroups(lattice, ring), false),
            Recipe::CentralizersOf(inner) => {
                let (c, added) = inner.build(lattice)?;
                (c.centralizers(), added)
            }
            Recipe::SubgroupClosure(inner) => {
                let (c, added) = inner.build(lattice)?;
                (c.subgroup_closure(), added)
            }
            Recipe::Explicit(sets) => {
                let g = lattice.group();
                let subs = sets
                    .iter()
                    .map(|gens| {
                        let idx = gens.iter().map(|p| g.index_of(p).ok_or(GroupError::NotSubgroup)).collect::<Result<Vec<_>, _>>()?;
                        Ok(Subgroup::generated(g, &idx))
                    })
                    .collect::<Result<Vec<_>, DecompositionError>>()?;
                SubgroupCollection::from_subgroups(lattice, &subs)?
            }
        })
    }
}

/// `Λ̃ = Λ − [G/G]`.
pub fn reduced(x: &BurnsideElement) -> BurnsideElement {
    let mut out = x.clone();
    out.add_term(x.lattice().classes().len() - 1, -Rational::one());
    out
}
