//! Explicit induction formulae `1_G = Σ λ_H ind_H^G(1_H)` from the subgroup and
//! centralizer decompositions, with their verification oracles.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::burnside::{BurnsideElement, TableOfMarks};
use crate::decomposition::{lefschetz, Decomposition, DecompositionError, Recipe, SubgroupCollection};
use crate::exactnum::{rational, Rational};
use crate::permgroup::{is_prime, Elem, GroupError, PermGroup, Permutation, Subgroup, SubgroupLattice};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InductionError {
    #[error("malformed formula: {0}")]
    MalformedFormula(String),
    #[error("malformed ring spec `{0}`")]
    MalformedRing(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Decomposition(#[from] DecompositionError),
}

/// The primes that are not invertible in the coefficient ring. With
/// `all_primes` set, every prime except those listed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RingSpec {
    pub all_primes: bool,
    pub primes: BTreeSet<u64>,
}

impl RingSpec {
    /// A field of characteristic zero: every prime is invertible.
    pub fn none() -> Self {
        RingSpec::default()
    }

    /// The integers.
    pub fn all() -> Self {
        RingSpec { all_primes: true, primes: BTreeSet::new() }
    }

    pub fn primes(ps: &[u64]) -> Self {
        RingSpec { all_primes: false, primes: ps.iter().copied().collect() }
    }

    pub fn is_noninvertible(&self, p: u64) -> bool {
        self.all_primes != self.primes.contains(&p)
    }
}

/// `none`, `all`, `all-except:p,q` or a list `p,q`.
impl FromStr for RingSpec {
    type Err = InductionError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let list = |body: &str| -> Result<BTreeSet<u64>, InductionError> {
            body.split(',')
                .filter(|t| !t.trim().is_empty())
                .map(|t| t.trim().parse::<u64>().ok().filter(|&p| is_prime(p)).ok_or_else(|| InductionError::MalformedRing(s.to_string())))
                .collect()
        };
        match s {
            "" | "none" => Ok(RingSpec::none()),
            "all" => Ok(RingSpec::all()),
            _ => match s.strip_prefix("all-except:") {
                Some(rest) => Ok(RingSpec { all_primes: true, primes: list(rest)? }),
                None => Ok(RingSpec { all_primes: false, primes: list(s)? }),
            },
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = self.primes.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        match (self.all_primes, self.primes.is_empty()) {
            (true, true) => f.write_str("all"),
            (true, false) => write!(f, "all-except:{list}"),
            (false, true) => f.write_str("none"),
            (false, false) => f.write_str(&list),
        }
    }
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `H` cyclic, or `H/O_p(H)` cyclic for a non-invertible prime `p`.
///
/// Cyclic subgroups are included whatever the ring.
pub fn is_primordial(lattice: &SubgroupLattice, h: &Subgroup, ring: &RingSpec) -> bool {
    h.is_cyclic()
        || prime_divisors(h.order() as u64)
            .into_iter()
            .filter(|&p| ring.is_noninvertible(p))
            .any(|p| h.quotient_is_cyclic(&lattice.p_core(h, p).expect("prime")))
}

pub fn primordial_subgroups(lattice: &Arc<SubgroupLattice>, ring: &RingSpec) -> SubgroupCollection {
    let classes = (0..lattice.classes().len()).filter(|&c| is_primordial(lattice, lattice.class_rep(c), ring));
    SubgroupCollection::from_classes(lattice, classes)
}

pub fn centralizer_collection(e: &SubgroupCollection) -> SubgroupCollection {
    e.centralizers()
}

pub fn subgroup_closure(e: &SubgroupCollection) -> SubgroupCollection {
    e.subgroup_closure()
}

/// Does `e` satisfy the hypothesis of the induction theorem for `ring`?
/// The subgroup case needs every primordial subgroup, the centralizer case
/// the centralizer of every primordial subgroup.
pub fn hypothesis_holds(e: &SubgroupCollection, which: Decomposition, ring: &RingSpec) -> bool {
    let p = primordial_subgroups(e.lattice(), ring);
    let needed = match which {
        Decomposition::Subgroup => p,
        Decomposition::Centralizer => p.centralizers(),
    };
    needed.classes().iter().all(|&c| e.contains_class(c))
}

/// `1_G = Σ λ_[H] ind_H^G(1_H)`, one term per class with the class
/// multiplicity already folded into the coefficient.
#[derive(Clone)]
pub struct InductionFormula {
    lattice: Arc<SubgroupLattice>,
    terms: Vec<(usize, Rational)>,
    pub decomposition: Decomposition,
    pub ring: RingSpec,
    pub collection: Option<SubgroupCollection>,
    pub hypothesis_ok: Option<bool>,
}

impl InductionFormula {
    fn from_element(x: &BurnsideElement, decomposition: Decomposition, ring: RingSpec, collection: Option<SubgroupCollection>) -> Self {
        InductionFormula {
            lattice: x.lattice().clone(),
            terms: x.terms().map(|(c, v)| (c, v.clone())).collect(),
            decomposition,
            ring,
            hypothesis_ok: collection.as_ref().map(|_| true),
            collection,
        }
    }

    pub fn lattice(&self) -> &Arc<SubgroupLattice> {
        &self.lattice
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        self.lattice.group()
    }

    /// `(class index, collected coefficient)` in class order.
    pub fn terms(&self) -> &[(usize, Rational)] {
        &self.terms
    }

    pub fn coefficient(&self, class: usize) -> Rational {
        self.terms.iter().find(|(c, _)| *c == class).map(|t| t.1.clone()).unwrap_or_else(Rational::zero)
    }

    pub fn to_burnside(&self) -> BurnsideElement {
        BurnsideElement::from_coords(&self.lattice, self.terms.iter().cloned())
    }

    /// Coefficient per conjugate: the collected coefficient over the class size.
    pub fn member_coefficient(&self, class: usize) -> Rational {
        self.coefficient(class) / rational::int(self.lattice.class(class).size() as i64)
    }

    pub fn to_json(&self, group_spec: &str, verified: Option<bool>) -> Value {
        json!({
            "group": group_spec,
            "decomposition": self.decomposition.to_string(),
            "ring_primes": self.ring.to_string(),
            "terms": self.terms.iter().map(|(c, v)| {
                let rep = self.lattice.class_rep(*c);
                let gens: Vec<String> = rep.generators().iter().map(|&g| self.group().element(g).to_string()).collect();
                json!({
                    "subgroup": {"generators": gens, "order": rep.order()},
                    "class_size": self.lattice.class(*c).size(),
                    "coefficient": rational::to_string(v),
                })
            }).collect::<Vec<_>>(),
            "verified": verified,
            "hypothesis_ok": self.hypothesis_ok,
        })
    }

    /// Reads terms back from `to_json` output, over the given lattice.
    pub fn from_json(v: &Value, lattice: &Arc<SubgroupLattice>) -> Result<Self, InductionError> {
        let bad = |m: &str| InductionError::MalformedFormula(m.to_string());
        let g = lattice.group();
        let decomposition = v["decomposition"].as_str().unwrap_or("subgroup").parse().map_err(|e: String| bad(&e))?;
        let ring = v["ring_primes"].as_str().unwrap_or("none").parse()?;
        let mut x = BurnsideElement::zero(lattice);
        for t in v["terms"].as_array().ok_or_else(|| bad("missing terms"))? {
            let gens = t["subgroup"]["generators"].as_array().ok_or_else(|| bad("missing generators"))?;
            let idx = gens
                .iter()
                .map(|s| {
                    let p = Permutation::parse_cycles(g.degree(), s.as_str().ok_or_else(|| bad("generator is not a string"))?)?;
                    g.index_of(&p).ok_or(InductionError::Group(GroupError::NotSubgroup))
                })
                .collect::<Result<Vec<Elem>, _>>()?;
            let class = lattice.class_of_subgroup(&Subgroup::generated(g, &idx))?;
            let coeff = t["coefficient"].as_str().and_then(rational::parse).ok_or_else(|| bad("bad coefficient"))?;
            x.add_term(class, coeff);
        }
        let hyp = v["hypothesis_ok"].as_bool();
        let mut f = Self::from_element(&x, decomposition, ring, None);
        f.hypothesis_ok = hyp;
        Ok(f)
    }
}

impl PartialEq for InductionFormula {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.lattice, &other.lattice) && self.terms == other.terms
    }
}

impl fmt::Debug for InductionFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `1 = λ·ind_<gens>(1) + …`, with each class multiplicity shown as `size·(per member)`.
impl fmt::Display for InductionFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1 =")?;
        for (i, (c, _)) in self.terms.iter().enumerate() {
            let size = self.lattice.class(*c).size();
            let per = rational::to_string(&self.member_coefficient(*c));
            let sep = if i == 0 { " " } else { " + " };
            let rep = self.lattice.class_rep(*c);
            if size == 1 {
                write!(f, "{sep}{per}·ind[{} order {}]", rep.label(), rep.order())?;
            } else {
                write!(f, "{sep}{size}·({per})·ind[{} order {}]", rep.label(), rep.order())?;
            }
        }
        Ok(())
    }
}

/// The formula from the subgroup decomposition: `λ_H = −χ̃(E_{>H}) / |G:H|`.
pub fn formula_subgroup(e: &SubgroupCollection, ring: &RingSpec) -> InductionFormula {
    let mut f = InductionFormula::from_element(&lefschetz(e, Decomposition::Subgroup), Decomposition::Subgroup, ring.clone(), Some(e.clone()));
    f.hypothesis_ok = Some(hypothesis_holds(e, Decomposition::Subgroup, ring));
    f
}

/// The formula from the centralizer decomposition: `−χ̃(E_{<H}) / |G:C_G(H)|` on `[G/C_G(H)]`.
pub fn formula_centralizer(e: &SubgroupCollection, ring: &RingSpec) -> InductionFormula {
    let mut f = InductionFormula::from_element(&lefschetz(e, Decomposition::Centralizer), Decomposition::Centralizer, ring.clone(), Some(e.clone()));
    f.hypothesis_ok = Some(hypothesis_holds(e, Decomposition::Centralizer, ring));
    f
}

pub fn formula(e: &SubgroupCollection, which: Decomposition, ring: &RingSpec) -> InductionFormula {
    match which {
        Decomposition::Subgroup => formula_subgroup(e, ring),
        Decomposition::Centralizer => formula_centralizer(e, ring),
    }
}

/// Residuals `Σ λ_H·fix(g, G/H) − 1` at every element class representative.
#[derive(Clone, Debug, PartialEq)]
pub struct CharacterReport {
    pub ok: bool,
    pub residuals: Vec<(Elem, Rational)>,
}

pub fn verify_character(f: &InductionFormula) -> CharacterReport {
    let g = f.group();
    let residuals: Vec<(Elem, Rational)> = g
        .element_classes()
        .into_iter()
        .map(|(x, _)| {
            let value = f
                .terms
                .iter()
                .map(|(c, v)| v * rational::int(f.lattice.class_rep(*c).fixed_points(x) as i64))
                .fold(Rational::zero(), |a, b| a + b);
            (x, value - Rational::one())
        })
        .collect();
    CharacterReport { ok: residuals.iter().all(|(_, r)| r.is_zero()), residuals }
}

/// Classes where the invariant's mark must be 1, and those where it is not.
#[derive(Clone, Debug, PartialEq)]
pub struct SupportReport {
    pub ok: bool,
    pub checked: Vec<usize>,
    pub failing: Vec<usize>,
}

/// `m_K(Λ) = 1` for `K ∈ E` (subgroup) or `C_G(K) ∈ E` (centralizer).
pub fn verify_idempotent_support(tom: &TableOfMarks, e: &SubgroupCollection, which: Decomposition) -> SupportReport {
    let lat = e.lattice();
    let marks = tom.marks_of(&lefschetz(e, which)).expect("same lattice");
    let checked: Vec<usize> = (0..lat.classes().len())
        .filter(|&c| match which {
            Decomposition::Subgroup => e.contains_class(c),
            Decomposition::Centralizer => e.contains(&lat.class_rep(c).centralizer()),
        })
        .collect();
    let failing: Vec<usize> = checked.iter().copied().filter(|&c| !marks[c].is_one()).collect();
    SupportReport { ok: failing.is_empty(), checked, failing }
}

/// The subgroup `k` of `f`'s group as a group with its own lattice.
pub fn sub_lattice(k: &Subgroup) -> Arc<SubgroupLattice> {
    Arc::new(SubgroupLattice::new(Arc::new(k.to_group())))
}

/// Restricts every `[G/H]` to `K` by the orbit decomposition and collects per `K`-class.
pub fn mackey_restrict_formula(f: &InductionFormula, k: &Subgroup, k_lattice: &Arc<SubgroupLattice>) -> Result<InductionFormula, InductionError> {
    let r = f.to_burnside().restrict(k, k_lattice).map_err(|e| InductionError::Decomposition(e.into()))?;
    Ok(InductionFormula::from_element(&r, f.decomposition, f.ring.clone(), None))
}

#[derive(Clone, Debug)]
pub struct CanonicityReport {
    pub canonical: bool,
    pub restricted: InductionFormula,
    pub direct: InductionFormula,
}

/// Compares the restriction to `K` of the recipe's formula over `G` with the
/// formula the same recipe gives over `K` directly.
pub fn canonicity_check(
    g_lattice: &Arc<SubgroupLattice>,
    recipe: &Recipe,
    which: Decomposition,
    ring: &RingSpec,
    k: &Subgroup,
) -> Result<CanonicityReport, InductionError> {
    let (e, _) = recipe.build(g_lattice)?;
    let over_g = formula(&e, which, ring);
    let k_lattice = sub_lattice(k);
    let restricted = mackey_restrict_formula(&over_g, k, &k_lattice)?;
    let (ek, _) = recipe.build(&k_lattice)?;
    let direct = formula(&ek, which, ring);
    Ok(CanonicityReport { canonical: restricted.terms == direct.terms, restricted, direct })
}

/// Coefficient list of the formal wedge decomposition attached to a
/// centralizer formula at the prime `p`.
#[derive(Clone, Debug)]
pub struct WedgeReport {
    pub prime: u64,
    pub hypothesis_ok: bool,
    pub terms: Vec<(usize, Rational)>,
}

/// The hypothesis: the formula comes from the centralizer decomposition and
/// its collection holds `C_G(H)` for every `H` with `H/O_p(H)` cyclic.
pub fn wedge_report(f: &InductionFormula, p: u64) -> Result<WedgeReport, InductionError> {
    if !is_prime(p) {
        return Err(GroupError::NotPrime(p).into());
    }
    let hypothesis_ok = f.decomposition == Decomposition::Centralizer
        && f.collection.as_ref().is_some_and(|e| hypothesis_holds(e, Decomposition::Centralizer, &RingSpec::primes(&[p])));
    Ok(WedgeReport { prime: p, hypothesis_ok, terms: f.terms.clone() })
}

impl WedgeReport {
    pub fn to_json(&self, f: &InductionFormula, group_spec: &str) -> Value {
        let lat = f.lattice();
        json!({
            "group": group_spec,
            "prime": self.prime,
            "kind": "formal stable wedge decomposition of the p-completed classifying spectrum",
            "hypothesis_ok": self.hypothesis_ok,
            "summands": self.terms.iter().map(|(c, v)| {
                let rep = lat.class_rep(*c);
                json!({"classifying_space_of": rep.label(), "order": rep.order(), "multiplicity": rational::to_string(v)})
            }).collect::<Vec<_>>(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::{int, ratio};
    use crate::permgroup::{named_group, DEFAULT_ORDER_CAP};

    fn lat(s: &str) -> Arc<SubgroupLattice> {
        Arc::new(SubgroupLattice::new(Arc::new(named_group(s, DEFAULT_ORDER_CAP).unwrap())))
    }

    fn sub(l: &SubgroupLattice, gens: &[&str]) -> Subgroup {
        let g = l.group();
        let e: Vec<Elem> = gens.iter().map(|s| g.index_of(&Permutation::parse_cycles(g.degree(), s).unwrap()).unwrap()).collect();
        Subgroup::generated(g, &e)
    }

    #[test]
    fn ring_specs() {
        assert_eq!("none".parse::<RingSpec>().unwrap(), RingSpec::none());
        assert_eq!("2,3".parse::<RingSpec>().unwrap(), RingSpec::primes(&[2, 3]));
        let z = "all".parse::<RingSpec>().unwrap();
        assert!(z.is_noninvertible(7));
        let ex = "all-except:2".parse::<RingSpec>().unwrap();
        assert!(!ex.is_noninvertible(2) && ex.is_noninvertible(3));
        assert!("4".parse::<RingSpec>().is_err());
        for s in ["none", "all", "2,3", "all-except:5"] {
            assert_eq!(s.parse::<RingSpec>().unwrap().to_string(), s);
        }
    }

    #[test]
    fn primordial_sets() {
        let l = lat("S4");
        let p = primordial_subgroups(&l, &RingSpec::none());
        assert_eq!(p.classes(), SubgroupCollection::cyclic(&l).classes());
        let p2 = primordial_subgroups(&l, &RingSpec::primes(&[2]));
        let d8 = l.class_of_subgroup(&sub(&l, &["(0 1)", "(0 2 1 3)"])).unwrap();
        let v4 = l.class_of_subgroup(&sub(&l, &["(0 1)(2 3)", "(0 2)(1 3)"])).unwrap();
        let a4 = l.class_of_subgroup(&sub(&l, &["(0 1 2)", "(0 1)(2 3)"])).unwrap();
        assert!(p2.contains_class(d8) && p2.contains_class(v4) && p2.contains_class(a4));
        assert!(!p2.contains_class(10));
        assert_eq!(primordial_subgroups(&lat("C1"), &RingSpec::all()).len(), 1);
    }

    #[test]
    fn primordial_matches_brute_force_quotient_test() {
        for name in ["S4", "D12", "Q8", "A4"] {
            let l = lat(name);
            for ring in [RingSpec::primes(&[2]), RingSpec::primes(&[3]), RingSpec::all()] {
                let p = primordial_subgroups(&l, &ring);
                for c in 0..l.classes().len() {
                    let h = l.class_rep(c);
                    // oracle: some normal p-subgroup N with H/N cyclic, any such N lies in O_p(H)
                    let brute = h.is_cyclic()
                        || l.subgroups_of(h).into_iter().map(|i| l.subgroup(i)).any(|n| {
                            [2u64, 3].iter().any(|&q| ring.is_noninvertible(q) && n.is_p_group(q) && n.is_normal_in(h) && h.quotient_is_cyclic(n))
                        });
                    assert_eq!(p.contains_class(c), brute, "{name} {ring} class {c}");
                }
            }
        }
    }

    #[test]
    fn centralizer_collections() {
        let l = lat("S4");
        let bottom = SubgroupCollection::from_classes(&l, [0]);
        assert_eq!(centralizer_collection(&bottom).classes(), &[10]);
        let e = centralizer_collection(&SubgroupCollection::cyclic(&l));
        let orders: Vec<usize> = e.classes().iter().map(|&c| l.class_rep(c).order()).collect();
        assert_eq!(orders, vec![3, 4, 4, 8, 24]);
        let c6 = lat("C6");
        assert_eq!(centralizer_collection(&SubgroupCollection::cyclic(&c6)).len(), 1);
    }

    #[test]
    fn subgroup_closures() {
        let l = lat("S4");
        assert_eq!(subgroup_closure(&SubgroupCollection::from_classes(&l, [10])).len(), 30);
        let cyc = SubgroupCollection::cyclic(&l);
        assert_eq!(subgroup_closure(&cyc).members(), cyc.members());
        let d8 = l.class_of_subgroup(&sub(&l, &["(0 1)", "(0 2 1 3)"])).unwrap();
        let closed = subgroup_closure(&SubgroupCollection::from_classes(&l, [d8]));
        // 1, both C2 classes, C4, both Klein classes, D8
        assert_eq!(closed.classes().len(), 7);
    }

    #[test]
    fn small_formulas() {
        let c5 = lat("C5");
        let f = formula_subgroup(&SubgroupCollection::cyclic(&c5), &RingSpec::none());
        assert_eq!(f.terms(), &[(1, int(1))]);
        let v4 = lat("V4");
        let f = formula_subgroup(&SubgroupCollection::cyclic(&v4), &RingSpec::none());
        assert_eq!(f.terms(), &[(0, ratio(-1, 2)), (1, ratio(1, 2)), (2, ratio(1, 2)), (3, ratio(1, 2))]);
        let r = verify_character(&f);
        assert!(r.ok);
        let c6 = lat("C6");
        let f = formula_centralizer(&SubgroupCollection::from_classes(&c6, [c6.classes().len() - 1]), &RingSpec::none());
        assert_eq!(f.terms().len(), 1);
        assert!(verify_character(&f).ok);
    }

    #[test]
    fn corrupted_formula_fails() {
        let l = lat("S4");
        let f = formula_subgroup(&SubgroupCollection::cyclic(&l), &RingSpec::none());
        assert!(verify_character(&f).ok);
        let mut bad = f.clone();
        bad.terms[0].1 += ratio(1, 24);
        let r = verify_character(&bad);
        assert!(!r.ok);
        assert!(r.residuals.iter().any(|(_, v)| !v.is_zero()));
    }

    #[test]
    fn brauer_coefficients_via_augmented_poset() {
        let l = lat("S4");
        let e = SubgroupCollection::cyclic(&l);
        let f = formula_subgroup(&e, &RingSpec::none());
        let top = e.poset().augment_top(Subgroup::whole(l.group())).unwrap_or_else(|_| unreachable!("S4 is not cyclic"));
        let mu = top.mobius();
        let n = top.len() - 1;
        for (i, h) in e.subgroups().enumerate() {
            let lambda = -mu.get(i, n) / rational::int((24 / h.order()) as i64);
            assert_eq!(f.member_coefficient(l.class_of(e.members()[i])), lambda);
        }
    }

    #[test]
    fn json_round_trip() {
        let l = lat("S4");
        let (e, _) = Recipe::parse("centralizers-of:cyclic", 4).unwrap().build(&l).unwrap();
        let f = formula_centralizer(&e, &RingSpec::none());
        let v = f.to_json("S4", Some(true));
        assert_eq!(v["verified"], true);
        assert_eq!(v["decomposition"], "centralizer");
        let back = InductionFormula::from_json(&v, &l).unwrap();
        assert_eq!(back, f);
        assert!(InductionFormula::from_json(&json!({"terms": 3}), &l).is_err());
    }

    #[test]
    fn restriction_to_whole_group_is_identity() {
        let l = lat("S4");
        let f = formula_subgroup(&SubgroupCollection::cyclic(&l), &RingSpec::none());
        let whole = Subgroup::whole(l.group());
        let kl = sub_lattice(&whole);
        let r = mackey_restrict_formula(&f, &whole, &kl).unwrap();
        assert_eq!(r.terms(), f.terms());
        let report = canonicity_check(&l, &Recipe::CentralizersOf(Box::new(Recipe::Cyclic)), Decomposition::Centralizer, &RingSpec::none(), &whole).unwrap();
        assert!(report.canonical);
    }

    #[test]
    fn wedge_reports() {
        let l = lat("S4");
        let (e, _) = Recipe::parse("centralizers-of:primordial:2", 4).unwrap().build(&l).unwrap();
        let f = formula_centralizer(&e, &RingSpec::primes(&[2]));
        assert!(verify_character(&f).ok);
        assert!(wedge_report(&f, 2).unwrap().hypothesis_ok);
        let (small, _) = Recipe::parse("cyclic", 4).unwrap().build(&l).unwrap();
        let g = formula_centralizer(&small, &RingSpec::primes(&[2]));
        assert!(!wedge_report(&g, 2).unwrap().hypothesis_ok);
        assert!(wedge_report(&f, 4).is_err());
        let c6 = lat("C6");
        let top = SubgroupCollection::from_classes(&c6, [c6.classes().len() - 1]);
        let w = wedge_report(&formula_centralizer(&top, &RingSpec::primes(&[2])), 2).unwrap();
        assert!(w.hypothesis_ok);
        assert_eq!(w.terms, vec![(c6.classes().len() - 1, int(1))]);
    }
}
