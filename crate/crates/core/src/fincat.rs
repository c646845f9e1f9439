//! Finite categories known through hom-set sizes and an isomorphism
//! partition: skeletal Möbius inversion, weightings, Euler characteristic and
//! the series Euler characteristic.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::{inverse, poly_solve, rational, Matrix, Polynomial, Rational, RationalFunction};
use crate::poset::Poset;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FinCatError {
    #[error("the skeleton's zeta matrix is singular: no skeletal Möbius inversion")]
    NoInversion,
    #[error("the series generating function has a pole at -1")]
    NotInLocalization,
    #[error("invalid category: {0}")]
    Invalid(String),
}

/// A finite category given by `zeta[x][y] = |C(x,y)|` and its isomorphism classes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FinCat {
    objects: Vec<String>,
    zeta: Vec<Vec<u64>>,
    iso_classes: Vec<Vec<usize>>,
    #[serde(default)]
    ei: bool,
}

/// Values of a (co)weighting, indexed like the objects.
pub type WeightFunction = Vec<Rational>;

impl FinCat {
    /// Validates that identities exist, the iso classes partition the objects
    /// and `zeta` is constant on iso-class blocks.
    pub fn new(objects: Vec<String>, zeta: Vec<Vec<u64>>, mut iso_classes: Vec<Vec<usize>>, ei: bool) -> Result<Self, FinCatError> {
        let n = objects.len();
        let bad = |m: String| Err(FinCatError::Invalid(m));
        if zeta.len() != n || zeta.iter().any(|r| r.len() != n) {
            return bad(format!("zeta must be {n}x{n}"));
        }
        if let Some(x) = (0..n).find(|&x| zeta[x][x] == 0) {
            return bad(format!("object {x} has no identity"));
        }
        let mut class_of = vec![usize::MAX; n];
        for class in &mut iso_classes {
            class.sort();
        }
        iso_classes.retain(|c| !c.is_empty());
        iso_classes.sort();
        for (c, class) in iso_classes.iter().enumerate() {
            for &x in class {
                if x >= n || class_of[x] != usize::MAX {
                    return bad(format!("iso classes do not partition the objects (object {x})"));
                }
                class_of[x] = c;
            }
        }
        if class_of.contains(&usize::MAX) {
            return bad("some object lies in no iso class".into());
        }
        for x in 0..n {
            for y in 0..n {
                let (rx, ry) = (iso_classes[class_of[x]][0], iso_classes[class_of[y]][0]);
                if zeta[x][y] != zeta[rx][ry] {
                    return bad(format!("zeta is not constant on iso classes at ({x}, {y})"));
                }
            }
        }
        Ok(FinCat { objects, zeta, iso_classes, ei })
    }

    /// `m` objects and only identities.
    pub fn discrete(m: usize) -> Self {
        let zeta = (0..m).map(|i| (0..m).map(|j| u64::from(i == j)).collect()).collect();
        Self::new((0..m).map(|i| i.to_string()).collect(), zeta, (0..m).map(|i| vec![i]).collect(), true).expect("valid")
    }

    /// One object with `n` endomorphisms. EI exactly when it is a group,
    /// which the caller declares.
    pub fn one_object(n: u64, ei: bool) -> Self {
        Self::new(vec!["*".into()], vec![vec![n]], vec![vec![0]], ei).expect("valid")
    }

    /// A poset viewed as a category.
    pub fn from_poset<L: Clone>(p: &Poset<L>, label: impl Fn(&L) -> String) -> Self {
        let n = p.len();
        let zeta = (0..n).map(|i| (0..n).map(|j| u64::from(p.leq(i, j))).collect()).collect();
        Self::new(p.labels().iter().map(label).collect(), zeta, (0..n).map(|i| vec![i]).collect(), true).expect("posets are skeletal")
    }

    /// The opposite category.
    pub fn opposite(&self) -> Self {
        let n = self.len();
        let zeta = (0..n).map(|i| (0..n).map(|j| self.zeta[j][i]).collect()).collect();
        FinCat { objects: self.objects.clone(), zeta, iso_classes: self.iso_classes.clone(), ei: self.ei }
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn hom(&self, x: usize, y: usize) -> u64 {
        self.zeta[x][y]
    }

    pub fn iso_classes(&self) -> &[Vec<usize>] {
        &self.iso_classes
    }

    pub fn is_ei(&self) -> bool {
        self.ei
    }

    pub fn zeta(&self) -> Matrix<Rational> {
        let n = self.len();
        Matrix::from_fn(n, n, |i, j| rational::int(self.zeta[i][j] as i64))
    }

    fn class_sizes(&self) -> Vec<usize> {
        let mut size = vec![0; self.len()];
        for class in &self.iso_classes {
            for &x in class {
                size[x] = class.len();
            }
        }
        size
    }

    fn same_class(&self) -> Vec<Vec<bool>> {
        let n = self.len();
        let mut m = vec![vec![false; n]; n];
        for class in &self.iso_classes {
            for &x in class {
                for &y in class {
                    m[x][y] = true;
                }
            }
        }
        m
    }

    /// `e(x,y) = 1/|[x]|` when `x ≅ y`, else 0.
    pub fn idempotent_e(&self) -> Matrix<Rational> {
        let n = self.len();
        let size = self.class_sizes();
        let same = self.same_class();
        Matrix::from_fn(n, n, |i, j| if same[i][j] { rational::ratio(1, size[i] as i64) } else { Rational::zero() })
    }

    /// The inverse of zeta inside the isomorphism-invariant matrices.
    ///
    /// Invariant matrices multiply like their skeletal blocks with the class
    /// sizes `D` inserted, `(αβ)* = α* D β*`, and `e* = D⁻¹`. Hence
    /// `ν* = D⁻¹ (ζ*)⁻¹ D⁻¹`, spread back over every iso class.
    pub fn skeletal_nu(&self) -> Result<Matrix<Rational>, FinCatError> {
        let reps: Vec<usize> = self.iso_classes.iter().map(|c| c[0]).collect();
        let c = reps.len();
        let zs = Matrix::from_fn(c, c, |a, b| rational::int(self.zeta[reps[a]][reps[b]] as i64));
        let zinv = inverse(&zs).map_err(|_| FinCatError::NoInversion)?;
        let sizes: Vec<i64> = self.iso_classes.iter().map(|c| c.len() as i64).collect();
        let mut class_of = vec![0; self.len()];
        for (k, class) in self.iso_classes.iter().enumerate() {
            for &x in class {
                class_of[x] = k;
            }
        }
        let n = self.len();
        let nu = Matrix::from_fn(n, n, |x, y| {
            let (a, b) = (class_of[x], class_of[y]);
            zinv.get(a, b) / Rational::from_integer((sizes[a] * sizes[b]).into())
        });
        debug_assert_eq!(nu.mul(&self.zeta()), self.idempotent_e());
        debug_assert_eq!(self.zeta().mul(&nu), self.idempotent_e());
        Ok(nu)
    }

    /// `k = ν·𝟙`, the weighting constant on iso classes.
    pub fn skeletal_weighting(&self) -> Result<WeightFunction, FinCatError> {
        let nu = self.skeletal_nu()?;
        Ok((0..self.len()).map(|x| nu.row(x).iter().sum()).collect())
    }

    /// `𝟙·ν`, the coweighting constant on iso classes.
    pub fn skeletal_coweighting(&self) -> Result<WeightFunction, FinCatError> {
        let nu = self.skeletal_nu()?;
        Ok((0..self.len()).map(|y| (0..self.len()).map(|x| nu.get(x, y)).sum()).collect())
    }

    /// Sum of all entries of ν.
    pub fn euler_char(&self) -> Result<Rational, FinCatError> {
        Ok(self.skeletal_nu()?.total())
    }

    /// `Σ_n |N_n C| tⁿ` in closed form, `𝟙ᵀ (I − (ζ − I) t)⁻¹ 𝟙`.
    pub fn series_generating(&self) -> RationalFunction {
        let n = self.len();
        if n == 0 {
            return RationalFunction::zero();
        }
        let a = Matrix::from_fn(n, n, |i, j| {
            let off = self.zeta[i][j] as i64 - i64::from(i == j);
            let p = Polynomial::new(vec![Rational::zero(), rational::int(-off)]);
            if i == j {
                p + Polynomial::one()
            } else {
                p
            }
        });
        let ones = Matrix::from_fn(n, 1, |_, _| Polynomial::one());
        let x = poly_solve(&a, &ones).expect("I − (ζ − I)t is invertible over Q(t): its determinant is 1 at t = 0");
        (0..n).fold(RationalFunction::zero(), |acc, i| &acc + x.get(i, 0))
    }

    /// `f_C(−1)` when the reduced generating function is regular there.
    pub fn series_euler(&self) -> Result<Rational, FinCatError> {
        self.series_generating().eval(&-Rational::one()).map_err(|_| FinCatError::NotInLocalization)
    }

    /// `𝟙ᵀ (ζ − I)ⁿ 𝟙`, the number of non-degenerate `n`-simplices of the nerve.
    pub fn nerve_count(&self, n: usize) -> BigInt {
        let m = self.len();
        let mut v: Vec<BigInt> = vec![BigInt::one(); m];
        for _ in 0..n {
            v = (0..m)
                .map(|i| (0..m).map(|j| BigInt::from(self.zeta[i][j] - u64::from(i == j)) * &v[j]).sum())
                .collect();
        }
        v.into_iter().sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, FinCatError> {
        let raw: FinCat = serde_json::from_value(v.clone()).map_err(|e| FinCatError::Invalid(e.to_string()))?;
        Self::new(raw.objects, raw.zeta, raw.iso_classes, raw.ei)
    }
}
