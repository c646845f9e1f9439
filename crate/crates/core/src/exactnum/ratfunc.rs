//! Reduced rational functions over Q, the field Q(t).

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::Zero;

use super::poly::Polynomial;
use super::rational::Rational;
use super::ExactError;

/// `num / den` with `gcd(num, den) = 1` and `den` monic. Zero is `0 / 1`.
///
/// Every constructor reduces, so structural equality is equality in Q(t).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    /// Canonical form of `num / den`.
    pub fn reduce(num: Polynomial, den: Polynomial) -> Result<Self, ExactError> {
        if den.is_zero() {
            return Err(ExactError::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() { (num, den) } else { (num.exact_div(&g), den.exact_div(&g)) };
        let lc = den.leading().expect("nonzero denominator").recip();
        Ok(RationalFunction { num: num.scale(&lc), den: den.scale(&lc) })
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RationalFunction { num: p, den: Polynomial::one() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn zero() -> Self {
        Self::from_poly(Polynomial::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(Polynomial::one())
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// True iff the reduced denominator does not vanish at `x`, i.e. the
    /// function lies in the local ring at `t - x`.
    pub fn regular_at(&self, x: &Rational) -> bool {
        !self.den.eval(x).is_zero()
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational, ExactError> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(ExactError::Pole(super::rational::to_string(x)));
        }
        Ok(self.num.eval(x) / d)
    }

    /// First `n + 1` power-series coefficients around `t = 0`.
    pub fn taylor(&self, n: usize) -> Result<Vec<Rational>, ExactError> {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return Err(ExactError::Pole("0".into()));
        }
        let inv = d0.recip();
        let mut out: Vec<Rational> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = self.num.coeff(k);
            for j in 1..=k.min(self.den.coeffs().len().saturating_sub(1)) {
                acc -= self.den.coeff(j) * &out[k - j];
            }
            out.push(acc * &inv);
        }
        Ok(out)
    }

    pub fn recip(&self) -> Result<Self, ExactError> {
        Self::reduce(self.den.clone(), self.num.clone())
    }
}

impl Add<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::reduce(&self.num + &rhs.num, self.den.clone()).expect("nonzero");
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RationalFunction::reduce(num, &self.den * &rhs.den).expect("product of nonzero denominators")
    }
}

impl Sub<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::reduce(&self.num * &rhs.num, &self.den * &rhs.den).expect("product of nonzero denominators")
    }
}

impl Div<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    /// Panics on division by zero; use [`RationalFunction::recip`] to get an error instead.
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        assert!(!rhs.is_zero(), "division by the zero rational function");
        RationalFunction::reduce(&self.num * &rhs.den, &self.den * &rhs.num).expect("checked nonzero")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        Self::from_poly(p)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl Default for RationalFunction {
    fn default() -> Self {
        Self::zero()
    }
}

impl Zero for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl Add for RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::{int, ratio};

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    #[test]
    fn reduce_examples() {
        let f = RationalFunction::reduce(p(&[-1, 0, 1]), p(&[1, 1])).unwrap();
        assert_eq!((f.num(), f.den()), (&p(&[-1, 1]), &p(&[1])));
        let f = RationalFunction::reduce(p(&[0]), p(&[2, 0, 0, 1])).unwrap();
        assert_eq!((f.num(), f.den()), (&p(&[]), &p(&[1])));
        let f = RationalFunction::reduce(p(&[2, 2]), p(&[4, 4])).unwrap();
        assert_eq!(f, RationalFunction::constant(ratio(1, 2)));
        assert_eq!(RationalFunction::reduce(p(&[1]), p(&[])), Err(ExactError::ZeroDenominator));
    }

    #[test]
    fn denominator_is_monic() {
        let f = RationalFunction::reduce(p(&[3]), p(&[1, -2])).unwrap();
        assert_eq!(f.den().leading(), Some(&int(1)));
        assert_eq!(f.num(), &Polynomial::constant(ratio(-3, 2)));
    }

    #[test]
    fn regularity_and_evaluation() {
        let m1 = int(-1);
        let geo = RationalFunction::reduce(p(&[1]), p(&[1, -2])).unwrap();
        assert!(geo.regular_at(&m1));
        assert_eq!(geo.eval(&m1).unwrap(), ratio(1, 3));
        let pole = RationalFunction::reduce(p(&[1]), p(&[1, 1])).unwrap();
        assert!(!pole.regular_at(&m1));
        assert!(matches!(pole.eval(&m1), Err(ExactError::Pole(_))));
        let removable = RationalFunction::reduce(p(&[-1, 0, 1]), p(&[1, 1])).unwrap();
        assert!(removable.regular_at(&m1));
        assert_eq!(removable.eval(&m1).unwrap(), int(-2));
    }

    #[test]
    fn geometric_series_for_n_6() {
        // Oracle: partial sums of sum_k (n-1)^k t^k against the closed form.
        let n = 6i64;
        let f = RationalFunction::reduce(p(&[1]), p(&[1, -(n - 1)])).unwrap();
        let series = f.taylor(20).unwrap();
        for (k, c) in series.iter().enumerate() {
            assert_eq!(c, &int((n - 1).pow(k as u32)));
        }
        assert_eq!(f.eval(&int(-1)).unwrap(), ratio(1, 6));
    }
}
