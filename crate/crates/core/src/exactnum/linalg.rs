//! Dense matrices over exact rings and fraction-free (Bareiss) solving.

use std::fmt::Debug;

use num_traits::{One, Zero};

use super::poly::Polynomial;
use super::ratfunc::RationalFunction;
use super::rational::Rational;
use super::ExactError;

/// An exact integral domain whose divisions in elimination are exact.
pub trait Scalar: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// Division known to be exact in the domain.
    fn exact_div(&self, rhs: &Self) -> Self;
}

/// A field: every nonzero element divides every element.
pub trait FieldScalar: Scalar {}

impl Scalar for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn exact_div(&self, rhs: &Self) -> Self {
        self / rhs
    }
}
impl FieldScalar for Rational {}

impl Scalar for Polynomial {
    fn zero() -> Self {
        Polynomial::zero()
    }
    fn one() -> Self {
        Polynomial::one()
    }
    fn is_zero(&self) -> bool {
        Polynomial::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn exact_div(&self, rhs: &Self) -> Self {
        Polynomial::exact_div(self, rhs)
    }
}

impl Scalar for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn one() -> Self {
        RationalFunction::one()
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn exact_div(&self, rhs: &Self) -> Self {
        self / rhs
    }
}
impl FieldScalar for RationalFunction {}

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    /// Column vector of ones.
    pub fn ones_column(n: usize) -> Self {
        Self::from_fn(n, 1, |_, _| T::one())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        Self::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                acc = acc.add(&a.mul(rhs.get(k, j)));
            }
            acc
        })
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j).sub(rhs.get(i, j)))
    }

    /// Sum of every entry.
    pub fn total(&self) -> T {
        self.data.iter().fold(T::zero(), |acc, x| acc.add(x))
    }
}

/// Fraction-free solve: returns `(Y, d)` with `A * Y = d * B` and `d = ±det A`.
///
/// Every intermediate entry is a minor of `[A | B]`, so over a polynomial ring
/// all divisions are exact and no rational-function arithmetic is needed.
pub fn bareiss_solve<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Result<(Matrix<T>, T), ExactError> {
    let n = a.rows;
    if a.cols != n {
        return Err(ExactError::NotSquare { rows: a.rows, cols: a.cols });
    }
    if b.rows != n {
        return Err(ExactError::DimensionMismatch);
    }
    let m = b.cols;
    let w = n + m;
    let mut aug: Vec<Vec<T>> = (0..n)
        .map(|i| a.row(i).iter().chain(b.row(i).iter()).cloned().collect())
        .collect();
    let mut prev = T::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !aug[r][k].is_zero()) else {
            return Err(ExactError::Singular);
        };
        aug.swap(k, p);
        let (top, bottom) = aug.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in bottom.iter_mut() {
            let factor = row[k].clone();
            for j in k + 1..w {
                let v = pivot_row[k].mul(&row[j]).sub(&factor.mul(&pivot_row[j]));
                row[j] = v.exact_div(&prev);
            }
            row[k] = T::zero();
        }
        prev = aug[k][k].clone();
    }
    let det = prev;
    // Back substitution on det * x, which is again a vector of minors.
    let mut y: Vec<Vec<T>> = vec![vec![T::zero(); m]; n];
    for i in (0..n).rev() {
        for c in 0..m {
            let mut acc = det.mul(&aug[i][n + c]);
            for j in i + 1..n {
                if !aug[i][j].is_zero() {
                    acc = acc.sub(&aug[i][j].mul(&y[j][c]));
                }
            }
            y[i][c] = acc.exact_div(&aug[i][i]);
        }
    }
    Ok((Matrix::from_rows(y), det))
}

/// Solves `A X = B` exactly over a field.
pub fn mat_solve<T: FieldScalar>(a: &Matrix<T>, b: &Matrix<T>) -> Result<Matrix<T>, ExactError> {
    let (y, d) = bareiss_solve(a, b)?;
    Ok(y.map(|v| v.exact_div(&d)))
}

/// Solves `A X = B` for a polynomial matrix, returning the reduced rational-function solution.
pub fn poly_solve(a: &Matrix<Polynomial>, b: &Matrix<Polynomial>) -> Result<Matrix<RationalFunction>, ExactError> {
    let (y, d) = bareiss_solve(a, b)?;
    Ok(y.map(|v| RationalFunction::reduce(v.clone(), d.clone()).expect("nonzero determinant")))
}

/// Inverse of a square matrix over a field.
pub fn inverse<T: FieldScalar>(a: &Matrix<T>) -> Result<Matrix<T>, ExactError> {
    mat_solve(a, &Matrix::identity(a.rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::{int, ratio};

    fn q(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    #[test]
    fn identity_returns_rhs() {
        let b = q(&[&[1, 2], &[3, 4], &[5, -6]]);
        assert_eq!(mat_solve(&Matrix::identity(3), &b).unwrap(), b);
    }

    #[test]
    fn one_by_one() {
        let x = mat_solve(&q(&[&[2]]), &q(&[&[1]])).unwrap();
        assert_eq!(x.get(0, 0), &ratio(1, 2));
    }

    #[test]
    fn singular_is_reported() {
        assert_eq!(mat_solve(&q(&[&[1, 2], &[2, 4]]), &q(&[&[1], &[1]])), Err(ExactError::Singular));
        assert!(matches!(mat_solve(&q(&[&[1, 2]]), &q(&[&[1]])), Err(ExactError::NotSquare { .. })));
    }

    #[test]
    fn needs_pivoting() {
        let a = q(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]]);
        let b = q(&[&[1], &[2], &[3]]);
        let x = mat_solve(&a, &b).unwrap();
        assert_eq!(a.mul(&x), b);
    }

    #[test]
    fn one_object_geometric_series() {
        for n in 1..=8i64 {
            // A = 1 - (n - 1) t
            let a = Matrix::from_rows(vec![vec![RationalFunction::from_poly(Polynomial::from_ints(&[1, -(n - 1)]))]]);
            let b = Matrix::from_rows(vec![vec![RationalFunction::one()]]);
            let x = mat_solve(&a, &b).unwrap();
            let expected = RationalFunction::reduce(Polynomial::one(), Polynomial::from_ints(&[1, -(n - 1)])).unwrap();
            assert_eq!(x.get(0, 0), &expected);
            assert_eq!(a.mul(&x), b);
        }
    }

    #[test]
    fn polynomial_system_multiplies_back() {
        let p = |c: &[i64]| Polynomial::from_ints(c);
        let a = Matrix::from_rows(vec![vec![p(&[1, -1]), p(&[0, -2])], vec![p(&[0, -1]), p(&[1, -3])]]);
        let b = Matrix::ones_column(2);
        let x = poly_solve(&a, &b).unwrap();
        let af = a.map(|v| RationalFunction::from_poly(v.clone()));
        assert_eq!(af.mul(&x), b.map(|v| RationalFunction::from_poly(v.clone())));
    }
}
