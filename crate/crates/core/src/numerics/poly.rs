//! Dense polynomials in one or two variables over a generic coefficient
//! type (floating scalars, exact integers or exact rationals).

use std::fmt::Debug;

use rug::{Integer, Rational};

use super::Scalar;
use crate::error::{Error, Result};

/// Arithmetic needed by the polynomial routines. The method names avoid the
/// `std::ops` ones so the trait can be implemented for types that already
/// overload operators.
pub trait Coefficient: Clone + Debug {
    fn zero_like(&self) -> Self;
    fn from_i64_like(&self, value: i64) -> Self;
    fn is_zero_coeff(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    /// `self / rhs`, or `None` when the quotient does not exist in the ring.
    fn exact_div(&self, rhs: &Self) -> Option<Self>;
    /// Absolute value as an `f64`, for tolerance tests.
    fn magnitude(&self) -> f64;

    fn one_like(&self) -> Self {
        self.from_i64_like(1)
    }

    fn pow_u32(&self, exp: u32) -> Self {
        let mut out = self.one_like();
        for _ in 0..exp {
            out = out.times(self);
        }
        out
    }
}

impl Coefficient for Scalar {
    fn zero_like(&self) -> Self {
        Scalar::zero(self.prec())
    }
    fn from_i64_like(&self, value: i64) -> Self {
        Scalar::from_int(self.prec(), value)
    }
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        (!rhs.is_zero()).then(|| self / rhs)
    }
    fn magnitude(&self) -> f64 {
        self.abs().to_f64()
    }
    fn pow_u32(&self, exp: u32) -> Self {
        self.powi(exp as i32)
    }
}

impl Coefficient for Integer {
    fn zero_like(&self) -> Self {
        Integer::new()
    }
    fn from_i64_like(&self, value: i64) -> Self {
        Integer::from(value)
    }
    fn is_zero_coeff(&self) -> bool {
        *self == 0
    }
    fn plus(&self, rhs: &Self) -> Self {
        Integer::from(self + rhs)
    }
    fn minus(&self, rhs: &Self) -> Self {
        Integer::from(self - rhs)
    }
    fn times(&self, rhs: &Self) -> Self {
        Integer::from(self * rhs)
    }
    fn negated(&self) -> Self {
        Integer::from(-self)
    }
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        if *rhs == 0 || !self.is_divisible(rhs) {
            return None;
        }
        Some(Integer::from(self.div_exact_ref(rhs)))
    }
    fn magnitude(&self) -> f64 {
        self.to_f64().abs()
    }
}

impl Coefficient for Rational {
    fn zero_like(&self) -> Self {
        Rational::new()
    }
    fn from_i64_like(&self, value: i64) -> Self {
        Rational::from(value)
    }
    fn is_zero_coeff(&self) -> bool {
        *self == 0
    }
    fn plus(&self, rhs: &Self) -> Self {
        Rational::from(self + rhs)
    }
    fn minus(&self, rhs: &Self) -> Self {
        Rational::from(self - rhs)
    }
    fn times(&self, rhs: &Self) -> Self {
        Rational::from(self * rhs)
    }
    fn negated(&self) -> Self {
        Rational::from(-self)
    }
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        (*rhs != 0).then(|| Rational::from(self / rhs))
    }
    fn magnitude(&self) -> f64 {
        self.to_f64().abs()
    }
}

/// Univariate polynomial, `coeffs[k]` multiplying `x^k`. Trailing zero
/// coefficients are dropped, so the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct DensePoly<T> {
    coeffs: Vec<T>,
}

impl<T: Coefficient> DensePoly<T> {
    pub fn new(coeffs: Vec<T>) -> Self {
        let mut p = DensePoly { coeffs };
        p.normalize();
        p
    }

    pub fn zero() -> Self {
        DensePoly { coeffs: Vec::new() }
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(T::is_zero_coeff) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of `x^k`, or `None` past the degree.
    pub fn coeff(&self, k: usize) -> Option<&T> {
        self.coeffs.get(k)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|k| match (self.coeffs.get(k), other.coeffs.get(k)) {
                (Some(a), Some(b)) => a.plus(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        DensePoly::new(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        DensePoly {
            coeffs: self.coeffs.iter().map(T::negated).collect(),
        }
    }

    pub fn scale(&self, factor: &T) -> Self {
        DensePoly::new(self.coeffs.iter().map(|c| c.times(factor)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return DensePoly::zero();
        }
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].plus(&a.times(b));
            }
        }
        DensePoly::new(out)
    }

    /// Horner evaluation; the zero polynomial evaluates to `x.zero_like()`.
    pub fn eval(&self, x: &T) -> T {
        let mut acc = x.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc.times(x).plus(c);
        }
        acc
    }

    /// Sum of the coefficients.
    pub fn sum_coeffs(&self) -> Option<T> {
        let mut it = self.coeffs.iter();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, c| acc.plus(c)))
    }

    /// Largest coefficient difference.
    pub fn max_deviation(&self, other: &Self) -> f64 {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n)
            .map(|k| match (self.coeffs.get(k), other.coeffs.get(k)) {
                (Some(a), Some(b)) => a.minus(b).magnitude(),
                (Some(a), None) | (None, Some(a)) => a.magnitude(),
                (None, None) => 0.0,
            })
            .fold(0.0, f64::max)
    }
}

/// Bivariate polynomial, `coeffs[i][j]` multiplying `u^i v^j`.
#[derive(Clone, Debug, PartialEq)]
pub struct DensePoly2<T> {
    coeffs: Vec<Vec<T>>,
}

impl<T: Coefficient> DensePoly2<T> {
    /// Builds from a rectangular or ragged coefficient table.
    pub fn new(coeffs: Vec<Vec<T>>) -> Self {
        let mut p = DensePoly2 { coeffs };
        p.normalize();
        p
    }

    pub fn zero() -> Self {
        DensePoly2 { coeffs: Vec::new() }
    }

    fn normalize(&mut self) {
        for row in &mut self.coeffs {
            while row.last().is_some_and(T::is_zero_coeff) {
                row.pop();
            }
        }
        while self.coeffs.last().is_some_and(Vec::is_empty) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `u^i v^j`, `None` if structurally absent (zero).
    pub fn coeff(&self, i: usize, j: usize) -> Option<&T> {
        self.coeffs.get(i).and_then(|row| row.get(j))
    }

    pub fn degree_u(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn degree_v(&self) -> Option<usize> {
        self.coeffs
            .iter()
            .filter_map(|r| r.len().checked_sub(1))
            .max()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        self.coeffs
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().enumerate().map(move |(j, c)| (i, j, c)))
    }

    /// `f(u) * g(v)`.
    pub fn outer(f: &DensePoly<T>, g: &DensePoly<T>) -> Self {
        DensePoly2::new(
            f.coeffs()
                .iter()
                .map(|a| g.coeffs().iter().map(|b| a.times(b)).collect())
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let rows = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(rows);
        for i in 0..rows {
            let a = self.coeffs.get(i).map_or(&[][..], Vec::as_slice);
            let b = other.coeffs.get(i).map_or(&[][..], Vec::as_slice);
            let cols = a.len().max(b.len());
            out.push(
                (0..cols)
                    .map(|j| match (a.get(j), b.get(j)) {
                        (Some(x), Some(y)) => x.plus(y),
                        (Some(x), None) => x.clone(),
                        (None, Some(y)) => y.clone(),
                        (None, None) => unreachable!(),
                    })
                    .collect(),
            );
        }
        DensePoly2::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        DensePoly2 {
            coeffs: self
                .coeffs
                .iter()
                .map(|row| row.iter().map(T::negated).collect())
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let Some(zero) = self.terms().next().map(|(_, _, c)| c.zero_like()) else {
            return DensePoly2::zero();
        };
        let (Some(du), Some(dv)) = (
            self.degree_u().zip(other.degree_u()).map(|(a, b)| a + b),
            self.degree_v().zip(other.degree_v()).map(|(a, b)| a + b),
        ) else {
            return DensePoly2::zero();
        };
        let mut out = vec![vec![zero; dv + 1]; du + 1];
        for (i, j, a) in self.terms() {
            for (p, q, b) in other.terms() {
                out[i + p][j + q] = out[i + p][j + q].plus(&a.times(b));
            }
        }
        DensePoly2::new(out)
    }

    /// Largest coefficient difference.
    pub fn max_deviation(&self, other: &Self) -> f64 {
        self.sub(other)
            .terms()
            .map(|(_, _, c)| c.magnitude())
            .fold(0.0, f64::max)
    }

    /// Multivariate long division in lex order (`u > v`). Returns the
    /// quotient when the remainder's largest coefficient is at most
    /// `tolerance`; otherwise `InexactDivision`.
    pub fn divide_exact(&self, divisor: &Self, tolerance: f64) -> Result<Self> {
        let (quotient, remainder) = self.divide_lex(divisor)?;
        let max_remainder = remainder
            .terms()
            .map(|(_, _, c)| c.magnitude())
            .fold(0.0, f64::max);
        if max_remainder > tolerance {
            return Err(Error::InexactDivision { max_remainder });
        }
        Ok(quotient)
    }

    /// Quotient and remainder of lex-order division.
    pub fn divide_lex(&self, divisor: &Self) -> Result<(Self, Self)> {
        let Some((lu, lv, lc)) = divisor.leading_term() else {
            return Err(Error::DimensionMismatch(
                "division by the zero polynomial".into(),
            ));
        };
        let lc = lc.clone();
        let mut work = self.clone();
        let mut quotient = DensePoly2::zero();
        let mut remainder = DensePoly2::zero();
        while let Some((i, j, c)) = work.leading_term() {
            let c = c.clone();
            let single = DensePoly2::monomial(i, j, c.clone());
            if i >= lu && j >= lv {
                if let Some(q) = c.exact_div(&lc) {
                    let term = DensePoly2::monomial(i - lu, j - lv, q);
                    work = work.sub(&term.mul(divisor));
                    // guard against rounding leaving the leading term behind
                    if let Some((i2, j2, c2)) = work.leading_term() {
                        if (i2, j2) == (i, j) {
                            let stuck = DensePoly2::monomial(i, j, c2.clone());
                            work = work.sub(&stuck);
                            remainder = remainder.add(&stuck);
                        }
                    }
                    quotient = quotient.add(&term);
                    continue;
                }
            }
            work = work.sub(&single);
            remainder = remainder.add(&single);
        }
        Ok((quotient, remainder))
    }

    pub fn monomial(i: usize, j: usize, c: T) -> Self {
        let zero = c.zero_like();
        let mut coeffs = vec![Vec::new(); i + 1];
        coeffs[i] = vec![zero; j + 1];
        coeffs[i][j] = c;
        DensePoly2::new(coeffs)
    }

    /// Lex-leading nonzero term `(i, j, coeff)`.
    fn leading_term(&self) -> Option<(usize, usize, &T)> {
        let i = self.coeffs.len().checked_sub(1)?;
        let row = &self.coeffs[i];
        let j = row.len() - 1;
        Some((i, j, &row[j]))
    }

    /// Evaluation at `(u, v)`.
    pub fn eval(&self, u: &T, v: &T) -> T {
        let mut acc = u.zero_like();
        for row in self.coeffs.iter().rev() {
            let mut inner = v.zero_like();
            for c in row.iter().rev() {
                inner = inner.times(v).plus(c);
            }
            acc = acc.times(u).plus(&inner);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(rows: &[&[i64]]) -> DensePoly2<Integer> {
        DensePoly2::new(
            rows.iter()
                .map(|r| r.iter().map(|&v| Integer::from(v)).collect())
                .collect(),
        )
    }

    #[test]
    fn normalization_drops_trailing_zeros() {
        let p = DensePoly::new(vec![Integer::from(1), Integer::from(0), Integer::from(0)]);
        assert_eq!(p.degree(), Some(0));
        assert!(DensePoly::new(vec![Integer::from(0)]).is_zero());
    }

    #[test]
    fn difference_of_squares() {
        // u^2 - v^2 over u - v
        let p = ip(&[&[0, 0, -1], &[], &[1]]);
        let q = ip(&[&[0, -1], &[1]]);
        let quotient = p.divide_exact(&q, 0.0).unwrap();
        assert_eq!(quotient, ip(&[&[0, 1], &[1]]));
    }

    #[test]
    fn divide_by_itself() {
        let q = ip(&[&[0, -1], &[1]]);
        assert_eq!(q.divide_exact(&q, 0.0).unwrap(), ip(&[&[1]]));
    }

    #[test]
    fn inexact_division_reports_remainder() {
        let p = ip(&[&[3], &[1]]); // u + 3
        let q = ip(&[&[0, -1], &[1]]);
        match p.divide_exact(&q, 0.5) {
            Err(Error::InexactDivision { max_remainder }) => assert_eq!(max_remainder, 3.0),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn horner_evaluation() {
        let p = DensePoly::new(vec![Rational::from(6), Rational::from(1)]);
        assert_eq!(p.eval(&Rational::from(2)), Rational::from(8));
        let q = ip(&[&[1, 2], &[3]]); // 1 + 2v + 3u
        assert_eq!(
            q.eval(&Integer::from(2), &Integer::from(5)),
            Integer::from(17)
        );
    }
}
