//! The two-point function rebuilt from one-point functions at sizes `N` and
//! `N - 1`, and the same statement for generating functions.
//!
//! Everything here is generic over the coefficient ring so the identity can
//! be applied to exact rational census data as well as to floating values.

use crate::error::{Error, Result};
use crate::homogeneous::{HomogeneousModel, WeightParams};
use crate::numerics::{Coefficient, DensePoly, DensePoly2, Scalar};

/// `H^(r)` from a table indexed `r - 1`, zero outside `1..=len`.
fn entry<T: Coefficient>(table: &[T], r: i64, zero: &T) -> T {
    if r >= 1 && (r as usize) <= table.len() {
        table[r as usize - 1].clone()
    } else {
        zero.clone()
    }
}

/// Index offsets of the four summands, `H_N^(r1 - j + s0) H_{N-1}^(N - r2 + j)`
/// and so on; `[1, 0, 0, 0]` is the identity itself. Other values only serve
/// the diagnostic scan.
pub type Shifts = [i64; 4];

pub const STANDARD_SHIFTS: Shifts = [1, 0, 0, 0];

/// `H_N^(r1, r2)` from the one-point tables `h_n` (size `N`) and `h_nm1`
/// (size `N - 1`), summing `j` from 1 to `j_max`.
pub fn two_point_from_one_point_with<T: Coefficient>(
    h_n: &[T],
    h_nm1: &[T],
    r1: usize,
    r2: usize,
    j_max: usize,
    shifts: Shifts,
) -> T {
    let zero = h_n[0].zero_like();
    let n = h_n.len() as i64;
    let (r1, r2) = (r1 as i64, r2 as i64);
    let big = |r: i64| entry(h_n, r, &zero);
    let small = |r: i64| entry(h_nm1, r, &zero);
    let mut acc = zero.clone();
    for j in 1..=j_max as i64 {
        let t1 = big(r1 - j + shifts[0]).times(&small(n - r2 + j));
        let t2 = big(r1 - j + shifts[1]).times(&small(n - r2 + j));
        let t3 = small(r1 - j + shifts[2]).times(&big(n - r2 + j + 1));
        let t4 = small(r1 - j + shifts[3]).times(&big(n - r2 + j));
        acc = acc.plus(&t1).minus(&t2).minus(&t3).plus(&t4);
    }
    acc
}

pub fn two_point_from_one_point<T: Coefficient>(h_n: &[T], h_nm1: &[T], r1: usize, r2: usize) -> T {
    two_point_from_one_point_with(h_n, h_nm1, r1, r2, h_n.len(), STANDARD_SHIFTS)
}

/// Full table `[r1 - 1][r2 - 1]`.
pub fn two_point_table_from_one_point<T: Coefficient>(h_n: &[T], h_nm1: &[T]) -> Vec<Vec<T>> {
    let n = h_n.len();
    (1..=n)
        .map(|r1| {
            (1..=n)
                .map(|r2| two_point_from_one_point(h_n, h_nm1, r1, r2))
                .collect()
        })
        .collect()
}

/// Largest magnitude added by running `j` up to `2N` instead of `N`.
pub fn truncation_excess<T: Coefficient>(h_n: &[T], h_nm1: &[T]) -> f64 {
    let n = h_n.len();
    let mut worst = 0f64;
    for r1 in 1..=n {
        for r2 in 1..=n {
            let short = two_point_from_one_point(h_n, h_nm1, r1, r2);
            let long = two_point_from_one_point_with(h_n, h_nm1, r1, r2, 2 * n, STANDARD_SHIFTS);
            worst = worst.max(long.minus(&short).magnitude());
        }
    }
    worst
}

/// One-point tables at sizes `N` and `N - 1` from the determinant formula.
pub fn one_point_tables(n: usize, p: &WeightParams) -> Result<(Vec<Scalar>, Vec<Scalar>)> {
    if n < 2 {
        return Err(Error::UnsupportedSize(n));
    }
    let big = HomogeneousModel::new(n, p)?.one_point_table()?;
    let small = HomogeneousModel::new(n - 1, p)?.one_point_table()?;
    Ok((big, small))
}

pub fn h2_identity(n: usize, r1: usize, r2: usize, p: &WeightParams) -> Result<Scalar> {
    crate::homogeneous::check_position(r1, n.max(1))?;
    crate::homogeneous::check_position(r2, n.max(1))?;
    let (big, small) = one_point_tables(n, p)?;
    Ok(two_point_from_one_point(&big, &small, r1, r2))
}

pub fn h2_identity_table(n: usize, p: &WeightParams) -> Result<Vec<Vec<Scalar>>> {
    let (big, small) = one_point_tables(n, p)?;
    Ok(two_point_table_from_one_point(&big, &small))
}

/// Searches small index offsets for the second and third summands and
/// returns the first choice (in order of total offset) whose table matches
/// `reference` within `tolerance`. Only meaningful when the identity with
/// `STANDARD_SHIFTS` fails.
pub fn shift_scan<T: Coefficient>(
    h_n: &[T],
    h_nm1: &[T],
    reference: &[Vec<T>],
    tolerance: f64,
) -> Option<Shifts> {
    let n = h_n.len();
    let mut candidates: Vec<Shifts> = Vec::new();
    for s1 in -1..=2 {
        for s2 in -1..=1 {
            for s3 in -1..=1 {
                candidates.push([1, s1, s2, s3]);
            }
        }
    }
    candidates.sort_by_key(|s| (s[1].abs() + s[2].abs() + s[3].abs(), *s));
    candidates.into_iter().find(|&shifts| {
        (1..=n).all(|r1| {
            (1..=n).all(|r2| {
                let v = two_point_from_one_point_with(h_n, h_nm1, r1, r2, n, shifts);
                v.minus(&reference[r1 - 1][r2 - 1]).magnitude() <= tolerance
            })
        })
    })
}

/// `H_N(u) = sum_r H_N^(N - r + 1) u^(r - 1)`.
pub fn genfun_onepoint<T: Coefficient>(h: &[T]) -> DensePoly<T> {
    DensePoly::new(h.iter().rev().cloned().collect())
}

/// `H_N(u, v) = sum_{r,s} H_N^(N - r + 1, s) u^(r - 1) v^(s - 1)`.
pub fn genfun_twopoint<T: Coefficient>(table: &[Vec<T>]) -> DensePoly2<T> {
    DensePoly2::new(table.iter().rev().cloned().collect())
}

/// `(u - 1) H_N(u) v H_{N-1}(v) - u H_{N-1}(u) (v - 1) H_N(v)`.
pub fn hnuv_numerator<T: Coefficient>(h_n: &[T], h_nm1: &[T]) -> DensePoly2<T> {
    let one = h_n[0].one_like();
    let zero = one.zero_like();
    let x = DensePoly::new(vec![zero.clone(), one.clone()]);
    let x_minus_one = DensePoly::new(vec![one.negated(), one]);
    let big = genfun_onepoint(h_n);
    let small = genfun_onepoint(h_nm1);
    let lhs = DensePoly2::outer(&x_minus_one.mul(&big), &x.mul(&small));
    let rhs = DensePoly2::outer(&x.mul(&small), &x_minus_one.mul(&big));
    lhs.sub(&rhs)
}

/// `u - v`.
pub fn u_minus_v<T: Coefficient>(like: &T) -> DensePoly2<T> {
    let one = like.one_like();
    DensePoly2::monomial(1, 0, one.clone()).sub(&DensePoly2::monomial(0, 1, one))
}

/// Outcome of dividing the generating-function numerator by `u - v`.
#[derive(Clone, Debug)]
pub struct HnuvReport {
    /// Largest remainder coefficient.
    pub remainder: f64,
    /// Largest coefficient difference between quotient and the two-point
    /// generating function.
    pub deviation: f64,
}

pub fn verify_hnuv<T: Coefficient>(h_n: &[T], h_nm1: &[T], table: &[Vec<T>]) -> Result<HnuvReport> {
    let num = hnuv_numerator(h_n, h_nm1);
    let (quotient, remainder) = num.divide_lex(&u_minus_v(&h_n[0]))?;
    let remainder = remainder
        .terms()
        .map(|(_, _, c)| c.magnitude())
        .fold(0.0, f64::max);
    Ok(HnuvReport {
        remainder,
        deviation: quotient.max_deviation(&genfun_twopoint(table)),
    })
}

/// The generating-function identity with the two-point table from the
/// block determinant.
pub fn verify_hnuv_hom(n: usize, p: &WeightParams) -> Result<HnuvReport> {
    let (big, small) = one_point_tables(n, p)?;
    let table = HomogeneousModel::new(n, p)?.two_point_table()?;
    verify_hnuv(&big, &small, &table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::Rational;

    fn q(a: i64, b: i64) -> Rational {
        Rational::from((a, b))
    }

    #[test]
    fn two_by_two_pattern() {
        // N = 2 at weights with a^2/(a^2+b^2) = p; H_1 = (1)
        let h2 = vec![q(1, 3), q(2, 3)];
        let h1 = vec![q(1, 1)];
        let t = two_point_table_from_one_point(&h2, &h1);
        assert_eq!(t[0][0], 0);
        assert_eq!(t[1][1], 0);
        assert_eq!(t[0][1], q(1, 3));
        assert_eq!(t[1][0], q(2, 3));
    }

    #[test]
    fn genfun_ordering() {
        let h = vec![q(1, 6), q(2, 6), q(3, 6)];
        let g = genfun_onepoint(&h);
        assert_eq!(g.coeffs()[0], q(1, 2));
        assert_eq!(g.coeffs()[2], q(1, 6));
    }

    #[test]
    fn excess_terms_vanish() {
        let h3 = vec![q(2, 7), q(3, 7), q(2, 7)];
        let h2 = vec![q(1, 2), q(1, 2)];
        assert_eq!(truncation_excess(&h3, &h2), 0.0);
    }
}
