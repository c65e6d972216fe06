//! Truncated bivariate Taylor series in `(eps1, eps2)`.

use super::jet::is_negligible;
use super::{Scalar, UniJet};
use crate::error::{Error, Result};

/// Coefficients `t_ij` of `eps1^i eps2^j` for `i <= order1`, `j <= order2`,
/// stored row-major in `i`.
#[derive(Clone, Debug, PartialEq)]
pub struct BiJet {
    order1: usize,
    order2: usize,
    coeffs: Vec<Scalar>,
}

impl BiJet {
    pub fn zero(prec: u32, order1: usize, order2: usize) -> Self {
        BiJet {
            order1,
            order2,
            coeffs: vec![Scalar::zero(prec); (order1 + 1) * (order2 + 1)],
        }
    }

    pub fn constant(value: Scalar, order1: usize, order2: usize) -> Self {
        let mut out = BiJet::zero(value.prec(), order1, order2);
        out.coeffs[0] = value;
        out
    }

    /// `f(eps1)` viewed as a bivariate jet.
    pub fn from_first(f: &UniJet, order2: usize) -> Self {
        BiJet::outer(f, &UniJet::constant(Scalar::one(f.prec()), order2))
    }

    /// `g(eps2)` viewed as a bivariate jet.
    pub fn from_second(order1: usize, g: &UniJet) -> Self {
        BiJet::outer(&UniJet::constant(Scalar::one(g.prec()), order1), g)
    }

    /// `f(eps1) * g(eps2)`.
    pub fn outer(f: &UniJet, g: &UniJet) -> Self {
        let (o1, o2) = (f.order(), g.order());
        let mut coeffs = Vec::with_capacity((o1 + 1) * (o2 + 1));
        for i in 0..=o1 {
            for j in 0..=o2 {
                coeffs.push(f.coeff(i) * g.coeff(j));
            }
        }
        BiJet {
            order1: o1,
            order2: o2,
            coeffs,
        }
    }

    /// `g(eps2 - eps1)` from the univariate jet of `g`, which must have order
    /// at least `order1 + order2`.
    pub fn of_difference(g: &UniJet, order1: usize, order2: usize) -> Result<Self> {
        if g.order() < order1 + order2 {
            return Err(Error::DimensionMismatch(format!(
                "jet of order {} cannot feed bivariate orders ({order1}, {order2})",
                g.order()
            )));
        }
        let prec = g.prec();
        let mut out = BiJet::zero(prec, order1, order2);
        // (eps2 - eps1)^m = sum_i C(m, i) (-eps1)^i eps2^(m-i)
        for i in 0..=order1 {
            for j in 0..=order2 {
                let m = i + j;
                let binom = rug::Integer::from(rug::Integer::binomial_u(m as u32, i as u32));
                let mut term = g.coeff(m) * Scalar::from_integer(prec, &binom);
                if i % 2 == 1 {
                    term = -term;
                }
                out.set(i, j, term);
            }
        }
        Ok(out)
    }

    pub fn orders(&self) -> (usize, usize) {
        (self.order1, self.order2)
    }

    pub fn prec(&self) -> u32 {
        self.coeffs[0].prec()
    }

    fn idx(&self, i: usize, j: usize) -> usize {
        i * (self.order2 + 1) + j
    }

    pub fn coeff(&self, i: usize, j: usize) -> &Scalar {
        &self.coeffs[self.idx(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        let k = self.idx(i, j);
        self.coeffs[k] = value;
    }

    /// `d^i/d eps1^i d^j/d eps2^j` at the origin: `i! j! t_ij`.
    pub fn derivative(&self, i: usize, j: usize) -> Scalar {
        let prec = self.prec();
        self.coeff(i, j) * Scalar::factorial(prec, i as u32) * Scalar::factorial(prec, j as u32)
    }

    fn common_orders(&self, other: &BiJet) -> (usize, usize) {
        (self.order1.min(other.order1), self.order2.min(other.order2))
    }

    pub fn add_jet(&self, other: &BiJet) -> Self {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub_jet(&self, other: &BiJet) -> Self {
        self.zip(other, |a, b| a - b)
    }

    fn zip(&self, other: &BiJet, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Self {
        let (o1, o2) = self.common_orders(other);
        let mut out = BiJet::zero(self.prec().min(other.prec()), o1, o2);
        for i in 0..=o1 {
            for j in 0..=o2 {
                out.set(i, j, f(self.coeff(i, j), other.coeff(i, j)));
            }
        }
        out
    }

    pub fn scale(&self, factor: &Scalar) -> Self {
        BiJet {
            order1: self.order1,
            order2: self.order2,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Product truncated to the common orders.
    pub fn mul_jet(&self, other: &BiJet) -> Self {
        let (o1, o2) = self.common_orders(other);
        let prec = self.prec().min(other.prec());
        let mut out = BiJet::zero(prec, o1, o2);
        for i in 0..=o1 {
            for j in 0..=o2 {
                let mut acc = Scalar::zero(prec);
                for p in 0..=i {
                    for q in 0..=j {
                        acc += &(self.coeff(p, q) * other.coeff(i - p, j - q));
                    }
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn powi(&self, exp: u32) -> Self {
        let mut out = BiJet::constant(Scalar::one(self.prec()), self.order1, self.order2);
        for _ in 0..exp {
            out = out.mul_jet(self);
        }
        out
    }

    /// Quotient `q` with `self = q * den` on the truncated algebra.
    pub fn try_div(&self, den: &BiJet) -> Result<Self> {
        let (o1, o2) = self.common_orders(den);
        let d0 = den.coeff(0, 0);
        if is_negligible(d0, &den.coeffs) {
            return Err(Error::SingularJetDivision);
        }
        let inv = d0.recip();
        let prec = self.prec().min(den.prec());
        let mut q = BiJet::zero(prec, o1, o2);
        for i in 0..=o1 {
            for j in 0..=o2 {
                let mut acc = self.coeff(i, j).clone();
                for p in 0..=i {
                    for r in 0..=j {
                        if p == 0 && r == 0 {
                            continue;
                        }
                        acc -= &(den.coeff(p, r) * q.coeff(i - p, j - r));
                    }
                }
                q.set(i, j, acc * &inv);
            }
        }
        Ok(q)
    }

    pub fn max_deviation(&self, other: &BiJet) -> Scalar {
        let (o1, o2) = self.common_orders(other);
        let mut worst = Scalar::zero(self.prec());
        for i in 0..=o1 {
            for j in 0..=o2 {
                worst = worst.max((self.coeff(i, j) - other.coeff(i, j)).abs());
            }
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 256;

    #[test]
    fn outer_product_separates() {
        let f = UniJet::sin_affine(&Scalar::from_f64(P, 0.3), 3);
        let g = UniJet::sin_affine(&Scalar::from_f64(P, 1.1), 2);
        let b = BiJet::outer(&f, &g);
        assert_eq!(b.orders(), (3, 2));
        assert_eq!(b.coeff(2, 1), &(f.coeff(2) * g.coeff(1)));
    }

    #[test]
    fn product_and_quotient_are_inverse() {
        let f = UniJet::sin_affine(&Scalar::from_f64(P, 0.3), 6);
        let g = UniJet::sin_affine(&Scalar::from_f64(P, 0.8), 6);
        let a = BiJet::of_difference(&f, 3, 3).unwrap();
        let b = BiJet::outer(&g.truncate(3), &g.truncate(3));
        let back = a.mul_jet(&b).try_div(&b).unwrap();
        assert!(back.max_deviation(&a).to_f64() < 1e-70);
    }

    #[test]
    fn singular_division() {
        let f = UniJet::sin_affine(&Scalar::zero(P), 2);
        let b = BiJet::from_first(&f, 2);
        assert_eq!(b.try_div(&b), Err(Error::SingularJetDivision));
    }

    #[test]
    fn difference_needs_enough_order() {
        let f = UniJet::sin_affine(&Scalar::zero(P), 3);
        assert!(BiJet::of_difference(&f, 2, 2).is_err());
    }
}
