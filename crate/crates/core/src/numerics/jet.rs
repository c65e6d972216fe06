//! Truncated univariate Taylor series ("jets").
//!
//! A `UniJet` of order `K` stores `t_0..=t_K` with
//! `f(eps) = sum t_k eps^k + O(eps^(K+1))`. Coefficients are Taylor
//! coefficients, not derivatives: `d^k f / d eps^k (0) = k! * t_k`, and the
//! factorial only appears in [`UniJet::derivative`].

use std::ops::{Add, Mul, Neg, Sub};

use super::Scalar;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct UniJet {
    coeffs: Vec<Scalar>,
}

impl UniJet {
    /// Builds a jet from Taylor coefficients; the order is `coeffs.len() - 1`.
    ///
    /// # Panics
    /// If `coeffs` is empty.
    pub fn from_coeffs(coeffs: Vec<Scalar>) -> Self {
        assert!(!coeffs.is_empty(), "a jet needs at least one coefficient");
        UniJet { coeffs }
    }

    pub fn zero(prec: u32, order: usize) -> Self {
        UniJet {
            coeffs: vec![Scalar::zero(prec); order + 1],
        }
    }

    pub fn constant(value: Scalar, order: usize) -> Self {
        let prec = value.prec();
        let mut coeffs = vec![Scalar::zero(prec); order + 1];
        coeffs[0] = value;
        UniJet { coeffs }
    }

    /// The identity function `eps`.
    pub fn variable(prec: u32, order: usize) -> Self {
        let mut jet = UniJet::zero(prec, order);
        if order >= 1 {
            jet.coeffs[1] = Scalar::one(prec);
        }
        jet
    }

    /// Taylor coefficients of `eps -> sin(eps + offset)` at `eps = 0`:
    /// `t_k = sin(offset + k pi / 2) / k!`.
    pub fn sin_affine(offset: &Scalar, order: usize) -> Self {
        let prec = offset.prec();
        let s = offset.sin();
        let c = offset.cos();
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut inv_fact = Scalar::one(prec);
        for k in 0..=order {
            if k > 0 {
                inv_fact = inv_fact.div_int(k as i64);
            }
            let phase = match k % 4 {
                0 => s.clone(),
                1 => c.clone(),
                2 => -&s,
                _ => -&c,
            };
            coeffs.push(phase * &inv_fact);
        }
        UniJet { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn prec(&self) -> u32 {
        self.coeffs[0].prec()
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &Scalar {
        &self.coeffs[k]
    }

    /// `d^k f / d eps^k` at `eps = 0`, i.e. `k! * t_k`.
    pub fn derivative(&self, k: usize) -> Scalar {
        let t = &self.coeffs[k];
        t * Scalar::factorial(t.prec(), k as u32)
    }

    pub fn truncate(&self, order: usize) -> Self {
        let keep = order.min(self.order());
        UniJet {
            coeffs: self.coeffs[..=keep].to_vec(),
        }
    }

    pub fn scale(&self, factor: &Scalar) -> Self {
        UniJet {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Multiplication by `eps^shift`, keeping the order.
    pub fn shift_up(&self, shift: usize) -> Self {
        let prec = self.prec();
        let order = self.order();
        let mut out = UniJet::zero(prec, order);
        for k in shift..=order {
            out.coeffs[k] = self.coeffs[k - shift].clone();
        }
        out
    }

    pub fn add_jet(&self, other: &UniJet) -> Self {
        let order = self.order().min(other.order());
        UniJet {
            coeffs: (0..=order)
                .map(|k| &self.coeffs[k] + &other.coeffs[k])
                .collect(),
        }
    }

    pub fn sub_jet(&self, other: &UniJet) -> Self {
        let order = self.order().min(other.order());
        UniJet {
            coeffs: (0..=order)
                .map(|k| &self.coeffs[k] - &other.coeffs[k])
                .collect(),
        }
    }

    /// Truncated Cauchy product.
    pub fn mul_jet(&self, other: &UniJet) -> Self {
        let order = self.order().min(other.order());
        let prec = self.prec().min(other.prec());
        let mut coeffs = Vec::with_capacity(order + 1);
        for k in 0..=order {
            let mut acc = Scalar::zero(prec);
            for i in 0..=k {
                acc += &(&self.coeffs[i] * &other.coeffs[k - i]);
            }
            coeffs.push(acc);
        }
        UniJet { coeffs }
    }

    pub fn powi(&self, exp: u32) -> Self {
        let mut result = UniJet::constant(Scalar::one(self.prec()), self.order());
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_jet(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_jet(&base);
            }
        }
        result
    }

    /// Quotient `q` with `self = q * den` on the truncated algebra.
    pub fn try_div(&self, den: &UniJet) -> Result<Self> {
        let order = self.order().min(den.order());
        let d0 = &den.coeffs[0];
        if is_negligible(d0, &den.coeffs) {
            return Err(Error::SingularJetDivision);
        }
        let inv = d0.recip();
        let mut q: Vec<Scalar> = Vec::with_capacity(order + 1);
        for k in 0..=order {
            let mut acc = self.coeffs[k].clone();
            for i in 1..=k {
                acc -= &(&den.coeffs[i] * &q[k - i]);
            }
            q.push(acc * &inv);
        }
        Ok(UniJet { coeffs: q })
    }

    pub fn try_recip(&self) -> Result<Self> {
        UniJet::constant(Scalar::one(self.prec()), self.order()).try_div(self)
    }

    /// Largest coefficient deviation from `other` (over the common order).
    pub fn max_deviation(&self, other: &UniJet) -> Scalar {
        let order = self.order().min(other.order());
        (0..=order)
            .map(|k| (&self.coeffs[k] - &other.coeffs[k]).abs())
            .fold(Scalar::zero(self.prec()), Scalar::max)
    }
}

/// True when `value` is zero relative to the scale of `context` at the
/// working precision.
pub(crate) fn is_negligible(value: &Scalar, context: &[Scalar]) -> bool {
    if value.is_zero() {
        return true;
    }
    let prec = value.prec();
    let scale = context
        .iter()
        .map(Scalar::abs)
        .fold(Scalar::one(prec), Scalar::max);
    let threshold = scale * Scalar::exp2(prec, 8 - prec as i32);
    value.abs() <= threshold
}

impl Add for &UniJet {
    type Output = UniJet;
    fn add(self, rhs: &UniJet) -> UniJet {
        self.add_jet(rhs)
    }
}

impl Sub for &UniJet {
    type Output = UniJet;
    fn sub(self, rhs: &UniJet) -> UniJet {
        self.sub_jet(rhs)
    }
}

impl Mul for &UniJet {
    type Output = UniJet;
    fn mul(self, rhs: &UniJet) -> UniJet {
        self.mul_jet(rhs)
    }
}

impl Neg for &UniJet {
    type Output = UniJet;
    fn neg(self) -> UniJet {
        UniJet {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// A jet written as `eps^valuation * unit`, where the unit part carries the
/// remaining Taylor data. Products add valuations and quotients subtract
/// them, so structural zeros such as `(sin eps)^m` never reach a division.
#[derive(Clone, Debug, PartialEq)]
pub struct ValuedJet {
    valuation: usize,
    unit: UniJet,
}

impl ValuedJet {
    pub fn new(valuation: usize, unit: UniJet) -> Self {
        ValuedJet { valuation, unit }
    }

    pub fn from_jet(jet: UniJet) -> Self {
        ValuedJet::new(0, jet)
    }

    /// `(sin eps)^power = eps^power * (sin(eps)/eps)^power`, with the unit
    /// part accurate to `order`.
    pub fn sin_power(prec: u32, power: u32, order: usize) -> Self {
        let sin = UniJet::sin_affine(&Scalar::zero(prec), order + 1);
        let sinc = UniJet::from_coeffs(sin.coeffs()[1..].to_vec());
        ValuedJet::new(power as usize, sinc.powi(power))
    }

    pub fn valuation(&self) -> usize {
        self.valuation
    }

    pub fn unit(&self) -> &UniJet {
        &self.unit
    }

    pub fn mul(&self, other: &ValuedJet) -> Self {
        ValuedJet::new(
            self.valuation + other.valuation,
            self.unit.mul_jet(&other.unit),
        )
    }

    pub fn mul_jet(&self, other: &UniJet) -> Self {
        ValuedJet::new(self.valuation, self.unit.mul_jet(other))
    }

    pub fn powi(&self, exp: u32) -> Self {
        ValuedJet::new(self.valuation * exp as usize, self.unit.powi(exp))
    }

    pub fn try_div(&self, den: &ValuedJet) -> Result<Self> {
        if den.valuation > self.valuation {
            return Err(Error::SingularJetDivision);
        }
        Ok(ValuedJet::new(
            self.valuation - den.valuation,
            self.unit.try_div(&den.unit)?,
        ))
    }

    pub fn try_div_jet(&self, den: &UniJet) -> Result<Self> {
        Ok(ValuedJet::new(self.valuation, self.unit.try_div(den)?))
    }

    /// Dense jet of the given order.
    pub fn to_jet(&self, order: usize) -> UniJet {
        let prec = self.unit.prec();
        let mut out = UniJet::zero(prec, order);
        for k in self.valuation..=order {
            let idx = k - self.valuation;
            if idx <= self.unit.order() {
                out.coeffs[k] = self.unit.coeffs[idx].clone();
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 256;

    fn s(v: f64) -> Scalar {
        Scalar::from_f64(P, v)
    }

    fn jet(vals: &[f64]) -> UniJet {
        UniJet::from_coeffs(vals.iter().map(|&v| s(v)).collect())
    }

    fn close(a: &Scalar, b: f64, tol: f64) -> bool {
        (a.to_f64() - b).abs() < tol
    }

    #[test]
    fn sin_at_zero() {
        let j = UniJet::sin_affine(&s(0.0), 2);
        assert!(j.coeff(0).is_zero());
        assert_eq!(j.coeff(1).to_f64(), 1.0);
        assert!(j.coeff(2).is_zero());
    }

    #[test]
    fn sin_at_half_pi_is_cosine_expansion() {
        let half_pi = Scalar::pi(P).div_int(2);
        let j = UniJet::sin_affine(&half_pi, 2);
        assert!(close(j.coeff(0), 1.0, 1e-70));
        assert!(close(j.coeff(1), 0.0, 1e-70));
        assert!(close(j.coeff(2), -0.5, 1e-70));
    }

    #[test]
    fn product_of_conjugates() {
        let p = &jet(&[1.0, 1.0, 0.0]) * &jet(&[1.0, -1.0, 0.0]);
        assert_eq!(p, jet(&[1.0, 0.0, -1.0]));
    }

    #[test]
    fn square_of_sine() {
        let sq = UniJet::sin_affine(&s(0.0), 3).powi(2);
        assert!(sq.coeff(0).is_zero());
        assert!(sq.coeff(1).is_zero());
        assert_eq!(sq.coeff(2).to_f64(), 1.0);
        assert!(sq.coeff(3).is_zero());
    }

    #[test]
    fn geometric_series() {
        let q = UniJet::constant(s(1.0), 3)
            .try_div(&jet(&[1.0, -1.0, 0.0, 0.0]))
            .unwrap();
        assert_eq!(q, jet(&[1.0, 1.0, 1.0, 1.0]));
    }

    #[test]
    fn division_by_vanishing_constant_fails() {
        let sin = UniJet::sin_affine(&s(0.0), 4);
        assert_eq!(sin.try_div(&sin), Err(Error::SingularJetDivision));
    }

    #[test]
    fn valued_division_removes_common_factor() {
        let sin = ValuedJet::sin_power(P, 1, 4);
        let q = sin.try_div(&sin).unwrap();
        assert_eq!(q.valuation(), 0);
        let dense = q.to_jet(4);
        assert!(close(dense.coeff(0), 1.0, 1e-70));
        for k in 1..=4 {
            assert!(close(dense.coeff(k), 0.0, 1e-70));
        }
    }

    #[test]
    fn sin_power_matches_dense_power() {
        let dense = UniJet::sin_affine(&s(0.0), 7).powi(3);
        let valued = ValuedJet::sin_power(P, 3, 7).to_jet(7);
        assert!(dense.max_deviation(&valued).to_f64() < 1e-70);
    }

    #[test]
    fn derivative_applies_factorial() {
        let j = jet(&[0.0, 0.0, 0.0, 2.0]);
        assert_eq!(j.derivative(3).to_f64(), 12.0);
    }
}
