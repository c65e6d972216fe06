//! Determinant formulas for the homogeneous model: partition function,
//! one-point boundary correlators `H_N^(r)`, `G_N^(r)` and the two-point
//! correlator `H_N^(r1,r2)`.
//!
//! All derivative columns are assembled from Taylor jets; the factorial
//! conversion happens only when a column entry is written.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::numerics::{Angle, BiJet, MinorTable, RealMatrix, Scalar, UniJet, ValuedJet};

/// Spectral parameter `lambda` and crossing parameter `eta`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightParams {
    lambda: Scalar,
    eta: Scalar,
}

/// Vertex weights `a = sin(lambda + eta)`, `b = sin(lambda - eta)`,
/// `c = sin(2 eta)`.
#[derive(Clone, Debug, PartialEq)]
pub struct VertexWeights {
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
}

impl WeightParams {
    /// Parameters inside the disordered regime `0 < eta < pi/2`,
    /// `eta < lambda < pi - eta`.
    pub fn new(lambda: Scalar, eta: Scalar) -> Result<Self> {
        let p = WeightParams::new_unchecked(lambda, eta);
        if !p.in_disordered_regime() {
            return Err(Error::OutsideRegime(format!(
                "lambda = {:.20}, eta = {:.20}",
                p.lambda, p.eta
            )));
        }
        Ok(p)
    }

    /// No regime check; the formulas are then used by analytic continuation.
    pub fn new_unchecked(lambda: Scalar, eta: Scalar) -> Self {
        WeightParams { lambda, eta }
    }

    pub fn from_angles(
        lambda: &Angle,
        eta: &Angle,
        prec: u32,
        allow_outside: bool,
    ) -> Result<Self> {
        let (l, e) = (lambda.to_scalar(prec)?, eta.to_scalar(prec)?);
        if allow_outside {
            Ok(WeightParams::new_unchecked(l, e))
        } else {
            WeightParams::new(l, e)
        }
    }

    /// `lambda = pi/2`, `eta = pi/6`, where `a = b = c`.
    pub fn ice_point(prec: u32) -> Self {
        let pi = Scalar::pi(prec);
        WeightParams::new_unchecked(pi.div_int(2), pi.div_int(6))
    }

    /// `lambda = pi/2` and `eta` chosen so that `c^2/(ab) = x`, i.e.
    /// `4 sin^2(eta) = x`; `x = 1, 2, 3` give `eta = pi/6, pi/4, pi/3`.
    pub fn enumeration_point(prec: u32, x: u32) -> Option<Self> {
        let pi = Scalar::pi(prec);
        let eta = match x {
            1 => pi.div_int(6),
            2 => pi.div_int(4),
            3 => pi.div_int(3),
            _ => return None,
        };
        Some(WeightParams::new_unchecked(pi.div_int(2), eta))
    }

    pub fn lambda(&self) -> &Scalar {
        &self.lambda
    }

    pub fn eta(&self) -> &Scalar {
        &self.eta
    }

    pub fn prec(&self) -> u32 {
        self.lambda.prec().min(self.eta.prec())
    }

    pub fn in_disordered_regime(&self) -> bool {
        let pi = Scalar::pi(self.prec());
        let zero = Scalar::zero(self.prec());
        self.eta > zero
            && self.eta < pi.div_int(2)
            && self.lambda > self.eta
            && self.lambda < &pi - &self.eta
    }

    /// `lambda -> pi - lambda`, which exchanges `a` and `b`.
    pub fn reflected(&self) -> Self {
        WeightParams::new_unchecked(Scalar::pi(self.prec()) - &self.lambda, self.eta.clone())
    }

    pub fn weights(&self) -> VertexWeights {
        VertexWeights {
            a: (&self.lambda + &self.eta).sin(),
            b: (&self.lambda - &self.eta).sin(),
            c: (&self.eta + &self.eta).sin(),
        }
    }

    /// `phi = sin(2 eta) / (sin(lambda - eta) sin(lambda + eta))`.
    pub fn phi(&self) -> Scalar {
        let w = self.weights();
        &w.c / (&w.a * &w.b)
    }
}

pub fn weights_abc(p: &WeightParams) -> VertexWeights {
    p.weights()
}

pub(crate) fn check_position(r: usize, n: usize) -> Result<()> {
    if (1..=n).contains(&r) {
        Ok(())
    } else {
        Err(Error::PositionOutOfRange { position: r, n })
    }
}

/// Taylor jet of `eps -> phi(lambda + eps)`.
pub fn phi_jet(p: &WeightParams, order: usize) -> Result<UniJet> {
    let lm = UniJet::sin_affine(&(p.lambda() - p.eta()), order);
    let lp = UniJet::sin_affine(&(p.lambda() + p.eta()), order);
    let c = p.weights().c;
    UniJet::constant(c, order)
        .try_div(&lm.mul_jet(&lp))
        .map_err(|_| Error::SingularParameters("sin(lambda - eta) sin(lambda + eta) = 0".into()))
}

/// Cached determinant data for one `(N, lambda, eta)`.
#[derive(Debug)]
pub struct HomogeneousModel {
    n: usize,
    params: WeightParams,
    weights: VertexWeights,
    phi_jet: UniJet,
    phi: RealMatrix,
    det_phi: Scalar,
    minors: OnceLock<MinorTable>,
}

impl HomogeneousModel {
    pub fn new(n: usize, params: &WeightParams) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyLattice);
        }
        let weights = params.weights();
        if weights.a.is_zero() || weights.b.is_zero() || weights.c.is_zero() {
            return Err(Error::SingularParameters("a vertex weight vanishes".into()));
        }
        let phi_jet = phi_jet(params, 2 * n)?;
        // Phi_{alpha k} = d^(alpha + k - 2) phi: a Hankel matrix of moments
        let phi = RealMatrix::from_fn(n, n, |i, j| phi_jet.derivative(i + j));
        let det_phi = phi.det()?;
        if det_phi.is_zero() {
            return Err(Error::SingularParameters("det Phi vanishes".into()));
        }
        Ok(HomogeneousModel {
            n,
            params: params.clone(),
            weights,
            phi_jet,
            phi,
            det_phi,
            minors: OnceLock::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn params(&self) -> &WeightParams {
        &self.params
    }

    pub fn weights(&self) -> &VertexWeights {
        &self.weights
    }

    fn prec(&self) -> u32 {
        self.params.prec()
    }

    /// Taylor jet of `phi(lambda + eps)` up to order `2N`.
    pub fn phi_jet(&self) -> &UniJet {
        &self.phi_jet
    }

    pub fn phi_matrix(&self) -> &RealMatrix {
        &self.phi
    }

    pub fn det_phi(&self) -> &Scalar {
        &self.det_phi
    }

    /// `Z_N = (ab)^(N^2) / prod_{k<N} (k!)^2 * det Phi`.
    pub fn partition_function(&self) -> Scalar {
        let n = self.n;
        let prec = self.prec();
        let ab = &self.weights.a * &self.weights.b;
        let mut z = ab.powi((n * n) as i32) * &self.det_phi;
        for k in 1..n {
            let f = Scalar::factorial(prec, k as u32);
            z = z / (&f * &f);
        }
        z
    }

    /// Determinant of Phi with its last column replaced.
    fn det_last_column(&self, column: &[Scalar]) -> Result<Scalar> {
        self.phi.with_column(self.n - 1, column)?.det()
    }

    fn sin_shift(&self, offset: &Scalar, order: usize) -> UniJet {
        UniJet::sin_affine(offset, order)
    }

    /// Probability that the first-row type-5 vertex sits at column `r`.
    pub fn one_point(&self, r: usize) -> Result<Scalar> {
        let n = self.n;
        check_position(r, n)?;
        let prec = self.prec();
        let order = n - 1;
        let two_eta = self.params.eta() + self.params.eta();
        let f = ValuedJet::sin_power(prec, (n - r) as u32, order)
            .mul_jet(&self.sin_shift(&-&two_eta, order).powi((r - 1) as u32))
            .try_div_jet(
                &self
                    .sin_shift(&(self.params.lambda() - self.params.eta()), order)
                    .powi((n - 1) as u32),
            )?
            .to_jet(order);
        let column: Vec<Scalar> = (0..n).map(|k| f.derivative(k)).collect();
        let det_psi = self.det_last_column(&column)?;
        let w = &self.weights;
        let pref = Scalar::factorial(prec, (n - 1) as u32) * &w.c
            / (w.a.powi(r as i32) * w.b.powi((n - r + 1) as i32));
        Ok(pref * det_psi / &self.det_phi)
    }

    /// Probability of a left arrow on the first-row edge between columns
    /// `r` and `r + 1`.
    pub fn polarization(&self, r: usize) -> Result<Scalar> {
        let n = self.n;
        check_position(r, n)?;
        let prec = self.prec();
        let order = n - 1;
        let two_eta = self.params.eta() + self.params.eta();
        let f = ValuedJet::sin_power(prec, (n - r) as u32, order)
            .mul_jet(&self.sin_shift(&-&two_eta, order).powi(r as u32))
            .try_div_jet(
                &self
                    .sin_shift(&(self.params.lambda() - self.params.eta()), order)
                    .powi(n as u32),
            )?
            .to_jet(order);
        let column: Vec<Scalar> = (0..n).map(|k| -f.derivative(k)).collect();
        let det_theta = self.det_last_column(&column)?;
        let w = &self.weights;
        let pref = Scalar::factorial(prec, (n - 1) as u32)
            / (w.a.powi(r as i32) * w.b.powi((n - r) as i32));
        Ok(pref * det_theta / &self.det_phi)
    }

    pub fn one_point_table(&self) -> Result<Vec<Scalar>> {
        (1..=self.n).map(|r| self.one_point(r)).collect()
    }

    pub fn polarization_table(&self) -> Result<Vec<Scalar>> {
        (1..=self.n).map(|r| self.polarization(r)).collect()
    }

    /// Minors of the first `N - 2` columns of Phi with two rows removed.
    pub fn phi_minors(&self) -> Result<&MinorTable> {
        if let Some(m) = self.minors.get() {
            return Ok(m);
        }
        let n = self.n;
        if n < 2 {
            return Err(Error::UnsupportedSize(n));
        }
        let rows: Vec<usize> = (0..n).collect();
        let cols: Vec<usize> = (0..n - 2).collect();
        let table = self.phi.select(&rows, &cols).two_column_minors()?;
        Ok(self.minors.get_or_init(|| table))
    }

    /// Bivariate jet of the two-point kernel `h_N^(r1,r2)(eps1, eps2)`,
    /// orders `(N-1, N-1)`.
    pub fn two_point_kernel(&self, r1: usize, r2: usize) -> Result<BiJet> {
        let n = self.n;
        if n < 2 {
            return Err(Error::UnsupportedSize(n));
        }
        check_position(r1, n)?;
        check_position(r2, n)?;
        let prec = self.prec();
        let order = n - 1;
        let (lambda, eta) = (self.params.lambda(), self.params.eta());
        let two_eta = eta + eta;
        let num1 = ValuedJet::sin_power(prec, (n - r1) as u32, order)
            .mul_jet(&self.sin_shift(&-&two_eta, order).powi((r1 - 1) as u32))
            .to_jet(order);
        let num2 = ValuedJet::sin_power(prec, (n - r2) as u32, order)
            .mul_jet(&self.sin_shift(&two_eta, order).powi((r2 - 1) as u32))
            .to_jet(order);
        let den1 = self.sin_shift(&(lambda - eta), order).powi((n - 2) as u32);
        let den2 = self.sin_shift(&(lambda + eta), order).powi((n - 2) as u32);
        let coupling = BiJet::of_difference(&self.sin_shift(&two_eta, 2 * order), order, order)?;
        let den = BiJet::outer(&den1, &den2).mul_jet(&coupling);
        BiJet::outer(&num1, &num2)
            .try_div(&den)
            .map_err(|_| Error::SingularParameters("two-point kernel denominator vanishes".into()))
    }

    /// Joint probability of type-5 vertices at column `r1` of the first row
    /// and column `r2` of the last row. `N = 1` is the single forced
    /// configuration and returns 1.
    pub fn two_point(&self, r1: usize, r2: usize) -> Result<Scalar> {
        if self.n == 1 {
            check_position(r1, 1)?;
            check_position(r2, 1)?;
            return Ok(Scalar::one(self.prec()));
        }
        self.two_point_det(r1, r2)
    }

    /// The block-determinant formula proper; defined for `N >= 2`.
    pub fn two_point_det(&self, r1: usize, r2: usize) -> Result<Scalar> {
        let n = self.n;
        let h = self.two_point_kernel(r1, r2)?;
        let minors = self.phi_minors()?;
        // columns N-1 and N carry d/d eps2^(alpha-1) and d/d eps1^(alpha-1)
        let bracket = minors
            .bordered_det_with(|a, b| h.derivative(b - 1, a - 1) - h.derivative(a - 1, b - 1));
        let prec = self.prec();
        let w = &self.weights;
        let (r1, r2) = (r1 as i32, r2 as i32);
        let ni = n as i32;
        let pref = Scalar::factorial(prec, (n - 1) as u32)
            * Scalar::factorial(prec, (n - 2) as u32)
            * w.c.powi(2)
            / (w.a.powi(ni + r1 - r2 + 1) * w.b.powi(ni + r2 - r1 + 1) * &self.det_phi);
        Ok(pref * bracket)
    }

    /// Table `[r1 - 1][r2 - 1]`.
    pub fn two_point_table(&self) -> Result<Vec<Vec<Scalar>>> {
        (1..=self.n)
            .map(|r1| (1..=self.n).map(|r2| self.two_point(r1, r2)).collect())
            .collect()
    }

    /// Probability of left arrows on the first-row edge left of column `r1`
    /// and the last-row edge left of column `r2`.
    pub fn two_point_polarization(&self, r1: usize, r2: usize) -> Result<Scalar> {
        check_position(r1, self.n)?;
        check_position(r2, self.n)?;
        let mut acc = Scalar::zero(self.prec());
        for a in 1..=r1 {
            for b in 1..=r2 {
                acc += &self.two_point(a, b)?;
            }
        }
        Ok(acc)
    }
}

pub fn z_hom(n: usize, p: &WeightParams) -> Result<Scalar> {
    Ok(HomogeneousModel::new(n, p)?.partition_function())
}

pub fn h_hom(n: usize, r: usize, p: &WeightParams) -> Result<Scalar> {
    HomogeneousModel::new(n, p)?.one_point(r)
}

pub fn g_hom(n: usize, r: usize, p: &WeightParams) -> Result<Scalar> {
    HomogeneousModel::new(n, p)?.polarization(r)
}

/// Block-determinant two-point correlator; `UnsupportedSize` for `N = 1`.
pub fn h2_hom_det(n: usize, r1: usize, r2: usize, p: &WeightParams) -> Result<Scalar> {
    if n < 2 {
        return Err(Error::UnsupportedSize(n));
    }
    HomogeneousModel::new(n, p)?.two_point_det(r1, r2)
}

/// Double cumulative sum of the two-point table.
pub fn g2_from_h2(n: usize, r1: usize, r2: usize, p: &WeightParams) -> Result<Scalar> {
    HomogeneousModel::new(n, p)?.two_point_polarization(r1, r2)
}

/// Largest violation of the crossing symmetry `lambda -> pi - lambda`
/// combined with the reflection `r -> N - r + 1`.
#[derive(Clone, Debug)]
pub struct CrossingReport {
    pub one_point: f64,
    pub two_point: f64,
}

pub fn crossing_check(n: usize, p: &WeightParams) -> Result<CrossingReport> {
    let here = HomogeneousModel::new(n, p)?;
    let there = HomogeneousModel::new(n, &p.reflected())?;
    let mut one = 0f64;
    let mut two = 0f64;
    for r in 1..=n {
        let d = (here.one_point(r)? - there.one_point(n - r + 1)?)
            .abs()
            .to_f64();
        one = one.max(d);
        for s in 1..=n {
            let d = (here.two_point(r, s)? - there.two_point(n - r + 1, n - s + 1)?)
                .abs()
                .to_f64();
            two = two.max(d);
        }
    }
    Ok(CrossingReport {
        one_point: one,
        two_point: two,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 256;

    fn params(l: f64, e: f64) -> WeightParams {
        WeightParams::new(Scalar::from_f64(P, l), Scalar::from_f64(P, e)).unwrap()
    }

    #[test]
    fn ice_point_weights_coincide() {
        let w = WeightParams::ice_point(P).weights();
        let s3 = Scalar::from_int(P, 3).sqrt().div_int(2);
        for v in [&w.a, &w.b, &w.c] {
            assert!((v - &s3).abs().to_f64() < 1e-70);
        }
    }

    #[test]
    fn two_enumeration_point_ratio() {
        let w = WeightParams::enumeration_point(P, 2).unwrap().weights();
        let x = w.c.powi(2) / (&w.a * &w.b);
        assert!((x.to_f64() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn regime_is_enforced() {
        let bad = WeightParams::new(Scalar::from_f64(P, 0.2), Scalar::from_f64(P, 0.3));
        assert!(matches!(bad, Err(Error::OutsideRegime(_))));
    }

    #[test]
    fn single_site_values() {
        let p = params(0.9, 0.3);
        let m = HomogeneousModel::new(1, &p).unwrap();
        assert!((m.partition_function() - &p.weights().c).abs().to_f64() < 1e-70);
        assert!((m.one_point(1).unwrap().to_f64() - 1.0).abs() < 1e-60);
        assert!((m.polarization(1).unwrap().to_f64() - 1.0).abs() < 1e-60);
        assert_eq!(m.two_point(1, 1).unwrap().to_f64(), 1.0);
        assert_eq!(h2_hom_det(1, 1, 1, &p), Err(Error::UnsupportedSize(1)));
    }

    #[test]
    fn phi_is_hankel() {
        let m = HomogeneousModel::new(4, &params(1.0, 0.4)).unwrap();
        let phi = m.phi_matrix();
        for i in 0..4 {
            for j in 0..4 {
                if i + 1 < 4 && j > 0 {
                    assert_eq!(phi.get(i, j), phi.get(i + 1, j - 1));
                }
            }
        }
    }

    #[test]
    fn positions_are_checked() {
        let m = HomogeneousModel::new(3, &params(1.0, 0.4)).unwrap();
        assert!(m.one_point(0).is_err());
        assert!(m.polarization(4).is_err());
        assert!(m.two_point(1, 4).is_err());
    }

    #[test]
    fn two_by_two_two_point() {
        let p = params(1.1, 0.35);
        let w = p.weights();
        let m = HomogeneousModel::new(2, &p).unwrap();
        let a2 = w.a.powi(2);
        let expected = &a2 / (&a2 + &w.b.powi(2));
        assert!((m.two_point(1, 2).unwrap() - expected).abs().to_f64() < 1e-60);
        assert!(m.two_point(1, 1).unwrap().abs().to_f64() < 1e-60);
        assert!(m.two_point(2, 2).unwrap().abs().to_f64() < 1e-60);
    }
}
