//! One- and two-point functions through the orthogonal polynomials: the
//! polynomial `P_{N-1}` evaluated at `d/d eps` acting on explicit jets.

use crate::error::{Error, Result};
use crate::homogeneous::{check_position, VertexWeights, WeightParams};
use crate::numerics::{BiJet, DensePoly, Scalar, UniJet, ValuedJet};

use super::basis::{build_basis, moments, OrthoBasis};

/// `sum_k p_k d^k f(0)` for a polynomial `p` and a jet `f`.
pub fn apply_at_derivative(p: &DensePoly<Scalar>, f: &UniJet) -> Scalar {
    p.coeffs()
        .iter()
        .enumerate()
        .fold(Scalar::zero(f.prec()), |acc, (k, c)| {
            acc + c * &f.derivative(k)
        })
}

/// Orthogonal basis up to degree `N - 1` together with the vertex weights.
#[derive(Clone, Debug)]
pub struct OrthoModel {
    n: usize,
    params: WeightParams,
    weights: VertexWeights,
    basis: OrthoBasis,
}

impl OrthoModel {
    pub fn new(n: usize, p: &WeightParams) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyLattice);
        }
        let weights = p.weights();
        if weights.a.is_zero() || weights.b.is_zero() {
            return Err(Error::SingularParameters("a vertex weight vanishes".into()));
        }
        let basis = build_basis(n - 1, &moments(2 * (n - 1), p)?)?;
        Ok(OrthoModel {
            n,
            params: p.clone(),
            weights,
            basis,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> &OrthoBasis {
        &self.basis
    }

    fn prec(&self) -> u32 {
        self.params.prec()
    }

    fn sin_at(&self, offset: &Scalar, order: usize) -> UniJet {
        UniJet::sin_affine(offset, order)
    }

    /// `H_N^(r)` with `P_{N-1}(d/d eps)` applied either at `eps -> 0` of the
    /// determinant column function or, when `crossed`, to its image under
    /// the reflection `lambda -> pi - lambda`, `r -> N - r + 1`.
    pub fn one_point(&self, r: usize, crossed: bool) -> Result<Scalar> {
        let n = self.n;
        check_position(r, n)?;
        let prec = self.prec();
        let order = n - 1;
        let (lambda, eta) = (self.params.lambda(), self.params.eta());
        let two_eta = eta + eta;
        let f = if crossed {
            ValuedJet::sin_power(prec, (r - 1) as u32, order)
                .mul_jet(&self.sin_at(&two_eta, order).powi((n - r) as u32))
                .try_div_jet(&self.sin_at(&(lambda + eta), order).powi((n - 1) as u32))?
        } else {
            ValuedJet::sin_power(prec, (n - r) as u32, order)
                .mul_jet(&self.sin_at(&-&two_eta, order).powi((r - 1) as u32))
                .try_div_jet(&self.sin_at(&(lambda - eta), order).powi((n - 1) as u32))?
        }
        .to_jet(order);
        let w = &self.weights;
        let pref = Scalar::factorial(prec, (n - 1) as u32) * &w.c
            / (w.a.powi(r as i32) * w.b.powi((n - r + 1) as i32) * self.basis.norm(n - 1));
        Ok(pref * apply_at_derivative(self.basis.poly(n - 1), &f))
    }

    /// `K_m(x) = m! phi^(m+1) P_m(x) / h_m` for `m <= N - 1`.
    pub fn k_poly(&self, m: usize) -> DensePoly<Scalar> {
        let phi = self.params.phi();
        let factor = Scalar::factorial(self.prec(), m as u32) * phi.powi((m + 1) as i32)
            / self.basis.norm(m);
        self.basis.poly(m).scale(&factor)
    }

    /// `H_N^(r) = K_{N-1}(d/d eps) omega^(N-r) rho^(N-1)`, or the tilded
    /// form `omega~^(r-1) rho~^(N-1)` when `crossed`.
    pub fn one_point_omega(&self, r: usize, crossed: bool) -> Result<Scalar> {
        let n = self.n;
        check_position(r, n)?;
        let jets = OmegaRhoJets::new(&self.params, n - 1)?;
        let f = if crossed {
            jets.omega_tilde
                .powi((r - 1) as u32)
                .mul_jet(&jets.rho_tilde.powi((n - 1) as u32))
        } else {
            jets.omega
                .powi((n - r) as u32)
                .mul_jet(&jets.rho.powi((n - 1) as u32))
        };
        Ok(apply_at_derivative(&self.k_poly(n - 1), &f))
    }
}

pub fn h_via_ortho(n: usize, r: usize, p: &WeightParams, crossed: bool) -> Result<Scalar> {
    OrthoModel::new(n, p)?.one_point(r, crossed)
}

/// Jets at `eps = 0` of
/// `omega = (a/b) sin eps / sin(eps - 2 eta)`,
/// `rho = (b/c) sin(eps - 2 eta) / sin(eps + lambda - eta)` and their
/// crossed partners `omega~ = (b/a) sin eps / sin(eps + 2 eta)`,
/// `rho~ = (a/c) sin(eps + 2 eta) / sin(eps + lambda + eta)`.
#[derive(Clone, Debug)]
pub struct OmegaRhoJets {
    pub omega: UniJet,
    pub rho: UniJet,
    pub omega_tilde: UniJet,
    pub rho_tilde: UniJet,
}

impl OmegaRhoJets {
    pub fn new(p: &WeightParams, order: usize) -> Result<Self> {
        let w = p.weights();
        let (lambda, eta) = (p.lambda(), p.eta());
        let two_eta = eta + eta;
        let sin = |offset: &Scalar| UniJet::sin_affine(offset, order);
        let zero = Scalar::zero(p.prec());
        let s0 = sin(&zero);
        let sm = sin(&-&two_eta);
        let sp = sin(&two_eta);
        let singular = |_| Error::SingularParameters("omega/rho denominator vanishes".into());
        Ok(OmegaRhoJets {
            omega: s0.try_div(&sm).map_err(singular)?.scale(&(&w.a / &w.b)),
            rho: sm
                .try_div(&sin(&(lambda - eta)))
                .map_err(singular)?
                .scale(&(&w.b / &w.c)),
            omega_tilde: s0.try_div(&sp).map_err(singular)?.scale(&(&w.b / &w.a)),
            rho_tilde: sp
                .try_div(&sin(&(lambda + eta)))
                .map_err(singular)?
                .scale(&(&w.a / &w.c)),
        })
    }

    /// Largest coefficient of `rho (omega - 1) - 1` and `rho~ (1 - omega~) - 1`.
    pub fn identity_deviation(&self) -> f64 {
        let order = self.omega.order();
        let one = UniJet::constant(Scalar::one(self.omega.prec()), order);
        let go = self
            .rho
            .mul_jet(&self.omega.sub_jet(&one))
            .max_deviation(&one);
        let tgto = self
            .rho_tilde
            .mul_jet(&one.sub_jet(&self.omega_tilde))
            .max_deviation(&one);
        go.max(tgto).to_f64()
    }
}

/// Two-point function from the `omega`, `rho` kernel with the denominator
/// `omega(eps1) omega~(eps2) - 1` expanded as a geometric series; at most
/// `N` terms reach the orders that the derivatives see.
pub fn h2_nice(n: usize, r1: usize, r2: usize, p: &WeightParams) -> Result<Scalar> {
    if n < 2 {
        return Err(Error::UnsupportedSize(n));
    }
    check_position(r1, n)?;
    check_position(r2, n)?;
    let model = OrthoModel::new(n, p)?;
    let order = n - 1;
    let jets = OmegaRhoJets::new(p, order)?;
    let left = jets.rho.powi((n - 2) as u32);
    let right = jets.rho_tilde.powi((n - 2) as u32);
    let prec = p.prec();
    let mut kernel = BiJet::zero(prec, order, order);
    for m in 0..n {
        let f = jets.omega.powi((n - r1 + m) as u32).mul_jet(&left);
        let g = jets.omega_tilde.powi((n - r2 + m) as u32).mul_jet(&right);
        kernel = kernel.sub_jet(&BiJet::outer(&f, &g));
    }
    let (k1, k2) = (model.k_poly(n - 1), model.k_poly(n - 2));
    let coeff = |poly: &DensePoly<Scalar>, i: usize| {
        poly.coeff(i).cloned().unwrap_or_else(|| Scalar::zero(prec))
    };
    let mut acc = Scalar::zero(prec);
    for i in 0..=order {
        for j in 0..=order {
            let op = coeff(&k1, i) * coeff(&k2, j) - coeff(&k2, i) * coeff(&k1, j);
            if !op.is_zero() {
                acc += &(op * kernel.derivative(i, j));
            }
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 256;

    #[test]
    fn single_site_is_one() {
        let p = WeightParams::new(Scalar::from_f64(P, 1.0), Scalar::from_f64(P, 0.3)).unwrap();
        for crossed in [false, true] {
            let v = h_via_ortho(1, 1, &p, crossed).unwrap();
            assert!((v.to_f64() - 1.0).abs() < 1e-60);
        }
    }

    #[test]
    fn omega_has_no_constant_term() {
        let p = WeightParams::new(Scalar::from_f64(P, 1.1), Scalar::from_f64(P, 0.35)).unwrap();
        let j = OmegaRhoJets::new(&p, 8).unwrap();
        assert!(j.omega.coeff(0).is_zero());
        assert!(j.omega_tilde.coeff(0).is_zero());
        assert!(j.identity_deviation() < 1e-60);
    }

    #[test]
    fn two_point_needs_two_rows() {
        let p = WeightParams::ice_point(P);
        assert_eq!(h2_nice(1, 1, 1, &p), Err(Error::UnsupportedSize(1)));
    }
}
