//! Moments of the weight behind `phi`, the monic orthogonal polynomials they
//! define, and the bordered Hankel determinants.

use crate::error::{Error, Result};
use crate::homogeneous::{phi_jet, WeightParams};
use crate::numerics::{DensePoly, DensePoly2, RealMatrix, Scalar};

/// `c_n = d^n/d lambda^n phi(lambda)` for `n = 0..=n_max`.
#[derive(Clone, Debug)]
pub struct MomentSequence {
    c: Vec<Scalar>,
}

pub fn moments(n_max: usize, p: &WeightParams) -> Result<MomentSequence> {
    let jet = phi_jet(p, n_max)?;
    Ok(MomentSequence {
        c: (0..=n_max).map(|k| jet.derivative(k)).collect(),
    })
}

impl MomentSequence {
    pub fn from_values(c: Vec<Scalar>) -> Self {
        MomentSequence { c }
    }

    pub fn values(&self) -> &[Scalar] {
        &self.c
    }

    pub fn get(&self, k: usize) -> &Scalar {
        &self.c[k]
    }

    /// Highest available moment index.
    pub fn max_index(&self) -> usize {
        self.c.len() - 1
    }

    fn prec(&self) -> u32 {
        self.c[0].prec()
    }

    /// The moment functional `L[x^k] = c_k`.
    pub fn functional(&self, p: &DensePoly<Scalar>) -> Scalar {
        p.coeffs()
            .iter()
            .zip(&self.c)
            .fold(Scalar::zero(self.prec()), |acc, (a, c)| acc + a * c)
    }

    /// `(n+1) x (n+1)` Hankel matrix `(c_{i+j})`.
    pub fn hankel(&self, n: usize) -> RealMatrix {
        RealMatrix::from_fn(n + 1, n + 1, |i, j| self.c[i + j].clone())
    }

    /// `Delta_n`; the empty determinant for `n = -1` is not represented.
    pub fn hankel_det(&self, n: usize) -> Result<Scalar> {
        self.need(2 * n)?;
        self.hankel(n).det()
    }

    fn need(&self, index: usize) -> Result<()> {
        if index > self.max_index() {
            return Err(Error::DimensionMismatch(format!(
                "moment c_{index} requested, only up to c_{} available",
                self.max_index()
            )));
        }
        Ok(())
    }
}

/// Monic orthogonal polynomials `P_0..P_m` and their norms `h_n`.
#[derive(Clone, Debug)]
pub struct OrthoBasis {
    polys: Vec<DensePoly<Scalar>>,
    norms: Vec<Scalar>,
}

/// Three-term recurrence `P_{n+1} = (x - alpha_n) P_n - beta_n P_{n-1}`
/// driven by the moment functional. Needs `c_0..c_{2m}`.
pub fn build_basis(m: usize, moments: &MomentSequence) -> Result<OrthoBasis> {
    moments.need(2 * m)?;
    let prec = moments.prec();
    let one = Scalar::one(prec);
    let x = DensePoly::new(vec![Scalar::zero(prec), one.clone()]);
    let mut polys = vec![DensePoly::new(vec![one])];
    let mut norms = Vec::with_capacity(m + 1);
    for n in 0..=m {
        let pn = &polys[n];
        let sq = pn.mul(pn);
        let h = moments.functional(&sq);
        if negligible_against(&h, &sq, moments) {
            return Err(Error::SingularHankel(n));
        }
        norms.push(h);
        if n == m {
            break;
        }
        let alpha = moments.functional(&x.mul(&sq)) / &norms[n];
        let mut next = x.mul(pn).sub(&pn.scale(&alpha));
        if n > 0 {
            let beta = &norms[n] / &norms[n - 1];
            next = next.sub(&polys[n - 1].scale(&beta));
        }
        polys.push(next);
    }
    Ok(OrthoBasis { polys, norms })
}

// h = L[P^2] lost to cancellation among the terms of the functional
fn negligible_against(h: &Scalar, p: &DensePoly<Scalar>, moments: &MomentSequence) -> bool {
    let prec = h.prec();
    let scale = p
        .coeffs()
        .iter()
        .zip(moments.values())
        .map(|(a, c)| (a * c).abs())
        .fold(Scalar::zero(prec), Scalar::max);
    h.is_zero() || h.abs() <= scale * Scalar::exp2(prec, 8 - prec as i32)
}

impl OrthoBasis {
    pub fn max_degree(&self) -> usize {
        self.polys.len() - 1
    }

    pub fn poly(&self, n: usize) -> &DensePoly<Scalar> {
        &self.polys[n]
    }

    pub fn norm(&self, n: usize) -> &Scalar {
        &self.norms[n]
    }

    /// `max |L[P_i P_j] - h_j delta_ij|`, relative to `h_j` on the diagonal
    /// and to `sqrt(h_i h_j)` off it.
    pub fn orthogonality_deviation(&self, moments: &MomentSequence) -> f64 {
        let mut worst = 0f64;
        for i in 0..=self.max_degree() {
            for j in 0..=i {
                let l = moments.functional(&self.polys[i].mul(&self.polys[j]));
                let dev = if i == j {
                    ((l - &self.norms[i]) / &self.norms[i]).abs()
                } else {
                    (l / (&self.norms[i] * &self.norms[j]).abs().sqrt()).abs()
                };
                worst = worst.max(dev.to_f64());
            }
        }
        worst
    }

    /// `max_n |prod_{k<=n} h_k / Delta_n - 1|`.
    pub fn hankel_product_deviation(&self, moments: &MomentSequence) -> Result<f64> {
        let mut worst = 0f64;
        let mut prod = Scalar::one(self.norms[0].prec());
        for n in 0..=self.max_degree() {
            prod *= &self.norms[n];
            let delta = moments.hankel_det(n)?;
            worst = worst.max(((&prod / &delta) - Scalar::one(prod.prec())).abs().to_f64());
        }
        Ok(worst)
    }
}

/// Relative coefficient and norm deviations between the basis at `lambda` and the
/// reflected basis at `pi - lambda`.
#[derive(Clone, Debug)]
pub struct ParityReport {
    pub poly_deviation: f64,
    pub norm_deviation: f64,
}

/// Compares `P_n(x; lambda)` with `(-1)^n P_n(-x; pi - lambda)` and `h_n`
/// at both points, for `n <= m`.
pub fn parity_check(m: usize, p: &WeightParams) -> Result<ParityReport> {
    let here = build_basis(m, &moments(2 * m, p)?)?;
    let there = build_basis(m, &moments(2 * m, &p.reflected())?)?;
    let mut poly_deviation = 0f64;
    let mut norm_deviation = 0f64;
    for n in 0..=m {
        let flipped: Vec<Scalar> = there
            .poly(n)
            .coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| if (n + k) % 2 == 1 { -c } else { c.clone() })
            .collect();
        let dev = relative(
            here.poly(n).max_deviation(&DensePoly::new(flipped)),
            here.poly(n),
        );
        poly_deviation = poly_deviation.max(dev);
        let rel = ((here.norm(n) - there.norm(n)) / here.norm(n))
            .abs()
            .to_f64();
        norm_deviation = norm_deviation.max(rel);
    }
    Ok(ParityReport {
        poly_deviation,
        norm_deviation,
    })
}

/// `Delta_n^(1)(x)`: the Hankel determinant with its last column replaced by
/// `(1, x, .., x^n)`.
pub fn delta1_poly(n: usize, moments: &MomentSequence) -> Result<DensePoly<Scalar>> {
    moments.need(2 * n)?;
    let rows = n + 1;
    let h = RealMatrix::from_fn(rows, n, |i, j| moments.get(i + j).clone());
    let mut coeffs = Vec::with_capacity(rows);
    for i in 0..rows {
        let keep: Vec<usize> = (0..rows).filter(|&k| k != i).collect();
        let cols: Vec<usize> = (0..n).collect();
        let minor = h.select(&keep, &cols).det()?;
        coeffs.push(if (i + n).is_multiple_of(2) {
            minor
        } else {
            -minor
        });
    }
    Ok(DensePoly::new(coeffs))
}

/// `Delta_n^(2)(x1, x2)` with columns `(x1^i)` and `(x2^i)` last, as a
/// polynomial with coefficient `[i][j]` of `x1^i x2^j`. Needs `n >= 1`.
pub fn delta2_poly(n: usize, moments: &MomentSequence) -> Result<DensePoly2<Scalar>> {
    if n == 0 {
        return Err(Error::UnsupportedSize(0));
    }
    moments.need(2 * n)?;
    let rows = n + 1;
    let h = RealMatrix::from_fn(rows, n - 1, |i, j| moments.get(i + j).clone());
    let minors = h.two_column_minors()?;
    let zero = Scalar::zero(moments.prec());
    let mut coeffs = vec![vec![zero; rows]; rows];
    for a in 1..=rows {
        for b in (a + 1)..=rows {
            let m = minors.signed(a, b);
            coeffs[a - 1][b - 1] = &coeffs[a - 1][b - 1] + &m;
            coeffs[b - 1][a - 1] = &coeffs[b - 1][a - 1] - &m;
        }
    }
    Ok(DensePoly2::new(coeffs))
}

/// Deviations of the two bordered-determinant identities at degree `n`:
/// `Delta^(1)/Delta_n = P_n/h_n` and
/// `Delta^(2)/Delta_n = (P_{n-1}(x1) P_n(x2) - P_n(x1) P_{n-1}(x2))/(h_n h_{n-1})`.
/// The second entry is `None` for `n = 0`.
pub fn delta_identity_deviation(
    n: usize,
    moments: &MomentSequence,
    basis: &OrthoBasis,
) -> Result<(f64, Option<f64>)> {
    let delta = moments.hankel_det(n)?;
    let d1 = delta1_poly(n, moments)?.scale(&delta.recip());
    let rhs1 = basis.poly(n).scale(&basis.norm(n).recip());
    let dev1 = relative(d1.max_deviation(&rhs1), &rhs1);
    if n == 0 {
        return Ok((dev1, None));
    }
    let d2 = delta2_poly(n, moments)?;
    let d2 = DensePoly2::new(
        (0..=n)
            .map(|i| {
                (0..=n)
                    .map(|j| {
                        d2.coeff(i, j)
                            .cloned()
                            .unwrap_or_else(|| Scalar::zero(delta.prec()))
                            / &delta
                    })
                    .collect()
            })
            .collect(),
    );
    let (pn, pm) = (basis.poly(n), basis.poly(n - 1));
    let rhs2 = DensePoly2::outer(pm, pn)
        .sub(&DensePoly2::outer(pn, pm))
        .mul(&DensePoly2::monomial(
            0,
            0,
            (basis.norm(n) * basis.norm(n - 1)).recip(),
        ));
    let scale = rhs2
        .terms()
        .map(|(_, _, c)| c.to_f64().abs())
        .fold(0.0, f64::max);
    Ok((dev1, Some(d2.max_deviation(&rhs2) / scale)))
}

fn relative(dev: f64, reference: &DensePoly<Scalar>) -> f64 {
    let scale = reference
        .coeffs()
        .iter()
        .map(|c| c.to_f64().abs())
        .fold(0.0, f64::max);
    dev / scale
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 256;

    fn p(l: f64, e: f64) -> WeightParams {
        WeightParams::new(Scalar::from_f64(P, l), Scalar::from_f64(P, e)).unwrap()
    }

    #[test]
    fn zeroth_moment_at_ice_point() {
        let m = moments(0, &WeightParams::ice_point(P)).unwrap();
        let expected = Scalar::from_int(P, 2) / Scalar::from_int(P, 3).sqrt();
        assert!((m.get(0) - &expected).abs().to_f64() < 1e-70);
    }

    #[test]
    fn first_polynomials() {
        let m = moments(4, &p(0.9, 0.3)).unwrap();
        let b = build_basis(2, &m).unwrap();
        assert_eq!(b.poly(0).coeffs().len(), 1);
        assert_eq!(b.norm(0), m.get(0));
        let shift = -(m.get(1) / m.get(0));
        let expected = DensePoly::new(vec![shift, Scalar::one(P)]);
        assert!(b.poly(1).max_deviation(&expected) < 1e-70);
    }

    #[test]
    fn delta1_degree_one() {
        let m = moments(2, &p(0.9, 0.3)).unwrap();
        let d = delta1_poly(1, &m).unwrap();
        assert_eq!(d.coeffs()[0], -m.get(1).clone());
        assert_eq!(&d.coeffs()[1], m.get(0));
    }

    #[test]
    fn delta2_is_antisymmetric() {
        let m = moments(6, &p(1.2, 0.5)).unwrap();
        let d = delta2_poly(3, &m).unwrap();
        for (i, j, c) in d.terms() {
            let mirror = d.coeff(j, i).unwrap();
            assert!((c + mirror).abs().to_f64() < 1e-60);
        }
    }

    #[test]
    fn too_few_moments_is_an_error() {
        let m = moments(3, &p(0.9, 0.3)).unwrap();
        assert!(build_basis(2, &m).is_err());
    }

    #[test]
    fn self_reflective_point_has_pure_parity() {
        let pi = Scalar::pi(P);
        let params = WeightParams::new(pi.div_int(2), Scalar::from_f64(P, 0.4)).unwrap();
        let b = build_basis(5, &moments(10, &params).unwrap()).unwrap();
        for n in 0..=5 {
            for (k, c) in b.poly(n).coeffs().iter().enumerate() {
                if (n + k) % 2 == 1 {
                    assert!(c.abs().to_f64() < 1e-60, "P_{n} coefficient {k}");
                }
            }
        }
    }
}
