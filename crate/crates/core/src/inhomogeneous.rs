//! The fully inhomogeneous model: spectral parameters `lambda_alpha` attached
//! to columns (counted from the right) and `nu_k` attached to rows (counted
//! from the top).

use crate::error::{Error, Result};
use crate::homogeneous::{check_position, WeightParams};
use crate::numerics::{RealMatrix, Scalar};

/// Inhomogeneous parameters with pairwise distinct `lambdas` and `nus`.
#[derive(Clone, Debug, PartialEq)]
pub struct InhomParams {
    lambdas: Vec<Scalar>,
    nus: Vec<Scalar>,
    eta: Scalar,
}

impl InhomParams {
    pub fn new(lambdas: Vec<Scalar>, nus: Vec<Scalar>, eta: Scalar) -> Result<Self> {
        if lambdas.is_empty() {
            return Err(Error::EmptyLattice);
        }
        if lambdas.len() != nus.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} lambdas and {} nus",
                lambdas.len(),
                nus.len()
            )));
        }
        let p = InhomParams { lambdas, nus, eta };
        let gap = p.min_gap();
        let threshold = Scalar::exp2(p.prec(), -((p.prec() / 4) as i32));
        if gap < threshold {
            return Err(Error::DegenerateParameters(format!(
                "minimum gap {:.3e} below {:.3e}",
                gap.to_f64(),
                threshold.to_f64()
            )));
        }
        Ok(p)
    }

    // Subsets of admissible parameters stay admissible.
    fn subset(&self, drop_lambdas: &[usize], drop_nus: &[usize]) -> Self {
        let keep = |v: &[Scalar], drop: &[usize]| {
            v.iter()
                .enumerate()
                .filter(|(i, _)| !drop.contains(i))
                .map(|(_, x)| x.clone())
                .collect()
        };
        InhomParams {
            lambdas: keep(&self.lambdas, drop_lambdas),
            nus: keep(&self.nus, drop_nus),
            eta: self.eta.clone(),
        }
    }

    /// `lambda_alpha = lambda + alpha delta`, `nu_k = k delta`: a point close
    /// to the homogeneous model with parameters `p`.
    pub fn near_homogeneous(n: usize, p: &WeightParams, delta: &Scalar) -> Result<Self> {
        let lambdas = (1..=n)
            .map(|a| p.lambda() + &delta.mul_int(a as i64))
            .collect();
        let nus = (1..=n).map(|k| delta.mul_int(k as i64)).collect();
        InhomParams::new(lambdas, nus, p.eta().clone())
    }

    pub fn n(&self) -> usize {
        self.lambdas.len()
    }

    pub fn lambdas(&self) -> &[Scalar] {
        &self.lambdas
    }

    pub fn nus(&self) -> &[Scalar] {
        &self.nus
    }

    pub fn eta(&self) -> &Scalar {
        &self.eta
    }

    pub fn prec(&self) -> u32 {
        self.lambdas
            .iter()
            .chain(self.nus.iter())
            .map(Scalar::prec)
            .fold(self.eta.prec(), u32::min)
    }

    /// Smallest of `|sin|` over parameter differences and over the weights.
    pub fn min_gap(&self) -> Scalar {
        let n = self.n();
        let mut gap = self.c().abs();
        for i in 0..n {
            for j in (i + 1)..n {
                gap = min(gap, d(&self.lambdas[i], &self.lambdas[j]).abs());
                gap = min(gap, d(&self.nus[i], &self.nus[j]).abs());
            }
            for nu in &self.nus {
                gap = min(gap, self.a(&self.lambdas[i], nu).abs());
                gap = min(gap, self.b(&self.lambdas[i], nu).abs());
            }
        }
        gap
    }

    /// Rough bound on the absolute error of quantities built from `det T`:
    /// working precision amplified by `gap^(-N)`.
    pub fn error_bound(&self) -> f64 {
        let gap = self.min_gap().to_f64();
        2f64.powi(-(self.prec() as i32)) / gap.powi(self.n() as i32)
    }

    pub fn a(&self, lambda: &Scalar, nu: &Scalar) -> Scalar {
        (lambda - nu + &self.eta).sin()
    }

    pub fn b(&self, lambda: &Scalar, nu: &Scalar) -> Scalar {
        (lambda - nu - &self.eta).sin()
    }

    pub fn c(&self) -> Scalar {
        (&self.eta + &self.eta).sin()
    }

    /// `e(x, y) = sin(x - y + 2 eta)`.
    pub fn e(&self, x: &Scalar, y: &Scalar) -> Scalar {
        (x - y + &self.eta + &self.eta).sin()
    }

    /// `t(lambda, nu) = c / (a b)`.
    pub fn t(&self, lambda: &Scalar, nu: &Scalar) -> Scalar {
        self.c() / (self.a(lambda, nu) * self.b(lambda, nu))
    }

    pub fn t_matrix(&self) -> RealMatrix {
        RealMatrix::from_fn(self.n(), self.n(), |i, k| {
            self.t(&self.lambdas[i], &self.nus[k])
        })
    }
}

fn min(x: Scalar, y: Scalar) -> Scalar {
    if y < x {
        y
    } else {
        x
    }
}

/// `d(x, y) = sin(x - y)`.
pub fn d(x: &Scalar, y: &Scalar) -> Scalar {
    (x - y).sin()
}

fn product(prec: u32, items: impl IntoIterator<Item = Scalar>) -> Scalar {
    items.into_iter().fold(Scalar::one(prec), |acc, x| acc * x)
}

/// Which `(alpha, beta)` range the two-point double sum runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SumRange {
    /// `alpha <= r1`, `beta <= r2`.
    Truncated,
    /// `alpha, beta <= N`; the extra terms vanish identically.
    Full,
}

/// Cached `T` matrix and its determinant.
#[derive(Clone, Debug)]
pub struct InhomogeneousModel {
    params: InhomParams,
    t: RealMatrix,
    det_t: Scalar,
}

impl InhomogeneousModel {
    pub fn new(params: &InhomParams) -> Result<Self> {
        let t = params.t_matrix();
        let det_t = t.det()?;
        if det_t.is_zero() {
            return Err(Error::DegenerateParameters("det T vanishes".into()));
        }
        Ok(InhomogeneousModel {
            params: params.clone(),
            t,
            det_t,
        })
    }

    pub fn params(&self) -> &InhomParams {
        &self.params
    }

    pub fn n(&self) -> usize {
        self.params.n()
    }

    fn prec(&self) -> u32 {
        self.params.prec()
    }

    pub fn t_matrix(&self) -> &RealMatrix {
        &self.t
    }

    pub fn det_t(&self) -> &Scalar {
        &self.det_t
    }

    pub fn partition_function(&self) -> Scalar {
        let p = &self.params;
        let (l, nu) = (p.lambdas(), p.nus());
        let n = self.n();
        let prec = self.prec();
        let num = product(
            prec,
            l.iter()
                .flat_map(|x| nu.iter().map(move |y| p.a(x, y) * p.b(x, y))),
        );
        let mut den = Scalar::one(prec);
        for i in 0..n {
            for j in (i + 1)..n {
                den = den * d(&l[j], &l[i]) * d(&nu[i], &nu[j]);
            }
        }
        num / den * &self.det_t
    }

    fn det_first_column(&self, column: &[Scalar]) -> Result<Scalar> {
        self.t.with_column(0, column)?.det()
    }

    /// `prod_{k >= 2} d(nu_1, nu_k)`.
    fn nu_one_product(&self) -> Scalar {
        let nu = self.params.nus();
        product(self.prec(), nu[1..].iter().map(|x| d(&nu[0], x)))
    }

    /// Probability of the type-5 vertex at column `r` of the first row, by
    /// the `V` determinant.
    pub fn one_point_det(&self, r: usize) -> Result<Scalar> {
        let n = self.n();
        check_position(r, n)?;
        let p = &self.params;
        let (l, nu) = (p.lambdas(), p.nus());
        let prec = self.prec();
        let v = |x: &Scalar| {
            let num = product(
                prec,
                l[r..]
                    .iter()
                    .map(|g| d(g, x))
                    .chain(l[..r - 1].iter().map(|g| p.e(g, x))),
            );
            num / product(prec, nu[1..].iter().map(|y| p.b(x, y)))
        };
        let column: Vec<Scalar> = l.iter().map(v).collect();
        let den = product(
            prec,
            l[..r]
                .iter()
                .map(|x| p.a(x, &nu[0]))
                .chain(l[r - 1..].iter().map(|x| p.b(x, &nu[0]))),
        );
        Ok(p.c() * self.nu_one_product() / den * self.det_first_column(&column)? / &self.det_t)
    }

    /// Probability of a left arrow on the first-row edge left of column `r`,
    /// by the `S` determinant.
    pub fn polarization_det(&self, r: usize) -> Result<Scalar> {
        let n = self.n();
        check_position(r, n)?;
        let p = &self.params;
        let (l, nu) = (p.lambdas(), p.nus());
        let prec = self.prec();
        let s = |x: &Scalar| {
            let num = product(
                prec,
                l[r..]
                    .iter()
                    .map(|g| d(g, x))
                    .chain(l[..r].iter().map(|g| p.e(g, x))),
            );
            num / product(prec, nu.iter().map(|y| p.b(x, y)))
        };
        let column: Vec<Scalar> = l.iter().map(s).collect();
        let den = product(
            prec,
            l[..r]
                .iter()
                .map(|x| p.a(x, &nu[0]))
                .chain(l[r..].iter().map(|x| p.b(x, &nu[0]))),
        );
        Ok(self.nu_one_product() / den * self.det_first_column(&column)? / &self.det_t)
    }

    /// `Z_{N-1}` with `lambda_beta` and `nu_1` removed.
    fn reduced_partition(&self, beta: usize) -> Result<Scalar> {
        if self.n() == 1 {
            return Ok(Scalar::one(self.prec()));
        }
        let sub = self.params.subset(&[beta], &[0]);
        Ok(InhomogeneousModel::new(&sub)?.partition_function())
    }

    /// `f(x, y) = e(y, x) / d(y, x)`.
    fn f(&self, x: &Scalar, y: &Scalar) -> Scalar {
        self.params.e(y, x) / d(y, x)
    }

    /// One-point function as a sum over reduced partition functions.
    pub fn one_point_sum(&self, r: usize) -> Result<Scalar> {
        let n = self.n();
        check_position(r, n)?;
        let p = &self.params;
        let (l, nu) = (p.lambdas(), p.nus());
        let prec = self.prec();
        let c = p.c();
        let mut sum = Scalar::zero(prec);
        for beta in 0..r {
            let lb = &l[beta];
            // g/f (lambda_beta, lambda_r) = c / e(lambda_r, lambda_beta)
            let mut term =
                product(prec, nu[1..].iter().map(|y| p.a(lb, y))) * &c / p.e(&l[r - 1], lb);
            for (gamma, lg) in l[..r].iter().enumerate() {
                if gamma != beta {
                    term *= &self.f(lb, lg);
                }
            }
            sum += &(term * self.reduced_partition(beta)?);
        }
        let pref = product(
            prec,
            l[r..]
                .iter()
                .map(|x| p.a(x, &nu[0]))
                .chain(l[..r - 1].iter().map(|x| p.b(x, &nu[0]))),
        );
        Ok(c * pref * sum / self.partition_function())
    }

    /// Boundary polarization as a sum over reduced partition functions.
    pub fn polarization_sum(&self, r: usize) -> Result<Scalar> {
        let n = self.n();
        check_position(r, n)?;
        let p = &self.params;
        let (l, nu) = (p.lambdas(), p.nus());
        let prec = self.prec();
        let c = p.c();
        let mut sum = Scalar::zero(prec);
        for beta in 0..r {
            let lb = &l[beta];
            let mut term = product(prec, nu[1..].iter().map(|y| p.a(lb, y))) * &c / p.b(lb, &nu[0]);
            for (gamma, lg) in l[..r].iter().enumerate() {
                if gamma != beta {
                    term *= &self.f(lb, lg);
                }
            }
            sum += &(term * self.reduced_partition(beta)?);
        }
        let pref = product(
            prec,
            l[r..]
                .iter()
                .map(|x| p.a(x, &nu[0]))
                .chain(l[..r].iter().map(|x| p.b(x, &nu[0]))),
        );
        Ok(pref * sum / self.partition_function())
    }

    /// Joint probability of type-5 vertices at column `r1` of the first row
    /// and column `r2` of the last row. Needs `N >= 2`.
    pub fn two_point(&self, r1: usize, r2: usize) -> Result<Scalar> {
        self.two_point_with(r1, r2, SumRange::Truncated)
    }

    pub fn two_point_with(&self, r1: usize, r2: usize, range: SumRange) -> Result<Scalar> {
        let n = self.n();
        if n < 2 {
            return Err(Error::UnsupportedSize(n));
        }
        check_position(r1, n)?;
        check_position(r2, n)?;
        let p = &self.params;
        let (l, nu) = (p.lambdas(), p.nus());
        let prec = self.prec();
        let inner = &nu[1..n - 1];
        let w = |r: usize, x: &Scalar| {
            let num = product(
                prec,
                l[r..]
                    .iter()
                    .map(|g| d(g, x))
                    .chain(l[..r - 1].iter().map(|g| p.e(g, x))),
            );
            num / product(prec, inner.iter().map(|y| p.b(x, y)))
        };
        let w_tilde = |r: usize, x: &Scalar| {
            let num = product(
                prec,
                l[r..]
                    .iter()
                    .map(|g| d(x, g))
                    .chain(l[..r - 1].iter().map(|g| p.e(x, g))),
            );
            num / product(prec, inner.iter().map(|y| p.a(x, y)))
        };
        let rows: Vec<usize> = (0..n).collect();
        let cols: Vec<usize> = (1..n - 1).collect();
        let minors = self.t.select(&rows, &cols).two_column_minors()?;
        let (lim1, lim2) = match range {
            SumRange::Truncated => (r1, r2),
            SumRange::Full => (n, n),
        };
        let mut sum = Scalar::zero(prec);
        for alpha in 1..=lim1 {
            let wa = w(r1, &l[alpha - 1]);
            for beta in 1..=lim2 {
                if beta == alpha {
                    continue;
                }
                let mut term = &wa * &w_tilde(r2, &l[beta - 1]) / p.e(&l[beta - 1], &l[alpha - 1])
                    * minors.get(alpha.min(beta), alpha.max(beta));
                // (-1)^(N + alpha + beta) times the sign of alpha - beta
                let negative = (n + alpha + beta) % 2 == 1;
                if negative != (alpha < beta) {
                    term = -term;
                }
                sum += &term;
            }
        }
        let c = p.c();
        let mut num = c.powi(2) * d(&nu[0], &nu[n - 1]);
        for y in inner {
            num = num * d(&nu[0], y) * d(y, &nu[n - 1]);
        }
        let den = product(
            prec,
            l[..r1]
                .iter()
                .map(|x| p.a(x, &nu[0]))
                .chain(l[r1 - 1..].iter().map(|x| p.b(x, &nu[0])))
                .chain(l[..r2].iter().map(|x| p.b(x, &nu[n - 1])))
                .chain(l[r2 - 1..].iter().map(|x| p.a(x, &nu[n - 1]))),
        );
        Ok(num / den / &self.det_t * sum)
    }

    pub fn two_point_table(&self) -> Result<Vec<Vec<Scalar>>> {
        let n = self.n();
        (1..=n)
            .map(|r1| (1..=n).map(|r2| self.two_point(r1, r2)).collect())
            .collect()
    }
}

pub fn z_inhom(params: &InhomParams) -> Result<Scalar> {
    Ok(InhomogeneousModel::new(params)?.partition_function())
}

pub fn h_inhom_det(r: usize, params: &InhomParams) -> Result<Scalar> {
    InhomogeneousModel::new(params)?.one_point_det(r)
}

pub fn g_inhom_det(r: usize, params: &InhomParams) -> Result<Scalar> {
    InhomogeneousModel::new(params)?.polarization_det(r)
}

pub fn h_inhom_sum(r: usize, params: &InhomParams) -> Result<Scalar> {
    InhomogeneousModel::new(params)?.one_point_sum(r)
}

pub fn g_inhom_sum(r: usize, params: &InhomParams) -> Result<Scalar> {
    InhomogeneousModel::new(params)?.polarization_sum(r)
}

pub fn h2_inhom(r1: usize, r2: usize, params: &InhomParams) -> Result<Scalar> {
    InhomogeneousModel::new(params)?.two_point(r1, r2)
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 256;

    fn s(v: f64) -> Scalar {
        Scalar::from_f64(P, v)
    }

    fn params(l: &[f64], nu: &[f64], eta: f64) -> InhomParams {
        InhomParams::new(
            l.iter().map(|&v| s(v)).collect(),
            nu.iter().map(|&v| s(v)).collect(),
            s(eta),
        )
        .unwrap()
    }

    #[test]
    fn single_site() {
        let p = params(&[1.0], &[0.1], 0.3);
        let m = InhomogeneousModel::new(&p).unwrap();
        assert!((m.partition_function() - p.c()).abs().to_f64() < 1e-70);
        for v in [
            m.one_point_det(1).unwrap(),
            m.polarization_det(1).unwrap(),
            m.one_point_sum(1).unwrap(),
            m.polarization_sum(1).unwrap(),
        ] {
            assert!((v.to_f64() - 1.0).abs() < 1e-60);
        }
        assert_eq!(m.two_point(1, 1), Err(Error::UnsupportedSize(1)));
    }

    #[test]
    fn partition_function_matches_enumeration() {
        let p = params(&[1.0, 1.3, 0.9], &[0.1, -0.2, 0.25], 0.35);
        let z = z_inhom(&p).unwrap();
        let oracle = crate::lattice::oracle_inhomogeneous(&p).unwrap();
        let expected = oracle.partition();
        assert!(((z - expected) / expected).abs().to_f64() < 1e-60);
    }

    #[test]
    fn coinciding_parameters_are_rejected() {
        let err = InhomParams::new(vec![s(1.0), s(1.0)], vec![s(0.0), s(0.2)], s(0.3));
        assert!(matches!(err, Err(Error::DegenerateParameters(_))));
        let err = InhomParams::new(vec![s(1.0)], vec![s(0.0), s(0.2)], s(0.3));
        assert!(matches!(err, Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn polarization_is_normalized() {
        let p = params(&[1.0, 1.25, 0.8, 1.4], &[0.05, -0.1, 0.2, 0.0], 0.4);
        let m = InhomogeneousModel::new(&p).unwrap();
        assert!((m.polarization_det(4).unwrap().to_f64() - 1.0).abs() < 1e-60);
        assert!((m.polarization_sum(4).unwrap().to_f64() - 1.0).abs() < 1e-60);
    }

    #[test]
    fn full_range_matches_truncated() {
        let p = params(&[1.0, 1.25, 0.8, 1.4], &[0.05, -0.1, 0.2, 0.0], 0.4);
        let m = InhomogeneousModel::new(&p).unwrap();
        for r1 in 1..=4 {
            for r2 in 1..=4 {
                let a = m.two_point_with(r1, r2, SumRange::Truncated).unwrap();
                let b = m.two_point_with(r1, r2, SumRange::Full).unwrap();
                assert!((a - b).abs().to_f64() < 1e-60);
            }
        }
    }
}
