//! Brute-force partition functions and boundary correlators.
//!
//! The homogeneous oracle compresses the enumeration into an exact integer
//! histogram over `(boundary data, n_a, n_b, #type-6)`; any weights can then
//! be plugged in, including exact rationals. The inhomogeneous oracle sums
//! per-cell weight products directly.

use std::collections::BTreeMap;

use super::grid::{check_size, DwbcWalker, Grid, VertexType, WeightClass, DEFAULT_SIZE_CAP};
use crate::error::{Error, Result};
use crate::inhomogeneous::InhomParams;
use crate::numerics::{Coefficient, Scalar};

/// Per-configuration boundary data and weight exponents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConfigKey {
    /// Type-5 position (from the right) in the first row.
    pub top: u8,
    /// Type-5 position (from the right) in the last row.
    pub bottom: u8,
    /// Bit `r - 1` set when the first-row edge left of column `r` points left.
    pub top_left_edges: u16,
    /// Same for the last row.
    pub bottom_left_edges: u16,
    pub n_a: u8,
    pub n_b: u8,
    /// Number of type-6 vertices (the `-1` entries of the ASM).
    pub n_neg: u8,
}

impl ConfigKey {
    pub fn n_c(&self, n: usize) -> usize {
        n * n - self.n_a as usize - self.n_b as usize
    }
}

fn key_of(n: usize, cells: &[VertexType]) -> ConfigKey {
    let at = |k: usize, alpha: usize| cells[(k - 1) * n + (n - alpha)];
    let mut key = ConfigKey {
        top: 0,
        bottom: 0,
        top_left_edges: 0,
        bottom_left_edges: 0,
        n_a: 0,
        n_b: 0,
        n_neg: 0,
    };
    for v in cells {
        match v.weight_class() {
            WeightClass::A => key.n_a += 1,
            WeightClass::B => key.n_b += 1,
            WeightClass::C => {
                if *v == VertexType::T6 {
                    key.n_neg += 1
                }
            }
        }
    }
    for alpha in 1..=n {
        let t = at(1, alpha);
        let b = at(n, alpha);
        if t == VertexType::T5 {
            key.top = alpha as u8;
        }
        if b == VertexType::T5 {
            key.bottom = alpha as u8;
        }
        if t.left_points_left() {
            key.top_left_edges |= 1 << (alpha - 1);
        }
        if b.left_points_left() {
            key.bottom_left_edges |= 1 << (alpha - 1);
        }
    }
    key
}

/// Exact multiplicities of every [`ConfigKey`] over all DWBC grids of size N.
#[derive(Clone, Debug)]
pub struct ConfigHistogram {
    n: usize,
    counts: BTreeMap<ConfigKey, u64>,
}

impl ConfigHistogram {
    pub fn build(n: usize) -> Result<Self> {
        Self::build_capped(n, DEFAULT_SIZE_CAP)
    }

    pub fn build_capped(n: usize, cap: usize) -> Result<Self> {
        check_size(n, cap)?;
        let mut counts = BTreeMap::new();
        let mut walker = DwbcWalker::new(n);
        while let Some(cells) = walker.advance() {
            *counts.entry(key_of(n, cells)).or_insert(0) += 1;
        }
        Ok(ConfigHistogram { n, counts })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> impl Iterator<Item = (&ConfigKey, u64)> {
        self.counts.iter().map(|(k, &c)| (k, c))
    }

    /// Number of configurations (the ASM count).
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Correlator tables at homogeneous weights `(a, b, c)`.
    pub fn evaluate<T: Coefficient>(&self, a: &T, b: &T, c: &T) -> OracleTables<T> {
        let n = self.n;
        let mut acc = Accumulator::new(n, a.zero_like());
        for (key, count) in self.entries() {
            let w = a
                .pow_u32(key.n_a as u32)
                .times(&b.pow_u32(key.n_b as u32))
                .times(&c.pow_u32(key.n_c(n) as u32))
                .times(&a.from_i64_like(count as i64));
            acc.add(key, &w);
        }
        acc.finish()
    }
}

struct Accumulator<T> {
    n: usize,
    z: T,
    h1: Vec<T>,
    g1: Vec<T>,
    h2: Vec<Vec<T>>,
    g2: Vec<Vec<T>>,
}

impl<T: Coefficient> Accumulator<T> {
    fn new(n: usize, zero: T) -> Self {
        Accumulator {
            n,
            h1: vec![zero.clone(); n],
            g1: vec![zero.clone(); n],
            h2: vec![vec![zero.clone(); n]; n],
            g2: vec![vec![zero.clone(); n]; n],
            z: zero,
        }
    }

    fn add(&mut self, key: &ConfigKey, w: &T) {
        let (t, b) = (key.top as usize - 1, key.bottom as usize - 1);
        self.z = self.z.plus(w);
        self.h1[t] = self.h1[t].plus(w);
        self.h2[t][b] = self.h2[t][b].plus(w);
        for r1 in 0..self.n {
            if key.top_left_edges & (1 << r1) == 0 {
                continue;
            }
            self.g1[r1] = self.g1[r1].plus(w);
            for r2 in 0..self.n {
                if key.bottom_left_edges & (1 << r2) != 0 {
                    self.g2[r1][r2] = self.g2[r1][r2].plus(w);
                }
            }
        }
    }

    fn finish(self) -> OracleTables<T> {
        let z = self.z;
        let div = |v: &T| v.exact_div(&z).expect("partition function is nonzero");
        OracleTables {
            n: self.n,
            h1: self.h1.iter().map(div).collect(),
            g1: self.g1.iter().map(div).collect(),
            h2: self
                .h2
                .iter()
                .map(|row| row.iter().map(div).collect())
                .collect(),
            g2: self
                .g2
                .iter()
                .map(|row| row.iter().map(div).collect())
                .collect(),
            z,
        }
    }
}

/// Partition function and normalised boundary correlators from enumeration.
/// Positions are 1-based and counted from the right on both boundary rows.
#[derive(Clone, Debug, PartialEq)]
pub struct OracleTables<T> {
    n: usize,
    z: T,
    h1: Vec<T>,
    g1: Vec<T>,
    h2: Vec<Vec<T>>,
    g2: Vec<Vec<T>>,
}

impl<T: Clone> OracleTables<T> {
    fn check(&self, r: usize) -> Result<usize> {
        if (1..=self.n).contains(&r) {
            Ok(r - 1)
        } else {
            Err(Error::PositionOutOfRange {
                position: r,
                n: self.n,
            })
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn partition(&self) -> &T {
        &self.z
    }

    /// Probability of the first-row type-5 vertex at position `r`.
    pub fn h1(&self, r: usize) -> Result<T> {
        Ok(self.h1[self.check(r)?].clone())
    }

    /// Probability of a left arrow on the first-row edge left of column `r`.
    pub fn g1(&self, r: usize) -> Result<T> {
        Ok(self.g1[self.check(r)?].clone())
    }

    /// Joint probability of type-5 vertices at `r1` (first row) and `r2`
    /// (last row).
    pub fn h2(&self, r1: usize, r2: usize) -> Result<T> {
        Ok(self.h2[self.check(r1)?][self.check(r2)?].clone())
    }

    pub fn g2(&self, r1: usize, r2: usize) -> Result<T> {
        Ok(self.g2[self.check(r1)?][self.check(r2)?].clone())
    }

    pub fn h1_table(&self) -> &[T] {
        &self.h1
    }

    pub fn g1_table(&self) -> &[T] {
        &self.g1
    }

    pub fn h2_table(&self) -> &[Vec<T>] {
        &self.h2
    }

    pub fn g2_table(&self) -> &[Vec<T>] {
        &self.g2
    }
}

/// `a^(n1+n2) b^(n3+n4) c^(n5+n6)` for one grid.
pub fn weight_hom<T: Coefficient>(grid: &Grid, a: &T, b: &T, c: &T) -> T {
    let counts = grid.type_counts();
    a.pow_u32((counts[0] + counts[1]) as u32)
        .times(&b.pow_u32((counts[2] + counts[3]) as u32))
        .times(&c.pow_u32((counts[4] + counts[5]) as u32))
}

/// Product of inhomogeneous vertex weights: the cell on row `k`, column
/// `alpha` gets `a(lambda_alpha, nu_k)`, `b(lambda_alpha, nu_k)` or `c`.
pub fn weight_inhom(
    grid: &Grid,
    lambdas: &[Scalar],
    nus: &[Scalar],
    eta: &Scalar,
) -> Result<Scalar> {
    let n = grid.n();
    if lambdas.len() != n || nus.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "{} lambdas and {} nus for N = {n}",
            lambdas.len(),
            nus.len()
        )));
    }
    let table = CellWeights::new(lambdas, nus, eta);
    Ok(table.product(n, grid.cells()))
}

struct CellWeights {
    // a and b indexed [k-1][alpha-1]
    a: Vec<Vec<Scalar>>,
    b: Vec<Vec<Scalar>>,
    c: Scalar,
}

impl CellWeights {
    fn new(lambdas: &[Scalar], nus: &[Scalar], eta: &Scalar) -> Self {
        let a = nus
            .iter()
            .map(|nu| lambdas.iter().map(|l| (l - nu + eta).sin()).collect())
            .collect();
        let b = nus
            .iter()
            .map(|nu| lambdas.iter().map(|l| (l - nu - eta).sin()).collect())
            .collect();
        let c = (eta + eta).sin();
        CellWeights { a, b, c }
    }

    fn product(&self, n: usize, cells: &[VertexType]) -> Scalar {
        let mut w = Scalar::one(self.c.prec());
        for (idx, v) in cells.iter().enumerate() {
            let (k, alpha) = (idx / n, n - 1 - idx % n);
            let f = match v.weight_class() {
                WeightClass::A => &self.a[k][alpha],
                WeightClass::B => &self.b[k][alpha],
                WeightClass::C => &self.c,
            };
            w *= f;
        }
        w
    }
}

/// Oracle tables at homogeneous weights, for sizes up to the default cap.
pub fn oracle_homogeneous<T: Coefficient>(
    n: usize,
    a: &T,
    b: &T,
    c: &T,
) -> Result<OracleTables<T>> {
    Ok(ConfigHistogram::build(n)?.evaluate(a, b, c))
}

/// Oracle tables for the inhomogeneous model.
pub fn oracle_inhomogeneous(params: &InhomParams) -> Result<OracleTables<Scalar>> {
    oracle_inhomogeneous_capped(params, DEFAULT_SIZE_CAP)
}

pub fn oracle_inhomogeneous_capped(
    params: &InhomParams,
    cap: usize,
) -> Result<OracleTables<Scalar>> {
    let n = params.n();
    check_size(n, cap)?;
    let table = CellWeights::new(params.lambdas(), params.nus(), params.eta());
    let mut acc = Accumulator::new(n, Scalar::zero(params.prec()));
    let mut walker = DwbcWalker::new(n);
    while let Some(cells) = walker.advance() {
        let w = table.product(n, cells);
        acc.add(&key_of(n, cells), &w);
    }
    Ok(acc.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::enumerate_dwbc;
    use rug::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn single_site() {
        let t = oracle_homogeneous(1, &q(2, 1), &q(3, 1), &q(5, 1)).unwrap();
        assert_eq!(*t.partition(), q(5, 1));
        assert_eq!(t.h1(1).unwrap(), q(1, 1));
        assert_eq!(t.h2(1, 1).unwrap(), q(1, 1));
        assert_eq!(t.g1(1).unwrap(), q(1, 1));
    }

    #[test]
    fn two_by_two_partition() {
        let (a, b, c) = (q(2, 1), q(3, 1), q(5, 1));
        let t = oracle_homogeneous(2, &a, &b, &c).unwrap();
        assert_eq!(*t.partition(), q(25 * (4 + 9), 1));
        assert_eq!(t.h2(1, 1).unwrap(), q(0, 1));
        assert_eq!(t.h2(2, 2).unwrap(), q(0, 1));
    }

    #[test]
    fn ice_point_two_by_two() {
        let one = q(1, 1);
        let t = oracle_homogeneous(2, &one, &one, &one).unwrap();
        assert_eq!(t.h1(1).unwrap(), q(1, 2));
    }

    #[test]
    fn uniform_weight_per_grid() {
        let s = q(3, 7);
        for g in enumerate_dwbc(2).unwrap() {
            assert_eq!(weight_hom(&g, &s, &s, &s), s.clone().pow_u32(4));
        }
    }

    #[test]
    fn out_of_range_positions() {
        let t = oracle_homogeneous(3, &q(1, 1), &q(1, 1), &q(1, 1)).unwrap();
        assert!(t.h1(0).is_err());
        assert!(t.h1(4).is_err());
        assert!(t.h2(1, 4).is_err());
    }

    #[test]
    fn single_site_inhomogeneous_weight_is_c() {
        let p = 256;
        let g = enumerate_dwbc(1).unwrap().next().unwrap();
        let eta = Scalar::from_f64(p, 0.4);
        let w = weight_inhom(
            &g,
            &[Scalar::from_f64(p, 1.3)],
            &[Scalar::from_f64(p, 0.1)],
            &eta,
        )
        .unwrap();
        assert_eq!(w, (&eta + &eta).sin());
    }
}
