//! Independent oracles for the numerical building blocks: finite differences
//! at high precision, exact rational elimination, and property tests.

use proptest::prelude::*;
use rug::Rational;

use dwbc::homogeneous::{phi_jet, HomogeneousModel, WeightParams};
use dwbc::numerics::{BiJet, RealMatrix, Scalar, UniJet};
use dwbc::ortho::moments;

const HP: u32 = 1024;

fn s(prec: u32, v: f64) -> Scalar {
    Scalar::from_f64(prec, v)
}

/// Step `2^-100`: truncation error near `2^-200`, rounding error far below.
fn step() -> Scalar {
    Scalar::exp2(HP, -100)
}

fn central_first(f: impl Fn(&Scalar) -> Scalar, x: &Scalar) -> Scalar {
    let h = step();
    (f(&(x + &h)) - f(&(x - &h))) / (h.mul_int(2))
}

fn central_second(f: impl Fn(&Scalar) -> Scalar, x: &Scalar) -> Scalar {
    let h = step();
    (f(&(x + &h)) - f(x).mul_int(2) + f(&(x - &h))) / (&h * &h)
}

fn phi_direct(lambda: &Scalar, eta: &Scalar) -> Scalar {
    (eta.mul_int(2)).sin() / ((lambda + eta).sin() * (lambda - eta).sin())
}

#[test]
fn phi_jet_matches_finite_differences() {
    for (l, e) in [(1.1, 0.35), (2.0, 0.6), (0.9, 0.3)] {
        let (lambda, eta) = (s(HP, l), s(HP, e));
        let p = WeightParams::new(lambda.clone(), eta.clone()).unwrap();
        let jet = phi_jet(&p, 4).unwrap();
        let f = |x: &Scalar| phi_direct(x, &eta);
        assert!((jet.derivative(0) - f(&lambda)).abs().to_f64() < 1e-250);
        let d1 = (jet.derivative(1) - central_first(f, &lambda))
            .abs()
            .to_f64();
        let d2 = (jet.derivative(2) - central_second(f, &lambda))
            .abs()
            .to_f64();
        assert!(d1 < 1e-50 && d2 < 1e-50, "({l}, {e}): {d1:e} {d2:e}");
    }
}

#[test]
fn first_moment_is_the_derivative_of_phi() {
    let (lambda, eta) = (s(HP, 1.3), s(HP, 0.45));
    let p = WeightParams::new(lambda.clone(), eta.clone()).unwrap();
    let c = moments(3, &p).unwrap();
    let fd = central_first(|x| phi_direct(x, &eta), &lambda);
    assert!((c.get(1) - fd).abs().to_f64() < 1e-50);
}

#[test]
fn difference_bijet_matches_mixed_finite_difference() {
    let off = s(HP, 0.8);
    let g = UniJet::sin_affine(&off, 4);
    let bj = BiJet::of_difference(&g, 2, 2).unwrap();
    let f = |x: &Scalar, y: &Scalar| (&off + y - x).sin();
    let h = step();
    let z = Scalar::zero(HP);
    let mixed = (f(&h, &h) - f(&h, &-&h) - f(&-&h, &h) + f(&-&h, &-&h)) / (&h * &h).mul_int(4);
    assert!((bj.derivative(1, 1) - mixed).abs().to_f64() < 1e-50);
    let d1 = (f(&h, &z) - f(&-&h, &z)) / h.mul_int(2);
    assert!((bj.derivative(1, 0) - d1).abs().to_f64() < 1e-50);
}

fn rational_det(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut det = Rational::from(1);
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| m[r][col] != 0) else {
            return Rational::new();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            let factor = Rational::from(&m[r][col] / &p);
            for c in col..n {
                let t = Rational::from(&factor * &m[col][c]);
                m[r][c] -= t;
            }
        }
    }
    det
}

fn hilbert(rows: usize, cols: usize) -> Vec<Vec<Rational>> {
    (0..rows)
        .map(|i| {
            (0..cols)
                .map(|j| Rational::from((1, (i + j + 1) as i64)))
                .collect()
        })
        .collect()
}

fn to_matrix(m: &[Vec<Rational>], prec: u32) -> RealMatrix {
    RealMatrix::from_rows(
        m.iter()
            .map(|row| row.iter().map(|q| Scalar::from_rational(prec, q)).collect())
            .collect(),
    )
    .unwrap()
}

fn rel(x: &Scalar, exact: &Rational) -> f64 {
    let e = Scalar::from_rational(x.prec(), exact);
    ((x - &e) / e.abs()).abs().to_f64()
}

#[test]
fn hilbert_determinant_matches_exact_elimination() {
    let h = hilbert(5, 5);
    let exact = rational_det(h.clone());
    let det = to_matrix(&h, 256).det().unwrap();
    assert!(rel(&det, &exact) < 1e-60);
}

#[test]
fn hilbert_two_row_minors_match_exact_elimination() {
    let h = hilbert(5, 3);
    let minors = to_matrix(&h, 256).two_column_minors().unwrap();
    for a in 1..=5 {
        for b in a + 1..=5 {
            let kept: Vec<Vec<Rational>> = h
                .iter()
                .enumerate()
                .filter(|(i, _)| *i + 1 != a && *i + 1 != b)
                .map(|(_, r)| r.clone())
                .collect();
            let exact = rational_det(kept);
            assert!(rel(minors.get(a, b), &exact) < 1e-55, "({a}, {b})");
        }
    }
}

fn matrix_strategy(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
    prop::collection::vec(prop::collection::vec(-1.0f64..1.0, cols), rows)
}

fn from_f64(m: &[Vec<f64>]) -> RealMatrix {
    RealMatrix::from_rows(
        m.iter()
            .map(|r| r.iter().map(|&v| s(256, v)).collect())
            .collect(),
    )
    .unwrap()
}

fn regime_params() -> impl Strategy<Value = (f64, f64)> {
    (0.15f64..1.4).prop_flat_map(|eta| (eta + 0.1..std::f64::consts::PI - eta - 0.1, Just(eta)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn determinant_is_multiplicative(a in matrix_strategy(4, 4), b in matrix_strategy(4, 4)) {
        let (ma, mb) = (from_f64(&a), from_f64(&b));
        let lhs = ma.mul(&mb).unwrap().det().unwrap();
        let rhs = ma.det().unwrap() * mb.det().unwrap();
        prop_assert!((lhs - rhs).abs().to_f64() < 1e-60);
    }

    #[test]
    fn bordered_expansion_equals_full_determinant(
        (n, m) in (2usize..=6).prop_flat_map(|n| (Just(n), matrix_strategy(n, n)))
    ) {
        let body: Vec<Vec<f64>> = m.iter().map(|r| r[..n - 2].to_vec()).collect();
        let left: Vec<Scalar> = m.iter().map(|r| s(256, r[n - 2])).collect();
        let right: Vec<Scalar> = m.iter().map(|r| s(256, r[n - 1])).collect();
        let minors = from_f64(&body).two_column_minors().unwrap();
        let expanded = minors.bordered_det(&left, &right);
        let full = from_f64(&m).det().unwrap();
        prop_assert!((expanded - full).abs().to_f64() < 1e-60);
    }

    #[test]
    fn boundary_correlators_are_normalized((l, e) in regime_params(), n in 1usize..=6) {
        let p = WeightParams::new(s(256, l), s(256, e)).unwrap();
        let m = HomogeneousModel::new(n, &p).unwrap();
        let h = m.one_point_table().unwrap();
        let total = h.iter().fold(Scalar::zero(256), |acc, x| acc + x);
        prop_assert!((total - Scalar::one(256)).abs().to_f64() < 1e-55);
        for (r1, h1) in h.iter().enumerate() {
            let row = (1..=n).fold(Scalar::zero(256), |acc, r2| acc + m.two_point(r1 + 1, r2).unwrap());
            prop_assert!((row - h1).abs().to_f64() < 1e-55, "r1 = {}", r1 + 1);
        }
    }
}
