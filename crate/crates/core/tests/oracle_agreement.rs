use dwbc::homogeneous::{crossing_check, HomogeneousModel, WeightParams};
use dwbc::inhomogeneous::{InhomParams, InhomogeneousModel};
use dwbc::lattice::{oracle_homogeneous, oracle_inhomogeneous};
use dwbc::numerics::Scalar;
use dwbc::ortho::{h2_identity_table, h2_nice, OrthoModel};

const P: u32 = 256;

fn params(l: f64, e: f64) -> WeightParams {
    WeightParams::new(Scalar::from_f64(P, l), Scalar::from_f64(P, e)).unwrap()
}

fn close(x: &Scalar, y: &Scalar, tol: f64) -> bool {
    (x - y).abs().to_f64() <= tol
}

fn hom_oracle(n: usize, p: &WeightParams) -> dwbc::lattice::OracleTables<Scalar> {
    let w = p.weights();
    oracle_homogeneous(n, &w.a, &w.b, &w.c).unwrap()
}

#[test]
fn homogeneous_determinants_match_enumeration() {
    for (l, e) in [(1.1, 0.35), (0.9, 0.3), (2.0, 0.6)] {
        let p = params(l, e);
        for n in 1..=5 {
            let m = HomogeneousModel::new(n, &p).unwrap();
            let o = hom_oracle(n, &p);
            let z = m.partition_function();
            assert!(
                ((&z - o.partition()) / &z).abs().to_f64() < 1e-60,
                "Z n={n}"
            );
            for r in 1..=n {
                assert!(
                    close(&m.one_point(r).unwrap(), &o.h1(r).unwrap(), 1e-60),
                    "H n={n} r={r}"
                );
                assert!(
                    close(&m.polarization(r).unwrap(), &o.g1(r).unwrap(), 1e-60),
                    "G n={n} r={r}"
                );
                for s in 1..=n {
                    let det = m.two_point(r, s).unwrap();
                    assert!(
                        close(&det, &o.h2(r, s).unwrap(), 1e-60),
                        "H2 n={n} ({r},{s})"
                    );
                }
            }
        }
    }
}

#[test]
fn ortho_routes_match_determinant() {
    let p = params(1.1, 0.35);
    for n in 1..=6 {
        let m = HomogeneousModel::new(n, &p).unwrap();
        let o = OrthoModel::new(n, &p).unwrap();
        for r in 1..=n {
            let det = m.one_point(r).unwrap();
            for crossed in [false, true] {
                assert!(
                    close(&det, &o.one_point(r, crossed).unwrap(), 1e-60),
                    "n={n} r={r}"
                );
                assert!(
                    close(&det, &o.one_point_omega(r, crossed).unwrap(), 1e-60),
                    "omega n={n} r={r}"
                );
            }
        }
    }
}

#[test]
fn two_point_routes_agree() {
    let p = params(1.1, 0.35);
    for n in 2..=6 {
        let m = HomogeneousModel::new(n, &p).unwrap();
        let ident = h2_identity_table(n, &p).unwrap();
        for r1 in 1..=n {
            for r2 in 1..=n {
                let det = m.two_point(r1, r2).unwrap();
                assert!(
                    close(&det, &ident[r1 - 1][r2 - 1], 1e-60),
                    "identity n={n} ({r1},{r2})"
                );
                let nice = h2_nice(n, r1, r2, &p).unwrap();
                assert!(close(&det, &nice, 1e-60), "nice n={n} ({r1},{r2})");
            }
        }
    }
}

#[test]
fn crossing_symmetry_holds() {
    let r = crossing_check(5, &params(1.3, 0.45)).unwrap();
    assert!(r.one_point < 1e-60 && r.two_point < 1e-60, "{r:?}");
}

fn inhom(n: usize, seed: u64) -> InhomParams {
    // a fixed spread of distinct parameters around lambda = 1.2
    let s = |v: f64| Scalar::from_f64(P, v);
    let lambdas = (0..n)
        .map(|i| s(1.2 + 0.13 * i as f64 - 0.02 * seed as f64))
        .collect();
    let nus = (0..n)
        .map(|k| s(0.07 * k as f64 - 0.11 * (k % 2) as f64))
        .collect();
    InhomParams::new(lambdas, nus, s(0.4)).unwrap()
}

#[test]
fn inhomogeneous_routes_match_enumeration() {
    for n in 1..=5 {
        let p = inhom(n, 1);
        let m = InhomogeneousModel::new(&p).unwrap();
        let o = oracle_inhomogeneous(&p).unwrap();
        let z = m.partition_function();
        assert!(
            ((&z - o.partition()) / &z).abs().to_f64() < 1e-60,
            "Z n={n}"
        );
        for r in 1..=n {
            let oh = &o.h1(r).unwrap();
            let og = &o.g1(r).unwrap();
            assert!(
                close(&m.one_point_det(r).unwrap(), oh, 1e-55),
                "Hdet n={n} r={r}"
            );
            assert!(
                close(&m.one_point_sum(r).unwrap(), oh, 1e-55),
                "Hsum n={n} r={r}"
            );
            assert!(
                close(&m.polarization_det(r).unwrap(), og, 1e-55),
                "Gdet n={n} r={r}"
            );
            assert!(
                close(&m.polarization_sum(r).unwrap(), og, 1e-55),
                "Gsum n={n} r={r}"
            );
            if n >= 2 {
                for s in 1..=n {
                    let v = m.two_point(r, s).unwrap();
                    assert!(close(&v, &o.h2(r, s).unwrap(), 1e-55), "H2 n={n} ({r},{s})");
                }
            }
        }
    }
}
