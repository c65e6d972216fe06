//! Cross-route verification suite. Each function covers one group of
//! checks and returns one [`Check`] per property, with the worst deviation
//! over all sizes and parameter draws.

use rug::{Integer, Rational};

use crate::error::Result;
use crate::homogeneous::{crossing_check, HomogeneousModel, WeightParams};
use crate::inhomogeneous::{InhomParams, InhomogeneousModel, SumRange};
use crate::lattice::{oracle_inhomogeneous, refined_census, ConfigHistogram, OracleTables};
use crate::numerics::{Scalar, DEFAULT_PRECISION};
use crate::ortho::{
    build_basis, delta_identity_deviation, moments, parity_check, shift_scan, truncation_excess,
    two_point_from_one_point, two_point_table_from_one_point, verify_hnuv, OmegaRhoJets,
    OrthoModel,
};
use crate::sampling::ParamSampler;

/// Outcome of one property check.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub criterion: u8,
    pub name: String,
    /// Worst deviation observed; for lower-bound checks, the observed value.
    pub value: f64,
    /// Tolerance (upper bound) or required minimum.
    pub bound: f64,
    pub kind: CheckKind,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckKind {
    /// Passes when `value <= bound`.
    AtMost,
    /// Passes when `value >= bound`.
    AtLeast,
    /// Exact comparison; `value` is the number of mismatches.
    Exact,
}

impl Check {
    fn at_most(criterion: u8, name: &str, worst: Worst, bound: f64) -> Self {
        Check {
            criterion,
            name: name.into(),
            value: worst.value,
            bound,
            kind: CheckKind::AtMost,
            // NaN deviations fail
            passed: worst.value <= bound,
            detail: worst.at,
        }
    }

    fn at_least(criterion: u8, name: &str, value: f64, bound: f64, detail: String) -> Self {
        Check {
            criterion,
            name: name.into(),
            value,
            bound,
            kind: CheckKind::AtLeast,
            passed: value >= bound,
            detail,
        }
    }

    fn exact(criterion: u8, name: &str, mismatches: Vec<String>) -> Self {
        Check {
            criterion,
            name: name.into(),
            value: mismatches.len() as f64,
            bound: 0.0,
            kind: CheckKind::Exact,
            passed: mismatches.is_empty(),
            detail: mismatches.join("; "),
        }
    }
}

/// Running maximum with the label of the case that produced it.
#[derive(Clone, Debug, Default)]
struct Worst {
    value: f64,
    at: String,
}

impl Worst {
    fn update(&mut self, value: f64, at: impl FnOnce() -> String) {
        if value > self.value || value.is_nan() || (self.at.is_empty() && value >= self.value) {
            self.value = value;
            self.at = at();
        }
    }
}

fn abs_diff(x: &Scalar, y: &Scalar) -> f64 {
    (x - y).abs().to_f64()
}

fn rel_diff(x: &Scalar, y: &Scalar) -> f64 {
    ((x - y) / y).abs().to_f64()
}

/// A tolerance stated for 256-bit arithmetic, loosened proportionally when
/// running at lower precision.
pub fn scaled_tolerance(base: f64, prec: u32) -> f64 {
    if prec >= DEFAULT_PRECISION {
        base
    } else {
        base * 2f64.powi((DEFAULT_PRECISION - prec) as i32)
    }
}

/// Sizes and sample counts for one run of the suite.
#[derive(Clone, Debug, PartialEq)]
pub struct Scope {
    pub census_max: usize,
    pub two_enumeration_max: usize,
    pub inhom_oracle_max: usize,
    pub hom_oracle_max: usize,
    pub identity_max: usize,
    pub genfun_max: usize,
    pub ortho_degree: usize,
    pub census_identity_max: usize,
    pub inhom_samples: usize,
    pub hom_samples: usize,
    pub generic_samples: usize,
    pub limit_sizes: Vec<usize>,
}

impl Scope {
    /// The sizes of the acceptance criteria.
    pub fn acceptance() -> Self {
        Scope {
            census_max: 7,
            two_enumeration_max: 6,
            inhom_oracle_max: 5,
            hom_oracle_max: 6,
            identity_max: 10,
            genfun_max: 8,
            ortho_degree: 8,
            census_identity_max: 5,
            inhom_samples: 10,
            hom_samples: 5,
            generic_samples: 3,
            limit_sizes: vec![3, 4],
        }
    }

    /// Every size capped at `n_max`, with fewer samples.
    pub fn up_to(n_max: usize) -> Self {
        let n = n_max.max(2);
        Scope {
            census_max: n.min(7),
            two_enumeration_max: n.min(6),
            inhom_oracle_max: n.min(5),
            hom_oracle_max: n.min(6),
            identity_max: n,
            genfun_max: n,
            ortho_degree: n,
            census_identity_max: n.min(5),
            inhom_samples: 3,
            hom_samples: 3,
            generic_samples: 2,
            limit_sizes: vec![3],
        }
    }
}

/// `A_n = prod_{k<n} (3k+1)! / (n+k)!`.
pub fn asm_count(n: usize) -> Integer {
    let mut num = Integer::from(1);
    let mut den = Integer::from(1);
    for k in 0..n as u32 {
        num *= Integer::from(Integer::factorial(3 * k + 1));
        den *= Integer::from(Integer::factorial(n as u32 + k));
    }
    num / den
}

/// Configuration counts against the product formula, and the ice-point
/// partition function divided by `(sqrt(3)/2)^(N^2)` against the count.
pub fn census_counts(n_max: usize, prec: u32) -> Result<Vec<Check>> {
    let mut mismatches = Vec::new();
    let mut worst = Worst::default();
    for n in 1..=n_max {
        let count = ConfigHistogram::build(n)?.total();
        let expected = asm_count(n);
        if expected != count {
            mismatches.push(format!(
                "N={n}: {count} configurations, expected {expected}"
            ));
        }
        let z = HomogeneousModel::new(n, &WeightParams::ice_point(prec))?.partition_function();
        let unit = Scalar::from_int(prec, 3).sqrt().div_int(2);
        let normalized = z / unit.powi((n * n) as i32);
        worst.update(
            abs_diff(&normalized, &Scalar::from_integer(prec, &expected)),
            || format!("N={n}"),
        );
    }
    Ok(vec![
        Check::exact(1, "configuration counts", mismatches),
        Check::at_most(
            1,
            "ice-point Z_N / (sqrt3/2)^(N^2) is the count",
            worst,
            scaled_tolerance(1e-35, prec),
        ),
    ])
}

pub fn two_enumeration(n_max: usize) -> Result<Vec<Check>> {
    let mut mismatches = Vec::new();
    for n in 1..=n_max {
        let total = refined_census(n)?.at(2).total;
        let expected = Integer::from(1) << (n * (n - 1) / 2) as u32;
        if total != expected {
            mismatches.push(format!("N={n}: {total}, expected {expected}"));
        }
    }
    Ok(vec![Check::exact(
        2,
        "2-enumeration equals 2^(N(N-1)/2)",
        mismatches,
    )])
}

fn hom_oracle(hist: &ConfigHistogram, p: &WeightParams) -> OracleTables<Scalar> {
    let w = p.weights();
    hist.evaluate(&w.a, &w.b, &w.c)
}

fn histograms(n_max: usize) -> Result<Vec<ConfigHistogram>> {
    (1..=n_max).map(ConfigHistogram::build).collect()
}

pub fn partition_agreement(scope: &Scope, seed: u64, prec: u32) -> Result<Vec<Check>> {
    let mut sampler = ParamSampler::new(seed, prec);
    let mut inhom = Worst::default();
    for s in 0..scope.inhom_samples {
        for n in 1..=scope.inhom_oracle_max {
            let draw = sampler.inhomogeneous(n);
            let z = InhomogeneousModel::new(&draw.params)?.partition_function();
            let oracle = oracle_inhomogeneous(&draw.params)?;
            inhom.update(rel_diff(&z, oracle.partition()), || {
                format!("N={n} sample {s}")
            });
        }
    }
    let hists = histograms(scope.hom_oracle_max)?;
    let mut hom = Worst::default();
    for s in 0..scope.hom_samples {
        let draw = sampler.homogeneous();
        for (i, hist) in hists.iter().enumerate() {
            let n = i + 1;
            let z = HomogeneousModel::new(n, &draw.params)?.partition_function();
            hom.update(
                rel_diff(&z, hom_oracle(hist, &draw.params).partition()),
                || format!("N={n} sample {s} lambda={} eta={}", draw.lambda, draw.eta),
            );
        }
    }
    let tol = scaled_tolerance(1e-40, prec);
    Ok(vec![
        Check::at_most(3, "inhomogeneous Z vs enumeration (relative)", inhom, tol),
        Check::at_most(3, "homogeneous Z vs enumeration (relative)", hom, tol),
    ])
}

/// One-point functions by determinant, orthogonal polynomials (both
/// limits) and enumeration; polarization by determinant, cumulative sum
/// and enumeration.
pub fn one_point_agreement(scope: &Scope, seed: u64, prec: u32) -> Result<Vec<Check>> {
    let mut sampler = ParamSampler::new(seed.wrapping_add(1), prec);
    let hists = histograms(scope.hom_oracle_max)?;
    let mut h = Worst::default();
    let mut g = Worst::default();
    for s in 0..scope.hom_samples {
        let draw = sampler.homogeneous();
        for (i, hist) in hists.iter().enumerate() {
            let n = i + 1;
            let det = HomogeneousModel::new(n, &draw.params)?;
            let ortho = OrthoModel::new(n, &draw.params)?;
            let oracle = hom_oracle(hist, &draw.params);
            let mut cumulative = Scalar::zero(prec);
            for r in 1..=n {
                let routes = [
                    det.one_point(r)?,
                    ortho.one_point(r, false)?,
                    ortho.one_point(r, true)?,
                    oracle.h1(r)?,
                ];
                for x in 0..routes.len() {
                    for y in (x + 1)..routes.len() {
                        h.update(abs_diff(&routes[x], &routes[y]), || {
                            format!("N={n} r={r} routes {x},{y} sample {s}")
                        });
                    }
                }
                cumulative += &routes[0];
                let groutes = [det.polarization(r)?, cumulative.clone(), oracle.g1(r)?];
                for x in 0..groutes.len() {
                    for y in (x + 1)..groutes.len() {
                        g.update(abs_diff(&groutes[x], &groutes[y]), || {
                            format!("N={n} r={r} routes {x},{y} sample {s}")
                        });
                    }
                }
            }
        }
    }
    let tol = scaled_tolerance(1e-38, prec);
    Ok(vec![
        Check::at_most(
            4,
            "H: determinant / ortho / crossed ortho / enumeration",
            h,
            tol,
        ),
        Check::at_most(4, "G: determinant / cumulative H / enumeration", g, tol),
    ])
}

/// The two-point function from one-point functions against the block
/// determinant, and both against enumeration.
pub fn two_point_identity(scope: &Scope, seed: u64, prec: u32) -> Result<Vec<Check>> {
    let mut sampler = ParamSampler::new(seed.wrapping_add(2), prec);
    let draws: Vec<_> = (0..scope.hom_samples)
        .map(|_| sampler.homogeneous())
        .collect();
    let tol_identity = scaled_tolerance(1e-36, prec);
    let mut ident = Worst::default();
    let mut diagnostics = Vec::new();
    for (s, draw) in draws.iter().enumerate() {
        let mut small = HomogeneousModel::new(1, &draw.params)?.one_point_table()?;
        for n in 2..=scope.identity_max {
            let model = HomogeneousModel::new(n, &draw.params)?;
            let big = model.one_point_table()?;
            let det = model.two_point_table()?;
            let mut local = 0f64;
            for r1 in 1..=n {
                for r2 in 1..=n {
                    let v = two_point_from_one_point(&big, &small, r1, r2);
                    let d = abs_diff(&det[r1 - 1][r2 - 1], &v);
                    local = local.max(d);
                    ident.update(d, || format!("N={n} ({r1},{r2}) sample {s}"));
                }
            }
            if local.is_nan() || local > tol_identity {
                match shift_scan(&big, &small, &det, tol_identity) {
                    Some(shifts) => {
                        diagnostics.push(format!("N={n}: offsets {shifts:?} restore agreement"))
                    }
                    None => {
                        diagnostics.push(format!("N={n}: no small index offset restores agreement"))
                    }
                }
            }
            small = big;
        }
    }
    let mut check = Check::at_most(
        5,
        "H2: block determinant vs one-point identity",
        ident,
        tol_identity,
    );
    if !diagnostics.is_empty() {
        check.detail = format!("{}; {}", check.detail, diagnostics.join("; "));
    }

    let hists = histograms(scope.hom_oracle_max)?;
    let mut oracle_dev = Worst::default();
    for (s, draw) in draws.iter().enumerate() {
        let mut small = HomogeneousModel::new(1, &draw.params)?.one_point_table()?;
        for hist in hists.iter().skip(1) {
            let n = hist.n();
            let model = HomogeneousModel::new(n, &draw.params)?;
            let big = model.one_point_table()?;
            let oracle = hom_oracle(hist, &draw.params);
            for r1 in 1..=n {
                for r2 in 1..=n {
                    let o = oracle.h2(r1, r2)?;
                    let det = model.two_point(r1, r2)?;
                    let id = two_point_from_one_point(&big, &small, r1, r2);
                    oracle_dev.update(abs_diff(&det, &o).max(abs_diff(&id, &o)), || {
                        format!("N={n} ({r1},{r2}) sample {s}")
                    });
                }
            }
            small = big;
        }
    }
    Ok(vec![
        check,
        Check::at_most(
            5,
            "H2: determinant and identity vs enumeration",
            oracle_dev,
            scaled_tolerance(1e-38, prec),
        ),
    ])
}

/// Least-squares slope of `log err` against `log delta`.
fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let logs: Vec<(f64, f64)> = points.iter().map(|&(d, e)| (d.ln(), e.ln())).collect();
    let k = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / k;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

/// Working precision for the homogeneous-limit test: `det T` cancels
/// roughly `N(N-1) log2(1/delta)` bits.
pub fn limit_precision(n: usize, prec: u32) -> u32 {
    prec + (n * (n - 1)) as u32 * 20 + 64
}

/// Largest table difference between the inhomogeneous two-point function
/// at gap `delta` and the homogeneous one.
pub fn homogeneous_limit_error(
    n: usize,
    lambda: f64,
    eta: f64,
    delta: f64,
    prec: u32,
) -> Result<f64> {
    let p =
        WeightParams::new_unchecked(Scalar::from_f64(prec, lambda), Scalar::from_f64(prec, eta));
    let hom = HomogeneousModel::new(n, &p)?;
    let params = InhomParams::near_homogeneous(n, &p, &Scalar::from_f64(prec, delta))?;
    let inhom = InhomogeneousModel::new(&params)?;
    let mut worst = 0f64;
    for r1 in 1..=n {
        for r2 in 1..=n {
            worst = worst.max(abs_diff(&inhom.two_point(r1, r2)?, &hom.two_point(r1, r2)?));
        }
    }
    Ok(worst)
}

pub fn inhomogeneous_two_point(scope: &Scope, seed: u64, prec: u32) -> Result<Vec<Check>> {
    let mut sampler = ParamSampler::new(seed.wrapping_add(3), prec);
    let mut worst = Worst::default();
    for s in 0..scope.inhom_samples {
        for n in 2..=scope.inhom_oracle_max {
            let draw = sampler.inhomogeneous(n);
            let model = InhomogeneousModel::new(&draw.params)?;
            let oracle = oracle_inhomogeneous(&draw.params)?;
            for r1 in 1..=n {
                for r2 in 1..=n {
                    worst.update(
                        abs_diff(&model.two_point(r1, r2)?, &oracle.h2(r1, r2)?),
                        || format!("N={n} ({r1},{r2}) sample {s}"),
                    );
                }
            }
        }
    }
    let mut checks = vec![Check::at_most(
        6,
        "inhomogeneous H2 vs enumeration",
        worst,
        scaled_tolerance(1e-38, prec),
    )];
    let draw = ParamSampler::new(seed.wrapping_add(4), 64).homogeneous();
    let deltas = [1e-4, 1e-5, 1e-6];
    let mut slopes = Vec::new();
    for &n in &scope.limit_sizes {
        let work = limit_precision(n, prec);
        let points: Vec<(f64, f64)> = deltas
            .iter()
            .map(|&d| homogeneous_limit_error(n, draw.lambda, draw.eta, d, work).map(|e| (d, e)))
            .collect::<Result<_>>()?;
        slopes.push((n, log_log_slope(&points), points));
    }
    let (n, slope, points) = slopes
        .iter()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .cloned()
        .expect("at least one limit size");
    checks.push(Check::at_least(
        6,
        "convergence order of inhomogeneous H2 to homogeneous H2",
        slope,
        0.8,
        format!(
            "N={n} lambda={} eta={} (delta, error) {points:?}",
            draw.lambda, draw.eta
        ),
    ));
    Ok(checks)
}

/// The generating-function form of the identity at the ice, 2- and
/// 3-enumeration points and at generic draws.
pub fn genfun_identity(scope: &Scope, seed: u64, prec: u32) -> Result<Vec<Check>> {
    let mut sampler = ParamSampler::new(seed.wrapping_add(5), prec);
    let mut points: Vec<(String, WeightParams)> = (1..=3)
        .map(|x| {
            (
                format!("x={x}"),
                WeightParams::enumeration_point(prec, x).expect("x in 1..=3"),
            )
        })
        .collect();
    for s in 0..scope.generic_samples {
        let d = sampler.homogeneous();
        points.push((format!("sample {s}"), d.params));
    }
    let mut remainder = Worst::default();
    let mut deviation = Worst::default();
    for (label, p) in &points {
        let mut small = HomogeneousModel::new(1, p)?.one_point_table()?;
        for n in 2..=scope.genfun_max {
            let model = HomogeneousModel::new(n, p)?;
            let big = model.one_point_table()?;
            let report = verify_hnuv(&big, &small, &model.two_point_table()?)?;
            remainder.update(report.remainder, || format!("N={n} {label}"));
            deviation.update(report.deviation, || format!("N={n} {label}"));
            small = big;
        }
    }
    Ok(vec![
        Check::at_most(
            7,
            "generating function: remainder of division by u - v",
            remainder,
            scaled_tolerance(1e-38, prec),
        ),
        Check::at_most(
            7,
            "generating function: quotient vs two-point generating function",
            deviation,
            scaled_tolerance(1e-36, prec),
        ),
    ])
}

pub fn ortho_suite(scope: &Scope, seed: u64, prec: u32) -> Result<Vec<Check>> {
    let mut sampler = ParamSampler::new(seed.wrapping_add(6), prec);
    let mut points = vec![("ice".to_string(), WeightParams::ice_point(prec))];
    for s in 0..scope.generic_samples {
        points.push((format!("sample {s}"), sampler.homogeneous().params));
    }
    let m = scope.ortho_degree;
    let mut ortho = Worst::default();
    let mut hankel = Worst::default();
    let mut d1 = Worst::default();
    let mut d2 = Worst::default();
    let mut parity = Worst::default();
    let mut crossing = Worst::default();
    let mut jets = Worst::default();
    for (label, p) in &points {
        let c = moments(2 * m, p)?;
        let basis = build_basis(m, &c)?;
        ortho.update(basis.orthogonality_deviation(&c), || label.clone());
        hankel.update(basis.hankel_product_deviation(&c)?, || label.clone());
        for n in 0..=m {
            let (a, b) = delta_identity_deviation(n, &c, &basis)?;
            d1.update(a, || format!("n={n} {label}"));
            if let Some(b) = b {
                d2.update(b, || format!("n={n} {label}"));
            }
        }
        let report = parity_check(m, p)?;
        parity.update(report.poly_deviation.max(report.norm_deviation), || {
            label.clone()
        });
        let cross = crossing_check(m.min(8), p)?;
        crossing.update(cross.one_point, || label.clone());
        jets.update(OmegaRhoJets::new(p, 2 * m)?.identity_deviation(), || {
            label.clone()
        });
    }
    let tol = scaled_tolerance(1e-38, prec);
    Ok(vec![
        Check::at_most(8, "moment-functional orthogonality", ortho, tol),
        Check::at_most(8, "Hankel determinant as product of norms", hankel, tol),
        Check::at_most(8, "bordered Hankel determinant, one column", d1, tol),
        Check::at_most(8, "bordered Hankel determinant, two columns", d2, tol),
        Check::at_most(
            8,
            "polynomial parity under lambda -> pi - lambda",
            parity,
            tol,
        ),
        Check::at_most(8, "one-point crossing symmetry", crossing, tol),
        Check::at_most(8, "omega/rho jet relations", jets, tol),
    ])
}

/// Doubly refined x-enumerations against the identity applied to singly
/// refined ones, in exact rational arithmetic.
pub fn census_identity(n_max: usize) -> Result<Vec<Check>> {
    let mut mismatches = Vec::new();
    let censuses: Vec<_> = (1..=n_max).map(refined_census).collect::<Result<_>>()?;
    for x in 1..=3 {
        for n in 2..=n_max {
            let big = censuses[n - 1].at(x);
            let small = censuses[n - 2].at(x);
            let table = two_point_table_from_one_point::<Rational>(
                &big.singly_normalized(),
                &small.singly_normalized(),
            );
            if table != big.doubly_normalized() {
                mismatches.push(format!("N={n} x={x}"));
            }
        }
    }
    Ok(vec![Check::exact(
        9,
        "doubly refined enumerations from singly refined ones",
        mismatches,
    )])
}

/// Sums, reflections and marginals.
pub fn invariants(scope: &Scope, seed: u64, prec: u32) -> Result<Vec<Check>> {
    let mut sampler = ParamSampler::new(seed.wrapping_add(7), prec);
    let mut sums = Worst::default();
    let mut marginals = Worst::default();
    let mut crossing = Worst::default();
    let mut extension = Worst::default();
    for s in 0..scope.hom_samples {
        let draw = sampler.homogeneous();
        let mut small: Option<Vec<Scalar>> = None;
        for n in 1..=scope.identity_max.min(8) {
            let model = HomogeneousModel::new(n, &draw.params)?;
            let one = model.one_point_table()?;
            let two = model.two_point_table()?;
            let total: Scalar = one.iter().fold(Scalar::zero(prec), |a, x| a + x);
            let total2: Scalar = two.iter().flatten().fold(Scalar::zero(prec), |a, x| a + x);
            let unit = Scalar::one(prec);
            sums.update(
                abs_diff(&total, &unit).max(abs_diff(&total2, &unit)),
                || format!("N={n} sample {s}"),
            );
            sums.update(abs_diff(&model.polarization(n)?, &unit), || {
                format!("G N={n} sample {s}")
            });
            sums.update(
                abs_diff(&model.two_point_polarization(n, n)?, &unit),
                || format!("G2 N={n} sample {s}"),
            );
            for r1 in 1..=n {
                let row = two[r1 - 1].iter().fold(Scalar::zero(prec), |a, x| a + x);
                let col = two
                    .iter()
                    .fold(Scalar::zero(prec), |a, row| a + &row[r1 - 1]);
                // the last-row position has the reflected marginal
                let d = abs_diff(&row, &one[r1 - 1]).max(abs_diff(&col, &one[n - r1]));
                marginals.update(d, || format!("N={n} r={r1} sample {s}"));
            }
            let cross = crossing_check(n, &draw.params)?;
            crossing.update(cross.one_point.max(cross.two_point), || {
                format!("N={n} sample {s}")
            });
            if let Some(small) = &small {
                extension.update(truncation_excess(&one, small), || {
                    format!("N={n} sample {s}")
                });
            }
            small = Some(one);
        }
    }
    for s in 0..scope.inhom_samples.min(3) {
        for n in 2..=scope.inhom_oracle_max {
            let draw = sampler.inhomogeneous(n);
            let model = InhomogeneousModel::new(&draw.params)?;
            let unit = Scalar::one(prec);
            let mut total = Scalar::zero(prec);
            let mut total2 = Scalar::zero(prec);
            for r1 in 1..=n {
                total += &model.one_point_det(r1)?;
                for r2 in 1..=n {
                    let t = model.two_point_with(r1, r2, SumRange::Truncated)?;
                    let f = model.two_point_with(r1, r2, SumRange::Full)?;
                    extension.update(abs_diff(&t, &f), || {
                        format!("inhomogeneous N={n} ({r1},{r2})")
                    });
                    total2 += &t;
                }
            }
            sums.update(
                abs_diff(&total, &unit).max(abs_diff(&total2, &unit)),
                || format!("inhomogeneous N={n} sample {s}"),
            );
            sums.update(abs_diff(&model.polarization_sum(n)?, &unit), || {
                format!("inhomogeneous G N={n}")
            });
        }
    }
    let mut census = Vec::new();
    for n in 1..=scope.census_identity_max {
        let c = refined_census(n)?;
        let bottom = c.bottom_marginals();
        for r in 0..n {
            if c.singly[r] != c.singly[n - 1 - r] || bottom[r] != c.singly[r] {
                census.push(format!("N={n} r={}", r + 1));
            }
        }
    }
    let tol = scaled_tolerance(1e-38, prec);
    Ok(vec![
        Check::at_most(
            10,
            "normalization of one- and two-point functions",
            sums,
            tol,
        ),
        Check::at_most(
            10,
            "two-point marginals equal one-point functions",
            marginals,
            tol,
        ),
        Check::at_most(
            10,
            "crossing symmetry of one- and two-point functions",
            crossing,
            tol,
        ),
        Check::at_most(10, "vanishing of the extended sums", extension, tol),
        Check::exact(10, "census reflection and marginal symmetry", census),
    ])
}

/// Configuration of a full run.
#[derive(Clone, Debug, PartialEq)]
pub struct SuiteConfig {
    pub scope: Scope,
    pub seed: u64,
    pub prec: u32,
}

/// Every check, grouped by criterion.
pub fn run_suite(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let (scope, seed, prec) = (&cfg.scope, cfg.seed, cfg.prec);
    let mut checks = census_counts(scope.census_max, prec)?;
    checks.extend(two_enumeration(scope.two_enumeration_max)?);
    checks.extend(partition_agreement(scope, seed, prec)?);
    checks.extend(one_point_agreement(scope, seed, prec)?);
    checks.extend(two_point_identity(scope, seed, prec)?);
    checks.extend(inhomogeneous_two_point(scope, seed, prec)?);
    checks.extend(genfun_identity(scope, seed, prec)?);
    checks.extend(ortho_suite(scope, seed, prec)?);
    checks.extend(census_identity(scope.census_identity_max)?);
    checks.extend(invariants(scope, seed, prec)?);
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn asm_counts_from_product_formula() {
        let counts: Vec<Integer> = (1..=5).map(asm_count).collect();
        assert_eq!(counts, [1, 2, 7, 42, 429]);
    }

    #[test]
    fn slope_of_a_line() {
        let pts = [(1e-4, 2e-4), (1e-5, 2e-5), (1e-6, 2e-6)];
        assert!((log_log_slope(&pts) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn tolerance_scaling() {
        assert_eq!(scaled_tolerance(1e-40, 256), 1e-40);
        assert_eq!(scaled_tolerance(1e-40, 512), 1e-40);
        assert_eq!(scaled_tolerance(1e-40, 255), 2e-40);
    }
}
