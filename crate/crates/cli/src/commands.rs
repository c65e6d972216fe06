use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use anyhow::Result;
use serde_json::{json, Map, Value};

use dwbc::homogeneous::{HomogeneousModel, WeightParams};
use dwbc::inhomogeneous::{InhomParams, InhomogeneousModel};
use dwbc::lattice::{
    oracle_inhomogeneous_capped, refined_census_capped, ConfigHistogram, OracleTables,
};
use dwbc::numerics::{check_tolerance, Coefficient, DensePoly, Scalar};
use dwbc::ortho::{
    genfun_onepoint, genfun_twopoint, h2_identity_table, h2_nice, one_point_tables, verify_hnuv,
    OrthoModel,
};
use dwbc::verify::{run_suite, CheckKind, Scope, SuiteConfig};
use dwbc::Error;

use crate::args::{Cli, Command, ModelArgs, Route, Selector};
use crate::report::{Report, Table};

/// Bad input that the argument parser could not catch.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(UsageError(msg.into()).into())
}

/// Smallest working precision accepted, in bits.
const MIN_PRECISION: u32 = 32;

struct Ctx {
    prec: u32,
    left_origin: bool,
    cap: usize,
}

impl Ctx {
    /// Maps a user-facing position to the right-origin convention used by
    /// the library. The map is an involution, so it also maps back.
    fn internal(&self, label: usize, n: usize) -> usize {
        if self.left_origin {
            n + 1 - label
        } else {
            label
        }
    }

    fn labels(&self, sel: Selector, n: usize) -> Result<Vec<usize>> {
        match sel {
            Selector::All => Ok((1..=n).collect()),
            Selector::At(r) if (1..=n).contains(&r) => Ok(vec![r]),
            Selector::At(r) => Err(Error::PositionOutOfRange { position: r, n }.into()),
        }
    }
}

enum Model {
    Hom { n: usize, params: WeightParams },
    Inhom(InhomParams),
}

impl Model {
    fn n(&self) -> usize {
        match self {
            Model::Hom { n, .. } => *n,
            Model::Inhom(p) => p.n(),
        }
    }
}

fn resolve(args: &ModelArgs, ctx: &Ctx, inputs: &mut Map<String, Value>) -> Result<Model> {
    if args.lambdas.is_empty() && args.nus.is_empty() {
        let Some(n) = args.n else {
            return usage("--n is required unless --lambdas and --nus are given");
        };
        if n == 0 {
            return Err(Error::EmptyLattice.into());
        }
        let params = WeightParams::from_angles(
            &args.lambda,
            &args.eta,
            ctx.prec,
            args.allow_outside_regime,
        )?;
        inputs.insert("model".into(), json!("homogeneous"));
        inputs.insert("n".into(), json!(n));
        inputs.insert("lambda".into(), json!(args.lambda.to_string()));
        inputs.insert("eta".into(), json!(args.eta.to_string()));
        return Ok(Model::Hom { n, params });
    }
    let n = args.lambdas.len();
    if args.nus.len() != n {
        return Err(
            Error::DimensionMismatch(format!("{} lambdas but {} nus", n, args.nus.len())).into(),
        );
    }
    if let Some(m) = args.n {
        if m != n {
            return Err(Error::DimensionMismatch(format!("--n {m} but {n} lambdas")).into());
        }
    }
    let scalars = |v: &[dwbc::numerics::Angle]| -> dwbc::Result<Vec<Scalar>> {
        v.iter().map(|a| a.to_scalar(ctx.prec)).collect()
    };
    let params = InhomParams::new(
        scalars(&args.lambdas)?,
        scalars(&args.nus)?,
        args.eta.to_scalar(ctx.prec)?,
    )?;
    let strings = |v: &[dwbc::numerics::Angle]| v.iter().map(|a| a.to_string()).collect::<Vec<_>>();
    inputs.insert("model".into(), json!("inhomogeneous"));
    inputs.insert("n".into(), json!(n));
    inputs.insert("lambdas".into(), json!(strings(&args.lambdas)));
    inputs.insert("nus".into(), json!(strings(&args.nus)));
    inputs.insert("eta".into(), json!(args.eta.to_string()));
    Ok(Model::Inhom(params))
}

/// Values of one quantity at a list of positions, by one or more routes.
struct RouteResults {
    route: String,
    primary: Vec<Scalar>,
    others: Option<BTreeMap<&'static str, Vec<Scalar>>>,
    deviation: Option<f64>,
}

/// Evaluates the requested route, or every available one for
/// `Route::All`. The enumeration route is skipped under `all` above the
/// size cap. Deviations are measured against the first route, relative to
/// its magnitude when `relative` is set.
fn run_routes(
    requested: Route,
    available: &[&'static str],
    n: usize,
    cap: usize,
    relative: bool,
    eval: impl Fn(&str) -> Result<Vec<Scalar>>,
) -> Result<RouteResults> {
    if requested != Route::All {
        let name = requested.name();
        if !available.contains(&name) {
            return usage(format!(
                "route `{name}` is not available here; choose from {} or all",
                available.join(", ")
            ));
        }
        return Ok(RouteResults {
            route: name.into(),
            primary: eval(name)?,
            others: None,
            deviation: None,
        });
    }
    let names: Vec<&'static str> = available
        .iter()
        .copied()
        .filter(|&r| r != "oracle" || n <= cap)
        .collect();
    let mut all = BTreeMap::new();
    for &name in &names {
        all.insert(name, eval(name)?);
    }
    let primary = all[names[0]].clone();
    let deviation = (names.len() > 1).then(|| {
        let mut worst = 0.0f64;
        for values in all.values() {
            for (x, y) in values.iter().zip(&primary) {
                let mut d = (x - y).abs();
                if relative && !y.is_zero() {
                    d = d / y.abs();
                }
                let d = d.to_f64();
                worst = if d.is_nan() { f64::NAN } else { worst.max(d) };
            }
        }
        worst
    });
    Ok(RouteResults {
        route: "all".into(),
        primary,
        others: Some(all),
        deviation,
    })
}

type Key = (Option<usize>, Option<usize>);

fn entry_json(key: Key, v: &Scalar) -> Value {
    json!({ "r1": key.0, "r2": key.1, "value": v.to_decimal_string() })
}

fn opt(x: Option<usize>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

fn table_report(
    command: &'static str,
    inputs: Map<String, Value>,
    keys: &[Key],
    res: RouteResults,
    tolerance: f64,
) -> Report {
    let mut table = Table::new(&["r1", "r2", "value"]);
    for (k, v) in keys.iter().zip(&res.primary) {
        table.push(vec![opt(k.0), opt(k.1), v.to_decimal_string()]);
    }
    let values = Value::Array(
        keys.iter()
            .zip(&res.primary)
            .map(|(k, v)| entry_json(*k, v))
            .collect(),
    );
    let routes = res.others.as_ref().map(|all| {
        let mut m = Map::new();
        for (name, vals) in all {
            let list = keys
                .iter()
                .zip(vals)
                .map(|(k, v)| entry_json(*k, v))
                .collect();
            m.insert((*name).into(), Value::Array(list));
        }
        Value::Object(m)
    });
    let failed = res.deviation.is_some_and(|d| d.is_nan() || d > tolerance);
    Report {
        command,
        inputs,
        route: res.route,
        values,
        routes,
        deviation: res.deviation,
        tolerance,
        elapsed_ms: None,
        table,
        failed,
    }
}

fn hom_oracle(n: usize, params: &WeightParams, cap: usize) -> Result<OracleTables<Scalar>> {
    let w = params.weights();
    Ok(ConfigHistogram::build_capped(n, cap)?.evaluate(&w.a, &w.b, &w.c))
}

fn base_inputs(ctx: &Ctx) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("precision".into(), json!(ctx.prec));
    m.insert(
        "origin".into(),
        json!(if ctx.left_origin { "left" } else { "right" }),
    );
    m
}

fn cmd_partition(ctx: &Ctx, args: &ModelArgs, route: Route) -> Result<Report> {
    let mut inputs = base_inputs(ctx);
    let model = resolve(args, ctx, &mut inputs)?;
    let n = model.n();
    let res = run_routes(route, &["det", "oracle"], n, ctx.cap, true, |r| {
        let z = match (&model, r) {
            (Model::Hom { n, params }, "det") => {
                HomogeneousModel::new(*n, params)?.partition_function()
            }
            (Model::Hom { n, params }, _) => hom_oracle(*n, params, ctx.cap)?.partition().clone(),
            (Model::Inhom(p), "det") => InhomogeneousModel::new(p)?.partition_function(),
            (Model::Inhom(p), _) => oracle_inhomogeneous_capped(p, ctx.cap)?.partition().clone(),
        };
        Ok(vec![z])
    })?;
    Ok(table_report(
        "partition",
        inputs,
        &[(None, None)],
        res,
        check_tolerance(ctx.prec, n),
    ))
}

fn cmd_onepoint(
    ctx: &Ctx,
    args: &ModelArgs,
    r: Selector,
    polarization: bool,
    route: Route,
) -> Result<Report> {
    let mut inputs = base_inputs(ctx);
    let model = resolve(args, ctx, &mut inputs)?;
    let n = model.n();
    inputs.insert(
        "quantity".into(),
        json!(if polarization {
            "polarization"
        } else {
            "one_point"
        }),
    );
    let labels = ctx.labels(r, n)?;
    let internal: Vec<usize> = labels.iter().map(|&l| ctx.internal(l, n)).collect();
    let available: &[&'static str] = match (&model, polarization) {
        (Model::Hom { .. }, false) => &["det", "ortho", "oracle"],
        (Model::Hom { .. }, true) => &["det", "identity", "oracle"],
        (Model::Inhom(_), _) => &["det", "sum", "oracle"],
    };
    let res = run_routes(
        route,
        available,
        n,
        ctx.cap,
        false,
        |route| -> Result<Vec<Scalar>> {
            match &model {
                Model::Hom { n, params } => {
                    let n = *n;
                    match route {
                        "det" => {
                            let m = HomogeneousModel::new(n, params)?;
                            internal
                                .iter()
                                .map(|&i| {
                                    Ok(if polarization {
                                        m.polarization(i)?
                                    } else {
                                        m.one_point(i)?
                                    })
                                })
                                .collect()
                        }
                        "ortho" => {
                            let m = OrthoModel::new(n, params)?;
                            internal
                                .iter()
                                .map(|&i| Ok(m.one_point(i, false)?))
                                .collect()
                        }
                        "identity" => {
                            let h = HomogeneousModel::new(n, params)?.one_point_table()?;
                            let mut acc = Scalar::zero(ctx.prec);
                            let cumulative: Vec<Scalar> = h
                                .iter()
                                .map(|x| {
                                    acc += x;
                                    acc.clone()
                                })
                                .collect();
                            Ok(internal
                                .iter()
                                .map(|&i| cumulative[i - 1].clone())
                                .collect())
                        }
                        _ => {
                            let o = hom_oracle(n, params, ctx.cap)?;
                            internal
                                .iter()
                                .map(|&i| Ok(if polarization { o.g1(i)? } else { o.h1(i)? }))
                                .collect()
                        }
                    }
                }
                Model::Inhom(p) => match route {
                    "det" | "sum" => {
                        let m = InhomogeneousModel::new(p)?;
                        internal
                            .iter()
                            .map(|&i| {
                                Ok(match (route, polarization) {
                                    ("det", false) => m.one_point_det(i)?,
                                    ("det", true) => m.polarization_det(i)?,
                                    (_, false) => m.one_point_sum(i)?,
                                    (_, true) => m.polarization_sum(i)?,
                                })
                            })
                            .collect()
                    }
                    _ => {
                        let o = oracle_inhomogeneous_capped(p, ctx.cap)?;
                        internal
                            .iter()
                            .map(|&i| Ok(if polarization { o.g1(i)? } else { o.h1(i)? }))
                            .collect()
                    }
                },
            }
        },
    )?;
    let keys: Vec<Key> = labels.iter().map(|&l| (Some(l), None)).collect();
    Ok(table_report(
        "onepoint",
        inputs,
        &keys,
        res,
        check_tolerance(ctx.prec, n),
    ))
}

fn cmd_twopoint(
    ctx: &Ctx,
    args: &ModelArgs,
    r1: Selector,
    r2: Selector,
    route: Route,
) -> Result<Report> {
    let mut inputs = base_inputs(ctx);
    let model = resolve(args, ctx, &mut inputs)?;
    let n = model.n();
    let mut keys = Vec::new();
    let mut internal = Vec::new();
    for a in ctx.labels(r1, n)? {
        for b in ctx.labels(r2, n)? {
            keys.push((Some(a), Some(b)));
            internal.push((ctx.internal(a, n), ctx.internal(b, n)));
        }
    }
    let available: &[&'static str] = match &model {
        Model::Hom { .. } if n >= 2 || route != Route::All => {
            &["det", "identity", "ortho", "oracle"]
        }
        _ => &["det", "oracle"],
    };
    let res = run_routes(
        route,
        available,
        n,
        ctx.cap,
        false,
        |route| -> Result<Vec<Scalar>> {
            match &model {
                Model::Hom { n, params } => {
                    let n = *n;
                    match route {
                        "det" => {
                            let m = HomogeneousModel::new(n, params)?;
                            internal
                                .iter()
                                .map(|&(a, b)| Ok(m.two_point(a, b)?))
                                .collect()
                        }
                        "identity" => {
                            let t = h2_identity_table(n, params)?;
                            Ok(internal
                                .iter()
                                .map(|&(a, b)| t[a - 1][b - 1].clone())
                                .collect())
                        }
                        "ortho" => internal
                            .iter()
                            .map(|&(a, b)| Ok(h2_nice(n, a, b, params)?))
                            .collect(),
                        _ => {
                            let o = hom_oracle(n, params, ctx.cap)?;
                            internal.iter().map(|&(a, b)| Ok(o.h2(a, b)?)).collect()
                        }
                    }
                }
                Model::Inhom(p) => match route {
                    "det" => {
                        let m = InhomogeneousModel::new(p)?;
                        internal
                            .iter()
                            .map(|&(a, b)| Ok(m.two_point(a, b)?))
                            .collect()
                    }
                    _ => {
                        let o = oracle_inhomogeneous_capped(p, ctx.cap)?;
                        internal.iter().map(|&(a, b)| Ok(o.h2(a, b)?)).collect()
                    }
                },
            }
        },
    )?;
    Ok(table_report(
        "twopoint",
        inputs,
        &keys,
        res,
        check_tolerance(ctx.prec, n),
    ))
}

fn coeffs<T: Coefficient + ToString>(p: &DensePoly<T>) -> Vec<String> {
    p.coeffs().iter().map(|c| c.to_string()).collect()
}

fn cmd_census(ctx: &Ctx, n: usize, xs: &[i64]) -> Result<Report> {
    if n == 0 {
        return Err(Error::EmptyLattice.into());
    }
    let mut inputs = base_inputs(ctx);
    inputs.insert("n".into(), json!(n));
    inputs.insert("x".into(), json!(xs));
    let census = refined_census_capped(n, ctx.cap)?;
    let order: Vec<usize> = (1..=n).map(|l| ctx.internal(l, n) - 1).collect();
    let polynomials = json!({
        "total": coeffs(&census.total),
        "singly": order.iter().map(|&i| coeffs(&census.singly[i])).collect::<Vec<_>>(),
        "doubly": order
            .iter()
            .map(|&i| order.iter().map(|&j| coeffs(&census.doubly[i][j])).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    });
    let mut table = Table::new(&["x", "table", "r1", "r2", "value"]);
    let mut evaluations = Vec::new();
    for &x in xs {
        let v = census.at(x);
        let xs = x.to_string();
        table.push(vec![
            xs.clone(),
            "total".into(),
            String::new(),
            String::new(),
            v.total.to_string(),
        ]);
        for (l, &i) in order.iter().enumerate() {
            table.push(vec![
                xs.clone(),
                "singly".into(),
                (l + 1).to_string(),
                String::new(),
                v.singly[i].to_string(),
            ]);
        }
        for (l1, &i) in order.iter().enumerate() {
            for (l2, &j) in order.iter().enumerate() {
                table.push(vec![
                    xs.clone(),
                    "doubly".into(),
                    (l1 + 1).to_string(),
                    (l2 + 1).to_string(),
                    v.doubly[i][j].to_string(),
                ]);
            }
        }
        evaluations.push(json!({
            "x": x,
            "total": v.total.to_string(),
            "singly": order.iter().map(|&i| v.singly[i].to_string()).collect::<Vec<_>>(),
            "doubly": order
                .iter()
                .map(|&i| order.iter().map(|&j| v.doubly[i][j].to_string()).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        }));
    }
    Ok(Report {
        command: "census",
        inputs,
        route: "oracle".into(),
        values: json!({ "polynomials": polynomials, "evaluations": evaluations }),
        routes: None,
        deviation: None,
        tolerance: 0.0,
        elapsed_ms: None,
        table,
        failed: false,
    })
}

fn cmd_genfun(ctx: &Ctx, args: &ModelArgs) -> Result<Report> {
    if ctx.left_origin {
        return usage("generating functions use the right-origin convention; drop --left-origin");
    }
    let mut inputs = base_inputs(ctx);
    let Model::Hom { n, params } = resolve(args, ctx, &mut inputs)? else {
        return usage("genfun supports the homogeneous model only");
    };
    let mut table = Table::new(&["table", "i", "j", "value"]);
    let mut values = Map::new();
    let mut add_uni =
        |name: &'static str, p: &DensePoly<Scalar>, values: &mut Map<String, Value>| {
            let list: Vec<String> = p.coeffs().iter().map(Scalar::to_decimal_string).collect();
            for (i, c) in list.iter().enumerate() {
                table.push(vec![name.into(), i.to_string(), String::new(), c.clone()]);
            }
            values.insert(name.into(), json!(list));
        };
    let tolerance = check_tolerance(ctx.prec, n);
    if n == 1 {
        let h = HomogeneousModel::new(1, &params)?.one_point_table()?;
        add_uni("onepoint", &genfun_onepoint(&h), &mut values);
        return Ok(Report {
            command: "genfun",
            inputs,
            route: "det".into(),
            values: Value::Object(values),
            routes: None,
            deviation: None,
            tolerance,
            elapsed_ms: None,
            table,
            failed: false,
        });
    }
    let (big, small) = one_point_tables(n, &params)?;
    let two = HomogeneousModel::new(n, &params)?.two_point_table()?;
    add_uni("onepoint", &genfun_onepoint(&big), &mut values);
    add_uni("onepoint_previous", &genfun_onepoint(&small), &mut values);
    let g2 = genfun_twopoint(&two);
    let zero = Scalar::zero(ctx.prec);
    let (du, dv) = (g2.degree_u().unwrap_or(0), g2.degree_v().unwrap_or(0));
    let mut rows = Vec::new();
    for i in 0..=du {
        let mut row = Vec::new();
        for j in 0..=dv {
            let c = g2.coeff(i, j).unwrap_or(&zero).to_decimal_string();
            table.push(vec![
                "twopoint".into(),
                i.to_string(),
                j.to_string(),
                c.clone(),
            ]);
            row.push(c);
        }
        rows.push(row);
    }
    values.insert("twopoint".into(), json!(rows));
    let check = verify_hnuv(&big, &small, &two)?;
    values.insert("remainder".into(), json!(check.remainder));
    let deviation = check.remainder.max(check.deviation);
    Ok(Report {
        command: "genfun",
        inputs,
        route: "identity".into(),
        values: Value::Object(values),
        routes: None,
        deviation: Some(deviation),
        tolerance,
        elapsed_ms: None,
        table,
        failed: deviation.is_nan() || deviation > tolerance,
    })
}

fn cmd_verify(ctx: &Ctx, n_max: usize, seed: u64, full: bool) -> Result<Report> {
    let mut inputs = base_inputs(ctx);
    inputs.insert("n_max".into(), json!(n_max));
    inputs.insert("seed".into(), json!(seed));
    inputs.insert("full".into(), json!(full));
    let scope = if full {
        Scope::acceptance()
    } else {
        Scope::up_to(n_max)
    };
    let checks = run_suite(&SuiteConfig {
        scope,
        seed,
        prec: ctx.prec,
    })?;
    let mut table = Table::new(&["criterion", "name", "value", "bound", "passed"]);
    let mut values = Vec::new();
    for c in &checks {
        let kind = match c.kind {
            CheckKind::AtMost => "at_most",
            CheckKind::AtLeast => "at_least",
            CheckKind::Exact => "exact",
        };
        table.push(vec![
            c.criterion.to_string(),
            c.name.clone(),
            format!("{:.3e}", c.value),
            format!("{:.3e}", c.bound),
            c.passed.to_string(),
        ]);
        values.push(json!({
            "criterion": c.criterion,
            "name": c.name,
            "kind": kind,
            "value": c.value,
            "bound": c.bound,
            "passed": c.passed,
            "detail": c.detail,
        }));
    }
    Ok(Report {
        command: "verify",
        inputs,
        route: "all".into(),
        values: Value::Array(values),
        routes: None,
        deviation: None,
        tolerance: check_tolerance(ctx.prec, n_max),
        elapsed_ms: None,
        table,
        failed: checks.iter().any(|c| !c.passed),
    })
}

/// Runs the selected command and returns its report.
pub fn run(cli: &Cli) -> Result<Report> {
    let c = &cli.common;
    if c.precision < MIN_PRECISION {
        return usage(format!("--precision must be at least {MIN_PRECISION} bits"));
    }
    let ctx = Ctx {
        prec: c.precision,
        left_origin: c.left_origin,
        cap: c.cap,
    };
    let start = Instant::now();
    let mut report = match &cli.command {
        Command::Partition { model, route } => cmd_partition(&ctx, model, *route),
        Command::Onepoint {
            model,
            r,
            polarization,
            route,
        } => cmd_onepoint(&ctx, model, *r, *polarization, *route),
        Command::Twopoint {
            model,
            r1,
            r2,
            route,
        } => cmd_twopoint(&ctx, model, *r1, *r2, *route),
        Command::Census { n, x } => cmd_census(&ctx, *n, x),
        Command::Genfun { model } => cmd_genfun(&ctx, model),
        Command::Verify { n_max, seed, full } => cmd_verify(&ctx, *n_max, *seed, *full),
    }?;
    if !c.no_timing {
        report.elapsed_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    Ok(report)
}

/// Exit status for an error: 2 for bad input, 1 for numerical failures.
pub fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<UsageError>().is_some() {
        return 2;
    }
    match err.downcast_ref::<Error>() {
        Some(
            Error::PositionOutOfRange { .. }
            | Error::SizeCapExceeded { .. }
            | Error::InvalidAngle(_)
            | Error::OutsideRegime(_)
            | Error::EmptyLattice
            | Error::UnsupportedSize(_)
            | Error::DimensionMismatch(_)
            | Error::DegenerateParameters(_),
        ) => 2,
        _ => 1,
    }
}
