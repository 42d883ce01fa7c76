//! The five subcommands. Each returns a [`Report`]; nothing here writes output.

use std::fs;
use std::path::Path;

use serde::Serialize;
use serde_json::json;

use quermass_core::body::{offset_bound, PerturbationFamily};
use quermass_core::linearization::{evenness_classify, proposition_integral, wl_derivative_coefficient};
use quermass_core::quermass::quermass_all;
use quermass_core::remark::{remark2d_operator, remark2d_raw_condition};
use quermass_core::sphere::{default_order, quasi_uniform_directions};
use quermass_core::steiner::steiner_fit;
use quermass_core::sweep::{central_derivative, symmetry_report_with};
use quermass_core::{
    BodySpec, Direction, FunctionSpec, ParallelVolumeMethod, Section, SmoothSphereFunction, StarBody, SteinerOptions,
    Variant, Vector,
};

use crate::args::{EvennessArgs, OracleArgs, OracleMethod, PerturbArgs, Remark2dArgs, SweepArgs};
use crate::error::{CliError, CliResult};
use crate::report::{components, num, opt, Report, Table};

/// Below this `|I_ξ(ε)|` the normalized derivative is not reported.
const NEGLIGIBLE_INTEGRAL: f64 = 1e-12;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))
}

fn config_err(e: quermass_core::QuermassError) -> CliError {
    CliError::Config(e.to_string())
}

/// Parses and builds a body, checking it against an expected dimension.
pub fn load_body(path: &Path, expected_dim: Option<usize>) -> CliResult<(BodySpec, StarBody)> {
    let spec = BodySpec::from_json(&read(path)?).map_err(config_err)?;
    if let Some(d) = expected_dim {
        if d != spec.dimension() {
            return Err(CliError::Config(format!("--d {d} does not match the body dimension {}", spec.dimension())));
        }
    }
    let body = spec.to_body().map_err(config_err)?;
    Ok((spec, body))
}

pub fn load_function(path: &Path, dim: Option<usize>) -> CliResult<SmoothSphereFunction> {
    FunctionSpec::from_json(&read(path)?).and_then(|f| f.to_function(dim)).map_err(config_err)
}

/// A pole from `--pole`, normalized, or the last coordinate axis.
pub fn parse_pole(values: Option<&[f64]>, d: usize) -> CliResult<Direction> {
    match values {
        None => Ok(Direction::axis(d, d - 1)),
        Some(v) if v.len() != d => Err(CliError::Config(format!("--pole has {} components, expected {d}", v.len()))),
        Some(v) => Vector::from_slice(v).and_then(Direction::normalize).map_err(config_err),
    }
}

fn check_order(l: usize, max: usize) -> CliResult<()> {
    if l > max {
        return Err(CliError::Config(format!("--l {l} outside 0..={max}")));
    }
    Ok(())
}

fn check_tol(tol: f64) -> CliResult<()> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(CliError::Config(format!("tolerance {tol} must be positive")));
    }
    Ok(())
}

/// Positive and strictly decreasing.
pub fn check_schedule(schedule: &[f64]) -> CliResult<()> {
    if schedule.is_empty() {
        return Err(CliError::Config("λ schedule is empty".into()));
    }
    if let Some(bad) = schedule.iter().find(|x| !(**x > 0.0 && x.is_finite())) {
        return Err(CliError::Config(format!("λ = {bad} must be positive")));
    }
    if schedule.windows(2).any(|w| w[1] >= w[0]) {
        return Err(CliError::Config(format!("λ schedule {schedule:?} is not strictly decreasing")));
    }
    Ok(())
}

pub fn sweep(args: &SweepArgs) -> CliResult<Report> {
    let (spec, body) = load_body(&args.body, args.d)?;
    let d = body.dim();
    check_order(args.l, d - 1)?;
    if args.poles == 0 {
        return Err(CliError::Config("--poles must be positive".into()));
    }
    let poles = quasi_uniform_directions(d, args.poles, args.seed)?;
    let report = symmetry_report_with(&body, args.l, &poles, args.t_grid, args.with_profiles)?;

    let mut table;
    if args.with_profiles {
        table = Table::new(&["pole_index", "t", "w"]);
        for (i, r) in report.records.iter().enumerate() {
            if let Some(p) = &r.profile {
                for (t, w) in p.t_values.iter().zip(&p.w_values) {
                    table.push(vec![i.to_string(), num(*t), num(*w)]);
                }
            }
        }
    } else {
        let mut header = vec!["pole_index".to_string()];
        header.extend((1..=d).map(|k| format!("xi_{k}")));
        header.extend(
            ["t_star", "w_star", "central_derivative", "evenness_defect", "boundary_argmax", "error"]
                .map(String::from),
        );
        table = Table { header, rows: Vec::new() };
        for (i, r) in report.records.iter().enumerate() {
            let mut row = vec![i.to_string()];
            row.extend(components(r.pole.as_slice()));
            row.extend([
                opt(r.t_star),
                opt(r.w_star),
                opt(r.central_derivative_at_0),
                opt(r.profile_evenness_defect),
                r.boundary_argmax.to_string(),
                r.error.clone().unwrap_or_default(),
            ]);
            table.push(row);
        }
    }
    let config = json!({
        "body": spec,
        "d": d,
        "l": args.l,
        "t_grid": args.t_grid,
        "poles": args.poles,
        "seed": args.seed,
        "t0": offset_bound(&body).t0,
        "with_profiles": args.with_profiles,
    });
    Report::new("sweep", config, &report, table)
}

#[derive(Debug, Serialize)]
pub struct PerturbRow {
    pub lambda: f64,
    pub step: f64,
    pub measured: f64,
    pub predicted_paper: f64,
    pub predicted_rederived: f64,
    pub ratio_paper: Option<f64>,
    pub ratio_rederived: Option<f64>,
    /// `measured / (λ I_ξ(ε))`.
    pub normalized: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct PerturbSummary {
    pub equator_integral: f64,
    pub constant_paper: f64,
    pub constant_rederived: f64,
    /// Intercept of the least-squares line through `(λ, normalized)`.
    pub limit: Option<f64>,
    /// `(max − min) / |limit|` of the normalized column.
    pub scatter: Option<f64>,
    pub closest_variant: Option<Variant>,
    pub selected_variant: Variant,
    /// `|limit − c| / c` for the selected variant.
    pub selected_relative_error: Option<f64>,
    pub max_abs_measured: f64,
}

#[derive(Debug, Serialize)]
pub struct PerturbResult {
    pub rows: Vec<PerturbRow>,
    pub summary: PerturbSummary,
}

/// Intercept of the least-squares line through the points.
fn linear_intercept(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    if xs.len() < 2 {
        return ys[0];
    }
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    my - sxy / sxx * mx
}

/// Runs the experiment and returns its result without formatting.
pub fn perturb_experiment(args: &PerturbArgs) -> CliResult<(SmoothSphereFunction, Direction, PerturbResult)> {
    let d = args.d;
    if !(3..=quermass_core::vector::MAX_DIM).contains(&d) {
        return Err(CliError::Config(format!("--d {d} outside 3..={}", quermass_core::vector::MAX_DIM)));
    }
    if args.l == 0 || args.l > d - 1 {
        return Err(CliError::Config(format!("--l {} outside 1..={}", args.l, d - 1)));
    }
    check_schedule(&args.lambda_schedule)?;
    if !(args.h_fraction > 0.0 && args.h_fraction < 0.25) {
        return Err(CliError::Config(format!("--h-fraction {} must lie in (0, 0.25)", args.h_fraction)));
    }
    let pole = parse_pole(args.pole.as_deref(), d)?;
    let epsilon = match &args.epsilon {
        Some(path) => load_function(path, Some(d))?,
        None => SmoothSphereFunction::linear(&pole),
    };
    let limit = PerturbationFamily::positivity_limit(&epsilon)?;
    if args.lambda_schedule[0] >= limit {
        return Err(CliError::Config(format!(
            "λ = {} makes 1 + λε non-positive (limit {limit})",
            args.lambda_schedule[0]
        )));
    }
    let order = args.order.unwrap_or_else(|| default_order(d));
    let integral = proposition_integral(&epsilon, &pole, order)?.value;
    let c_paper = wl_derivative_coefficient(d, args.l, Variant::Paper)?;
    let c_rederived = wl_derivative_coefficient(d, args.l, Variant::Rederived)?;
    let usable = integral.abs() > NEGLIGIBLE_INTEGRAL;

    let mut rows = Vec::with_capacity(args.lambda_schedule.len());
    for &lambda in &args.lambda_schedule {
        let body = StarBody::perturbed_unit_ball(&epsilon, lambda)?;
        let step = args.h_fraction * offset_bound(&body).t0;
        let measured = central_derivative(&body, &pole, args.l, step)?;
        let predicted_paper = lambda * c_paper * integral;
        let predicted_rederived = lambda * c_rederived * integral;
        let ratio = |p: f64| (usable && p != 0.0).then(|| measured / p);
        rows.push(PerturbRow {
            lambda,
            step,
            measured,
            predicted_paper,
            predicted_rederived,
            ratio_paper: ratio(predicted_paper),
            ratio_rederived: ratio(predicted_rederived),
            normalized: usable.then(|| measured / (lambda * integral)),
        });
    }

    let normalized: Vec<f64> = rows.iter().filter_map(|r| r.normalized).collect();
    let lambdas: Vec<f64> = rows.iter().map(|r| r.lambda).collect();
    let limit = usable.then(|| linear_intercept(&lambdas, &normalized));
    let scatter = limit.map(|c| {
        let hi = normalized.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let lo = normalized.iter().copied().fold(f64::INFINITY, f64::min);
        (hi - lo) / c.abs()
    });
    let closest_variant = limit.map(|c| {
        if (c - c_paper).abs() <= (c - c_rederived).abs() {
            Variant::Paper
        } else {
            Variant::Rederived
        }
    });
    let c_selected = match args.variant {
        Variant::Paper => c_paper,
        Variant::Rederived => c_rederived,
    };
    let selected_relative_error = limit.filter(|_| c_selected != 0.0).map(|c| (c - c_selected).abs() / c_selected);
    let summary = PerturbSummary {
        equator_integral: integral,
        constant_paper: c_paper,
        constant_rederived: c_rederived,
        limit,
        scatter,
        closest_variant,
        selected_variant: args.variant,
        selected_relative_error,
        max_abs_measured: rows.iter().map(|r| r.measured.abs()).fold(0.0, f64::max),
    };
    Ok((epsilon, pole, PerturbResult { rows, summary }))
}

pub fn perturb(args: &PerturbArgs) -> CliResult<Report> {
    let (epsilon, pole, result) = perturb_experiment(args)?;
    let mut table = Table::new(&[
        "lambda",
        "step",
        "measured",
        "predicted_paper",
        "predicted_rederived",
        "ratio_paper",
        "ratio_rederived",
        "normalized",
    ]);
    for r in &result.rows {
        table.push(vec![
            num(r.lambda),
            num(r.step),
            num(r.measured),
            num(r.predicted_paper),
            num(r.predicted_rederived),
            opt(r.ratio_paper),
            opt(r.ratio_rederived),
            opt(r.normalized),
        ]);
    }
    let config = json!({
        "d": args.d,
        "l": args.l,
        "epsilon": epsilon.monomials(),
        "pole": pole,
        "lambda_schedule": args.lambda_schedule,
        "variant": args.variant,
        "h_fraction": args.h_fraction,
        "order": args.order.unwrap_or_else(|| default_order(args.d)),
    });
    Report::new("perturb", config, &result, table)
}

pub fn evenness(args: &EvennessArgs) -> CliResult<Report> {
    let f = load_function(&args.function, args.d)?;
    let d = f.dim();
    check_tol(args.tol)?;
    if args.poles == 0 {
        return Err(CliError::Config("--poles must be positive".into()));
    }
    let order = args.order.unwrap_or_else(|| default_order(d));
    let poles = quasi_uniform_directions(d, args.poles, args.seed)?;
    let verdict = evenness_classify(&f, &poles, args.tol, order)?;
    let mut header = vec!["pole_index".to_string()];
    header.extend((1..=d).map(|k| format!("xi_{k}")));
    header.push("integral".into());
    let mut table = Table { header, rows: Vec::new() };
    let mut integrals = Vec::with_capacity(poles.len());
    for (i, p) in poles.iter().enumerate() {
        let value = proposition_integral(&f, p, order)?.value;
        let mut row = vec![i.to_string()];
        row.extend(components(p.as_slice()));
        row.push(num(value));
        table.push(row);
        integrals.push(json!({"pole": p, "integral": value}));
    }
    let config = json!({
        "function": f.monomials(),
        "d": d,
        "poles": args.poles,
        "tol": args.tol,
        "seed": args.seed,
        "order": order,
    });
    Report::new("evenness", config, json!({"verdict": verdict, "integrals": integrals}), table)
}

#[derive(Debug, Serialize)]
pub struct OracleRow {
    pub l: usize,
    pub curvature: f64,
    pub steiner: f64,
    pub abs_delta: f64,
    pub allowed: f64,
    pub agrees: bool,
}

pub fn oracle(args: &OracleArgs) -> CliResult<Report> {
    let (spec, body) = load_body(&args.body, args.d)?;
    let d = body.dim();
    check_tol(args.tol)?;
    if let Some(l) = args.l {
        check_order(l, d - 1)?;
    }
    let pole = parse_pole(args.pole.as_deref(), d)?;
    let section = Section::new(&body, &pole, args.t)?;
    let mut options = SteinerOptions::for_dim(d);
    options.method = match (args.method, options.method) {
        (OracleMethod::Polar, ParallelVolumeMethod::PolarIntegration { order }) => {
            ParallelVolumeMethod::PolarIntegration { order: args.order.unwrap_or(order) }
        }
        (OracleMethod::Polar, m) => m,
        (OracleMethod::Qmc, _) => ParallelVolumeMethod::QuasiMonteCarlo { samples: args.samples, seed: args.seed },
    };
    let fit = steiner_fit(&section, &options)?;
    let curvature = quermass_all(&section)?;
    let orders: Vec<usize> = match args.l {
        Some(l) => vec![l],
        None => (0..d).collect(),
    };
    let mut rows = Vec::new();
    for l in orders {
        let c = curvature[l].value;
        let s = fit.quermass(l)?.value;
        let allowed = args.tol * (1.0 + c.abs());
        rows.push(OracleRow { l, curvature: c, steiner: s, abs_delta: (c - s).abs(), allowed, agrees: (c - s).abs() <= allowed });
    }
    let mut table = Table::new(&["l", "curvature", "steiner", "abs_delta", "allowed", "agrees"]);
    for r in &rows {
        table.push(vec![
            r.l.to_string(),
            num(r.curvature),
            num(r.steiner),
            num(r.abs_delta),
            num(r.allowed),
            r.agrees.to_string(),
        ]);
    }
    let config = json!({
        "body": spec,
        "pole": pole,
        "t": args.t,
        "l": args.l,
        "steiner": options,
        "tol": args.tol,
    });
    let result = json!({
        "rows": rows,
        "all_agree": rows.iter().all(|r| r.agrees),
        "steiner_fit": fit,
    });
    Report::new("oracle", config, result, table)
}

pub fn remark2d(args: &Remark2dArgs) -> CliResult<Report> {
    let pole = parse_pole(args.pole.as_deref(), 3)?;
    let rho0 = match &args.rho0 {
        Some(path) => load_function(path, Some(3))?,
        None => SmoothSphereFunction::constant(3, 1.0),
    };
    let epsilon = match &args.epsilon {
        Some(path) => load_function(path, Some(3))?,
        None => SmoothSphereFunction::linear(&pole),
    };
    let raw = remark2d_raw_condition(&rho0, &epsilon, &pole, args.order)?;
    let operator = remark2d_operator(&rho0, &epsilon, &pole, args.order)?;
    let integral = proposition_integral(&epsilon, &pole, default_order(3))?.value;
    let result = json!({
        "operator": operator,
        "raw": {
            "full": raw.full,
            "degree0": raw.degree0,
            "degree1": raw.degree1,
            "truncated": raw.truncated(),
        },
        "operator_minus_truncated": operator - raw.truncated(),
        "operator_minus_degree1": operator - raw.degree1,
        "equator_integral": integral,
    });
    let mut table = Table::new(&["operator", "full", "degree0", "degree1", "truncated", "equator_integral"]);
    table.push(vec![
        num(operator),
        num(raw.full),
        num(raw.degree0),
        num(raw.degree1),
        num(raw.truncated()),
        num(integral),
    ]);
    let config = json!({
        "rho0": rho0.monomials(),
        "epsilon": epsilon.monomials(),
        "pole": pole,
        "order": args.order,
    });
    Report::new("remark2d", config, result, table)
}
