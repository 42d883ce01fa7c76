//! Offset profiles `t ↦ W_l(K ∩ (ξ⊥ + tξ))` and per-direction symmetry checks.
//!
//! Profiles are sampled on the grid `t_i = (i − m) Δ`, `i = 0, …, 2m`, with
//! `Δ = t0 / (m + 1)`, so the grid is symmetric, contains 0 and stays inside
//! the admissible open interval `(−t0, t0)`.

use rayon::prelude::*;
use serde::Serialize;

use crate::body::{offset_bound, StarBody};
use crate::error::{QuermassError, Result};
use crate::quermass::{curvature_quermass, section_volume};
use crate::section::{Section, SectionOptions};
use crate::sphere::Direction;

pub const DEFAULT_GRID_POINTS: usize = 201;
pub const MIN_GRID_POINTS: usize = 11;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OffsetProfile {
    pub pole: Direction,
    pub l: usize,
    pub t_values: Vec<f64>,
    pub w_values: Vec<f64>,
}

impl OffsetProfile {
    /// Grid spacing.
    pub fn step(&self) -> f64 {
        self.t_values[1] - self.t_values[0]
    }

    /// `max_i |W(t_i) − W(−t_i)|`.
    pub fn evenness_defect(&self) -> f64 {
        let n = self.w_values.len();
        (0..n / 2).map(|i| (self.w_values[i] - self.w_values[n - 1 - i]).abs()).fold(0.0, f64::max)
    }
}

/// The symmetric offset grid with `points` nodes inside `(−t0, t0)`.
pub fn offset_grid(t0: f64, points: usize) -> Result<Vec<f64>> {
    if points < MIN_GRID_POINTS || points.is_multiple_of(2) {
        return Err(QuermassError::Input(format!(
            "grid needs an odd number of points >= {MIN_GRID_POINTS}, got {points}"
        )));
    }
    if !(t0 > 0.0 && t0.is_finite()) {
        return Err(QuermassError::Input(format!("offset bound {t0} must be positive")));
    }
    let m = (points / 2) as i64;
    let delta = t0 / (m + 1) as f64;
    Ok((-m..=m).map(|i| i as f64 * delta).collect())
}

/// `W_l` of the single section at offset `t`.
pub fn section_value(body: &StarBody, pole: &Direction, l: usize, t: f64, options: SectionOptions) -> Result<f64> {
    let section = Section::with_options(body, pole, t, options)?;
    let w = if l == 0 { section_volume(&section)? } else { curvature_quermass(&section, l)? };
    Ok(w.value)
}

fn check_l(body: &StarBody, l: usize) -> Result<()> {
    if l > body.dim() - 1 {
        return Err(QuermassError::Input(format!("order l = {l} outside 0..={}", body.dim() - 1)));
    }
    Ok(())
}

/// Profile with default section options.
pub fn offset_profile(body: &StarBody, pole: &Direction, l: usize, grid_points: usize) -> Result<OffsetProfile> {
    offset_profile_with(body, pole, l, grid_points, SectionOptions::for_dim(body.dim()))
}

pub fn offset_profile_with(
    body: &StarBody,
    pole: &Direction,
    l: usize,
    grid_points: usize,
    options: SectionOptions,
) -> Result<OffsetProfile> {
    check_l(body, l)?;
    let t_values = offset_grid(offset_bound(body).t0, grid_points)?;
    let w_values = t_values
        .par_iter()
        .map(|&t| section_value(body, pole, l, t, options).map_err(|e| e.with_context(&format!("section at t = {t}"))))
        .collect::<Result<Vec<f64>>>()?;
    Ok(OffsetProfile { pole: *pole, l, t_values, w_values })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ArgMax {
    pub index: usize,
    pub t_star: f64,
    pub w_star: f64,
    /// The maximum sits at an end of the grid.
    pub at_boundary: bool,
}

/// Grid argmax. Values within `1e−12 · max(1, |w|)` of the maximum count as
/// ties, which go to the smallest `|t|` and then to negative `t`.
pub fn argmax_offset(profile: &OffsetProfile) -> Result<ArgMax> {
    let w = &profile.w_values;
    if w.is_empty() || w.len() != profile.t_values.len() {
        return Err(QuermassError::Input("profile is empty or inconsistent".into()));
    }
    let max = w.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !max.is_finite() {
        return Err(QuermassError::NumericalDegeneracy("profile maximum is not finite".into()));
    }
    let tie = 1e-12 * max.abs().max(1.0);
    let index = (0..w.len())
        .filter(|&i| w[i] >= max - tie)
        .min_by(|&i, &j| {
            let (ti, tj) = (profile.t_values[i], profile.t_values[j]);
            ti.abs().total_cmp(&tj.abs()).then(ti.total_cmp(&tj))
        })
        .expect("maximum is attained");
    Ok(ArgMax {
        index,
        t_star: profile.t_values[index],
        w_star: w[index],
        at_boundary: index == 0 || index == w.len() - 1,
    })
}

/// Vertex of the parabola through the argmax and its two neighbours, or
/// `None` at the boundary or when the neighbours do not bracket a maximum.
pub fn refine_argmax(profile: &OffsetProfile, argmax: &ArgMax) -> Option<f64> {
    if argmax.at_boundary {
        return None;
    }
    let i = argmax.index;
    let (wm, w0, wp) = (profile.w_values[i - 1], profile.w_values[i], profile.w_values[i + 1]);
    let curvature = wm - 2.0 * w0 + wp;
    if !(curvature < 0.0) {
        return None;
    }
    Some(argmax.t_star + 0.5 * profile.step() * (wm - wp) / curvature)
}

/// Default step of [`central_derivative`]: `t0 / 10`.
pub fn default_derivative_step(body: &StarBody) -> f64 {
    offset_bound(body).t0 / 10.0
}

/// Fourth-order central difference of `t ↦ W_l` at 0.
pub fn central_derivative(body: &StarBody, pole: &Direction, l: usize, h: f64) -> Result<f64> {
    central_derivative_with(body, pole, l, h, SectionOptions::for_dim(body.dim()))
}

pub fn central_derivative_with(
    body: &StarBody,
    pole: &Direction,
    l: usize,
    h: f64,
    options: SectionOptions,
) -> Result<f64> {
    check_l(body, l)?;
    let t0 = offset_bound(body).t0;
    if !(h > 0.0 && h < t0 / 4.0) {
        return Err(QuermassError::Input(format!("derivative step {h} must lie in (0, t0/4) with t0 = {t0}")));
    }
    let w = [-2.0, -1.0, 1.0, 2.0]
        .par_iter()
        .map(|k| section_value(body, pole, l, k * h, options))
        .collect::<Result<Vec<f64>>>()?;
    Ok((w[0] - 8.0 * w[1] + 8.0 * w[2] - w[3]) / (12.0 * h))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PoleRecord {
    pub pole: Direction,
    pub t_star: Option<f64>,
    pub w_star: Option<f64>,
    pub central_derivative_at_0: Option<f64>,
    pub profile_evenness_defect: Option<f64>,
    pub boundary_argmax: bool,
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile: Option<OffsetProfile>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepSummary {
    pub max_abs_t_star: f64,
    pub max_abs_central_derivative: f64,
    pub max_evenness_defect: f64,
    pub boundary_warnings: usize,
    pub failed_poles: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepReport {
    pub l: usize,
    pub grid_points: usize,
    pub derivative_step: f64,
    pub records: Vec<PoleRecord>,
    pub summary: SweepSummary,
}

fn pole_record(body: &StarBody, pole: &Direction, l: usize, grid_points: usize, h: f64, keep: bool) -> PoleRecord {
    let run = || -> Result<PoleRecord> {
        let profile = offset_profile(body, pole, l, grid_points)?;
        let arg = argmax_offset(&profile)?;
        let derivative = central_derivative(body, pole, l, h)?;
        Ok(PoleRecord {
            pole: *pole,
            t_star: Some(arg.t_star),
            w_star: Some(arg.w_star),
            central_derivative_at_0: Some(derivative),
            profile_evenness_defect: Some(profile.evenness_defect()),
            boundary_argmax: arg.at_boundary,
            error: None,
            profile: keep.then_some(profile),
        })
    };
    run().unwrap_or_else(|e| PoleRecord {
        pole: *pole,
        t_star: None,
        w_star: None,
        central_derivative_at_0: None,
        profile_evenness_defect: None,
        boundary_argmax: false,
        error: Some(e.to_string()),
        profile: None,
    })
}

/// Profiles, argmaxes and central derivatives over a pole grid.
///
/// Failures at individual poles are recorded in the report rather than
/// aborting it. Records keep the order of `poles`.
pub fn symmetry_report(body: &StarBody, l: usize, poles: &[Direction], grid_points: usize) -> Result<SweepReport> {
    symmetry_report_with(body, l, poles, grid_points, false)
}

/// As [`symmetry_report`], optionally keeping every profile in its record.
pub fn symmetry_report_with(
    body: &StarBody,
    l: usize,
    poles: &[Direction],
    grid_points: usize,
    keep_profiles: bool,
) -> Result<SweepReport> {
    if poles.is_empty() {
        return Err(QuermassError::Input("pole grid is empty".into()));
    }
    check_l(body, l)?;
    offset_grid(offset_bound(body).t0, grid_points)?;
    let h = default_derivative_step(body);
    let records: Vec<PoleRecord> = poles.par_iter().map(|p| pole_record(body, p, l, grid_points, h, keep_profiles)).collect();
    let fold = |f: fn(&PoleRecord) -> Option<f64>| records.iter().filter_map(f).map(f64::abs).fold(0.0, f64::max);
    let summary = SweepSummary {
        max_abs_t_star: fold(|r| r.t_star),
        max_abs_central_derivative: fold(|r| r.central_derivative_at_0),
        max_evenness_defect: fold(|r| r.profile_evenness_defect),
        boundary_warnings: records.iter().filter(|r| r.boundary_argmax).count(),
        failed_poles: records.iter().filter(|r| r.error.is_some()).count(),
    };
    Ok(SweepReport { l, grid_points, derivative_step: h, records, summary })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn profile(t: Vec<f64>, w: Vec<f64>) -> OffsetProfile {
        OffsetProfile { pole: Direction::axis(3, 2), l: 0, t_values: t, w_values: w }
    }

    #[test]
    fn grid_shape() {
        let g = offset_grid(0.9, 11).unwrap();
        assert_eq!(g.len(), 11);
        assert_eq!(g[5], 0.0);
        assert!((g[10] - 0.75).abs() < 1e-15);
        assert!(offset_grid(0.9, 12).is_err());
        assert!(offset_grid(0.9, 9).is_err());
    }

    #[test]
    fn argmax_rules() {
        let t = vec![-2.0, -1.0, 0.0, 1.0, 2.0];
        let a = argmax_offset(&profile(t.clone(), vec![0.0, 3.0, 4.0, 3.0, 0.0])).unwrap();
        assert_eq!((a.t_star, a.at_boundary), (0.0, false));
        let a = argmax_offset(&profile(t.clone(), vec![0.0, 3.0, 1.0, 3.0, 0.0])).unwrap();
        assert_eq!(a.t_star, -1.0);
        let a = argmax_offset(&profile(t.clone(), vec![0.0, 1.0, 2.0, 3.0, 4.0])).unwrap();
        assert!(a.at_boundary && a.t_star == 2.0);
        let w: Vec<f64> = t.iter().map(|x| -(x - 0.3) * (x - 0.3)).collect();
        let p = profile(t, w);
        let a = argmax_offset(&p).unwrap();
        assert!((refine_argmax(&p, &a).unwrap() - 0.3).abs() < 1e-12);
    }

    #[test]
    fn ball_profile() {
        let ball = StarBody::unit_ball(3).unwrap();
        let p = offset_profile(&ball, &Direction::axis(3, 2), 0, 11).unwrap();
        for (t, w) in p.t_values.iter().zip(&p.w_values) {
            assert!((w - PI * (1.0 - t * t)).abs() < 1e-12);
        }
        assert_eq!(argmax_offset(&p).unwrap().t_star, 0.0);
        let d = central_derivative(&ball, &Direction::axis(3, 2), 1, 0.05).unwrap();
        assert!(d.abs() < 1e-8);
        assert!(central_derivative(&ball, &Direction::axis(3, 2), 1, 0.5).is_err());
    }

    #[test]
    fn shifted_ball_argmax() {
        let b = StarBody::shifted_ball(&[0.0, 0.0, 0.1], 1.0).unwrap();
        let pole = Direction::from_slice(&[0.0, 0.6, 0.8]).unwrap();
        let p = offset_profile(&b, &pole, 0, 41).unwrap();
        let a = argmax_offset(&p).unwrap();
        assert!((a.t_star - 0.08).abs() <= p.step() / 2.0 + 1e-12);
    }

    #[test]
    fn report_records_failures() {
        let ball = StarBody::unit_ball(3).unwrap();
        let poles = vec![Direction::axis(3, 0), Direction::axis(3, 2)];
        let r = symmetry_report(&ball, 1, &poles, 11).unwrap();
        assert_eq!(r.records.len(), 2);
        assert_eq!(r.summary.max_abs_t_star, 0.0);
        assert_eq!(r.summary.failed_poles, 0);
        assert!(symmetry_report(&ball, 3, &poles, 11).is_err());
    }
}
