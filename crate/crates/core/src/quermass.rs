//! Quermassintegrals of sections.
//!
//! For a section `C` of dimension `m = d − 1` with principal curvatures
//! `κ_1, …, κ_{m−1}` and normalized curvature means `H_j = e_j(κ) / C(m−1, j)`,
//!
//! ```text
//! W_0(C) = (1/m) ∫ r(η)^m dη
//! W_l(C) = (1/m) ∫_{bd C} H_{l−1} dS,        1 ≤ l ≤ m,
//! dS     = r(η)^{m−1} / <η, n(η)> dη.
//! ```
//!
//! All integrals run over the equator sphere of the section's pole. The top
//! order `W_m` is the volume of the unit m-ball for every section.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{QuermassError, Result};
use crate::section::Section;
use crate::sphere::{ball_volume, Direction};

/// How a [`QuermassValue`] was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuermassMethod {
    CurvatureIntegral,
    RadialIntegral,
    SteinerFit,
    ClosedForm,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QuermassValue {
    pub l: usize,
    pub value: f64,
    pub method: QuermassMethod,
}

/// Principal curvatures at a boundary point with their normalized means.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CurvatureMeans {
    pub kappas: Vec<f64>,
    /// `H_0, …, H_n` for `n` curvatures.
    pub h: Vec<f64>,
}

impl CurvatureMeans {
    pub fn new(kappas: Vec<f64>) -> Self {
        let e = elementary_symmetric_all(&kappas);
        let n = kappas.len();
        let h = e.iter().enumerate().map(|(j, v)| v / binomial(n, j)).collect();
        CurvatureMeans { kappas, h }
    }
}

/// Binomial coefficient as a float.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `e_0, …, e_n` of the given values.
fn elementary_symmetric_all(x: &[f64]) -> Vec<f64> {
    let mut e = vec![0.0; x.len() + 1];
    e[0] = 1.0;
    for (i, v) in x.iter().enumerate() {
        for j in (1..=i + 1).rev() {
            e[j] += v * e[j - 1];
        }
    }
    e
}

/// The j-th elementary symmetric polynomial `e_j(x)`; zero for `j > x.len()`.
pub fn elementary_symmetric(x: &[f64], j: usize) -> f64 {
    elementary_symmetric_all(x).get(j).copied().unwrap_or(0.0)
}

/// `e_j(κ) / C(n, j)` for `n = kappas.len()`.
pub fn elementary_symmetric_mean(kappas: &[f64], j: usize) -> Result<f64> {
    if j > kappas.len() {
        return Err(QuermassError::Input(format!(
            "mean of order {j} needs at least {j} curvatures, got {}",
            kappas.len()
        )));
    }
    Ok(elementary_symmetric(kappas, j) / binomial(kappas.len(), j))
}

/// Nonlinear part of `H_{l−1}` when every curvature is written `1 + δ_i`:
///
/// `P = H_{l−1}(1 + δ) − 1 − ((l − 1)/n) Σ δ_i`, with `n = deltas.len()`.
///
/// `P` is a combination of elementary symmetric functions of the δ's of
/// degree at least two, so it is quadratically small.
pub fn remainder_term(deltas: &[f64], l: usize) -> Result<f64> {
    let n = deltas.len();
    if n == 0 {
        return Err(QuermassError::Input("remainder term needs at least one curvature".into()));
    }
    if l == 0 || l > n + 1 {
        return Err(QuermassError::Input(format!("order l = {l} outside 1..={}", n + 1)));
    }
    let kappas: Vec<f64> = deltas.iter().map(|d| 1.0 + d).collect();
    let sum: f64 = deltas.iter().sum();
    Ok(elementary_symmetric_mean(&kappas, l - 1)? - 1.0 - (l - 1) as f64 / n as f64 * sum)
}

/// `W_l` of an m-ball of the given radius: `κ_m R^{m−l}`.
pub fn ball_quermass(m: usize, radius: f64, l: usize) -> Result<QuermassValue> {
    if l > m {
        return Err(QuermassError::Input(format!("order l = {l} exceeds dimension {m}")));
    }
    Ok(QuermassValue { l, value: ball_volume(m) * radius.powi((m - l) as i32), method: QuermassMethod::ClosedForm })
}

fn check_order(section: &Section<'_>, l: usize) -> Result<()> {
    let m = section.section_dim();
    if l > m {
        return Err(QuermassError::Input(format!("order l = {l} outside 0..={m}")));
    }
    Ok(())
}

/// Sums per-node contributions in node order so results do not depend on
/// scheduling.
fn integrate_nodes<F>(section: &Section<'_>, f: F) -> Result<f64>
where
    F: Fn(&Direction) -> Result<f64> + Sync + Send,
{
    let rule = section.quadrature()?;
    let values = rule.nodes.par_iter().map(f).collect::<Result<Vec<f64>>>()?;
    Ok(values.iter().zip(&rule.weights).map(|(v, w)| v * w).sum())
}

fn positive_eta_dot_normal(value: f64, eta: &Direction) -> Result<f64> {
    if value > 0.0 {
        Ok(value)
    } else {
        Err(QuermassError::Geometry(format!("<eta, n> = {value} is not positive at {eta:?}")))
    }
}

/// (d−1)-volume of the section, `W_0`.
pub fn section_volume(section: &Section<'_>) -> Result<QuermassValue> {
    let m = section.section_dim();
    let integral = integrate_nodes(section, |eta| Ok(section.radial(eta)?.powi(m as i32)))?;
    Ok(QuermassValue { l: 0, value: integral / m as f64, method: QuermassMethod::RadialIntegral })
}

/// Surface area of the section boundary. Reported with `l = 1` although the
/// value is `(d−1) W_1`.
pub fn surface_area(section: &Section<'_>) -> Result<QuermassValue> {
    let integral = integrate_nodes(section, |eta| {
        let p = section.graph_point(eta)?;
        positive_eta_dot_normal(p.eta_dot_normal, eta)?;
        Ok(p.area_density())
    })?;
    Ok(QuermassValue { l: 1, value: integral, method: QuermassMethod::CurvatureIntegral })
}

/// `W_l`, `1 ≤ l ≤ d − 1`, as a curvature-mean surface integral.
pub fn curvature_quermass(section: &Section<'_>, l: usize) -> Result<QuermassValue> {
    check_order(section, l)?;
    if l == 0 {
        return Err(QuermassError::Input("curvature integrals need l >= 1; use section_volume".into()));
    }
    let m = section.section_dim() as f64;
    if l == 1 {
        let s = surface_area(section)?;
        return Ok(QuermassValue { l, value: s.value / m, method: QuermassMethod::CurvatureIntegral });
    }
    let integral = integrate_nodes(section, |eta| {
        let (p, kappas) = section.graph_curvatures(eta)?;
        positive_eta_dot_normal(p.eta_dot_normal, eta)?;
        Ok(elementary_symmetric_mean(&kappas, l - 1)? * p.area_density())
    })?;
    Ok(QuermassValue { l, value: integral / m, method: QuermassMethod::CurvatureIntegral })
}

/// `W_0, …, W_{d−1}` with one curvature evaluation per node.
pub fn quermass_all(section: &Section<'_>) -> Result<Vec<QuermassValue>> {
    let m = section.section_dim();
    let rule = section.quadrature()?;
    let rows = rule
        .nodes
        .par_iter()
        .map(|eta| {
            let (p, kappas) = section.graph_curvatures(eta)?;
            positive_eta_dot_normal(p.eta_dot_normal, eta)?;
            let means = CurvatureMeans::new(kappas);
            let density = p.area_density();
            let mut row = Vec::with_capacity(m + 1);
            row.push(p.radius.powi(m as i32));
            row.extend(means.h.iter().map(|h| h * density));
            Ok(row)
        })
        .collect::<Result<Vec<Vec<f64>>>>()?;
    let mut out = Vec::with_capacity(m + 1);
    for l in 0..=m {
        let integral: f64 = rows.iter().zip(&rule.weights).map(|(row, w)| row[l] * w).sum();
        let method = if l == 0 { QuermassMethod::RadialIntegral } else { QuermassMethod::CurvatureIntegral };
        out.push(QuermassValue { l, value: integral / m as f64, method });
    }
    Ok(out)
}

/// `W_l` of the section, dispatching to the radial integral for `l = 0`.
pub fn section_quermass(section: &Section<'_>, l: usize) -> Result<QuermassValue> {
    check_order(section, l)?;
    if l == 0 {
        section_volume(section)
    } else {
        curvature_quermass(section, l)
    }
}
