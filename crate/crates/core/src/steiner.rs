//! An independent quermassintegral oracle based on the Steiner polynomial.
//!
//! For a convex m-dimensional section `C` the volume of the parallel body
//! `C + sB` is `Σ_i C(m, i) W_i(C) s^i`. The oracle measures that volume at a
//! handful of radii using nothing but the section's radial function, then
//! recovers every `W_i` by least squares. No normals or curvatures enter the
//! measurement, which is what makes it a useful cross-check of the curvature
//! integrals.
//!
//! Two volume estimators are available. Polar integration writes the
//! parallel body (star-shaped about the section centre) through its own
//! radial function `R_s(η)`, the root of `dist(c + Rη, C) = s`; this is the
//! default because its error is governed by quadrature, not sampling.
//! Quasi-Monte Carlo integration counts Halton points of a bounding box whose
//! distance to the section is at most `s`.

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{QuermassError, Result};
use crate::quermass::{binomial, QuermassMethod, QuermassValue};
use crate::section::Section;
use crate::sphere::{equator_quadrature, Direction};
use crate::vector::Vector;

const DISTANCE_STEP: f64 = 1e-4;
const MAX_DISTANCE_ITERATIONS: usize = 60;
const MAX_RADIUS_ITERATIONS: usize = 60;

/// How parallel-body volumes are measured.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum ParallelVolumeMethod {
    PolarIntegration { order: usize },
    QuasiMonteCarlo { samples: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SteinerOptions {
    pub radii: Vec<f64>,
    pub method: ParallelVolumeMethod,
    /// Allowed support-plane violation, relative to the section's size.
    pub convexity_tol: f64,
}

impl SteinerOptions {
    pub fn for_dim(d: usize) -> Self {
        let order = match d {
            3 => 64,
            4 => 24,
            _ => 12,
        };
        SteinerOptions {
            radii: (1..=10).map(|i| 0.05 * i as f64).collect(),
            method: ParallelVolumeMethod::PolarIntegration { order },
            convexity_tol: 1e-6,
        }
    }
}

/// Result of a Steiner fit: `coefficients[i]` is the fitted `W_i`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SteinerFit {
    pub radii: Vec<f64>,
    pub volumes: Vec<f64>,
    pub coefficients: Vec<f64>,
    /// Root-mean-square misfit of the volumes.
    pub residual_rms: f64,
}

impl SteinerFit {
    pub fn quermass(&self, l: usize) -> Result<QuermassValue> {
        let value = *self
            .coefficients
            .get(l)
            .ok_or_else(|| QuermassError::Input(format!("order l = {l} outside the fitted range")))?;
        Ok(QuermassValue { l, value, method: QuermassMethod::SteinerFit })
    }
}

/// Boundary point of the section in direction `u` (ambient coordinates).
fn boundary(section: &Section<'_>, u: &Direction) -> Result<Vector> {
    Ok(**u * section.radial(u)? + section.center())
}

/// Distance from `q` (in the section's hyperplane, outside the section) to
/// the section boundary, and the direction of the nearest boundary point.
///
/// Newton's method on `|q − X(u)|²` over the equator sphere, recharting at
/// every iterate; derivatives are central differences.
pub fn distance_to_boundary(section: &Section<'_>, q: &Vector, start: &Direction) -> Result<(f64, Direction)> {
    let mut u = *start;
    let h = DISTANCE_STEP;
    for _ in 0..MAX_DISTANCE_ITERATIONS {
        let chart = section.chart(&u);
        let k = chart.dim();
        let objective = |y: &[f64]| -> Result<f64> { Ok((*q - boundary(section, &chart.exp(y))?).norm_squared()) };
        let f0 = objective(&vec![0.0; k])?;
        let mut grad = DVector::<f64>::zeros(k);
        let mut hess = DMatrix::<f64>::zeros(k, k);
        let mut y = vec![0.0; k];
        for j in 0..k {
            y[j] = h;
            let fp = objective(&y)?;
            y[j] = -h;
            let fm = objective(&y)?;
            y[j] = 0.0;
            grad[j] = (fp - fm) / (2.0 * h);
            hess[(j, j)] = (fp - 2.0 * f0 + fm) / (h * h);
            for i in 0..j {
                let mut corner = |si: f64, sj: f64| {
                    y[i] = si * h;
                    y[j] = sj * h;
                    let v = objective(&y);
                    y[i] = 0.0;
                    y[j] = 0.0;
                    v
                };
                let v = (corner(1.0, 1.0)? - corner(1.0, -1.0)? - corner(-1.0, 1.0)? + corner(-1.0, -1.0)?) / (4.0 * h * h);
                hess[(i, j)] = v;
                hess[(j, i)] = v;
            }
        }
        let mut step = match hess.clone().cholesky() {
            Some(c) => -c.solve(&grad),
            None => -&grad / hess.diagonal().amax().max(1e-3),
        };
        let len = step.norm();
        if len > 0.3 {
            step *= 0.3 / len;
        }
        if step.norm() < 1e-10 {
            return Ok((f0.sqrt(), u));
        }
        let mut accepted = false;
        for _ in 0..30 {
            let f1 = objective(step.as_slice())?;
            if f1 <= f0 * (1.0 + 1e-14) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            return Ok((f0.sqrt(), u));
        }
        u = chart.exp(step.as_slice());
    }
    let d = (*q - boundary(section, &u)?).norm();
    if d.is_finite() {
        Ok((d, u))
    } else {
        Err(QuermassError::NumericalDegeneracy("distance minimization failed".into()))
    }
}

/// Radial function of the parallel body `C + sB` about the section centre.
pub fn parallel_radial(section: &Section<'_>, eta: &Direction, s: f64, r_max: f64) -> Result<f64> {
    if s == 0.0 {
        return section.radial(eta);
    }
    // dist(c + Rη, C) is convex and increasing in R outside C, so Newton from
    // the right converges monotonically.
    let c = section.center();
    let mut r = r_max + s;
    let mut u = *eta;
    for _ in 0..MAX_RADIUS_ITERATIONS {
        let q = c + **eta * r;
        let (dist, nearest) = distance_to_boundary(section, &q, &u)?;
        u = nearest;
        let x = boundary(section, &u)?;
        let slope = (q - x).dot(eta) / dist;
        if !(slope > 0.0) {
            return Err(QuermassError::NumericalDegeneracy(format!(
                "parallel body radius: non-positive slope {slope} at {eta:?}"
            )));
        }
        let next = r - (dist - s) / slope;
        if (next - r).abs() <= 1e-12 * r {
            return Ok(next);
        }
        r = next;
    }
    Err(QuermassError::NumericalDegeneracy(format!("parallel body radius did not converge at {eta:?}")))
}

/// Largest violation `<x_j − x_i, n_i>` of the support-plane condition over
/// the boundary points of a quadrature rule; non-positive for convex sections.
pub fn convexity_defect(section: &Section<'_>, order: usize) -> Result<f64> {
    let rule = equator_quadrature(section.pole(), order)?;
    let pts = rule
        .nodes
        .par_iter()
        .map(|eta| {
            let p = section.graph_point(eta)?;
            Ok((**eta * p.radius + section.center(), *p.normal))
        })
        .collect::<Result<Vec<(Vector, Vector)>>>()?;
    let defect = pts
        .par_iter()
        .map(|(xi, ni)| pts.iter().map(|(xj, _)| (*xj - *xi).dot(ni)).fold(f64::NEG_INFINITY, f64::max))
        .reduce(|| f64::NEG_INFINITY, f64::max);
    Ok(defect)
}

fn max_radius(section: &Section<'_>, order: usize) -> Result<f64> {
    let rule = equator_quadrature(section.pole(), order)?;
    let radii = rule.nodes.par_iter().map(|eta| section.radial(eta)).collect::<Result<Vec<f64>>>()?;
    Ok(radii.into_iter().fold(0.0, f64::max))
}

/// Volume of `C + sB` by the chosen estimator.
pub fn parallel_volume(section: &Section<'_>, s: f64, method: &ParallelVolumeMethod) -> Result<f64> {
    if !(s >= 0.0 && s.is_finite()) {
        return Err(QuermassError::Input(format!("parallel radius {s} must be non-negative")));
    }
    let m = section.section_dim();
    match *method {
        ParallelVolumeMethod::PolarIntegration { order } => {
            let rule = equator_quadrature(section.pole(), order)?;
            let r_max = max_radius(section, order)? * 1.01;
            let values = rule
                .nodes
                .par_iter()
                .map(|eta| Ok(parallel_radial(section, eta, s, r_max)?.powi(m as i32)))
                .collect::<Result<Vec<f64>>>()?;
            let integral: f64 = values.iter().zip(&rule.weights).map(|(v, w)| v * w).sum();
            Ok(integral / m as f64)
        }
        ParallelVolumeMethod::QuasiMonteCarlo { samples, seed } => {
            if samples == 0 {
                return Err(QuermassError::Input("quasi-Monte Carlo needs at least one sample".into()));
            }
            let bound = max_radius(section, 64)? * 1.05 + s;
            let c = section.center();
            let frame = section.frame();
            const BASES: [u8; 5] = [2, 3, 5, 7, 11];
            let hits = (0..samples)
                .into_par_iter()
                .map(|i| {
                    let index = i + 1 + seed as usize;
                    let local: Vec<f64> =
                        (0..m).map(|a| bound * (2.0 * halton::number(BASES[a], index) - 1.0)).collect();
                    let offset = frame.embed(&local);
                    let len = offset.norm();
                    if len == 0.0 {
                        return Ok(1usize);
                    }
                    let dir = Direction::renormalized(offset);
                    if len <= section.radial(&dir)? {
                        return Ok(1);
                    }
                    let (dist, _) = distance_to_boundary(section, &(c + offset), &dir)?;
                    Ok(usize::from(dist <= s))
                })
                .collect::<Result<Vec<usize>>>()?
                .into_iter()
                .sum::<usize>();
            Ok((2.0 * bound).powi(m as i32) * hits as f64 / samples as f64)
        }
    }
}

/// Measures parallel volumes at `options.radii` and fits the Steiner polynomial.
pub fn steiner_fit(section: &Section<'_>, options: &SteinerOptions) -> Result<SteinerFit> {
    let m = section.section_dim();
    if options.radii.len() < m + 1 {
        return Err(QuermassError::Input(format!("need at least {} radii for the fit", m + 1)));
    }
    let check_order = match options.method {
        ParallelVolumeMethod::PolarIntegration { order } => order,
        ParallelVolumeMethod::QuasiMonteCarlo { .. } => 64,
    };
    let r_max = max_radius(section, check_order)?;
    let defect = convexity_defect(section, check_order)?;
    if defect > options.convexity_tol * r_max {
        return Err(QuermassError::OracleUnsupported(format!(
            "section is not convex (support-plane defect {defect:e})"
        )));
    }
    let volumes = options
        .radii
        .iter()
        .map(|s| parallel_volume(section, *s, &options.method))
        .collect::<Result<Vec<f64>>>()?;
    let n = options.radii.len();
    let a = DMatrix::from_fn(n, m + 1, |i, j| binomial(m, j) * options.radii[i].powi(j as i32));
    let b = DVector::from_column_slice(&volumes);
    let coefficients = a
        .clone()
        .svd(true, true)
        .solve(&b, 1e-14)
        .map_err(|e| QuermassError::NumericalDegeneracy(format!("Steiner least squares: {e}")))?;
    let residual = &a * &coefficients - &b;
    Ok(SteinerFit {
        radii: options.radii.clone(),
        volumes,
        coefficients: coefficients.iter().copied().collect(),
        residual_rms: residual.norm() / (n as f64).sqrt(),
    })
}

/// `W_l` of the section from the Steiner fit with default options.
pub fn steiner_quermass_oracle(section: &Section<'_>, l: usize) -> Result<QuermassValue> {
    let m = section.section_dim();
    if l > m {
        return Err(QuermassError::Input(format!("order l = {l} outside 0..={m}")));
    }
    steiner_fit(section, &SteinerOptions::for_dim(section.body().dim()))?.quermass(l)
}
