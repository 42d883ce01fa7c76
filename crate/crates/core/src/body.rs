//! Star bodies described by their radial functions.
//!
//! A body is either a closed-form preset (ball, ellipsoid, ball with a shifted
//! center) or the restriction of an ambient polynomial. Each shape also knows
//! the gradient of its natural extension to R^d, which the section root finder
//! uses for its Newton polish; only the tangential part of that gradient
//! matters.

use serde::Serialize;

use crate::chart::{graph_curvatures, ChartFrame, FiniteDifferenceSteps};
use crate::error::{QuermassError, Result};
use crate::poly::SmoothSphereFunction;
use crate::sphere::{check_dim, check_orthogonal, dense_sample, quasi_uniform_directions, Direction};
use crate::vector::Vector;

/// Default size of the quasi-random sample used for positivity checks.
pub const DEFAULT_SAMPLE_SIZE: usize = 10_000;

/// Fraction of the minimal radius used as the admissible offset bound.
pub const OFFSET_SAFETY: f64 = 0.95;

/// Closed form of a radial function.
#[derive(Clone, Debug, PartialEq)]
pub enum RadialShape {
    Ball { radius: f64 },
    Ellipsoid { semiaxes: Vec<f64> },
    /// Ball of the given radius centered at `center`, with `|center| < radius`.
    ShiftedBall { center: Vector, radius: f64 },
    /// `ρ` is the restriction of an ambient polynomial.
    Polynomial(SmoothSphereFunction),
}

impl RadialShape {
    fn dim_hint(&self) -> Option<usize> {
        match self {
            RadialShape::Ball { .. } => None,
            RadialShape::Ellipsoid { semiaxes } => Some(semiaxes.len()),
            RadialShape::ShiftedBall { center, .. } => Some(center.dim()),
            RadialShape::Polynomial(p) => Some(p.dim()),
        }
    }

    #[inline]
    fn value(&self, w: &Vector) -> f64 {
        match self {
            RadialShape::Ball { radius } => *radius,
            RadialShape::Ellipsoid { semiaxes } => {
                let q: f64 = semiaxes.iter().enumerate().map(|(i, a)| (w[i] / a).powi(2)).sum();
                q.powf(-0.5)
            }
            RadialShape::ShiftedBall { center, radius } => {
                let a = w.dot(center);
                a + (a * a - center.norm_squared() + radius * radius).sqrt()
            }
            RadialShape::Polynomial(p) => p.evaluate(w),
        }
    }

    #[inline]
    fn gradient(&self, w: &Vector) -> Vector {
        match self {
            RadialShape::Ball { .. } => Vector::zeros(w.dim()),
            RadialShape::Ellipsoid { semiaxes } => {
                let q: f64 = semiaxes.iter().enumerate().map(|(i, a)| (w[i] / a).powi(2)).sum();
                let f = -q.powf(-1.5);
                let mut g = Vector::zeros(w.dim());
                for (i, a) in semiaxes.iter().enumerate() {
                    g[i] = f * w[i] / (a * a);
                }
                g
            }
            RadialShape::ShiftedBall { center, radius } => {
                let a = w.dot(center);
                let root = (a * a - center.norm_squared() + radius * radius).sqrt();
                *center * (1.0 + a / root)
            }
            RadialShape::Polynomial(p) => p.gradient(w),
        }
    }
}

/// A body star-shaped about the origin with a strictly positive radial function.
#[derive(Clone, Debug, PartialEq)]
pub struct StarBody {
    dim: usize,
    shape: RadialShape,
    min_radius: f64,
    max_radius: f64,
}

impl StarBody {
    /// Validates `shape` in dimension `dim`, sampling `sample_size` directions
    /// for bodies without closed-form extremes.
    pub fn with_sample_size(dim: usize, shape: RadialShape, sample_size: usize) -> Result<Self> {
        check_dim(dim)?;
        if let Some(hint) = shape.dim_hint() {
            if hint != dim {
                return Err(QuermassError::Input(format!("shape has dimension {hint}, body has {dim}")));
            }
        }
        let (min_radius, max_radius) = match &shape {
            RadialShape::Ball { radius } => {
                if !(*radius > 0.0 && radius.is_finite()) {
                    return Err(QuermassError::InvalidBody(format!("ball radius {radius} must be positive")));
                }
                (*radius, *radius)
            }
            RadialShape::Ellipsoid { semiaxes } => {
                if semiaxes.iter().any(|a| !(*a > 0.0 && a.is_finite())) {
                    return Err(QuermassError::InvalidBody(format!("semiaxes {semiaxes:?} must be positive")));
                }
                let min = semiaxes.iter().copied().fold(f64::INFINITY, f64::min);
                let max = semiaxes.iter().copied().fold(0.0, f64::max);
                (min, max)
            }
            RadialShape::ShiftedBall { center, radius } => {
                let c = center.norm();
                if !(c < *radius) {
                    return Err(QuermassError::InvalidBody(format!(
                        "origin must be interior: |center| = {c} >= radius {radius}"
                    )));
                }
                (radius - c, radius + c)
            }
            RadialShape::Polynomial(p) => {
                let (min, max) = sampled_extremes(p, sample_size)?;
                if !(min > 0.0) {
                    return Err(QuermassError::InvalidBody(format!(
                        "radial function not positive (sampled minimum {min:e})"
                    )));
                }
                (min, max)
            }
        };
        Ok(StarBody { dim, shape, min_radius, max_radius })
    }

    pub fn new(dim: usize, shape: RadialShape) -> Result<Self> {
        StarBody::with_sample_size(dim, shape, DEFAULT_SAMPLE_SIZE)
    }

    pub fn unit_ball(dim: usize) -> Result<Self> {
        StarBody::new(dim, RadialShape::Ball { radius: 1.0 })
    }

    pub fn ball(dim: usize, radius: f64) -> Result<Self> {
        StarBody::new(dim, RadialShape::Ball { radius })
    }

    pub fn ellipsoid(semiaxes: &[f64]) -> Result<Self> {
        StarBody::new(semiaxes.len(), RadialShape::Ellipsoid { semiaxes: semiaxes.to_vec() })
    }

    pub fn shifted_ball(center: &[f64], radius: f64) -> Result<Self> {
        let center = Vector::from_slice(center)?;
        StarBody::new(center.dim(), RadialShape::ShiftedBall { center, radius })
    }

    /// Body whose radial function is the given polynomial.
    pub fn from_polynomial(rho: SmoothSphereFunction) -> Result<Self> {
        StarBody::new(rho.dim(), RadialShape::Polynomial(rho))
    }

    /// `ρ = 1 + λ ε`.
    pub fn perturbed_unit_ball(epsilon: &SmoothSphereFunction, lambda: f64) -> Result<Self> {
        let rho = SmoothSphereFunction::constant(epsilon.dim(), 1.0).add(&epsilon.scale(lambda))?;
        StarBody::from_polynomial(rho)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn shape(&self) -> &RadialShape {
        &self.shape
    }

    /// Minimum of ρ (exact for presets, sampled and refined otherwise).
    pub fn min_radius(&self) -> f64 {
        self.min_radius
    }

    /// Maximum of ρ (exact for presets, sampled and refined otherwise).
    pub fn max_radius(&self) -> f64 {
        self.max_radius
    }

    /// ρ(ω) without input checks. `omega` must be a unit vector of matching dimension.
    #[inline]
    pub fn radial(&self, omega: &Vector) -> f64 {
        self.shape.value(omega)
    }

    /// Gradient of the natural extension of ρ to R^d at `omega`.
    #[inline]
    pub fn radial_gradient(&self, omega: &Vector) -> Vector {
        self.shape.gradient(omega)
    }

    /// True if the radial function is even (the body is centered).
    pub fn is_centered(&self) -> bool {
        match &self.shape {
            RadialShape::Ball { .. } | RadialShape::Ellipsoid { .. } => true,
            RadialShape::ShiftedBall { center, .. } => center.norm() == 0.0,
            RadialShape::Polynomial(p) => p.even_odd_split().1.is_zero(),
        }
    }
}

/// Minimum and maximum of a polynomial on the sphere: dense sample, then
/// projected-gradient refinement of the best candidates.
pub(crate) fn sampled_extremes(p: &SmoothSphereFunction, sample_size: usize) -> Result<(f64, f64)> {
    let pts = dense_sample(p.dim(), sample_size)?;
    let mut values: Vec<(f64, usize)> = pts.iter().enumerate().map(|(i, w)| (p.evaluate(w), i)).collect();
    values.sort_by(|a, b| a.0.total_cmp(&b.0));
    let candidates = 8.min(values.len());
    let min = values[..candidates]
        .iter()
        .map(|&(_, i)| refine_extreme(p, pts[i], -1.0))
        .fold(f64::INFINITY, f64::min);
    let max = values[values.len() - candidates..]
        .iter()
        .map(|&(_, i)| refine_extreme(p, pts[i], 1.0))
        .fold(f64::NEG_INFINITY, f64::max);
    Ok((min.min(values[0].0), max.max(values[values.len() - 1].0)))
}

/// Projected gradient ascent (`sign = 1`) or descent (`sign = -1`) with backtracking.
fn refine_extreme(p: &SmoothSphereFunction, start: Direction, sign: f64) -> f64 {
    let mut w = *start;
    let mut value = p.evaluate(&w);
    let mut step = 0.1;
    for _ in 0..200 {
        let g = p.gradient(&w);
        let tangential = g.axpy(-g.dot(&w), &w);
        if tangential.norm() < 1e-13 {
            break;
        }
        let mut improved = false;
        while step > 1e-14 {
            let trial = w.axpy(sign * step, &tangential);
            let trial = trial * (1.0 / trial.norm());
            let tv = p.evaluate(&trial);
            if sign * (tv - value) > 0.0 {
                w = trial;
                value = tv;
                step *= 2.0;
                improved = true;
                break;
            }
            step *= 0.5;
        }
        if !improved {
            break;
        }
    }
    value
}

/// ρ(ω), checked: `omega` must match the body's dimension and ρ must be positive.
pub fn evaluate_radial(body: &StarBody, omega: &Direction) -> Result<f64> {
    if omega.dim() != body.dim() {
        return Err(QuermassError::Input(format!(
            "direction has dimension {}, body has {}",
            omega.dim(),
            body.dim()
        )));
    }
    let r = body.radial(omega);
    if !(r > 0.0) {
        return Err(QuermassError::InvalidBody(format!("radial function {r} at {omega:?} is not positive")));
    }
    Ok(r)
}

/// d/dψ f(ξ sin ψ + η cos ψ) at ψ = 0, i.e. `<∇F(η), ξ>`.
pub fn latitude_derivative(f: &SmoothSphereFunction, pole: &Direction, eta: &Direction) -> Result<f64> {
    check_orthogonal(pole, eta)?;
    if f.dim() != pole.dim() {
        return Err(QuermassError::Input("function and pole dimensions differ".into()));
    }
    Ok(f.gradient(eta).dot(pole))
}

/// The family `ρ^λ = 1 + λ ε`, λ ∈ [0, λ_max].
#[derive(Clone, Debug, PartialEq)]
pub struct PerturbationFamily {
    pub epsilon: SmoothSphereFunction,
    pub lambda_max: f64,
}

impl PerturbationFamily {
    /// Checks `1 + λ_max ε > 0` on a dense sample (positivity for smaller λ follows).
    pub fn new(epsilon: SmoothSphereFunction, lambda_max: f64) -> Result<Self> {
        if !(lambda_max > 0.0 && lambda_max.is_finite()) {
            return Err(QuermassError::Input(format!("lambda_max {lambda_max} must be positive")));
        }
        let (min, _) = sampled_extremes(&epsilon, DEFAULT_SAMPLE_SIZE)?;
        if !(1.0 + lambda_max * min > 0.0) {
            return Err(QuermassError::InvalidBody(format!(
                "1 + {lambda_max} * epsilon is not positive (min epsilon {min})"
            )));
        }
        Ok(PerturbationFamily { epsilon, lambda_max })
    }

    /// Largest λ keeping `1 + λ ε` positive on the sample, or infinity.
    pub fn positivity_limit(epsilon: &SmoothSphereFunction) -> Result<f64> {
        let (min, _) = sampled_extremes(epsilon, DEFAULT_SAMPLE_SIZE)?;
        Ok(if min < 0.0 { -1.0 / min } else { f64::INFINITY })
    }
}

/// The member of the family at `lambda`.
pub fn make_perturbed_body(family: &PerturbationFamily, lambda: f64) -> Result<StarBody> {
    if !(0.0..=family.lambda_max).contains(&lambda) {
        return Err(QuermassError::Input(format!(
            "lambda {lambda} outside [0, {}]",
            family.lambda_max
        )));
    }
    StarBody::perturbed_unit_ball(&family.epsilon, lambda)
}

/// Radius of a ball about the origin contained in the body.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OffsetBound {
    pub t0: f64,
}

pub fn offset_bound(body: &StarBody) -> OffsetBound {
    OffsetBound { t0: OFFSET_SAFETY * body.min_radius() }
}

/// Outcome of a sampled convexity check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvexityReport {
    pub convex: bool,
    /// Smallest principal curvature over the sample.
    pub min_principal_curvature: f64,
    pub sample_size: usize,
}

/// Samples boundary points and estimates their principal curvatures by finite
/// differences of the boundary embedding; convex iff all are positive.
pub fn convexity_check(body: &StarBody, sample_size: usize) -> Result<ConvexityReport> {
    let pts = quasi_uniform_directions(body.dim(), sample_size, 0)?;
    let steps = FiniteDifferenceSteps::default();
    let radial = |w: &Direction| Ok(body.radial(w));
    let mut min_k = f64::INFINITY;
    for w in &pts {
        let chart = ChartFrame::new(w, None);
        let (_, ks) = graph_curvatures(&radial, &chart, &steps)?;
        min_k = min_k.min(ks[0]);
    }
    Ok(ConvexityReport { convex: min_k > 0.0, min_principal_curvature: min_k, sample_size: pts.len() })
}
