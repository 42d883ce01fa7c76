//! JSON descriptions of bodies and sphere functions.
//!
//! ```json
//! {"kind": "ball", "dimension": 3}
//! {"kind": "ellipsoid", "semiaxes": [1.0, 0.9, 0.8]}
//! {"kind": "shifted-ball", "center": [0.0, 0.0, 0.1], "radius": 1.0}
//! {"kind": "perturbed", "dimension": 3, "lambda": 0.01,
//!  "epsilon": [{"exponents": [0, 0, 1], "coeff": 1.0}]}
//! {"kind": "polynomial", "dimension": 3,
//!  "rho": [{"exponents": [0, 0, 0], "coeff": 1.0}, {"exponents": [0, 0, 2], "coeff": 0.1}]}
//! ```
//!
//! A function is either a bare monomial list or `{"dimension": d, "terms": [...]}`.
//! Polynomials are restricted to the unit sphere, so `x² + y² + z²` and `1`
//! describe the same function in d = 3.

use serde::{Deserialize, Serialize};

use crate::body::StarBody;
use crate::error::{QuermassError, Result};
use crate::poly::{Monomial, SmoothSphereFunction};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum BodySpec {
    Ball {
        dimension: usize,
        #[serde(default = "unit")]
        radius: f64,
    },
    Ellipsoid {
        semiaxes: Vec<f64>,
        #[serde(default)]
        dimension: Option<usize>,
    },
    ShiftedBall {
        center: Vec<f64>,
        #[serde(default = "unit")]
        radius: f64,
        #[serde(default)]
        dimension: Option<usize>,
    },
    Perturbed {
        dimension: usize,
        epsilon: Vec<Monomial>,
        lambda: f64,
    },
    Polynomial {
        dimension: usize,
        rho: Vec<Monomial>,
    },
}

fn unit() -> f64 {
    1.0
}

fn check_declared(declared: Option<usize>, actual: usize) -> Result<()> {
    match declared {
        Some(d) if d != actual => Err(QuermassError::Input(format!(
            "declared dimension {d} does not match the {actual} coordinates given"
        ))),
        _ => Ok(()),
    }
}

impl BodySpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| QuermassError::Input(format!("body spec: {e}")))
    }

    pub fn dimension(&self) -> usize {
        match self {
            BodySpec::Ball { dimension, .. }
            | BodySpec::Perturbed { dimension, .. }
            | BodySpec::Polynomial { dimension, .. } => *dimension,
            BodySpec::Ellipsoid { semiaxes, .. } => semiaxes.len(),
            BodySpec::ShiftedBall { center, .. } => center.len(),
        }
    }

    /// Builds and validates the body.
    pub fn to_body(&self) -> Result<StarBody> {
        match self {
            BodySpec::Ball { dimension, radius } => StarBody::ball(*dimension, *radius),
            BodySpec::Ellipsoid { semiaxes, dimension } => {
                check_declared(*dimension, semiaxes.len())?;
                StarBody::ellipsoid(semiaxes)
            }
            BodySpec::ShiftedBall { center, radius, dimension } => {
                check_declared(*dimension, center.len())?;
                StarBody::shifted_ball(center, *radius)
            }
            BodySpec::Perturbed { dimension, epsilon, lambda } => {
                let eps = SmoothSphereFunction::new(*dimension, epsilon)?;
                StarBody::perturbed_unit_ball(&eps, *lambda)
            }
            BodySpec::Polynomial { dimension, rho } => {
                StarBody::from_polynomial(SmoothSphereFunction::new(*dimension, rho)?)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FunctionSpec {
    Full {
        #[serde(default)]
        dimension: Option<usize>,
        terms: Vec<Monomial>,
    },
    Terms(Vec<Monomial>),
}

impl FunctionSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| QuermassError::Input(format!("function spec: {e}")))
    }

    /// Builds the function; `fallback_dim` is used when neither the description nor
    /// its terms determine the dimension.
    pub fn to_function(&self, fallback_dim: Option<usize>) -> Result<SmoothSphereFunction> {
        let (declared, terms) = match self {
            FunctionSpec::Full { dimension, terms } => (*dimension, terms),
            FunctionSpec::Terms(terms) => (None, terms),
        };
        let inferred = terms.first().map(|m| m.exponents.len());
        let dim = declared
            .or(inferred)
            .or(fallback_dim)
            .ok_or_else(|| QuermassError::Input("function spec does not determine a dimension".into()))?;
        if let (Some(f), Some(d)) = (fallback_dim, Some(dim)) {
            if f != d {
                return Err(QuermassError::Input(format!("function has dimension {d}, expected {f}")));
            }
        }
        SmoothSphereFunction::new(dim, terms)
    }
}
