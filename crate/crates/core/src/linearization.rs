//! First-order perturbation identities and the evenness criterion.
//!
//! Everything here is driven by the equator integral
//!
//! ```text
//! I_ξ(f) = ∫_{ξ⊥ ∩ S^{d−1}} ∂f/∂ψ (η, 0) dη,
//! ```
//!
//! where ψ is the latitude toward the pole ξ. The integrand is antisymmetric
//! under η ↦ −η for even `f`, so `I_ξ` sees only the odd part of `f`; a
//! function whose equator integrals all vanish is even.
//!
//! For the family `ρ = 1 + λε` the t-derivatives at 0 of the section surface
//! area and of `W_l` are, to first order in λ, multiples of `λ I_ξ(ε)`.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::body::latitude_derivative;
use crate::error::{QuermassError, Result};
use crate::poly::SmoothSphereFunction;
use crate::sphere::{default_order, equator_quadrature, Direction};

/// Default tolerance of [`evenness_classify`].
pub const DEFAULT_EVENNESS_TOL: f64 = 1e-7;
/// Default number of poles tested by the evenness classifier.
pub const DEFAULT_POLE_COUNT: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EquatorIntegralResult {
    pub pole: Direction,
    pub value: f64,
}

/// `I_ξ(f)` by equator quadrature of the given order.
pub fn proposition_integral(f: &SmoothSphereFunction, pole: &Direction, order: usize) -> Result<EquatorIntegralResult> {
    if f.dim() != pole.dim() {
        return Err(QuermassError::Input(format!(
            "function has dimension {}, pole has {}",
            f.dim(),
            pole.dim()
        )));
    }
    let rule = equator_quadrature(pole, order)?;
    let value = rule.try_integrate(|eta| latitude_derivative(f, pole, eta))?;
    Ok(EquatorIntegralResult { pole: *pole, value })
}

/// `I_ξ(f)` with the default quadrature order for the dimension.
pub fn equator_integral(f: &SmoothSphereFunction, pole: &Direction) -> Result<f64> {
    Ok(proposition_integral(f, pole, default_order(pole.dim()))?.value)
}

/// Outcome of the finite-grid evenness test.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "verdict")]
pub enum EvennessVerdict {
    /// Every tested equator integral is within tolerance. This is a necessary
    /// condition for evenness only.
    EvenConsistent { max_abs_integral: f64 },
    NotEven { witness: Direction, integral: f64 },
}

impl EvennessVerdict {
    pub fn is_even_consistent(&self) -> bool {
        matches!(self, EvennessVerdict::EvenConsistent { .. })
    }
}

/// Classifies `f` by the largest `|I_ξ(f)|` over `poles`.
///
/// The witness is the first pole (in grid order) attaining the maximum.
pub fn evenness_classify(
    f: &SmoothSphereFunction,
    poles: &[Direction],
    tol: f64,
    order: usize,
) -> Result<EvennessVerdict> {
    if poles.is_empty() {
        return Err(QuermassError::Input("pole grid is empty".into()));
    }
    if !(tol > 0.0) {
        return Err(QuermassError::Input(format!("tolerance {tol} must be positive")));
    }
    let values = poles
        .par_iter()
        .map(|p| proposition_integral(f, p, order).map(|r| r.value))
        .collect::<Result<Vec<f64>>>()?;
    let mut best = 0;
    for (i, v) in values.iter().enumerate() {
        if v.abs() > values[best].abs() {
            best = i;
        }
    }
    let max = values[best];
    Ok(if max.abs() > tol {
        EvennessVerdict::NotEven { witness: poles[best], integral: max }
    } else {
        EvennessVerdict::EvenConsistent { max_abs_integral: max.abs() }
    })
}

/// First-order t-derivative at 0 of the section surface area per unit λ:
/// `(d − 2) I_ξ(ε)`.
pub fn predicted_surface_derivative(epsilon: &SmoothSphereFunction, pole: &Direction, order: usize) -> Result<f64> {
    let d = pole.dim();
    if d < 3 {
        return Err(QuermassError::Input("surface derivative needs d >= 3".into()));
    }
    Ok((d - 2) as f64 * proposition_integral(epsilon, pole, order)?.value)
}

/// Which closed form to use for the `W_l` derivative constant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// `(d − 1 − l)/(d − l)`.
    Paper,
    /// `(d − 1 − l)/(d − 1)`, from recombining the two first-order summands.
    Rederived,
}

impl Variant {
    pub const ALL: [Variant; 2] = [Variant::Paper, Variant::Rederived];
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Paper => "paper",
            Variant::Rederived => "rederived",
        })
    }
}

impl FromStr for Variant {
    type Err = QuermassError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(Variant::Paper),
            "rederived" => Ok(Variant::Rederived),
            other => Err(QuermassError::Input(format!("unknown variant {other:?} (expected paper or rederived)"))),
        }
    }
}

/// Constant `c` in `dW_l/dt|_{t=0} ≈ c · λ I_ξ(ε)`.
pub fn wl_derivative_coefficient(d: usize, l: usize, variant: Variant) -> Result<f64> {
    if d < 3 {
        return Err(QuermassError::Input("W_l derivatives need d >= 3".into()));
    }
    if l == 0 || l > d - 1 {
        return Err(QuermassError::Input(format!("order l = {l} outside 1..={}", d - 1)));
    }
    let num = (d - 1 - l) as f64;
    Ok(match variant {
        Variant::Paper => num / (d - l) as f64,
        Variant::Rederived => num / (d - 1) as f64,
    })
}

/// `c(d, l, variant) · I_ξ(ε)`.
pub fn predicted_wl_derivative(
    epsilon: &SmoothSphereFunction,
    pole: &Direction,
    l: usize,
    variant: Variant,
    order: usize,
) -> Result<f64> {
    let c = wl_derivative_coefficient(pole.dim(), l, variant)?;
    Ok(c * proposition_integral(epsilon, pole, order)?.value)
}
