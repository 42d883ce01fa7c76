//! Hyperplane sections `K ∩ (ξ⊥ + tξ)` as (d−1)-dimensional bodies.
//!
//! A section is described by its radial function `r(η)` about the point `tξ`,
//! for `η` on the equator sphere of `ξ`. The boundary point `x = r η + t ξ`
//! satisfies `|x| = ρ(x / |x|)`, which is solved per direction by a
//! bracketed bisection/Newton root finder.

use serde::Serialize;

use crate::body::{offset_bound, StarBody};
use crate::chart::{graph_curvatures, graph_point, ChartFrame, FiniteDifferenceSteps, GraphPoint};
use crate::error::{QuermassError, Result};
use crate::roots::{bracketed_newton, RootOptions};
use crate::sphere::{check_orthogonal, default_order, equator_frame, equator_quadrature, Direction, EquatorFrame, QuadratureRule};
use crate::vector::Vector;

/// Numerical settings shared by all section computations.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, serde::Deserialize)]
pub struct SectionOptions {
    /// Order of the equator quadrature rule.
    pub order: usize,
    pub steps: FiniteDifferenceSteps,
}

impl SectionOptions {
    pub fn for_dim(d: usize) -> Self {
        SectionOptions { order: default_order(d), steps: FiniteDifferenceSteps::default() }
    }
}

/// The section of `body` by the hyperplane `ξ⊥ + tξ`, `|t| < t0`.
#[derive(Clone, Debug)]
pub struct Section<'a> {
    body: &'a StarBody,
    pole: Direction,
    offset: f64,
    frame: EquatorFrame,
    options: SectionOptions,
}

impl<'a> Section<'a> {
    pub fn new(body: &'a StarBody, pole: &Direction, offset: f64) -> Result<Self> {
        Section::with_options(body, pole, offset, SectionOptions::for_dim(body.dim()))
    }

    pub fn with_options(body: &'a StarBody, pole: &Direction, offset: f64, options: SectionOptions) -> Result<Self> {
        if body.dim() < 3 {
            return Err(QuermassError::Input("sections need d >= 3".into()));
        }
        if pole.dim() != body.dim() {
            return Err(QuermassError::Input(format!(
                "pole has dimension {}, body has {}",
                pole.dim(),
                body.dim()
            )));
        }
        let t0 = offset_bound(body).t0;
        if !(offset.abs() < t0) {
            return Err(QuermassError::OffsetOutOfRange { t: offset, t0 });
        }
        Ok(Section { body, pole: *pole, offset, frame: equator_frame(pole), options })
    }

    pub fn body(&self) -> &StarBody {
        self.body
    }

    pub fn pole(&self) -> &Direction {
        &self.pole
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn frame(&self) -> &EquatorFrame {
        &self.frame
    }

    pub fn options(&self) -> &SectionOptions {
        &self.options
    }

    /// Dimension of the section as a body (d − 1).
    pub fn section_dim(&self) -> usize {
        self.body.dim() - 1
    }

    /// The "origin" `tξ` of the section's radial function.
    pub fn center(&self) -> Vector {
        *self.pole * self.offset
    }

    pub fn quadrature(&self) -> Result<QuadratureRule> {
        equator_quadrature(&self.pole, self.options.order)
    }

    /// Chart at `eta` on the equator sphere.
    pub fn chart(&self, eta: &Direction) -> ChartFrame {
        ChartFrame::new(eta, Some(&self.pole))
    }

    /// `r(η)` for `η ⊥ ξ`, without the orthogonality check.
    pub fn radial(&self, eta: &Direction) -> Result<f64> {
        let t = self.offset;
        let body = self.body;
        let g = |r: f64| {
            let x = **eta * r + *self.pole * t;
            let n = x.norm();
            let u = x * (1.0 / n);
            let value = n - body.radial(&u);
            // du/dr = (η − u<u,η>)/n
            let du = eta.axpy(-u.dot(eta), &u) * (1.0 / n);
            (value, r / n - body.radial_gradient(&u).dot(&du))
        };
        let hi = 1.01 * body.max_radius() + t.abs();
        let r = bracketed_newton(g, 1e-9, hi, &RootOptions::default())
            .map_err(|e| QuermassError::Geometry(format!("section radial at {eta:?}: {e}")))?;
        Ok(r)
    }

    /// Boundary point `r(η) η + t ξ`.
    pub fn boundary_point(&self, eta: &Direction) -> Result<Vector> {
        Ok(**eta * self.radial(eta)? + self.center())
    }

    /// Radius, normal and area density at `eta`.
    pub fn graph_point(&self, eta: &Direction) -> Result<GraphPoint> {
        let radial = |w: &Direction| self.radial(w);
        graph_point(&radial, &self.chart(eta), &self.options.steps)
    }

    /// As [`graph_point`](Self::graph_point), plus the d − 2 principal curvatures.
    pub fn graph_curvatures(&self, eta: &Direction) -> Result<(GraphPoint, Vec<f64>)> {
        let radial = |w: &Direction| self.radial(w);
        graph_curvatures(&radial, &self.chart(eta), &self.options.steps)
    }
}

/// Radial function of the section about `tξ`.
pub fn section_radial(section: &Section<'_>, eta: &Direction) -> Result<f64> {
    check_orthogonal(section.pole(), eta)?;
    section.radial(eta)
}

/// Outer unit normal of the section boundary at `η`, lying in ξ⊥.
pub fn section_normal(section: &Section<'_>, eta: &Direction) -> Result<Direction> {
    check_orthogonal(section.pole(), eta)?;
    Ok(section.graph_point(eta)?.normal)
}

/// Principal curvatures (ascending) of the section boundary at `η`, as a
/// hypersurface of the (d−1)-plane.
pub fn section_principal_curvatures(section: &Section<'_>, eta: &Direction) -> Result<Vec<f64>> {
    check_orthogonal(section.pole(), eta)?;
    Ok(section.graph_curvatures(eta)?.1)
}
