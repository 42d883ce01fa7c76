//! Exponential-map charts on a sphere and the local geometry of radial graphs.
//!
//! A hypersurface `{ R(η) η : η ∈ S }` over a unit sphere `S` is described in
//! the normal coordinates `y ↦ cos|y| η₀ + sin|y| (Σ y_j u_j)/|y|` around a
//! base point `η₀`. In these coordinates, with `R_j`, `R_jk` the first and
//! second partials at `y = 0` and `W = sqrt(R² + |∇R|²)`:
//!
//! - outer normal `n = (R η₀ − Σ R_j u_j) / W`,
//! - first fundamental form `g_jk = R² δ_jk + R_j R_k`,
//! - second fundamental form `h_jk = (R² δ_jk + 2 R_j R_k − R R_jk) / W`,
//!
//! and the principal curvatures are the eigenvalues of `g⁻¹ h`. For a curve
//! this is the familiar `(R² + 2R'² − R R'') / (R² + R'²)^{3/2}`.

use nalgebra::DMatrix;

use crate::error::{QuermassError, Result};
use crate::sphere::Direction;
use crate::vector::Vector;

/// Base point on a sphere together with an orthonormal basis of its tangent space.
#[derive(Clone, Debug, PartialEq)]
pub struct ChartFrame {
    pub base_point: Direction,
    pub tangent_basis: Vec<Vector>,
}

impl ChartFrame {
    /// Chart at `base` on the unit sphere of the subspace orthogonal to
    /// `excluded` (pass `None` for the full sphere S^{d-1}).
    ///
    /// The tangent basis is built greedily from the standard basis, always taking
    /// the candidate with the largest residual after projection (lowest index
    /// on ties), so the result is deterministic.
    pub fn new(base: &Direction, excluded: Option<&Direction>) -> Self {
        let d = base.dim();
        let mut accepted: Vec<Vector> = Vec::with_capacity(d);
        if let Some(e) = excluded {
            accepted.push(**e);
        }
        accepted.push(**base);
        let k = d - accepted.len();
        let mut tangent_basis = Vec::with_capacity(k);
        let project = |v: Vector, acc: &[Vector]| {
            let mut v = v;
            for _ in 0..2 {
                for a in acc {
                    v = v.axpy(-v.dot(a), a);
                }
            }
            v
        };
        for _ in 0..k {
            let mut best: Option<Vector> = None;
            for axis in 0..d {
                let r = project(Vector::basis(d, axis), &accepted);
                if best.is_none_or(|b| r.norm() > b.norm() + 1e-12) {
                    best = Some(r);
                }
            }
            let u = best.expect("d >= 1").normalized().expect("nonzero residual");
            accepted.push(u);
            tangent_basis.push(u);
        }
        ChartFrame { base_point: *base, tangent_basis }
    }

    /// Intrinsic dimension of the chart.
    pub fn dim(&self) -> usize {
        self.tangent_basis.len()
    }

    /// Exponential map at the base point, `y` in tangent-basis coordinates.
    pub fn exp(&self, y: &[f64]) -> Direction {
        debug_assert_eq!(y.len(), self.dim());
        let mut v = Vector::zeros(self.base_point.dim());
        for (c, u) in y.iter().zip(&self.tangent_basis) {
            v = v.axpy(*c, u);
        }
        let len = v.norm();
        if len == 0.0 {
            return self.base_point;
        }
        let (s, c) = len.sin_cos();
        Direction::renormalized(*self.base_point * c + v * (s / len))
    }

    /// Tangent vector with the given coordinates.
    pub fn tangent(&self, y: &[f64]) -> Vector {
        let mut v = Vector::zeros(self.base_point.dim());
        for (c, u) in y.iter().zip(&self.tangent_basis) {
            v = v.axpy(*c, u);
        }
        v
    }
}

/// Central-difference step sizes.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct FiniteDifferenceSteps {
    pub first: f64,
    pub second: f64,
}

impl Default for FiniteDifferenceSteps {
    fn default() -> Self {
        FiniteDifferenceSteps { first: 1e-5, second: 1e-4 }
    }
}

/// First-order geometry of a radial graph at the chart's base point.
#[derive(Clone, Debug, PartialEq)]
pub struct GraphPoint {
    pub radius: f64,
    /// Partials of the radial function in chart coordinates.
    pub gradient: Vec<f64>,
    pub normal: Direction,
    /// `<η₀, n>`, equal to `R / W`.
    pub eta_dot_normal: f64,
}

impl GraphPoint {
    /// Density of the hypersurface measure with respect to the sphere measure:
    /// `R^k / <η₀, n>` for a graph over a k-sphere.
    pub fn area_density(&self) -> f64 {
        self.radius.powi(self.gradient.len() as i32) / self.eta_dot_normal
    }
}

fn unit(k: usize, j: usize, h: f64) -> Vec<f64> {
    let mut y = vec![0.0; k];
    y[j] = h;
    y
}

fn check_finite(x: f64, what: &str) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(QuermassError::NumericalDegeneracy(format!("{what} is not finite")))
    }
}

/// Radius, gradient and outer normal of the graph of `radial` at the base point.
pub fn graph_point<F>(radial: &F, chart: &ChartFrame, steps: &FiniteDifferenceSteps) -> Result<GraphPoint>
where
    F: Fn(&Direction) -> Result<f64>,
{
    let r0 = radial(&chart.base_point)?;
    let k = chart.dim();
    let h = steps.first;
    let mut gradient = Vec::with_capacity(k);
    for j in 0..k {
        let rp = radial(&chart.exp(&unit(k, j, h)))?;
        let rm = radial(&chart.exp(&unit(k, j, -h)))?;
        gradient.push(check_finite((rp - rm) / (2.0 * h), "radial gradient")?);
    }
    finish_point(r0, gradient, chart)
}

fn finish_point(r0: f64, gradient: Vec<f64>, chart: &ChartFrame) -> Result<GraphPoint> {
    let w = (r0 * r0 + gradient.iter().map(|g| g * g).sum::<f64>()).sqrt();
    let n = (*chart.base_point * r0 - chart.tangent(&gradient)) * (1.0 / w);
    let normal = Direction::normalize(n).map_err(|_| QuermassError::NumericalDegeneracy("zero normal".into()))?;
    Ok(GraphPoint { radius: r0, gradient, normal, eta_dot_normal: r0 / w })
}

/// First-order geometry plus principal curvatures (ascending) at the base point.
pub fn graph_curvatures<F>(
    radial: &F,
    chart: &ChartFrame,
    steps: &FiniteDifferenceSteps,
) -> Result<(GraphPoint, Vec<f64>)>
where
    F: Fn(&Direction) -> Result<f64>,
{
    let point = graph_point(radial, chart, steps)?;
    let k = chart.dim();
    let h = steps.second;
    let r0 = point.radius;

    let mut hess = DMatrix::<f64>::zeros(k, k);
    for j in 0..k {
        let rp = radial(&chart.exp(&unit(k, j, h)))?;
        let rm = radial(&chart.exp(&unit(k, j, -h)))?;
        hess[(j, j)] = (rp - 2.0 * r0 + rm) / (h * h);
        for i in 0..j {
            let mut y = vec![0.0; k];
            let mut corner = |si: f64, sj: f64| {
                y[i] = si * h;
                y[j] = sj * h;
                radial(&chart.exp(&y))
            };
            let v = (corner(1.0, 1.0)? - corner(1.0, -1.0)? - corner(-1.0, 1.0)? + corner(-1.0, -1.0)?) / (4.0 * h * h);
            hess[(i, j)] = v;
            hess[(j, i)] = v;
        }
    }

    let grad = &point.gradient;
    let w = r0 / point.eta_dot_normal;
    let mut g = DMatrix::<f64>::zeros(k, k);
    let mut second = DMatrix::<f64>::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            let delta = if i == j { 1.0 } else { 0.0 };
            g[(i, j)] = r0 * r0 * delta + grad[i] * grad[j];
            second[(i, j)] = (r0 * r0 * delta + 2.0 * grad[i] * grad[j] - r0 * hess[(i, j)]) / w;
        }
    }
    let curvatures = shape_operator_eigenvalues(g, second)?;
    Ok((point, curvatures))
}

/// Eigenvalues of `g⁻¹ h` for symmetric positive-definite `g`, ascending.
pub(crate) fn shape_operator_eigenvalues(g: DMatrix<f64>, h: DMatrix<f64>) -> Result<Vec<f64>> {
    let k = g.nrows();
    let mut values = if k == 1 {
        vec![h[(0, 0)] / g[(0, 0)]]
    } else {
        let chol = g
            .cholesky()
            .ok_or_else(|| QuermassError::NumericalDegeneracy("metric not positive definite".into()))?;
        let l_inv = chol
            .l()
            .try_inverse()
            .ok_or_else(|| QuermassError::NumericalDegeneracy("singular metric".into()))?;
        let m = &l_inv * h * l_inv.transpose();
        let sym = (&m + m.transpose()) * 0.5;
        sym.symmetric_eigen().eigenvalues.iter().copied().collect()
    };
    for v in &values {
        check_finite(*v, "principal curvature")?;
    }
    values.sort_by(f64::total_cmp);
    Ok(values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chart_basis_is_orthonormal_and_tangent() {
        let base = Direction::from_slice(&[0.6, 0.0, 0.8, 0.0]).unwrap();
        let pole = Direction::axis(4, 1);
        let c = ChartFrame::new(&base, Some(&pole));
        assert_eq!(c.dim(), 2);
        for (i, u) in c.tangent_basis.iter().enumerate() {
            assert!(u.dot(&base).abs() < 1e-15 && u.dot(&pole).abs() < 1e-15);
            for v in &c.tangent_basis[i + 1..] {
                assert!(u.dot(v).abs() < 1e-15);
            }
        }
        let full = ChartFrame::new(&base, None);
        assert_eq!(full.dim(), 3);
    }

    #[test]
    fn exp_is_geodesic() {
        let base = Direction::axis(3, 2);
        let c = ChartFrame::new(&base, None);
        let p = c.exp(&[0.3, 0.4]);
        assert!((p.dot(&base) - 0.5f64.cos()).abs() < 1e-15);
    }

    #[test]
    fn sphere_graph() {
        let radial = |_: &Direction| Ok(2.0);
        let base = Direction::from_slice(&[0.0, 0.6, 0.8]).unwrap();
        let chart = ChartFrame::new(&base, None);
        let (p, k) = graph_curvatures(&radial, &chart, &FiniteDifferenceSteps::default()).unwrap();
        assert_eq!(p.normal, base);
        assert_eq!(p.eta_dot_normal, 1.0);
        for v in k {
            assert!((v - 0.5).abs() < 1e-8);
        }
    }
}
