//! The planar perimeter condition for bodies in R³ and its linearization.
//!
//! Fix a pole ξ and parametrize its equator by `η(θ) = cos θ u₁ + sin θ u₂`
//! (the equator frame), so that `ω(θ, ψ) = cos ψ η(θ) + sin ψ ξ`. Subscripts
//! θ, ψ below are partial derivatives at ψ = 0. For a radial function ρ the
//! condition that the perimeter of the recentred section has zero
//! t-derivative at t = 0 reads
//!
//! ```text
//! ∫ F(ρ) dθ = 0,    F(ρ) = (ρ² + ρ_θ²)^{−1/2} (ρ_ψ + ρ_θ ρ_θψ / ρ).
//! ```
//!
//! Writing `ρ = ρ⁰ + ε`, the part of `F` linear in ε is
//! `A ε + B ε_ψ + C ε_θ + D ε_θψ`, and integrating by parts in θ gives the
//! operator `∫ (A − C_θ) ε + (B − D_θ) ε_ψ dθ`.
//!
//! All derivatives of polynomial radial functions are exact: they come from
//! truncated Taylor arithmetic along the (θ, ψ) chart, and the θ-derivatives
//! of `C` and `D` from dual numbers.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{QuermassError, Result};
use crate::jet::{Dual, Jet2};
use crate::poly::SmoothSphereFunction;
use crate::sphere::{equator_frame, Direction, EquatorFrame};

/// Partial derivatives of a sphere function at `(θ, ψ = 0)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ChartDerivatives {
    pub value: f64,
    pub theta: f64,
    pub psi: f64,
    pub theta_psi: f64,
    pub theta_theta: f64,
    pub theta_theta_psi: f64,
}

impl std::ops::Add for ChartDerivatives {
    type Output = ChartDerivatives;

    fn add(self, o: ChartDerivatives) -> ChartDerivatives {
        ChartDerivatives {
            value: self.value + o.value,
            theta: self.theta + o.theta,
            psi: self.psi + o.psi,
            theta_psi: self.theta_psi + o.theta_psi,
            theta_theta: self.theta_theta + o.theta_theta,
            theta_theta_psi: self.theta_theta_psi + o.theta_theta_psi,
        }
    }
}

/// The four coefficient functions at one point of the equator.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Remark2DCoefficients {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

/// Values of the condition integral split by degree in ε.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RawCondition {
    /// `∫ F(ρ⁰ + ε)`.
    pub full: f64,
    /// `∫ F(ρ⁰)`; zero whenever ρ⁰ is even.
    pub degree0: f64,
    /// `∫ A ε + B ε_ψ + C ε_θ + D ε_θψ`.
    pub degree1: f64,
}

impl RawCondition {
    /// The integral truncated after the terms linear in ε.
    pub fn truncated(&self) -> f64 {
        self.degree0 + self.degree1
    }
}

fn check_inputs(f: &SmoothSphereFunction, pole: &Direction) -> Result<()> {
    if pole.dim() != 3 || f.dim() != 3 {
        return Err(QuermassError::Input("the planar perimeter condition is defined for d = 3 only".into()));
    }
    Ok(())
}

/// Angle θ of `eta` in the equator frame of `pole`.
pub fn equator_angle(frame: &EquatorFrame, eta: &Direction) -> f64 {
    eta.dot(&frame.basis[1]).atan2(eta.dot(&frame.basis[0]))
}

/// Exact chart derivatives of `f` at angle `theta` on the equator of `frame.pole`.
pub fn chart_derivatives(f: &SmoothSphereFunction, frame: &EquatorFrame, theta: f64) -> ChartDerivatives {
    let (sa, ca) = Jet2::sin_cos_series(theta);
    let (sb, cb) = Jet2::sin_cos_series(0.0);
    let (sin_t, cos_t) = (Jet2::in_a(sa), Jet2::in_a(ca));
    let (sin_p, cos_p) = (Jet2::in_b(sb), Jet2::in_b(cb));
    use crate::jet::Ring;
    let (u1, u2, xi) = (&frame.basis[0], &frame.basis[1], &frame.pole);
    let coords: Vec<Jet2> = (0..3)
        .map(|i| {
            let eq = cos_t.scale(u1[i]).ring_add(&sin_t.scale(u2[i]));
            cos_p.ring_mul(&eq).ring_add(&sin_p.scale(xi[i]))
        })
        .collect();
    let j = f.evaluate_in(&coords);
    ChartDerivatives {
        value: j.derivative(0, 0),
        theta: j.derivative(1, 0),
        psi: j.derivative(0, 1),
        theta_psi: j.derivative(1, 1),
        theta_theta: j.derivative(2, 0),
        theta_theta_psi: j.derivative(2, 1),
    }
}

fn coefficient_expressions(r: Dual, rt: Dual, rp: Dual, rtp: Dual) -> [Dual; 4] {
    let q = r * r + rt * rt;
    let q_half = q.powf(-0.5);
    let q_three_halves = q.powf(-1.5);
    let g = rp + rt * rtp / r;
    let a = -(q_half * rt * rtp / (r * r)) - r * q_three_halves * g;
    let b = q_half;
    let c = q_half * rtp / r - rt * q_three_halves * g;
    let d = q_half * rt / r;
    [a, b, c, d]
}

/// Coefficients and their θ-derivatives `(A, B, C, D), (C_θ, D_θ)`.
fn coefficients_with_slopes(rho: &ChartDerivatives) -> Result<(Remark2DCoefficients, f64, f64)> {
    if !(rho.value > 0.0) {
        return Err(QuermassError::InvalidBody(format!("rho0 = {} is not positive", rho.value)));
    }
    let [a, b, c, d] = coefficient_expressions(
        Dual::new(rho.value, rho.theta),
        Dual::new(rho.theta, rho.theta_theta),
        Dual::new(rho.psi, rho.theta_psi),
        Dual::new(rho.theta_psi, rho.theta_theta_psi),
    );
    Ok((Remark2DCoefficients { a: a.v, b: b.v, c: c.v, d: d.v }, c.d, d.d))
}

/// `A, B, C, D` at the equator point `eta` of `pole`.
pub fn remark2d_coefficients(
    rho0: &SmoothSphereFunction,
    pole: &Direction,
    eta: &Direction,
) -> Result<Remark2DCoefficients> {
    check_inputs(rho0, pole)?;
    crate::sphere::check_orthogonal(pole, eta)?;
    let frame = equator_frame(pole);
    let theta = equator_angle(&frame, eta);
    Ok(coefficients_with_slopes(&chart_derivatives(rho0, &frame, theta))?.0)
}

fn integrand(rho: &ChartDerivatives) -> f64 {
    let q = rho.value * rho.value + rho.theta * rho.theta;
    (rho.psi + rho.theta * rho.theta_psi / rho.value) / q.sqrt()
}

fn check_order(order: usize) -> Result<()> {
    if order < 3 {
        return Err(QuermassError::Input(format!("quadrature order {order} < 3")));
    }
    Ok(())
}

/// Uniform θ nodes; the trapezoidal rule is spectrally accurate for the
/// periodic integrands here.
fn thetas(order: usize) -> impl Iterator<Item = f64> {
    (0..order).map(move |k| 2.0 * PI * k as f64 / order as f64)
}

/// The condition integral for `ρ = ρ⁰ + ε`, with its degree-0 and degree-1 parts.
pub fn remark2d_raw_condition(
    rho0: &SmoothSphereFunction,
    epsilon: &SmoothSphereFunction,
    pole: &Direction,
    order: usize,
) -> Result<RawCondition> {
    check_inputs(rho0, pole)?;
    check_inputs(epsilon, pole)?;
    check_order(order)?;
    let frame = equator_frame(pole);
    let w = 2.0 * PI / order as f64;
    let mut out = RawCondition { full: 0.0, degree0: 0.0, degree1: 0.0 };
    for theta in thetas(order) {
        let r0 = chart_derivatives(rho0, &frame, theta);
        let e = chart_derivatives(epsilon, &frame, theta);
        let rho = r0 + e;
        if !(rho.value > 0.0) {
            return Err(QuermassError::InvalidBody(format!("rho0 + epsilon = {} is not positive", rho.value)));
        }
        let (k, _, _) = coefficients_with_slopes(&r0)?;
        out.full += w * integrand(&rho);
        out.degree0 += w * integrand(&r0);
        out.degree1 += w * (k.a * e.value + k.b * e.psi + k.c * e.theta + k.d * e.theta_psi);
    }
    Ok(out)
}

/// `∫ (A − C_θ) ε + (B − D_θ) ε_ψ dθ`.
pub fn remark2d_operator(
    rho0: &SmoothSphereFunction,
    epsilon: &SmoothSphereFunction,
    pole: &Direction,
    order: usize,
) -> Result<f64> {
    check_inputs(rho0, pole)?;
    check_inputs(epsilon, pole)?;
    check_order(order)?;
    let frame = equator_frame(pole);
    let w = 2.0 * PI / order as f64;
    let mut total = 0.0;
    for theta in thetas(order) {
        let r0 = chart_derivatives(rho0, &frame, theta);
        let e = chart_derivatives(epsilon, &frame, theta);
        let (k, c_theta, d_theta) = coefficients_with_slopes(&r0)?;
        total += w * ((k.a - c_theta) * e.value + (k.b - d_theta) * e.psi);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vector::Vector;

    fn e3() -> Direction {
        Direction::axis(3, 2)
    }

    #[test]
    fn constant_bodies() {
        let eta = Direction::axis(3, 0);
        let one = SmoothSphereFunction::constant(3, 1.0);
        let k = remark2d_coefficients(&one, &e3(), &eta).unwrap();
        assert_eq!((k.a, k.b, k.c, k.d), (0.0, 1.0, 0.0, 0.0));
        let two = SmoothSphereFunction::constant(3, 2.0);
        let k = remark2d_coefficients(&two, &e3(), &eta).unwrap();
        assert_eq!((k.a, k.b, k.c, k.d), (0.0, 0.5, 0.0, 0.0));
    }

    #[test]
    fn chart_derivatives_of_a_monomial() {
        // f = x y on the equator of e3: f(θ, ψ) = cos²ψ cos θ sin θ
        let f = SmoothSphereFunction::monomial(&[1, 1, 0], 1.0).unwrap();
        let frame = equator_frame(&e3());
        let th = 0.7;
        let j = chart_derivatives(&f, &frame, th);
        let sign = frame.basis[0][0] * frame.basis[1][1] - frame.basis[0][1] * frame.basis[1][0];
        assert!((j.value - sign * 0.5 * (2.0 * th).sin()).abs() < 1e-14);
        assert!((j.theta - sign * (2.0 * th).cos()).abs() < 1e-14);
        assert!((j.theta_theta + sign * 2.0 * (2.0 * th).sin()).abs() < 1e-13);
        assert!(j.psi.abs() < 1e-15 && j.theta_psi.abs() < 1e-15);
    }

    #[test]
    fn linear_perturbation_of_the_ball() {
        let one = SmoothSphereFunction::constant(3, 1.0);
        let lambda = 1e-3;
        let eps = SmoothSphereFunction::linear(&Vector::from_slice(&[0.0, 0.0, lambda]).unwrap());
        let raw = remark2d_raw_condition(&one, &eps, &e3(), 64).unwrap();
        assert!((raw.full - 2.0 * PI * lambda).abs() < 1e-5 * lambda);
        assert!((raw.degree1 - 2.0 * PI * lambda).abs() < 1e-15);
        let op = remark2d_operator(&one, &eps, &e3(), 64).unwrap();
        assert!((op - 2.0 * PI * lambda).abs() < 1e-15);
    }

    #[test]
    fn integration_by_parts() {
        let z2 = SmoothSphereFunction::monomial(&[0, 0, 2], 0.1).unwrap();
        let rho0 = SmoothSphereFunction::constant(3, 1.0).add(&z2).unwrap();
        let eps = SmoothSphereFunction::new(
            3,
            &[
                crate::poly::Monomial { exponents: vec![1, 2, 0], coeff: 0.05 },
                crate::poly::Monomial { exponents: vec![0, 1, 1], coeff: -0.02 },
                crate::poly::Monomial { exponents: vec![1, 0, 0], coeff: 0.01 },
            ],
        )
        .unwrap();
        let pole = Direction::from_slice(&[0.6, 0.0, 0.8]).unwrap();
        let raw = remark2d_raw_condition(&rho0, &eps, &pole, 64).unwrap();
        let op = remark2d_operator(&rho0, &eps, &pole, 64).unwrap();
        assert!(raw.degree0.abs() < 1e-14);
        assert!((op - raw.truncated()).abs() < 1e-12);
    }

    #[test]
    fn rejects_other_dimensions() {
        let one = SmoothSphereFunction::constant(4, 1.0);
        assert!(remark2d_operator(&one, &one, &Direction::axis(4, 3), 16).is_err());
    }
}
