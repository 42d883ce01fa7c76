//! Checks against values computed here by independent means: adaptive
//! arc-length integration, polar-coordinate curvature formulas, finite
//! differences along latitude circles, and closed forms for balls.

use std::f64::consts::PI;

use quermass_core::body::latitude_derivative;
use quermass_core::linearization::{equator_integral, predicted_surface_derivative};
use quermass_core::quermass::{curvature_quermass, quermass_all, section_volume, surface_area};
use quermass_core::remark::{chart_derivatives, remark2d_coefficients};
use quermass_core::section::{section_normal, section_principal_curvatures, section_radial};
use quermass_core::sphere::{equator_frame, polar_to_direction, quasi_uniform_directions, sphere_measure};
use quermass_core::steiner::steiner_quermass_oracle;
use quermass_core::sweep::{central_derivative, offset_profile};
use quermass_core::{Direction, Monomial, Section, SmoothSphereFunction, StarBody, Vector};

fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
        let m = 0.5 * (a + b);
        let fm = f(m);
        (m, fm, (b - a) / 6.0 * (fa + 4.0 * fm + fb))
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        whole: f64,
        m: f64,
        fm: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let (lm, flm, left) = simpson(f, a, fa, m, fm);
        let (rm, frm, right) = simpson(f, m, fm, b, fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        recurse(f, a, fa, m, fm, left, lm, flm, tol / 2.0, depth - 1)
            + recurse(f, m, fm, b, fb, right, rm, frm, tol / 2.0, depth - 1)
    }
    let (fa, fb) = (f(a), f(b));
    let (m, fm, whole) = simpson(f, a, fa, b, fb);
    recurse(f, a, fa, b, fb, whole, m, fm, tol, 40)
}

fn ellipse_perimeter(a: f64, b: f64) -> f64 {
    adaptive_simpson(&|t: f64| (a * a * t.sin().powi(2) + b * b * t.cos().powi(2)).sqrt(), 0.0, 2.0 * PI, 1e-12)
}

fn dir(v: &[f64]) -> Direction {
    Direction::normalize(Vector::from_slice(v).unwrap()).unwrap()
}

fn perturbed_body() -> StarBody {
    let eps = SmoothSphereFunction::new(
        3,
        &[
            Monomial { exponents: vec![1, 0, 1], coeff: 0.3 },
            Monomial { exponents: vec![0, 2, 0], coeff: -0.2 },
            Monomial { exponents: vec![0, 0, 3], coeff: 0.1 },
        ],
    )
    .unwrap();
    StarBody::perturbed_unit_ball(&eps, 0.1).unwrap()
}

#[test]
fn ellipse_perimeter_matches_arc_length() {
    let oracle = ellipse_perimeter(2.0, 1.0);
    assert!((oracle - 9.68845).abs() < 1e-5);
    let body = StarBody::ellipsoid(&[2.0, 1.0, 1.0]).unwrap();
    let s = Section::new(&body, &Direction::axis(3, 2), 0.0).unwrap();
    let area = surface_area(&s).unwrap().value;
    assert!((area - oracle).abs() < 1e-7, "{area} vs {oracle}");
    assert!((section_volume(&s).unwrap().value - 2.0 * PI).abs() < 1e-10);
}

#[test]
fn ellipse_vertex_curvatures() {
    let body = StarBody::ellipsoid(&[2.0, 1.0, 1.0]).unwrap();
    let s = Section::new(&body, &Direction::axis(3, 2), 0.0).unwrap();
    // a/b² at the end of the major axis, b/a² at the end of the minor axis
    let major = section_principal_curvatures(&s, &Direction::axis(3, 0)).unwrap();
    let minor = section_principal_curvatures(&s, &Direction::axis(3, 1)).unwrap();
    assert!((major[0] - 2.0).abs() < 1e-5, "{major:?}");
    assert!((minor[0] - 0.25).abs() < 1e-5, "{minor:?}");
}

#[test]
fn planar_curvature_formula() {
    let body = perturbed_body();
    let pole = dir(&[0.1, -0.2, 0.9]);
    let s = Section::new(&body, &pole, 0.15).unwrap();
    let frame = equator_frame(&pole);
    let r = |theta: f64| {
        let eta = Direction::normalize(*frame.basis[0] * theta.cos() + *frame.basis[1] * theta.sin()).unwrap();
        section_radial(&s, &eta).unwrap()
    };
    let h = 2e-3;
    for k in 0..12 {
        let th = 2.0 * PI * k as f64 / 12.0 + 0.1;
        let (m2, m1, z, p1, p2) = (r(th - 2.0 * h), r(th - h), r(th), r(th + h), r(th + 2.0 * h));
        let d1 = (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h);
        let d2 = (-m2 + 16.0 * m1 - 30.0 * z + 16.0 * p1 - p2) / (12.0 * h * h);
        let oracle = (z * z + 2.0 * d1 * d1 - z * d2) / (z * z + d1 * d1).powf(1.5);
        let eta = Direction::normalize(*frame.basis[0] * th.cos() + *frame.basis[1] * th.sin()).unwrap();
        let kappa = section_principal_curvatures(&s, &eta).unwrap()[0];
        assert!((kappa - oracle).abs() < 1e-5, "theta {th}: {kappa} vs {oracle}");
    }
}

#[test]
fn normals_are_orthogonal_to_boundary_tangents() {
    let body = StarBody::ellipsoid(&[1.0, 0.9, 0.8, 0.7]).unwrap();
    let pole = dir(&[0.3, 0.1, -0.5, 0.8]);
    let s = Section::new(&body, &pole, -0.2).unwrap();
    let rule = s.quadrature().unwrap();
    let h = 1e-5;
    for eta in rule.nodes.iter().step_by(37) {
        let n = section_normal(&s, eta).unwrap();
        assert!(n.dot(&pole).abs() < 1e-12);
        assert!(n.dot(eta) > 0.0);
        let chart = s.chart(eta);
        for j in 0..chart.dim() {
            let mut y = vec![0.0; chart.dim()];
            y[j] = h;
            let fwd = s.boundary_point(&chart.exp(&y)).unwrap();
            y[j] = -h;
            let back = s.boundary_point(&chart.exp(&y)).unwrap();
            let tangent = (fwd - back) * (1.0 / (2.0 * h));
            assert!(tangent.dot(&n).abs() < 1e-6);
        }
    }
}

#[test]
fn perturbed_normals_deviate_to_second_order() {
    let e = SmoothSphereFunction::linear(&Vector::from_slice(&[0.0, 0.6, 0.8]).unwrap());
    let pole = Direction::axis(3, 2);
    let eta = dir(&[0.6, 0.8, 0.0]);
    let defect = |lambda: f64| {
        let b = StarBody::perturbed_unit_ball(&e, lambda).unwrap();
        let s = Section::new(&b, &pole, 0.0).unwrap();
        1.0 - section_normal(&s, &eta).unwrap().dot(&eta)
    };
    let (big, small) = (defect(1e-2), defect(1e-3));
    assert!(big > 0.0 && big < 1e-3);
    let ratio = big / small;
    assert!((50.0..200.0).contains(&ratio), "ratio {ratio}");
}

#[test]
fn latitude_derivative_matches_finite_differences() {
    let f = SmoothSphereFunction::new(
        4,
        &[
            Monomial { exponents: vec![3, 0, 1, 0], coeff: 0.7 },
            Monomial { exponents: vec![0, 1, 1, 1], coeff: -1.1 },
            Monomial { exponents: vec![0, 0, 0, 2], coeff: 0.4 },
        ],
    )
    .unwrap();
    let pole = dir(&[0.2, 0.4, -0.1, 0.9]);
    let frame = equator_frame(&pole);
    let h = 1e-4;
    for k in 0..10 {
        let local: Vec<f64> = (0..3).map(|i| ((k * 7 + i * 3) as f64).sin()).collect();
        let eta = Direction::normalize(frame.embed(&local)).unwrap();
        let fp = f.evaluate(&polar_to_direction(&pole, &eta, h).unwrap());
        let fm = f.evaluate(&polar_to_direction(&pole, &eta, -h).unwrap());
        let fd = (fp - fm) / (2.0 * h);
        assert!((latitude_derivative(&f, &pole, &eta).unwrap() - fd).abs() < 1e-7);
    }
}

#[test]
fn equator_integral_of_a_linear_function() {
    for d in 3..=5 {
        let mut e = vec![0.0; d];
        e[0] = 0.6;
        e[d - 1] = 0.8;
        let f = SmoothSphereFunction::linear(&Vector::from_slice(&e).unwrap());
        for pole in quasi_uniform_directions(d, 6, 3).unwrap() {
            let expected = sphere_measure(d - 2) * pole.dot(&Vector::from_slice(&e).unwrap());
            assert!((equator_integral(&f, &pole).unwrap() - expected).abs() < 1e-10, "d={d}");
        }
    }
    let f4 = SmoothSphereFunction::linear(&Vector::basis(4, 3));
    assert!((predicted_surface_derivative(&f4, &Direction::axis(4, 3), 16).unwrap() - 8.0 * PI).abs() < 1e-10);
}

#[test]
fn ball_profiles_follow_closed_forms() {
    for d in [3usize, 4] {
        let ball = StarBody::unit_ball(d).unwrap();
        let pole = quasi_uniform_directions(d, 2, 5).unwrap()[1];
        let kappa = quermass_core::sphere::ball_volume(d - 1);
        for l in 0..d {
            let p = offset_profile(&ball, &pole, l, 11).unwrap();
            for (t, w) in p.t_values.iter().zip(&p.w_values) {
                let expected = (1.0 - t * t).powf((d - 1 - l) as f64 / 2.0) * kappa;
                assert!((w - expected).abs() < 1e-6, "d={d} l={l} t={t}: {w} vs {expected}");
            }
            for pair in p.w_values.windows(2).skip(p.w_values.len() / 2) {
                if l < d - 1 {
                    assert!(pair[1] < pair[0]);
                }
            }
        }
    }
}

#[test]
fn top_order_is_constant() {
    let bodies = [perturbed_body(), StarBody::ellipsoid(&[1.0, 0.7, 0.6]).unwrap()];
    for b in &bodies {
        for t in [-0.3, 0.0, 0.4] {
            let s = Section::new(b, &dir(&[0.3, 0.3, 0.9]), t).unwrap();
            assert!((curvature_quermass(&s, 2).unwrap().value - PI).abs() < 1e-4);
        }
    }
}

#[test]
fn steiner_oracle_reference_values() {
    let ellipse = StarBody::ellipsoid(&[2.0, 1.0, 1.0]).unwrap();
    let s = Section::new(&ellipse, &Direction::axis(3, 2), 0.0).unwrap();
    let w1 = steiner_quermass_oracle(&s, 1).unwrap().value;
    assert!((w1 - ellipse_perimeter(2.0, 1.0) / 2.0).abs() < 1e-2);

    let ball = StarBody::unit_ball(4).unwrap();
    let s = Section::new(&ball, &Direction::axis(4, 3), 0.0).unwrap();
    for l in 0..4 {
        let w = steiner_quermass_oracle(&s, l).unwrap().value;
        assert!((w - 4.0 * PI / 3.0).abs() < 5e-3, "l={l}: {w}");
    }
}

#[test]
fn steiner_agrees_with_curvature_integrals() {
    let b = perturbed_body();
    let s = Section::new(&b, &dir(&[0.2, 0.5, 0.8]), 0.1).unwrap();
    let curv = quermass_all(&s).unwrap();
    for w in curv {
        let oracle = steiner_quermass_oracle(&s, w.l).unwrap().value;
        assert!((w.value - oracle).abs() <= 1e-2 * (1.0 + w.value.abs()));
    }
}

#[test]
fn central_derivative_is_fourth_order() {
    // sections of this shifted ball by ξ⊥ + tξ are discs of radius sqrt(1 − (t − c)²)
    let c = 0.1;
    let b = StarBody::shifted_ball(&[0.0, 0.0, c], 1.0).unwrap();
    let pole = Direction::axis(3, 2);
    let exact = PI * c / (1.0 - c * c).sqrt();
    let e1 = (central_derivative(&b, &pole, 1, 0.2).unwrap() - exact).abs();
    let e2 = (central_derivative(&b, &pole, 1, 0.1).unwrap() - exact).abs();
    let ratio = e1 / e2;
    assert!((10.0..24.0).contains(&ratio), "error ratio {ratio} ({e1:e}, {e2:e})");
}

#[test]
fn remark_coefficients_where_the_longitude_slope_vanishes() {
    // ρ⁰ = 1 + 0.2 y z has ∂ρ⁰/∂θ = 0 at η = e1 on the equator of e3, where
    // D vanishes but C reduces to ρ⁰_θψ / ρ⁰².
    let rho0 = SmoothSphereFunction::new(
        3,
        &[Monomial { exponents: vec![0, 0, 0], coeff: 1.0 }, Monomial { exponents: vec![0, 1, 1], coeff: 0.2 }],
    )
    .unwrap();
    let pole = Direction::axis(3, 2);
    let frame = equator_frame(&pole);
    let eta = Direction::axis(3, 0);
    let theta = eta.dot(&frame.basis[1]).atan2(eta.dot(&frame.basis[0]));
    let j = chart_derivatives(&rho0, &frame, theta);
    assert!(j.theta.abs() < 1e-15 && j.theta_psi.abs() > 0.1);
    let k = remark2d_coefficients(&rho0, &pole, &eta).unwrap();
    assert!(k.d.abs() < 1e-15);
    assert!((k.c - j.theta_psi / (j.value * j.value)).abs() < 1e-14);
    assert!((k.b - 1.0 / j.value).abs() < 1e-15);
}
