//! Coordinates, frames and quadrature on the unit sphere S^{d-1} and on the
//! equator subspheres ξ⊥ ∩ S^{d-1}.
//!
//! Latitude is measured from the equator of a chosen pole ξ, so a point of the
//! sphere is `ω = ξ sin ψ + η cos ψ` with `η` on the equator. Points of R^d are
//! written in cylindrical coordinates `x = r η + t ξ`.
//!
//! All quadrature rules are product rules: Gauss–Jacobi in the height
//! coordinate of each nested sphere (plain Gauss–Legendre on S^2) times the
//! uniform trapezoid rule in longitude. A rule of order `M` uses `M` longitude
//! nodes and `M / 2` height nodes per level, and integrates spherical
//! polynomials of degree `< M` exactly.
//!
//! | d | default order | full-sphere nodes | equator nodes |
//! |---|---------------|-------------------|---------------|
//! | 2 | 128           | 128               | 2             |
//! | 3 | 128           | 64 × 128          | 128           |
//! | 4 | 48            | 24 × 24 × 48      | 24 × 48       |
//! | 5 | 24            | 12³ × 24          | 12² × 24      |
//! | 6 | 16            | 8⁴ × 16           | 8³ × 16       |

use std::f64::consts::PI;
use std::num::NonZeroUsize;
use std::ops::Deref;

use gauss_quad::{jacobi::GaussJacobi, FiniteAboveNegOneF64};
use serde::{Deserialize, Serialize};

use crate::error::{QuermassError, Result};
use crate::vector::{Vector, MAX_DIM};

/// Tolerance for the unit-norm and orthogonality invariants.
pub const UNIT_TOL: f64 = 1e-12;

/// Smallest supported ambient dimension.
pub const MIN_DIM: usize = 2;

/// A unit vector of R^d, 2 <= d <= 6.
#[derive(Clone, Copy, PartialEq, Debug, Serialize)]
#[serde(transparent)]
pub struct Direction(Vector);

impl Direction {
    /// Wraps `v`, checking dimension and unit norm (within [`UNIT_TOL`]).
    pub fn new(v: Vector) -> Result<Self> {
        check_dim(v.dim())?;
        let n = v.norm();
        if !v.is_finite() || (n - 1.0).abs() > UNIT_TOL {
            return Err(QuermassError::Input(format!("vector {v:?} is not unit (norm {n})")));
        }
        Ok(Direction(v))
    }

    /// Normalizes a nonzero vector.
    pub fn normalize(v: Vector) -> Result<Self> {
        check_dim(v.dim())?;
        v.normalized()
            .map(Direction)
            .ok_or_else(|| QuermassError::Input(format!("cannot normalize {v:?}")))
    }

    pub fn from_slice(values: &[f64]) -> Result<Self> {
        Direction::new(Vector::from_slice(values)?)
    }

    /// The `axis`-th standard basis vector of R^d.
    pub fn axis(dim: usize, axis: usize) -> Self {
        assert!((MIN_DIM..=MAX_DIM).contains(&dim) && axis < dim);
        Direction(Vector::basis(dim, axis))
    }

    /// Renormalizes without any checks; for values that are unit up to rounding.
    #[inline]
    pub(crate) fn renormalized(v: Vector) -> Self {
        Direction(v * (1.0 / v.norm()))
    }

    #[inline]
    pub fn as_vector(&self) -> &Vector {
        &self.0
    }

    #[inline]
    pub fn into_vector(self) -> Vector {
        self.0
    }
}

impl Deref for Direction {
    type Target = Vector;
    #[inline]
    fn deref(&self) -> &Vector {
        &self.0
    }
}

impl std::ops::Neg for Direction {
    type Output = Direction;
    fn neg(self) -> Direction {
        Direction(-self.0)
    }
}

impl<'de> Deserialize<'de> for Direction {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let v = Vector::deserialize(de)?;
        Direction::normalize(v).map_err(serde::de::Error::custom)
    }
}

pub(crate) fn check_dim(d: usize) -> Result<()> {
    if (MIN_DIM..=MAX_DIM).contains(&d) {
        Ok(())
    } else {
        Err(QuermassError::Input(format!("dimension {d} outside {MIN_DIM}..={MAX_DIM}")))
    }
}

fn check_same_dim(a: &Vector, b: &Vector) -> Result<()> {
    if a.dim() == b.dim() {
        Ok(())
    } else {
        Err(QuermassError::Input(format!("dimension mismatch: {} vs {}", a.dim(), b.dim())))
    }
}

pub(crate) fn check_orthogonal(pole: &Direction, eta: &Direction) -> Result<()> {
    check_same_dim(pole, eta)?;
    let c = pole.dot(eta);
    if c.abs() > UNIT_TOL {
        return Err(QuermassError::Input(format!("eta is not orthogonal to the pole (<eta, pole> = {c:e})")));
    }
    Ok(())
}

/// Equatorial direction and geographic latitude of a point of the sphere.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PolarCoordinates {
    pub eta: Direction,
    pub psi: f64,
}

impl PolarCoordinates {
    /// Polar coordinates of `omega` with respect to `pole`.
    pub fn of(omega: &Direction, pole: &Direction) -> Result<Self> {
        let (eta, r, t) = cylindrical_decompose(omega, pole)?;
        Ok(PolarCoordinates { eta, psi: t.atan2(r) })
    }

    pub fn to_direction(&self, pole: &Direction) -> Result<Direction> {
        polar_to_direction(pole, &self.eta, self.psi)
    }
}

/// `ξ sin ψ + η cos ψ`.
pub fn polar_to_direction(pole: &Direction, eta: &Direction, psi: f64) -> Result<Direction> {
    check_orthogonal(pole, eta)?;
    if !(psi.abs() <= PI / 2.0 + UNIT_TOL) {
        return Err(QuermassError::Input(format!("latitude {psi} outside [-pi/2, pi/2]")));
    }
    let (s, c) = psi.sin_cos();
    Ok(Direction::renormalized(**eta * c + **pole * s))
}

/// Splits `x` into `r η + t ξ` with `t = <x, ξ>` and `r > 0`.
pub fn cylindrical_decompose(x: &Vector, pole: &Direction) -> Result<(Direction, f64, f64)> {
    check_same_dim(x, pole)?;
    let t = x.dot(pole);
    let radial = x.axpy(-t, pole);
    let r = radial.norm();
    if r <= 1e-14 * x.norm().max(1.0) {
        return Err(QuermassError::DegenerateAxis);
    }
    Ok((Direction(radial * (1.0 / r)), r, t))
}

/// An orthonormal basis of the hyperplane orthogonal to `pole`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EquatorFrame {
    pub pole: Direction,
    pub basis: Vec<Direction>,
}

impl EquatorFrame {
    pub fn dim(&self) -> usize {
        self.pole.dim()
    }

    /// Maps frame coordinates (length d-1) into R^d.
    pub fn embed(&self, local: &[f64]) -> Vector {
        debug_assert_eq!(local.len(), self.basis.len());
        let mut v = Vector::zeros(self.dim());
        for (c, b) in local.iter().zip(&self.basis) {
            v = v.axpy(*c, b);
        }
        v
    }

    /// Frame coordinates of a vector (its projection onto the pole's complement).
    pub fn coordinates(&self, v: &Vector) -> Vec<f64> {
        self.basis.iter().map(|b| b.dot(v)).collect()
    }
}

/// Deterministic orthonormal basis of `pole`⊥.
///
/// Gram–Schmidt over the standard basis, with the pole's largest-magnitude axis
/// dropped (lowest index on ties).
pub fn equator_frame(pole: &Direction) -> EquatorFrame {
    let d = pole.dim();
    let dropped = pole.max_abs_axis();
    let mut accepted: Vec<Vector> = vec![**pole];
    let mut basis = Vec::with_capacity(d - 1);
    for axis in (0..d).filter(|&a| a != dropped) {
        let mut v = Vector::basis(d, axis);
        // two passes keep the result orthogonal to 1e-16 even for nearly
        // dependent seeds
        for _ in 0..2 {
            for a in &accepted {
                v = v.axpy(-v.dot(a), a);
            }
        }
        let u = Direction::renormalized(v);
        accepted.push(*u);
        basis.push(u);
    }
    EquatorFrame { pole: *pole, basis }
}

/// What a [`QuadratureRule`] integrates over.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum QuadratureDomain {
    /// The full sphere S^{d-1}.
    FullSphere { dim: usize },
    /// The equator ξ⊥ ∩ S^{d-1}.
    Equator { pole: Direction },
}

/// Nodes and positive weights on a sphere.
#[derive(Clone, Debug)]
pub struct QuadratureRule {
    pub nodes: Vec<Direction>,
    pub weights: Vec<f64>,
    pub domain: QuadratureDomain,
    /// Spherical polynomials of degree <= this are integrated exactly.
    pub exact_degree: usize,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn total_measure(&self) -> f64 {
        self.weights.iter().sum()
    }

    pub fn integrate<F: FnMut(&Direction) -> f64>(&self, mut f: F) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(x, w)| w * f(x)).sum()
    }

    /// As [`integrate`](Self::integrate), for fallible integrands.
    pub fn try_integrate<F: FnMut(&Direction) -> Result<f64>>(&self, mut f: F) -> Result<f64> {
        let mut acc = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(x)?;
        }
        Ok(acc)
    }
}

/// Surface measure of the unit sphere S^k ⊂ R^{k+1}.
pub fn sphere_measure(k: usize) -> f64 {
    // |S^0| = 2, |S^1| = 2π, |S^k| = 2π/(k-1) |S^{k-2}|
    match k {
        0 => 2.0,
        1 => 2.0 * PI,
        _ => 2.0 * PI / (k as f64 - 1.0) * sphere_measure(k - 2),
    }
}

/// Volume of the unit ball of R^n.
pub fn ball_volume(n: usize) -> f64 {
    if n == 0 {
        1.0
    } else {
        sphere_measure(n - 1) / n as f64
    }
}

/// Default quadrature order for ambient dimension `d` (see the module table).
pub fn default_order(d: usize) -> usize {
    match d {
        0..=3 => 128,
        4 => 48,
        5 => 24,
        _ => 16,
    }
}

/// Gauss–Jacobi nodes for the height coordinate of S^k, weight (1-z²)^((k-2)/2),
/// made exactly antipodally symmetric.
fn height_rule(k: usize, n: usize) -> Vec<(f64, f64)> {
    let exponent = (k as f64 - 2.0) / 2.0;
    let a = FiniteAboveNegOneF64::new(exponent).expect("exponent >= 0");
    let rule = GaussJacobi::new(NonZeroUsize::new(n).expect("n >= 1"), a, a);
    let mut pairs: Vec<(f64, f64)> = rule.as_node_weight_pairs().to_vec();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    for i in 0..n / 2 {
        let j = n - 1 - i;
        let z = 0.5 * (pairs[j].0 - pairs[i].0);
        let w = 0.5 * (pairs[i].1 + pairs[j].1);
        pairs[i] = (-z, w);
        pairs[j] = (z, w);
    }
    if n % 2 == 1 {
        pairs[n / 2].0 = 0.0;
    }
    pairs
}

/// Product rule on S^k in R^{k+1}; the last coordinate is the height.
fn local_sphere_rule(k: usize, order: usize) -> (Vec<Vec<f64>>, Vec<f64>) {
    match k {
        0 => (vec![vec![1.0], vec![-1.0]], vec![1.0, 1.0]),
        1 => {
            let w = 2.0 * PI / order as f64;
            let nodes = (0..order)
                .map(|j| {
                    let (s, c) = (2.0 * PI * j as f64 / order as f64).sin_cos();
                    vec![c, s]
                })
                .collect();
            (nodes, vec![w; order])
        }
        _ => {
            let (inner_nodes, inner_weights) = local_sphere_rule(k - 1, order);
            let heights = height_rule(k, (order / 2).max(2));
            let mut nodes = Vec::with_capacity(heights.len() * inner_nodes.len());
            let mut weights = Vec::with_capacity(nodes.capacity());
            for &(z, wz) in &heights {
                let s = (1.0 - z * z).max(0.0).sqrt();
                for (y, wy) in inner_nodes.iter().zip(&inner_weights) {
                    let mut p: Vec<f64> = y.iter().map(|c| c * s).collect();
                    p.push(z);
                    nodes.push(p);
                    weights.push(wz * wy);
                }
            }
            (nodes, weights)
        }
    }
}

fn exact_degree(k: usize, order: usize) -> usize {
    match k {
        0 => usize::MAX,
        1 => order - 1,
        _ => (order - 1).min(2 * (order / 2).max(2) - 1),
    }
}

/// Product quadrature rule on the full sphere S^{d-1}.
pub fn sphere_quadrature(d: usize, order: usize) -> Result<QuadratureRule> {
    check_dim(d)?;
    check_order(order)?;
    let (local, weights) = local_sphere_rule(d - 1, order);
    let nodes = local
        .iter()
        .map(|p| Direction::renormalized(Vector::from_slice(p).expect("dim <= 6")))
        .collect();
    Ok(QuadratureRule {
        nodes,
        weights,
        domain: QuadratureDomain::FullSphere { dim: d },
        exact_degree: exact_degree(d - 1, order),
    })
}

/// Product quadrature rule on the equator `pole`⊥ ∩ S^{d-1}, expressed in R^d
/// through [`equator_frame`].
pub fn equator_quadrature(pole: &Direction, order: usize) -> Result<QuadratureRule> {
    check_order(order)?;
    let d = pole.dim();
    let frame = equator_frame(pole);
    let (local, weights) = local_sphere_rule(d - 2, order);
    let nodes = local.iter().map(|p| Direction::renormalized(frame.embed(p))).collect();
    Ok(QuadratureRule {
        nodes,
        weights,
        domain: QuadratureDomain::Equator { pole: *pole },
        exact_degree: exact_degree(d - 2, order),
    })
}

fn check_order(order: usize) -> Result<()> {
    if order < 3 {
        return Err(QuermassError::Input(format!("quadrature order {order} < 3")));
    }
    Ok(())
}

/// Quasi-uniform directions on S^{d-1}.
///
/// d = 2: equally spaced angles (offset by half a step); d = 3: Fibonacci
/// lattice; d >= 4: Halton points pushed through the inverse normal CDF and
/// normalized. `seed` shifts the Halton index (and rotates the d <= 3 lattices).
pub fn quasi_uniform_directions(d: usize, n: usize, seed: u64) -> Result<Vec<Direction>> {
    check_dim(d)?;
    let shift = seed as f64 * 0.618_033_988_749_894_9;
    let dirs = match d {
        2 => (0..n)
            .map(|i| {
                let (s, c) = (2.0 * PI * ((i as f64 + 0.5) / n as f64 + shift)).sin_cos();
                Direction::renormalized(Vector::from_slice(&[c, s]).unwrap())
            })
            .collect(),
        3 => {
            let golden = PI * (3.0 - 5f64.sqrt());
            (0..n)
                .map(|i| {
                    let z = 1.0 - (2.0 * i as f64 + 1.0) / n as f64;
                    let s = (1.0 - z * z).sqrt();
                    let (sp, cp) = (golden * i as f64 + 2.0 * PI * shift).sin_cos();
                    Direction::renormalized(Vector::from_slice(&[s * cp, s * sp, z]).unwrap())
                })
                .collect()
        }
        _ => {
            const PRIMES: [u8; MAX_DIM] = [2, 3, 5, 7, 11, 13];
            let mut out = Vec::with_capacity(n);
            let mut index = 1 + seed as usize;
            while out.len() < n {
                let mut v = Vector::zeros(d);
                for (k, base) in PRIMES.iter().take(d).enumerate() {
                    let u = halton::number(*base, index);
                    v[k] = std::f64::consts::SQRT_2 * statrs::function::erf::erf_inv(2.0 * u - 1.0);
                }
                index += 1;
                if let Some(u) = v.normalized() {
                    out.push(Direction(u));
                }
            }
            out
        }
    };
    Ok(dirs)
}

/// Dense sample of S^{d-1}: `n` quasi-uniform directions plus the ± coordinate axes.
pub fn dense_sample(d: usize, n: usize) -> Result<Vec<Direction>> {
    let mut pts = quasi_uniform_directions(d, n, 0)?;
    for a in 0..d {
        pts.push(Direction::axis(d, a));
        pts.push(-Direction::axis(d, a));
    }
    Ok(pts)
}
