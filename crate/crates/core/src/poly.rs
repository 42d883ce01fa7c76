//! Sphere functions given as restrictions of ambient polynomials.

use serde::{Deserialize, Serialize};

use crate::error::{QuermassError, Result};
use crate::jet::Ring;
use crate::sphere::check_dim;
use crate::vector::{Vector, MAX_DIM};

/// Largest total degree a [`SmoothSphereFunction`] may have.
pub const MAX_DEGREE: u32 = 8;

/// One monomial `coeff · x_1^{e_1} ⋯ x_d^{e_d}`, as it appears in spec files.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Monomial {
    pub exponents: Vec<u32>,
    pub coeff: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct Term {
    exps: [u8; MAX_DIM],
    degree: u32,
    coeff: f64,
}

/// A function on S^{d-1}: the restriction of a polynomial on R^d.
///
/// Terms are kept merged and sorted, so two functions built from the same
/// monomials compare equal.
#[derive(Clone, Debug, PartialEq)]
pub struct SmoothSphereFunction {
    dim: usize,
    terms: Vec<Term>,
}

impl SmoothSphereFunction {
    pub fn new(dim: usize, monomials: &[Monomial]) -> Result<Self> {
        check_dim(dim)?;
        let mut terms = Vec::with_capacity(monomials.len());
        for m in monomials {
            if m.exponents.len() != dim {
                return Err(QuermassError::Input(format!(
                    "monomial has {} exponents, expected {dim}",
                    m.exponents.len()
                )));
            }
            if !m.coeff.is_finite() {
                return Err(QuermassError::Input("non-finite coefficient".into()));
            }
            let degree: u32 = m.exponents.iter().sum();
            if degree > MAX_DEGREE {
                return Err(QuermassError::Input(format!("monomial degree {degree} exceeds {MAX_DEGREE}")));
            }
            let mut exps = [0u8; MAX_DIM];
            for (e, x) in exps.iter_mut().zip(&m.exponents) {
                *e = *x as u8;
            }
            terms.push(Term { exps, degree, coeff: m.coeff });
        }
        Ok(SmoothSphereFunction { dim, terms }.simplified())
    }

    pub fn zero(dim: usize) -> Self {
        check_dim(dim).expect("supported dimension");
        SmoothSphereFunction { dim, terms: Vec::new() }
    }

    pub fn constant(dim: usize, c: f64) -> Self {
        let mut f = SmoothSphereFunction::zero(dim);
        if c != 0.0 {
            f.terms.push(Term { exps: [0; MAX_DIM], degree: 0, coeff: c });
        }
        f
    }

    /// `ω ↦ <ω, e>`.
    pub fn linear(e: &Vector) -> Self {
        let d = e.dim();
        let mut f = SmoothSphereFunction::zero(d);
        for i in 0..d {
            let mut exps = [0; MAX_DIM];
            exps[i] = 1;
            f.terms.push(Term { exps, degree: 1, coeff: e[i] });
        }
        f.simplified()
    }

    /// The single monomial `coeff · x^exponents`.
    pub fn monomial(exponents: &[u32], coeff: f64) -> Result<Self> {
        SmoothSphereFunction::new(exponents.len(), &[Monomial { exponents: exponents.to_vec(), coeff }])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Total degree (0 for the zero function).
    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|t| t.degree).max().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn monomials(&self) -> Vec<Monomial> {
        self.terms
            .iter()
            .map(|t| Monomial { exponents: t.exps[..self.dim].iter().map(|&e| e as u32).collect(), coeff: t.coeff })
            .collect()
    }

    fn simplified(mut self) -> Self {
        self.terms.sort_by_key(|a| a.exps);
        let mut merged: Vec<Term> = Vec::with_capacity(self.terms.len());
        for t in self.terms {
            match merged.last_mut() {
                Some(last) if last.exps == t.exps => last.coeff += t.coeff,
                _ => merged.push(t),
            }
        }
        merged.retain(|t| t.coeff != 0.0);
        SmoothSphereFunction { dim: self.dim, terms: merged }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(QuermassError::Input(format!("dimension mismatch: {} vs {}", self.dim, other.dim)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        Ok(SmoothSphereFunction { dim: self.dim, terms }.simplified())
    }

    pub fn scale(&self, s: f64) -> Self {
        let terms = self.terms.iter().map(|t| Term { coeff: t.coeff * s, ..*t }).collect();
        SmoothSphereFunction { dim: self.dim, terms }.simplified()
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        if self.degree() + other.degree() > MAX_DEGREE && !self.is_zero() && !other.is_zero() {
            return Err(QuermassError::Input(format!(
                "product degree {} exceeds {MAX_DEGREE}",
                self.degree() + other.degree()
            )));
        }
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                let mut exps = [0u8; MAX_DIM];
                for i in 0..MAX_DIM {
                    exps[i] = a.exps[i] + b.exps[i];
                }
                terms.push(Term { exps, degree: a.degree + b.degree, coeff: a.coeff * b.coeff });
            }
        }
        Ok(SmoothSphereFunction { dim: self.dim, terms }.simplified())
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut out = SmoothSphereFunction::constant(self.dim, 1.0);
        for _ in 0..k {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Splits into the parts of even and odd total degree. On the sphere these
    /// are exactly the even and odd parts of the function, since each monomial
    /// has parity (-1)^degree under ω ↦ -ω.
    pub fn even_odd_split(&self) -> (Self, Self) {
        let (even, odd): (Vec<Term>, Vec<Term>) = self.terms.iter().partition(|t| t.degree % 2 == 0);
        (
            SmoothSphereFunction { dim: self.dim, terms: even },
            SmoothSphereFunction { dim: self.dim, terms: odd },
        )
    }

    fn powers(&self, x: &Vector) -> [[f64; MAX_DEGREE as usize + 1]; MAX_DIM] {
        let deg = self.degree() as usize;
        let mut pw = [[1.0; MAX_DEGREE as usize + 1]; MAX_DIM];
        for i in 0..self.dim {
            for k in 1..=deg {
                pw[i][k] = pw[i][k - 1] * x[i];
            }
        }
        pw
    }

    /// Value of the ambient polynomial at `x`.
    pub fn evaluate(&self, x: &Vector) -> f64 {
        debug_assert_eq!(x.dim(), self.dim);
        let pw = self.powers(x);
        self.terms
            .iter()
            .map(|t| {
                let mut v = t.coeff;
                for i in 0..self.dim {
                    v *= pw[i][t.exps[i] as usize];
                }
                v
            })
            .sum()
    }

    /// Ambient gradient at `x`, by term-wise differentiation.
    pub fn gradient(&self, x: &Vector) -> Vector {
        let pw = self.powers(x);
        let mut g = Vector::zeros(self.dim);
        for t in &self.terms {
            for k in 0..self.dim {
                let e = t.exps[k] as usize;
                if e == 0 {
                    continue;
                }
                let mut v = t.coeff * e as f64;
                for i in 0..self.dim {
                    v *= if i == k { pw[i][e - 1] } else { pw[i][t.exps[i] as usize] };
                }
                g[k] += v;
            }
        }
        g
    }

    /// Ambient Hessian at `x` (row-major, `dim × dim`).
    pub fn hessian(&self, x: &Vector) -> Vec<Vec<f64>> {
        let pw = self.powers(x);
        let d = self.dim;
        let mut h = vec![vec![0.0; d]; d];
        for t in &self.terms {
            for a in 0..d {
                for b in a..d {
                    let mut e = t.exps;
                    let mut c = t.coeff;
                    c *= e[a] as f64;
                    if c == 0.0 {
                        continue;
                    }
                    e[a] -= 1;
                    c *= e[b] as f64;
                    if c == 0.0 {
                        continue;
                    }
                    e[b] -= 1;
                    for i in 0..d {
                        c *= pw[i][e[i] as usize];
                    }
                    h[a][b] += c;
                }
            }
        }
        for a in 0..d {
            for b in 0..a {
                h[a][b] = h[b][a];
            }
        }
        h
    }

    /// Evaluates the polynomial over an arbitrary ring (used with jets).
    pub fn evaluate_in<T: Ring>(&self, coords: &[T]) -> T {
        debug_assert_eq!(coords.len(), self.dim);
        let deg = self.degree() as usize;
        let mut pw: Vec<Vec<T>> = Vec::with_capacity(self.dim);
        for c in coords {
            let mut row = vec![T::one()];
            for k in 1..=deg {
                row.push(row[k - 1].ring_mul(c));
            }
            pw.push(row);
        }
        let mut acc = T::zero();
        for t in &self.terms {
            let mut v = T::one().scale(t.coeff);
            for (i, row) in pw.iter().enumerate() {
                let e = t.exps[i] as usize;
                if e > 0 {
                    v = v.ring_mul(&row[e]);
                }
            }
            acc = acc.ring_add(&v);
        }
        acc
    }
}
