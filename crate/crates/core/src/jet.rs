//! Truncated Taylor arithmetic used to differentiate sphere functions along
//! the (longitude, latitude) chart exactly.

use std::ops::{Add, Div, Mul, Neg, Sub};

/// Minimal ring interface for evaluating polynomials over jets.
pub trait Ring: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn ring_add(&self, other: &Self) -> Self;
    fn ring_mul(&self, other: &Self) -> Self;
    fn scale(&self, s: f64) -> Self;
}

impl Ring for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn ring_add(&self, other: &Self) -> Self {
        self + other
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, s: f64) -> Self {
        self * s
    }
}

/// Highest total order kept by [`Jet2`].
pub const JET_ORDER: usize = 3;
const JET_LEN: usize = (JET_ORDER + 1) * (JET_ORDER + 2) / 2;

#[inline]
const fn slot(i: usize, j: usize) -> usize {
    // (i, j) with i + j = n are stored contiguously after all lower orders
    let n = i + j;
    n * (n + 1) / 2 + j
}

/// Bivariate Taylor polynomial in (a, b), truncated above total order 3.
///
/// Coefficients are Taylor coefficients, so `∂^i_a ∂^j_b f = i! j! c[i][j]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet2 {
    c: [f64; JET_LEN],
}

impl Jet2 {
    pub fn constant(v: f64) -> Self {
        let mut c = [0.0; JET_LEN];
        c[0] = v;
        Jet2 { c }
    }

    /// Jet of a function of `a` alone, from its Taylor coefficients.
    pub fn in_a(coeffs: [f64; JET_ORDER + 1]) -> Self {
        let mut j = Jet2::constant(0.0);
        for (i, v) in coeffs.iter().enumerate() {
            j.c[slot(i, 0)] = *v;
        }
        j
    }

    /// Jet of a function of `b` alone, from its Taylor coefficients.
    pub fn in_b(coeffs: [f64; JET_ORDER + 1]) -> Self {
        let mut j = Jet2::constant(0.0);
        for (i, v) in coeffs.iter().enumerate() {
            j.c[slot(0, i)] = *v;
        }
        j
    }

    /// Taylor series of `sin(x0 + h)` and `cos(x0 + h)` in `h`.
    pub fn sin_cos_series(x0: f64) -> ([f64; JET_ORDER + 1], [f64; JET_ORDER + 1]) {
        let (s, c) = x0.sin_cos();
        ([s, c, -s / 2.0, -c / 6.0], [c, -s, -c / 2.0, s / 6.0])
    }

    /// The mixed partial derivative ∂^i_a ∂^j_b at the expansion point.
    pub fn derivative(&self, i: usize, j: usize) -> f64 {
        assert!(i + j <= JET_ORDER);
        self.c[slot(i, j)] * factorial(i) * factorial(j)
    }
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

impl Ring for Jet2 {
    fn zero() -> Self {
        Jet2::constant(0.0)
    }
    fn one() -> Self {
        Jet2::constant(1.0)
    }
    fn ring_add(&self, other: &Self) -> Self {
        let mut out = *self;
        for (o, x) in out.c.iter_mut().zip(&other.c) {
            *o += x;
        }
        out
    }
    fn ring_mul(&self, other: &Self) -> Self {
        let mut out = [0.0; JET_LEN];
        for i1 in 0..=JET_ORDER {
            for j1 in 0..=JET_ORDER - i1 {
                let x = self.c[slot(i1, j1)];
                if x == 0.0 {
                    continue;
                }
                for i2 in 0..=JET_ORDER - i1 - j1 {
                    for j2 in 0..=JET_ORDER - i1 - j1 - i2 {
                        out[slot(i1 + i2, j1 + j2)] += x * other.c[slot(i2, j2)];
                    }
                }
            }
        }
        Jet2 { c: out }
    }
    fn scale(&self, s: f64) -> Self {
        let mut out = *self;
        for x in &mut out.c {
            *x *= s;
        }
        out
    }
}

/// First-order dual number `v + d·h`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dual {
    pub v: f64,
    pub d: f64,
}

impl Dual {
    pub fn new(v: f64, d: f64) -> Self {
        Dual { v, d }
    }

    pub fn constant(v: f64) -> Self {
        Dual { v, d: 0.0 }
    }

    pub fn powf(self, p: f64) -> Self {
        Dual { v: self.v.powf(p), d: p * self.v.powf(p - 1.0) * self.d }
    }
}

impl Add for Dual {
    type Output = Dual;
    fn add(self, o: Dual) -> Dual {
        Dual::new(self.v + o.v, self.d + o.d)
    }
}

impl Sub for Dual {
    type Output = Dual;
    fn sub(self, o: Dual) -> Dual {
        Dual::new(self.v - o.v, self.d - o.d)
    }
}

impl Mul for Dual {
    type Output = Dual;
    fn mul(self, o: Dual) -> Dual {
        Dual::new(self.v * o.v, self.v * o.d + self.d * o.v)
    }
}

impl Div for Dual {
    type Output = Dual;
    fn div(self, o: Dual) -> Dual {
        Dual::new(self.v / o.v, (self.d * o.v - self.v * o.d) / (o.v * o.v))
    }
}

impl Neg for Dual {
    type Output = Dual;
    fn neg(self) -> Dual {
        Dual::new(-self.v, -self.d)
    }
}
