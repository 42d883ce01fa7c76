//! Small fixed-capacity Euclidean vectors.
//!
//! Every point handled by the crate lives in R^d with d <= 6, so vectors are
//! stack-allocated and `Copy`. This keeps the per-node inner loops of the
//! quadrature routines free of heap traffic.

use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{QuermassError, Result};

/// Largest supported ambient dimension.
pub const MAX_DIM: usize = 6;

/// A vector in R^d, 1 <= d <= [`MAX_DIM`].
#[derive(Clone, Copy, PartialEq)]
pub struct Vector {
    dim: usize,
    coords: [f64; MAX_DIM],
}

impl Vector {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim <= MAX_DIM, "dimension {dim} exceeds {MAX_DIM}");
        Vector { dim, coords: [0.0; MAX_DIM] }
    }

    /// The `axis`-th standard basis vector of R^dim.
    pub fn basis(dim: usize, axis: usize) -> Self {
        let mut v = Vector::zeros(dim);
        v.coords[axis] = 1.0;
        v
    }

    pub fn from_slice(values: &[f64]) -> Result<Self> {
        if values.is_empty() || values.len() > MAX_DIM {
            return Err(QuermassError::Input(format!(
                "vector length {} outside 1..={MAX_DIM}",
                values.len()
            )));
        }
        let mut v = Vector::zeros(values.len());
        v.coords[..values.len()].copy_from_slice(values);
        Ok(v)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn as_slice(&self) -> &[f64] {
        &self.coords[..self.dim]
    }

    #[inline]
    pub fn dot(&self, other: &Vector) -> f64 {
        debug_assert_eq!(self.dim, other.dim);
        self.as_slice().iter().zip(other.as_slice()).map(|(a, b)| a * b).sum()
    }

    #[inline]
    pub fn norm_squared(&self) -> f64 {
        self.dot(self)
    }

    #[inline]
    pub fn norm(&self) -> f64 {
        self.norm_squared().sqrt()
    }

    /// `self + s * other`
    #[inline]
    pub fn axpy(&self, s: f64, other: &Vector) -> Vector {
        let mut out = *self;
        for i in 0..self.dim {
            out.coords[i] += s * other.coords[i];
        }
        out
    }

    /// Unit vector in the same direction, or `None` for (numerically) zero input.
    pub fn normalized(&self) -> Option<Vector> {
        let n = self.norm();
        if n > 0.0 && n.is_finite() {
            Some(*self * (1.0 / n))
        } else {
            None
        }
    }

    pub fn max_abs_axis(&self) -> usize {
        // lowest index wins ties
        let mut best = 0;
        for i in 1..self.dim {
            if self.coords[i].abs() > self.coords[best].abs() {
                best = i;
            }
        }
        best
    }

    pub fn is_finite(&self) -> bool {
        self.as_slice().iter().all(|x| x.is_finite())
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.as_slice()).finish()
    }
}

impl Index<usize> for Vector {
    type Output = f64;
    #[inline]
    fn index(&self, i: usize) -> &f64 {
        &self.as_slice()[i]
    }
}

impl IndexMut<usize> for Vector {
    #[inline]
    fn index_mut(&mut self, i: usize) -> &mut f64 {
        &mut self.coords[..self.dim][i]
    }
}

impl Add for Vector {
    type Output = Vector;
    #[inline]
    fn add(self, rhs: Vector) -> Vector {
        self.axpy(1.0, &rhs)
    }
}

impl AddAssign for Vector {
    #[inline]
    fn add_assign(&mut self, rhs: Vector) {
        *self = *self + rhs;
    }
}

impl Sub for Vector {
    type Output = Vector;
    #[inline]
    fn sub(self, rhs: Vector) -> Vector {
        self.axpy(-1.0, &rhs)
    }
}

impl SubAssign for Vector {
    #[inline]
    fn sub_assign(&mut self, rhs: Vector) {
        *self = *self - rhs;
    }
}

impl Mul<f64> for Vector {
    type Output = Vector;
    #[inline]
    fn mul(mut self, s: f64) -> Vector {
        for x in &mut self.coords[..self.dim] {
            *x *= s;
        }
        self
    }
}

impl Neg for Vector {
    type Output = Vector;
    #[inline]
    fn neg(self) -> Vector {
        self * -1.0
    }
}

impl Serialize for Vector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.as_slice().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Vector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let values = Vec::<f64>::deserialize(deserializer)?;
        Vector::from_slice(&values).map_err(serde::de::Error::custom)
    }
}
