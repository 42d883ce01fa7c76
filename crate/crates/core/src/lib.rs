//! Quermassintegrals of hyperplane sections of star bodies.
//!
//! A body in R^d (2 ≤ d ≤ 6) is given by a strictly positive radial function
//! on the unit sphere. Its section by the hyperplane `ξ⊥ + tξ` is treated as a
//! (d−1)-dimensional body with its own radial function about `tξ`, from which
//! volumes, surface areas and curvature-mean quermassintegrals follow by
//! quadrature on the equator sphere.
//!
//! On top of that the crate provides:
//!
//! - offset profiles `t ↦ W_l` with argmax and central-derivative checks ([`sweep`]),
//! - an independent Steiner-polynomial oracle for convex sections ([`steiner`]),
//! - first-order perturbation predictions and an evenness classifier ([`linearization`]),
//! - the planar perimeter condition for d = 3 and its linearized operator ([`remark`]).
//!
//! ```
//! use quermass_core::{Direction, Section, StarBody};
//! use quermass_core::quermass::section_volume;
//!
//! let ball = StarBody::unit_ball(3).unwrap();
//! let section = Section::new(&ball, &Direction::axis(3, 2), 0.6).unwrap();
//! let area = section_volume(&section).unwrap().value;
//! assert!((area - std::f64::consts::PI * 0.64).abs() < 1e-12);
//! ```

pub mod body;
pub mod chart;
pub mod config;
pub mod error;
pub mod jet;
pub mod linearization;
pub mod poly;
pub mod quermass;
pub mod remark;
pub mod roots;
pub mod section;
pub mod sphere;
pub mod steiner;
pub mod sweep;
pub mod vector;

pub use body::{PerturbationFamily, RadialShape, StarBody};
pub use chart::{ChartFrame, FiniteDifferenceSteps};
pub use config::{BodySpec, FunctionSpec};
pub use error::{QuermassError, Result};
pub use linearization::{EquatorIntegralResult, EvennessVerdict, Variant};
pub use poly::{Monomial, SmoothSphereFunction};
pub use quermass::{CurvatureMeans, QuermassMethod, QuermassValue};
pub use remark::Remark2DCoefficients;
pub use section::{Section, SectionOptions};
pub use sphere::{Direction, EquatorFrame, PolarCoordinates, QuadratureRule};
pub use steiner::{ParallelVolumeMethod, SteinerFit, SteinerOptions};
pub use sweep::{OffsetProfile, SweepReport};
pub use vector::Vector;
