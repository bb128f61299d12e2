//! Reducible spherical cone metrics on the Riemann sphere built from
//! character 1-forms, with the heart-shape and three-football families.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod families;
pub mod forms;
pub mod geodesics;
pub mod metric;
mod ode;
mod quadrature;

pub use error::{Error, Result};
pub use families::{AngleTriple, BranchChoice, HeartParams, PoleTriple, ThreeFootballParams};
pub use forms::{CharacterForm, ExtendedComplex, PointKind, PoleSpec};
pub use geodesics::{GeodesicPath, TriangleReport};
pub use metric::{ConformalDensity, GridRow, GridSpec, MetricParams, RoundSphere};
