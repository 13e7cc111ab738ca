//! Floating-point execution of generated schemes on uniform 1-D grids.
//!
//! [`compile_update`] turns a [`Scheme`](crate::schemegen::Scheme) in `u` and `f` into a
//! [`StencilUpdate`]; [`simulate`] runs it on the inviscid Burgers Riemann problem and
//! measures it against [`exact_riemann`]. The flux is `f = u²/2`.

mod compile;
mod consistency;
mod riemann;
mod simulate;
mod stability;

use std::fmt;

use num_traits::{Float, FromPrimitive};
use thiserror::Error;

pub use compile::{compile_godunov, compile_update, Field, GodunovUpdate, LinearUpdate, StencilUpdate, Tap};
pub use consistency::{consistency_order, ConsistencyReport, ConsistencySetup, FieldFn};
pub use stability::amplification;
pub use riemann::{burgers_flux, exact_riemann, godunov_flux, RiemannIC};
pub use simulate::{
    conservation_check, shock_position, simulate, Boundary, ConservationReport, GridConfig, Metrics,
    Solution,
};

/// Scalar type of the numerics.
pub trait Real: Float + FromPrimitive + fmt::Debug + fmt::Display + Send + Sync + 'static {}

impl<T: Float + FromPrimitive + fmt::Debug + fmt::Display + Send + Sync + 'static> Real for T {}

#[derive(Clone, Debug, Error, PartialEq)]
pub enum NumericsError {
    #[error("scheme is not explicit: unknown nodes {}", nodes.join(", "))]
    NotExplicit { nodes: Vec<String> },
    #[error("flux is needed at the new time level")]
    ImplicitFlux,
    #[error("scheme needs exactly the shifts St and Sx, found {0:?}")]
    UnsupportedShifts(Vec<String>),
    #[error("indeterminate `{0}` has no numeric meaning")]
    UnsupportedIndet(String),
    #[error("parameter `{0}` has no value")]
    UnboundParameter(String),
    #[error("coefficient is singular at the given parameters")]
    Singular,
    #[error("blow-up at step {step}")]
    BlowUp { step: usize, max_abs: f64 },
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("a sweep needs a fixed left boundary")]
    SweepNeedsBoundary,
}

pub(crate) fn real<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("representable")
}
