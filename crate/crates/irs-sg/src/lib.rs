//! Stochastic-geometry analysis of IRS-assisted downlink cellular networks
//! with a Monte-Carlo oracle for every analytic quantity.
//!
//! The analytic side ([`signal`], [`interference`], [`metrics`]) works on
//! Laplace transforms of the desired signal and of the aggregate
//! interference from base stations and reflecting surfaces; the
//! [`montecarlo`] module simulates the same network with exact geometry.

pub mod channel;
pub mod error;
pub mod geometry;
pub mod interference;
pub mod metrics;
pub mod montecarlo;
pub mod rng;
pub mod scenario;
pub mod signal;
pub mod specfun;

pub use error::{Error, Result};
pub use scenario::Scenario;
