//! Numerics for the initial-value problem `y'(x) = cos(pi x y(x))`,
//! `y(0) = a`.
//!
//! * [`ivp`]: right-hand side and exact derived quantities.
//! * [`integrator`]: adaptive Dormand-Prince integration with dense output,
//!   extremum / diagonal-crossing events and band-settlement termination.
//! * [`classify`]: maxima counts, terminal band and terminal constant.
//! * [`thresholds`]: bisection for the critical initial values `a_n` and
//!   the separatrix diagonal crossings `b_n`.
//! * [`averaging`]: the averaged mean-path model and the law
//!   `a_n ~ 2^(5/6) sqrt(n)`.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;

pub mod averaging;
pub mod classify;
mod dopri;
mod error;
pub mod integrator;
pub mod ivp;
pub mod thresholds;

pub use classify::{classify, maxima_in_region, ClassificationResult, Region};
pub use dopri::DenseStep;
pub use error::Error;
pub use integrator::{integrate, integrate_from, Event, EventKind, Node, SolverConfig, Trajectory};
pub use ivp::{grad_line_value, rhs, second_derivative, BandIndex, Point, ProblemParams};
pub use thresholds::{find_a_n, find_b_n, sweep, ThresholdResult};
