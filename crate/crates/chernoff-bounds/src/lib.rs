//! Tail-probability bounds by exponential tilting, with the projections
//! that realize them and the maximum-likelihood connection.
//!
//! For a random variable `X` with distribution `Q`, a concave
//! non-decreasing transformation `v`, and a threshold `a >= E[X]`, the
//! crate computes
//!
//! ```text
//! P(X >= a) <= min over theta of E exp(theta (v(X) - v(a)))
//! ```
//!
//! together with every object that minimization produces:
//!
//! - the optimizing tilt parameter `theta_hat` and its diagnostics
//!   ([`chernoff::optimize_theta`]),
//! - the exponentially tilted model at `theta_hat`, which is the
//!   divergence-minimizing element of `{P : E_P v(X) = v(a)}`
//!   ([`projection::i_projection`]),
//! - the bound value in four equivalent forms: `exp` of the log-form
//!   minimum, `exp(-KL)` of the projection, the atom-wise product form,
//!   and the mass/density ratio `q(a) / p(a)` read off the projection at
//!   the threshold itself ([`projection::ratio_form_bound`]),
//! - the exponential-family maximum-likelihood link: the likelihood
//!   equation solved by the same `theta_hat`, the bound recovered from the
//!   maximized likelihood, and a seeded experiment showing the
//!   per-observation likelihood converge to minus the entropy of the
//!   projection ([`mle`]).
//!
//! Models are finite pmfs, tabulated density grids, or closed-form
//! families (gaussian, exponential); see [`measures`]. All sums and
//! normalizers are evaluated in the log domain with max-shifting, so
//! tilts far into the tail do not overflow.
//!
//! Every type is immutable after construction and every operation is a
//! pure function of its arguments; everything can be called concurrently.
//! The sampling experiments take an explicit generator seed and are
//! bit-reproducible.
//!
//! The `examples/` directory contains one runnable walk-through per
//! capability; `chernoff-bounds` (the binary target) exposes the same
//! operations as subcommands.

#![forbid(unsafe_code)]

pub mod chernoff;
pub mod cli;
pub mod error;
pub mod measures;
pub mod mle;
pub mod projection;
pub mod rng;

pub use chernoff::{bound, bound_log, optimize_theta, Attainment, BoundReport, TiltSolution};
pub use error::{Error, Result};
pub use measures::{
    cgf, cgf_prime, cgf_second, mean_v, tail_prob, validate_pairing, ContinuousModel,
    DiscreteModel, Family, GridDensity, Model, ValueFunction,
};
pub use mle::{
    asymptotic_experiment, chernoff_from_likelihood, log_likelihood, ml_estimate, Sample,
};
pub use projection::{
    generalized_projection_bound, i_projection, kl_divergence, product_form_bound,
    ratio_form_bound, tilt, Projection, ProjectionRecord,
};
