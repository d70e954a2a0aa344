//! Spherical functions on real rank-1 semisimple Lie groups.
//!
//! A spherical function `φ_λ` on a rank-1 group is fixed by the restricted-root
//! multiplicities `(p, q)` and a complex spectral index `λ`. This crate
//! evaluates it along the radial direction `t ↦ φ_λ(exp tH₀)` by several
//! independent routes so they can be checked against each other:
//!
//! * the Gauss hypergeometric series `₂F₁(a, b; c; −sinh²t)` ([`special_fn`]),
//! * direct integration of the radial Casimir ODE from its regular singular
//!   point ([`radial_ode`]),
//! * quadrature of the two classical `SL(2, ℝ)` integral representations
//!   ([`integral_reps`]),
//! * the leading term of the Stanton–Tomas Bessel expansion and the confluent
//!   spherical function built from it ([`expansions`]).
//!
//! [`algebra`] carries the index-level Δ-algebra structure on these families
//! and [`routes`] dispatches a `(model, route, λ, t)` request to the right
//! evaluator.

// Negated comparisons are how NaN inputs are rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod algebra;
pub mod error;
pub mod expansions;
pub mod group;
pub mod integral_reps;
pub mod radial_ode;
pub mod routes;
pub mod special_fn;

pub use error::{Error, ErrorKind, Result};
pub use group::{Catalog, GroupRank1, Model, SpectralParam, WeylElement};
pub use num_complex::Complex64;
pub use special_fn::{BesselMode, BesselOrder, HypParams, SeriesResult};
