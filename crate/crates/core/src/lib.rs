//! Finite-difference and bubble Petrov-Galerkin discretizations of the
//! singularly perturbed model problem
//!
//! ```text
//!     -ε u''(x) + u'(x) = f(x),   0 < x < 1,   u(0) = u(1) = 0
//! ```
//!
//! on uniform meshes. Every scheme in the crate reduces to a tridiagonal
//! system `((d/h) S + C) U = F` where `S = tridiag(-1, 2, -1)`,
//! `C = tridiag(-1/2, 0, 1/2)` and `d` is the effective diffusion. Upwinded
//! finite differences choose `d` through an artificial diffusion function,
//! bubble Petrov-Galerkin methods choose it through the integral of a bubble,
//! and the two agree whenever `ε Φ(Pe) = ∫ B`. Right-hand sides differ only
//! in how `(f, φ_j + B_j - B_{j+1})` is approximated.
//!
//! Modules:
//! - [`model`]: meshes, problems, grid functions, built-in test problems
//! - [`tridiag`]: tridiagonal storage and the Thomas solver
//! - [`bubbles`]: quadratic and exponential bubbles, stable Peclet coefficients
//! - [`quadrature`]: element rules, composite trapezoid functional, oracle integrator
//! - [`schemes`]: matrix and load-vector assembly, end-to-end solves
//! - [`norms`]: discrete seminorms, optimal trial norm, dual norms

// NaN-rejecting guards are written as negated comparisons.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bubbles;
pub mod error;
pub mod model;
pub mod norms;
pub mod quadrature;
pub mod schemes;
pub mod tridiag;

pub use bubbles::{BubbleKind, BubbleSpec, PecletCoefficients};
pub use error::{Error, Result};
pub use model::{GridFunction, Mesh, Problem};
pub use quadrature::QuadratureRule;
pub use schemes::{DiffusionRule, RhsRule, SchemeConfig};
pub use tridiag::TridiagonalSystem;
