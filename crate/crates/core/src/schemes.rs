//! Matrix and load-vector assembly for the finite-difference and bubble
//! Petrov-Galerkin schemes, and the end-to-end solve.
//!
//! All schemes share the matrix
//!
//! ```text
//! M(d) = (d/h) S + C = tridiag(−d/h − 1/2, 2d/h, −d/h + 1/2)
//! ```
//!
//! An upwinded difference scheme picks `d = ε(1 + Φ(Pe))`; a bubble method
//! picks `d = ε + b1 h`. Load vectors approximate `(f, φ_j + B_j − B_{j+1})`
//! with a per-element quadrature or the oracle integrator; with the
//! trapezoid rule this is exactly the finite-difference load `h f(x_j)`.

use std::fmt;
use std::sync::Arc;

use crate::bubbles::{langevin, peclet_coefficients, BubbleSpec};
use crate::error::{invalid, Error, Result};
use crate::model::{GridFunction, Mesh, Problem};
use crate::quadrature::{oracle_integrate, QuadratureRule};
use crate::tridiag::TridiagonalSystem;

pub type PhiFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// How the effective diffusion `ε_h = ε (1 + Φ(Pe))` is chosen.
#[derive(Clone)]
pub enum DiffusionRule {
    /// `Φ = 0`.
    Central,
    /// `Φ(Pe) = Pe`, i.e. backward differences for the convection term.
    StandardUpwind,
    /// Il'in-Allen-Southwell / Scharfetter-Gummel: `Φ(Pe) = Pe coth(Pe) − 1`.
    IasSg,
    /// `Φ(Pe) = 2 b1 Pe`, the diffusion induced by a bubble test space.
    FromBubble(BubbleSpec),
    Custom(PhiFn),
}

impl fmt::Debug for DiffusionRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Central => f.write_str("Central"),
            Self::StandardUpwind => f.write_str("StandardUpwind"),
            Self::IasSg => f.write_str("IasSg"),
            Self::FromBubble(b) => f.debug_tuple("FromBubble").field(b).finish(),
            Self::Custom(_) => f.write_str("Custom(..)"),
        }
    }
}

impl DiffusionRule {
    /// `Φ(Pe)`.
    pub fn phi(&self, pe: f64) -> f64 {
        match self {
            Self::Central => 0.0,
            Self::StandardUpwind => pe,
            Self::IasSg => pe * langevin(pe),
            Self::FromBubble(b) => 2.0 * b.b1() * pe,
            Self::Custom(phi) => phi(pe),
        }
    }
}

/// How the load vector is approximated.
#[derive(Debug, Clone, PartialEq)]
pub enum RhsRule {
    /// `h f(x_j)`.
    Pointwise,
    /// Per-element quadrature of `f (φ_j + B_j − B_{j+1})`.
    BubbleQuadrature { bubble: BubbleSpec, rule: QuadratureRule },
    /// Same integrals by the oracle integrator at relative tolerance `tol`.
    BubbleOracle { bubble: BubbleSpec, tol: f64 },
}

#[derive(Debug, Clone)]
pub struct SchemeConfig {
    pub diffusion: DiffusionRule,
    pub rhs: RhsRule,
}

impl SchemeConfig {
    pub fn new(diffusion: DiffusionRule, rhs: RhsRule) -> Self {
        Self { diffusion, rhs }
    }
}

pub fn local_peclet(epsilon: f64, h: f64) -> f64 {
    h / (2.0 * epsilon)
}

/// Effective diffusion `ε_h`.
pub fn artificial_diffusion(epsilon: f64, h: f64, rule: &DiffusionRule) -> Result<f64> {
    if !(epsilon > 0.0 && h > 0.0) {
        return Err(invalid(format!("epsilon and h must be positive, got {epsilon}, {h}")));
    }
    Ok(match rule {
        DiffusionRule::Central => epsilon,
        DiffusionRule::StandardUpwind => epsilon + 0.5 * h,
        DiffusionRule::IasSg => 0.5 * h / peclet_coefficients(epsilon, h)?.g0,
        DiffusionRule::FromBubble(b) => {
            check_bubble_width(b, h)?;
            epsilon + b.integral()
        }
        DiffusionRule::Custom(phi) => {
            let pe = local_peclet(epsilon, h);
            let value = phi(pe);
            if !(value >= 0.0 && value.is_finite()) {
                return Err(Error::InvalidDiffusion { peclet: pe, value });
            }
            epsilon * (1.0 + value)
        }
    })
}

/// `S = tridiag(−1, 2, −1)` of size `n − 1`.
pub fn stiffness_matrix(mesh: &Mesh) -> TridiagonalSystem {
    TridiagonalSystem::constant(mesh.interior(), -1.0, 2.0, -1.0).expect("mesh has n >= 2")
}

/// `C = tridiag(−1/2, 0, 1/2)` of size `n − 1`.
pub fn convection_matrix(mesh: &Mesh) -> TridiagonalSystem {
    TridiagonalSystem::constant(mesh.interior(), -0.5, 0.0, 0.5).expect("mesh has n >= 2")
}

/// `tridiag(−d/h − 1/2, 2d/h, −d/h + 1/2)`.
pub fn assemble_system_matrix(d: f64, mesh: &Mesh) -> Result<TridiagonalSystem> {
    if !(d > 0.0 && d.is_finite()) {
        return Err(invalid(format!("diffusion must be positive, got {d}")));
    }
    let r = d / mesh.h();
    TridiagonalSystem::constant(mesh.interior(), -r - 0.5, 2.0 * r, -r + 0.5)
}

/// `(1/g0) tridiag(−l_d, 1, −u_d)` assembled from the stable Peclet
/// coefficients; for `h/ε` beyond the underflow threshold this is exactly
/// `tridiag(−1, 1, 0)`.
pub fn exponential_pg_matrix(epsilon: f64, mesh: &Mesh) -> Result<TridiagonalSystem> {
    let c = peclet_coefficients(epsilon, mesh.h())?;
    TridiagonalSystem::constant(mesh.interior(), -c.l0, 1.0 / c.g0, -c.u0)
}

/// The matrix a diffusion rule induces. Exponentially fitted rules go
/// through [`exponential_pg_matrix`].
pub fn system_matrix(rule: &DiffusionRule, epsilon: f64, mesh: &Mesh) -> Result<TridiagonalSystem> {
    match rule {
        DiffusionRule::IasSg => exponential_pg_matrix(epsilon, mesh),
        DiffusionRule::FromBubble(b) if b.is_exponential() && b.epsilon() == epsilon => {
            check_bubble_width(b, mesh.h())?;
            exponential_pg_matrix(epsilon, mesh)
        }
        _ => assemble_system_matrix(artificial_diffusion(epsilon, mesh.h(), rule)?, mesh),
    }
}

/// `F_fd = h (f(x_1), …, f(x_{n−1}))`.
pub fn assemble_rhs_pointwise(problem: &Problem, mesh: &Mesh) -> Vec<f64> {
    let h = mesh.h();
    (1..mesh.n()).map(|j| h * problem.source(mesh.node(j))).collect()
}

/// Entry `j` is the rule applied to `f (φ_j + B_j)` on `[x_{j−1}, x_j]` plus
/// the rule applied to `f (φ_j − B_{j+1})` on `[x_j, x_{j+1}]`.
pub fn assemble_rhs_bubble(
    problem: &Problem,
    mesh: &Mesh,
    bubble: &BubbleSpec,
    rule: &QuadratureRule,
) -> Result<Vec<f64>> {
    check_bubble_width(bubble, mesh.h())?;
    assemble_bubble_load(mesh, |k, rising| {
        Ok(rule.integrate_unit(|t| element_integrand(problem, mesh, bubble, k, t, rising)))
    })
}

/// As [`assemble_rhs_bubble`] with each element integral computed by
/// [`oracle_integrate`].
pub fn assemble_rhs_oracle(problem: &Problem, mesh: &Mesh, bubble: &BubbleSpec, tol: f64) -> Result<Vec<f64>> {
    check_bubble_width(bubble, mesh.h())?;
    assemble_bubble_load(mesh, |k, rising| {
        oracle_integrate(|t| element_integrand(problem, mesh, bubble, k, t, rising), 0.0, 1.0, tol)
    })
}

/// Closed form of the Cavalieri-Simpson bubble load
///
/// ```text
/// G_j = (h/3) [ (1 + 2 B(h/2)) f(x_j − h/2) + f(x_j) + (1 − 2 B(h/2)) f(x_j + h/2) ]
/// ```
pub fn cavalieri_simpson_rhs(problem: &Problem, mesh: &Mesh, bubble_midpoint: f64) -> Vec<f64> {
    let h = mesh.h();
    (1..mesh.n())
        .map(|j| {
            let x = mesh.node(j);
            h / 3.0
                * ((1.0 + 2.0 * bubble_midpoint) * problem.source(x - 0.5 * h)
                    + problem.source(x)
                    + (1.0 - 2.0 * bubble_midpoint) * problem.source(x + 0.5 * h))
        })
        .collect()
}

pub fn assemble_rhs(rule: &RhsRule, problem: &Problem, mesh: &Mesh) -> Result<Vec<f64>> {
    match rule {
        RhsRule::Pointwise => Ok(assemble_rhs_pointwise(problem, mesh)),
        RhsRule::BubbleQuadrature { bubble, rule } => assemble_rhs_bubble(problem, mesh, bubble, rule),
        RhsRule::BubbleOracle { bubble, tol } => assemble_rhs_oracle(problem, mesh, bubble, *tol),
    }
}

/// Assemble and solve one scheme.
pub fn solve_scheme(config: &SchemeConfig, problem: &Problem, mesh: &Mesh) -> Result<GridFunction> {
    let matrix = system_matrix(&config.diffusion, problem.epsilon(), mesh)?;
    let rhs = assemble_rhs(&config.rhs, problem, mesh)?;
    GridFunction::new(*mesh, matrix.solve(&rhs)?)
}

/// `f (φ + B)` on element `k` (rising half of a hat) or `f (φ − B)` (falling
/// half), in the local variable `t ∈ [0, 1]`, scaled by `h`. Points are
/// formed as `(k + t) h` so element ends land exactly on mesh nodes.
fn element_integrand(problem: &Problem, mesh: &Mesh, bubble: &BubbleSpec, k: usize, t: f64, rising: bool) -> f64 {
    let x = if t >= 1.0 { mesh.node(k + 1) } else { (k as f64 + t) * mesh.h() };
    let b = bubble.value_at_fraction(t);
    let weight = if rising { t + b } else { 1.0 - t - b };
    mesh.h() * problem.source(x) * weight
}

fn assemble_bubble_load(mesh: &Mesh, mut element: impl FnMut(usize, bool) -> Result<f64>) -> Result<Vec<f64>> {
    (1..mesh.n())
        .map(|j| Ok(element(j - 1, true)? + element(j, false)?))
        .collect()
}

fn check_bubble_width(bubble: &BubbleSpec, h: f64) -> Result<()> {
    if (bubble.h() - h).abs() > 1e-12 * h {
        return Err(invalid(format!("bubble built for h = {} used on h = {h}", bubble.h())));
    }
    Ok(())
}
