//! Element quadrature rules on the reference interval `[0, 1]`, the
//! composite trapezoid functional `T_n`, and a bisection-refined oracle
//! integrator used as the "exact" reference for load vectors.

use std::fmt;

use crate::error::{invalid, Error, Result};
use crate::model::Mesh;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RuleKind {
    Trapezoid,
    CavalieriSimpson,
    Gauss3,
}

/// Interpolatory rule `∫₀¹ g ≈ Σ w_k g(t_k)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureRule {
    kind: RuleKind,
    nodes: &'static [f64],
    weights: &'static [f64],
    degree: u32,
}

const TRAPEZOID_NODES: [f64; 2] = [0.0, 1.0];
const TRAPEZOID_WEIGHTS: [f64; 2] = [0.5, 0.5];

const SIMPSON_NODES: [f64; 3] = [0.0, 0.5, 1.0];
const SIMPSON_WEIGHTS: [f64; 3] = [1.0 / 6.0, 4.0 / 6.0, 1.0 / 6.0];

// Legendre roots ±sqrt(3/5) mapped to [0, 1].
const GAUSS3_NODES: [f64; 3] = [0.112_701_665_379_258_31, 0.5, 0.887_298_334_620_741_7];
const GAUSS3_WEIGHTS: [f64; 3] = [0.277_777_777_777_777_8, 0.444_444_444_444_444_4, 0.277_777_777_777_777_8];

impl QuadratureRule {
    pub const TRAPEZOID: Self = Self {
        kind: RuleKind::Trapezoid,
        nodes: &TRAPEZOID_NODES,
        weights: &TRAPEZOID_WEIGHTS,
        degree: 1,
    };

    pub const CAVALIERI_SIMPSON: Self = Self {
        kind: RuleKind::CavalieriSimpson,
        nodes: &SIMPSON_NODES,
        weights: &SIMPSON_WEIGHTS,
        degree: 3,
    };

    pub const GAUSS3: Self = Self {
        kind: RuleKind::Gauss3,
        nodes: &GAUSS3_NODES,
        weights: &GAUSS3_WEIGHTS,
        degree: 5,
    };

    pub fn of(kind: RuleKind) -> Self {
        match kind {
            RuleKind::Trapezoid => Self::TRAPEZOID,
            RuleKind::CavalieriSimpson => Self::CAVALIERI_SIMPSON,
            RuleKind::Gauss3 => Self::GAUSS3,
        }
    }

    pub fn kind(&self) -> RuleKind {
        self.kind
    }

    pub fn nodes(&self) -> &'static [f64] {
        self.nodes
    }

    pub fn weights(&self) -> &'static [f64] {
        self.weights
    }

    /// Highest polynomial degree integrated exactly.
    pub fn exactness_degree(&self) -> u32 {
        self.degree
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            RuleKind::Trapezoid => "trapezoid",
            RuleKind::CavalieriSimpson => "cavalieri_simpson",
            RuleKind::Gauss3 => "gauss3",
        }
    }

    /// `Σ w_k g(t_k)` on the reference interval.
    pub fn integrate_unit(&self, g: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(self.weights).map(|(&t, &w)| w * g(t)).sum()
    }

    /// Composite rule over `pieces` equal subintervals of `[a, b]`.
    pub fn composite(&self, g: impl Fn(f64) -> f64, a: f64, b: f64, pieces: usize) -> f64 {
        let len = (b - a) / pieces as f64;
        (0..pieces)
            .map(|k| {
                let left = a + k as f64 * len;
                len * self.integrate_unit(|t| g(left + len * t))
            })
            .sum()
    }
}

impl fmt::Display for QuadratureRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `(b − a) Σ w_k g(a + (b − a) t_k)`.
pub fn element_integrate(rule: &QuadratureRule, g: impl Fn(f64) -> f64, a: f64, b: f64) -> Result<f64> {
    if !(a < b) {
        return Err(invalid(format!("element [{a}, {b}] is empty or reversed")));
    }
    let len = b - a;
    Ok(len * rule.integrate_unit(|t| g(a + len * t)))
}

/// `T_n(θ) = h Σ_{i=1}^{n-1} θ(x_i)`; the endpoint values are assumed to vanish
/// and are never sampled.
pub fn composite_trapezoid(theta: impl Fn(f64) -> f64, mesh: &Mesh) -> f64 {
    mesh.h() * (1..mesh.n()).map(|i| theta(mesh.node(i))).sum::<f64>()
}

/// Finest level of the oracle: `2^20` subintervals.
pub const ORACLE_MAX_LEVEL: u32 = 20;

/// Smallest tolerance the oracle accepts.
pub const ORACLE_MIN_TOL: f64 = 1e-14;

/// Composite Gauss-3 on `2^k` equal subintervals for `k = 0, 1, ...` until two
/// successive levels differ by at most `tol · max(1, |I|)`; returns the finer
/// value. Subinterval endpoints are dyadic points of `[a, b]`, so a kink at a
/// dyadic point is eventually isolated.
pub fn oracle_integrate(g: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<f64> {
    if !(tol >= ORACLE_MIN_TOL) {
        return Err(invalid(format!("oracle tolerance must be at least {ORACLE_MIN_TOL:e}, got {tol}")));
    }
    if a == b {
        return Ok(0.0);
    }
    if !(a < b) {
        return Err(invalid(format!("interval [{a}, {b}] is reversed")));
    }
    let rule = QuadratureRule::GAUSS3;
    let mut coarse = rule.composite(&g, a, b, 1);
    let mut change = f64::INFINITY;
    for level in 1..=ORACLE_MAX_LEVEL {
        let fine = rule.composite(&g, a, b, 1usize << level);
        change = (fine - coarse).abs();
        if change <= tol * fine.abs().max(1.0) {
            return Ok(fine);
        }
        coarse = fine;
    }
    Err(Error::NoConvergence { subintervals: 1 << ORACLE_MAX_LEVEL, last_change: change })
}
