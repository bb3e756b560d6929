//! Meshes, problems and grid functions.

use std::fmt;
use std::ops::Sub;
use std::sync::Arc;

use crate::error::{invalid, Error, Result};

/// Uniform partition of `[0, 1]` into `n` subintervals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mesh {
    n: usize,
    h: f64,
}

impl Mesh {
    pub fn uniform(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(invalid(format!("mesh needs at least 2 subintervals, got {n}")));
        }
        Ok(Self { n, h: 1.0 / n as f64 })
    }

    /// Number of subintervals.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    /// Number of interior nodes, i.e. the size of every system on this mesh.
    pub fn interior(&self) -> usize {
        self.n - 1
    }

    /// Node `x_j = j h`; the last node is pinned to exactly 1.
    pub fn node(&self, j: usize) -> f64 {
        debug_assert!(j <= self.n);
        if j == self.n {
            1.0
        } else {
            j as f64 * self.h
        }
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..=self.n).map(|j| self.node(j)).collect()
    }

    /// Interior nodes `x_1 .. x_{n-1}`.
    pub fn interior_nodes(&self) -> Vec<f64> {
        (1..self.n).map(|j| self.node(j)).collect()
    }
}

pub type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Sup-norm bounds of the first two source derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SourceBounds {
    pub first: f64,
    pub second: f64,
}

/// The model problem with unit convection: `-ε u'' + u' = f`, homogeneous
/// Dirichlet data.
#[derive(Clone)]
pub struct Problem {
    epsilon: f64,
    source: ScalarFn,
    bounds: Option<SourceBounds>,
    exact: Option<ScalarFn>,
}

impl fmt::Debug for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Problem")
            .field("epsilon", &self.epsilon)
            .field("bounds", &self.bounds)
            .field("has_exact", &self.exact.is_some())
            .finish()
    }
}

impl Problem {
    pub fn new<F>(epsilon: f64, source: F) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        if !(epsilon > 0.0 && epsilon.is_finite()) {
            return Err(invalid(format!("diffusion must be positive and finite, got {epsilon}")));
        }
        Ok(Self { epsilon, source: Arc::new(source), bounds: None, exact: None })
    }

    pub fn with_source_bounds(mut self, first: f64, second: f64) -> Self {
        self.bounds = Some(SourceBounds { first, second });
        self
    }

    pub fn with_exact<F>(mut self, exact: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        self.exact = Some(Arc::new(exact));
        self
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn source(&self, x: f64) -> f64 {
        (self.source)(x)
    }

    pub fn source_fn(&self) -> &ScalarFn {
        &self.source
    }

    pub fn exact(&self) -> Option<&ScalarFn> {
        self.exact.as_ref()
    }

    pub fn known_source_bounds(&self) -> Option<SourceBounds> {
        self.bounds
    }

    /// Analytic bounds when supplied, otherwise finite-difference estimates
    /// sampled on a `10 n`-interval grid.
    pub fn source_bounds(&self, mesh: &Mesh) -> SourceBounds {
        if let Some(b) = self.bounds {
            return b;
        }
        let samples = 10 * mesh.n();
        let dx = 1.0 / samples as f64;
        let vals: Vec<f64> = (0..=samples).map(|k| self.source(k as f64 * dx)).collect();
        let first = vals
            .windows(2)
            .map(|w| ((w[1] - w[0]) / dx).abs())
            .fold(0.0, f64::max);
        let second = vals
            .windows(3)
            .map(|w| ((w[2] - 2.0 * w[1] + w[0]) / (dx * dx)).abs())
            .fold(0.0, f64::max);
        SourceBounds { first, second }
    }
}

/// Rejects any convection coefficient other than 1; problems are never
/// rescaled behind the caller's back.
pub fn require_unit_convection(kappa: f64) -> Result<()> {
    if kappa == 1.0 {
        Ok(())
    } else {
        Err(Error::UnsupportedProblem(format!(
            "convection coefficient must be 1, got {kappa}"
        )))
    }
}

/// `f(x) = 2x` with its closed-form solution
///
/// ```text
/// u(x) = x² + 2εx − (1+2ε)·(e^{(x−1)/ε} − e^{−1/ε}) / (1 − e^{−1/ε})
/// ```
///
/// written so that only non-positive exponents are evaluated.
pub fn test_problem_f2x(epsilon: f64) -> Result<Problem> {
    let problem = Problem::new(epsilon, |x| 2.0 * x)?.with_source_bounds(2.0, 0.0);
    let denom = -(-1.0 / epsilon).exp_m1();
    Ok(problem.with_exact(move |x| {
        // e^{(x−1)/ε} − e^{−1/ε} = e^{(x−1)/ε} (1 − e^{−x/ε})
        let layer = ((x - 1.0) / epsilon).exp() * -(-x / epsilon).exp_m1() / denom;
        x * x + 2.0 * epsilon * x - (1.0 + 2.0 * epsilon) * layer
    }))
}

/// `f = 0`, whose solution vanishes identically.
pub fn test_problem_zero(epsilon: f64) -> Result<Problem> {
    Ok(Problem::new(epsilon, |_| 0.0)?
        .with_source_bounds(0.0, 0.0)
        .with_exact(|_| 0.0))
}

/// Continuous piecewise-linear function on a mesh, stored by its interior
/// nodal values; both boundary values are zero.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    mesh: Mesh,
    values: Vec<f64>,
}

impl GridFunction {
    pub fn new(mesh: Mesh, values: Vec<f64>) -> Result<Self> {
        if values.len() != mesh.interior() {
            return Err(invalid(format!(
                "grid function on n = {} needs {} values, got {}",
                mesh.n(),
                mesh.interior(),
                values.len()
            )));
        }
        Ok(Self { mesh, values })
    }

    pub fn zeros(mesh: Mesh) -> Self {
        Self { mesh, values: vec![0.0; mesh.interior()] }
    }

    /// Samples `g` at the interior nodes.
    pub fn from_fn(mesh: Mesh, g: impl Fn(f64) -> f64) -> Self {
        let values = mesh.interior_nodes().into_iter().map(g).collect();
        Self { mesh, values }
    }

    /// The hat function attached to interior node `j` (1-based).
    pub fn hat(mesh: Mesh, j: usize) -> Result<Self> {
        if j == 0 || j >= mesh.n() {
            return Err(invalid(format!("hat index {j} is not an interior node")));
        }
        let mut u = Self::zeros(mesh);
        u.values[j - 1] = 1.0;
        Ok(u)
    }

    pub fn mesh(&self) -> &Mesh {
        &self.mesh
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Value at node `x_j`, `j = 0..=n`, including the zero boundary values.
    pub fn at_node(&self, j: usize) -> f64 {
        if j == 0 || j == self.mesh.n() {
            0.0
        } else {
            self.values[j - 1]
        }
    }

    /// All `n + 1` nodal values, boundary zeros included.
    pub fn with_boundary(&self) -> Vec<f64> {
        let mut full = Vec::with_capacity(self.mesh.n() + 1);
        full.push(0.0);
        full.extend_from_slice(&self.values);
        full.push(0.0);
        full
    }

    pub fn checked_sub(&self, other: &GridFunction) -> Result<GridFunction> {
        if self.mesh != other.mesh {
            return Err(invalid("grid functions live on different meshes"));
        }
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect();
        Ok(GridFunction { mesh: self.mesh, values })
    }
}

impl Sub for &GridFunction {
    type Output = GridFunction;

    /// Panics on a mesh mismatch; use [`GridFunction::checked_sub`] otherwise.
    fn sub(self, rhs: &GridFunction) -> GridFunction {
        self.checked_sub(rhs).expect("mesh mismatch in grid function subtraction")
    }
}

/// Nodal interpolant `I_h(u)` of the problem's exact solution.
pub fn interpolate_exact(problem: &Problem, mesh: &Mesh) -> Result<GridFunction> {
    let exact = problem
        .exact()
        .ok_or_else(|| Error::UnsupportedProblem("problem has no exact solution".into()))?;
    Ok(GridFunction::from_fn(*mesh, |x| exact(x)))
}
