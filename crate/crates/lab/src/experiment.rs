//! Scheme selection, convergence sweeps and pairwise comparisons.

use std::fmt;
use std::str::FromStr;

use convdiff::model::{interpolate_exact, Mesh, Problem};
use convdiff::norms::{discrete_inf_distance_excluding_outflow, dual_norm, optimal_trial_norm, Reference};
use convdiff::quadrature::oracle_integrate;
use convdiff::schemes::{artificial_diffusion, assemble_rhs, system_matrix};
use convdiff::{BubbleSpec, DiffusionRule, GridFunction, QuadratureRule, RhsRule, SchemeConfig, TridiagonalSystem};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{usage, LabError, Result};
use crate::problems::ProblemRegistry;
use crate::report::{ExperimentReport, Metadata, ReportRow};

/// Relative tolerance of the oracle right-hand side.
pub const ORACLE_RHS_TOL: f64 = 1e-12;

/// Largest `h/ε` for which `e^{−h/ε}` still registers against 1 in double precision.
pub const UNDERFLOW_RATIO: f64 = 36.05;

/// Recommended ceiling on `h/ε`.
pub const SAFE_RATIO: f64 = 30.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SchemeChoice {
    /// `d = ε`; pointwise right-hand side only.
    Central,
    /// `d = ε + h/2`, the quadratic bubble with `β = 3/4`.
    Upwind,
    /// Exponential fitting, the exponential bubble.
    Ias,
    QuadraticBubble { beta: f64 },
    ExpBubble,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RhsChoice {
    Pointwise,
    Trapezoid,
    Cs,
    Gauss3,
    Oracle,
}

impl SchemeChoice {
    /// Parse a scheme name; `beta` is used by `quadratic-bubble` only.
    pub fn parse(name: &str, beta: f64) -> Result<Self> {
        Ok(match name {
            "central" => Self::Central,
            "upwind" => Self::Upwind,
            "ias" => Self::Ias,
            "quadratic-bubble" => {
                if !(beta.is_finite() && beta >= 0.0) {
                    return Err(usage(format!("beta must be finite and non-negative, got {beta}")));
                }
                Self::QuadraticBubble { beta }
            }
            "exp-bubble" => Self::ExpBubble,
            _ => return Err(usage(format!("unknown scheme '{name}'"))),
        })
    }

    fn bubble(&self, epsilon: f64, h: f64) -> Result<Option<BubbleSpec>> {
        Ok(match *self {
            Self::Central => None,
            Self::Upwind => Some(BubbleSpec::quadratic(0.75, h)?),
            Self::QuadraticBubble { beta } => Some(BubbleSpec::quadratic(beta, h)?),
            Self::Ias | Self::ExpBubble => Some(BubbleSpec::exponential(epsilon, h)?),
        })
    }
}

impl fmt::Display for SchemeChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Central => f.write_str("central"),
            Self::Upwind => f.write_str("upwind"),
            Self::Ias => f.write_str("ias"),
            Self::QuadraticBubble { beta } => write!(f, "quadratic-bubble[beta={beta}]"),
            Self::ExpBubble => f.write_str("exp-bubble"),
        }
    }
}

impl FromStr for RhsChoice {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "pointwise" => Self::Pointwise,
            "trapezoid" => Self::Trapezoid,
            "cs" => Self::Cs,
            "gauss3" => Self::Gauss3,
            "oracle" => Self::Oracle,
            _ => return Err(usage(format!("unknown rhs '{s}'"))),
        })
    }
}

impl fmt::Display for RhsChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Pointwise => "pointwise",
            Self::Trapezoid => "trapezoid",
            Self::Cs => "cs",
            Self::Gauss3 => "gauss3",
            Self::Oracle => "oracle",
        })
    }
}

/// A scheme paired with a right-hand side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Config {
    pub scheme: SchemeChoice,
    pub rhs: RhsChoice,
}

/// A config made concrete on one mesh.
#[derive(Debug, Clone)]
pub struct Discretization {
    pub scheme: SchemeConfig,
    pub bubble: Option<BubbleSpec>,
    /// Effective diffusion `d` of the system matrix.
    pub diffusion: f64,
}

impl Config {
    pub fn new(scheme: SchemeChoice, rhs: RhsChoice) -> Result<Self> {
        if scheme == SchemeChoice::Central && rhs != RhsChoice::Pointwise {
            return Err(usage(format!("central scheme has no bubble, so rhs '{rhs}' is undefined")));
        }
        Ok(Self { scheme, rhs })
    }

    pub fn discretize(&self, epsilon: f64, mesh: &Mesh) -> Result<Discretization> {
        let bubble = self.scheme.bubble(epsilon, mesh.h())?;
        let diffusion = match (self.scheme, &bubble) {
            (SchemeChoice::Central, _) => DiffusionRule::Central,
            (SchemeChoice::Upwind, _) => DiffusionRule::StandardUpwind,
            (SchemeChoice::Ias, _) => DiffusionRule::IasSg,
            (_, Some(b)) => DiffusionRule::FromBubble(*b),
            (_, None) => unreachable!("bubble schemes always carry a bubble"),
        };
        let rhs = match (self.rhs, &bubble) {
            (RhsChoice::Pointwise, _) => RhsRule::Pointwise,
            (_, None) => return Err(usage(format!("rhs '{}' needs a bubble", self.rhs))),
            (RhsChoice::Oracle, Some(b)) => RhsRule::BubbleOracle { bubble: *b, tol: ORACLE_RHS_TOL },
            (quad, Some(b)) => {
                let rule = match quad {
                    RhsChoice::Trapezoid => QuadratureRule::TRAPEZOID,
                    RhsChoice::Cs => QuadratureRule::CAVALIERI_SIMPSON,
                    _ => QuadratureRule::GAUSS3,
                };
                RhsRule::BubbleQuadrature { bubble: *b, rule }
            }
        };
        let d = artificial_diffusion(epsilon, mesh.h(), &diffusion)?;
        Ok(Discretization { scheme: SchemeConfig::new(diffusion, rhs), bubble, diffusion: d })
    }
}

impl Discretization {
    pub fn matrix(&self, epsilon: f64, mesh: &Mesh) -> Result<TridiagonalSystem> {
        Ok(system_matrix(&self.scheme.diffusion, epsilon, mesh)?)
    }

    pub fn rhs(&self, problem: &Problem, mesh: &Mesh) -> Result<Vec<f64>> {
        Ok(assemble_rhs(&self.scheme.rhs, problem, mesh)?)
    }
}

/// Solve one config on an `n`-element mesh.
pub fn solve(problem: &Problem, config: &Config, n: usize) -> Result<GridFunction> {
    let mesh = Mesh::uniform(n)?;
    let disc = config.discretize(problem.epsilon(), &mesh)?;
    let u = disc.matrix(problem.epsilon(), &mesh)?.solve(&disc.rhs(problem, &mesh)?)?;
    Ok(GridFunction::new(mesh, u)?)
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SweepOptions {
    /// Interior nodes next to `x = 1` left out of `error_inf`.
    pub skip_outflow: usize,
}

/// Solve `problem` for every config and every `n`, measuring errors against
/// the exact solution when one is known. Rows are ordered by scheme, rhs and
/// `n`; `observed_order` compares each row with the previous `n` of its config.
pub fn run_convergence(
    registry: &ProblemRegistry,
    problem_id: &str,
    epsilon: f64,
    configs: &[Config],
    n_list: &[usize],
    options: SweepOptions,
) -> Result<ExperimentReport> {
    if configs.is_empty() {
        return Err(usage("no scheme configs given"));
    }
    if n_list.is_empty() || n_list.iter().any(|&n| n < 2) || n_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(usage("n list must be non-empty, strictly increasing and at least 2"));
    }
    let problem = registry.problem(problem_id, epsilon)?;
    let mut ordered = configs.to_vec();
    ordered.sort_by_key(|c| (c.scheme.to_string(), c.rhs.to_string()));
    ordered.dedup();

    let cells: Vec<(Config, usize)> =
        ordered.iter().flat_map(|c| n_list.iter().map(move |&n| (*c, n))).collect();
    let rows = cells
        .par_iter()
        .map(|(config, n)| measure(&problem, config, *n, options))
        .collect::<Result<Vec<_>>>()?;

    let mut rows = rows;
    for k in 1..rows.len() {
        let (prev, cur) = (&rows[k - 1], &rows[k]);
        if prev.scheme == cur.scheme && prev.quadrature == cur.quadrature {
            rows[k].observed_order = observed_order(prev.error_inf, cur.error_inf, prev.n, cur.n);
        }
    }
    Ok(ExperimentReport { metadata: Metadata::now(problem_id), rows })
}

/// `log(e₁/e₂) / log(n₂/n₁)`; absent when either error is missing or zero.
pub fn observed_order(e1: Option<f64>, e2: Option<f64>, n1: usize, n2: usize) -> Option<f64> {
    let (e1, e2) = (e1?, e2?);
    if !(e1 > 0.0 && e2 > 0.0 && e1.is_finite() && e2.is_finite()) {
        return None;
    }
    Some((e1 / e2).ln() / (n2 as f64 / n1 as f64).ln())
}

fn measure(problem: &Problem, config: &Config, n: usize, options: SweepOptions) -> Result<ReportRow> {
    let mesh = Mesh::uniform(n)?;
    let disc = config.discretize(problem.epsilon(), &mesh)?;
    let u = disc.matrix(problem.epsilon(), &mesh)?.solve(&disc.rhs(problem, &mesh)?)?;
    let u = GridFunction::new(mesh, u)?;
    let (error_inf, error_star) = match problem.exact() {
        Some(exact) => {
            let inf = discrete_inf_distance_excluding_outflow(&u, Reference::Function(&**exact), options.skip_outflow)?;
            let diff = interpolate_exact(problem, &mesh)?.checked_sub(&u)?;
            (Some(inf), Some(optimal_trial_norm(&diff, disc.diffusion)?))
        }
        None => (None, None),
    };
    Ok(ReportRow {
        scheme: config.scheme.to_string(),
        quadrature: config.rhs.to_string(),
        epsilon: problem.epsilon(),
        n,
        h: mesh.h(),
        error_inf,
        error_star,
        observed_order: None,
    })
}

/// Two configs sharing one system matrix, solved with their own loads.
#[derive(Debug, Clone, Serialize)]
pub struct Comparison {
    pub problem: String,
    pub scheme_a: String,
    pub rhs_a: String,
    pub scheme_b: String,
    pub rhs_b: String,
    pub epsilon: f64,
    pub n: usize,
    pub h: f64,
    pub diffusion: f64,
    /// `‖u_B − u_A‖` in the optimal trial norm.
    pub difference_norm: f64,
    /// Dual norm of `F_B − F_A`.
    pub load_dual_norm: f64,
    pub gap: f64,
    /// `h² (sup|f''|/12 + sup|f'|/6) + M h ‖f‖_{L²}`, `M` the largest `sup|B|` of the two bubbles.
    pub bound: Option<f64>,
    pub bound_holds: Option<bool>,
}

pub fn compare_solutions(
    registry: &ProblemRegistry,
    problem_id: &str,
    epsilon: f64,
    n: usize,
    a: &Config,
    b: &Config,
) -> Result<Comparison> {
    let problem = registry.problem(problem_id, epsilon)?;
    let mesh = Mesh::uniform(n)?;
    let (da, db) = (a.discretize(epsilon, &mesh)?, b.discretize(epsilon, &mesh)?);
    let matrix = da.matrix(epsilon, &mesh)?;
    if !same_matrix(&matrix, &db.matrix(epsilon, &mesh)?) {
        return Err(LabError::IncomparableConfigs(format!(
            "{} (d = {}) and {} (d = {}) assemble different matrices",
            a.scheme, da.diffusion, b.scheme, db.diffusion
        )));
    }
    let (fa, fb) = (da.rhs(&problem, &mesh)?, db.rhs(&problem, &mesh)?);
    let ua = GridFunction::new(mesh, matrix.solve(&fa)?)?;
    let ub = GridFunction::new(mesh, matrix.solve(&fb)?)?;
    let difference_norm = optimal_trial_norm(&ub.checked_sub(&ua)?, da.diffusion)?;
    let load_diff: Vec<f64> = fb.iter().zip(&fa).map(|(x, y)| x - y).collect();
    let load_dual_norm = dual_norm(&load_diff, &mesh)?;

    let bound = match problem.known_source_bounds() {
        Some(sb) => {
            let h = mesh.h();
            let m = [&da.bubble, &db.bubble].into_iter().flatten().map(BubbleSpec::sup_abs).fold(0.0, f64::max);
            let f_l2 = oracle_integrate(|x| problem.source(x).powi(2), 0.0, 1.0, ORACLE_RHS_TOL)?.sqrt();
            Some(h * h * (sb.second / 12.0 + sb.first / 6.0) + m * h * f_l2)
        }
        None => None,
    };
    Ok(Comparison {
        problem: problem_id.to_owned(),
        scheme_a: a.scheme.to_string(),
        rhs_a: a.rhs.to_string(),
        scheme_b: b.scheme.to_string(),
        rhs_b: b.rhs.to_string(),
        epsilon,
        n,
        h: mesh.h(),
        diffusion: da.diffusion,
        difference_norm,
        load_dual_norm,
        gap: (difference_norm - load_dual_norm).abs(),
        bound,
        bound_holds: bound.map(|bd| difference_norm <= bd),
    })
}

fn same_matrix(a: &TridiagonalSystem, b: &TridiagonalSystem) -> bool {
    let scale = a.main().iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let close = |x: &[f64], y: &[f64]| x.iter().zip(y).all(|(p, q)| (p - q).abs() <= 1e-12 * scale);
    a.size() == b.size()
        && close(a.lower(), b.lower())
        && close(a.main(), b.main())
        && close(a.upper(), b.upper())
}

/// Advice when `e^{−h/ε}` vanishes against 1 on an `n`-element mesh.
pub fn underflow_warning(epsilon: f64, n: usize) -> Option<String> {
    let ratio = 1.0 / (n as f64 * epsilon);
    (ratio > UNDERFLOW_RATIO).then(|| {
        let n_safe = (1.0 / (SAFE_RATIO * epsilon)).ceil();
        format!(
            "h/eps = {ratio:.3e} exceeds {UNDERFLOW_RATIO}: exp(-h/eps) underflows against 1 and the \
             exponential scheme degenerates to pure upwinding; choose h <= {SAFE_RATIO}*eps (n >= {n_safe})"
        )
    })
}
