//! Discrete norms on continuous piecewise-linear functions.
//!
//! For `u_h` in the trial space and a diffusion `d`, the optimal trial norm
//! is `sup_v b_d(v, u_h) / |v|` with `b_d(v, u) = d (u', v') + (u', v)`. It
//! has the explicit form `d² |u_h|² + |u_h|²_{*,h}` where `|·|_{*,h}` is the
//! variance of the element averages. Both routes are implemented here so
//! they can be checked against each other.

use crate::error::{invalid, Result};
use crate::model::{GridFunction, Mesh};
use crate::schemes::{assemble_system_matrix, stiffness_matrix};

/// `|u| = ‖u'‖_{L²}`.
pub fn h1_seminorm(u: &GridFunction) -> f64 {
    let h = u.mesh().h();
    let full = u.with_boundary();
    (full.windows(2).map(|w| (w[1] - w[0]).powi(2)).sum::<f64>() / h).sqrt()
}

/// Exact `L²` norm of the piecewise-linear function.
pub fn l2_norm(u: &GridFunction) -> f64 {
    let h = u.mesh().h();
    let full = u.with_boundary();
    let sum: f64 = full.windows(2).map(|w| w[0] * w[0] + w[0] * w[1] + w[1] * w[1]).sum();
    (sum * h / 3.0).sqrt()
}

/// `|u|_{*,h}`: the standard deviation of the element averages
/// `(u_{i−1} + u_i)/2`, `i = 1..n`, whose mean is `∫₀¹ u`.
pub fn star_seminorm(u: &GridFunction) -> f64 {
    let full = u.with_boundary();
    let averages: Vec<f64> = full.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
    let n = averages.len() as f64;
    let mean = averages.iter().sum::<f64>() / n;
    (averages.iter().map(|a| (a - mean).powi(2)).sum::<f64>() / n).sqrt()
}

/// `sqrt(d² |u|² + |u|²_{*,h})`.
pub fn optimal_trial_norm(u: &GridFunction, d: f64) -> Result<f64> {
    check_diffusion(d)?;
    Ok((d * d * h1_seminorm(u).powi(2) + star_seminorm(u).powi(2)).sqrt())
}

/// `sup_v F(v)/|v|` for the functional with values `coeffs[j-1] = F(φ_j)`,
/// via the Riesz representer `w = (S/h)⁻¹ F`: the norm is `sqrt(Fᵀ w)`.
pub fn dual_norm(coeffs: &[f64], mesh: &Mesh) -> Result<f64> {
    if coeffs.len() != mesh.interior() {
        return Err(invalid(format!(
            "functional on n = {} needs {} values, got {}",
            mesh.n(),
            mesh.interior(),
            coeffs.len()
        )));
    }
    let gram = stiffness_matrix(mesh);
    // (S/h) w = F  <=>  S w = h F
    let scaled: Vec<f64> = coeffs.iter().map(|f| mesh.h() * f).collect();
    let w = gram.solve(&scaled)?;
    let q: f64 = coeffs.iter().zip(&w).map(|(f, w)| f * w).sum();
    Ok(q.max(0.0).sqrt())
}

/// `F_j = b_d(φ_j, u) = ((d/h) S U + C U)_j`.
pub fn bilinear_form_action(u: &GridFunction, d: f64) -> Result<Vec<f64>> {
    check_diffusion(d)?;
    assemble_system_matrix(d, u.mesh())?.apply(u.values())
}

/// The optimal trial norm straight from its definition as a supremum.
pub fn optimal_trial_norm_via_sup(u: &GridFunction, d: f64) -> Result<f64> {
    let f = bilinear_form_action(u, d)?;
    dual_norm(&f, u.mesh())
}

/// Reference values for [`discrete_inf_distance`].
pub enum Reference<'a> {
    Function(&'a dyn Fn(f64) -> f64),
    Grid(&'a GridFunction),
}

/// `max_j |u_j − ref(x_j)|` over the interior nodes.
pub fn discrete_inf_distance(u: &GridFunction, reference: Reference<'_>) -> Result<f64> {
    discrete_inf_distance_excluding_outflow(u, reference, 0)
}

/// As [`discrete_inf_distance`] but ignoring the last `skip` interior nodes,
/// the ones inside the outflow boundary layer at `x = 1` when `ε ≪ h`.
pub fn discrete_inf_distance_excluding_outflow(
    u: &GridFunction,
    reference: Reference<'_>,
    skip: usize,
) -> Result<f64> {
    let mesh = u.mesh();
    let count = mesh.interior().saturating_sub(skip);
    let values = u.values();
    let distance = |r: &dyn Fn(usize) -> f64| {
        (0..count).map(|i| (values[i] - r(i)).abs()).fold(0.0, f64::max)
    };
    match reference {
        Reference::Function(g) => Ok(distance(&|i| g(mesh.node(i + 1)))),
        Reference::Grid(v) => {
            if v.mesh() != mesh {
                return Err(invalid("grid functions live on different meshes"));
            }
            let other = v.values();
            Ok(distance(&|i| other[i]))
        }
    }
}

fn check_diffusion(d: f64) -> Result<()> {
    if d > 0.0 && d.is_finite() {
        Ok(())
    } else {
        Err(invalid(format!("diffusion must be positive, got {d}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mesh(n: usize) -> Mesh {
        Mesh::uniform(n).unwrap()
    }

    #[test]
    fn zero_function() {
        let z = GridFunction::zeros(mesh(6));
        assert_eq!(h1_seminorm(&z), 0.0);
        assert_eq!(l2_norm(&z), 0.0);
        assert_eq!(star_seminorm(&z), 0.0);
        assert_eq!(optimal_trial_norm(&z, 0.3).unwrap(), 0.0);
        assert_eq!(optimal_trial_norm_via_sup(&z, 0.3).unwrap(), 0.0);
        assert_eq!(dual_norm(&[0.0; 5], &mesh(6)).unwrap(), 0.0);
    }

    #[test]
    fn hat_function_norms() {
        let m = mesh(8);
        let h = m.h();
        let hat = GridFunction::hat(m, 3).unwrap();
        assert!((h1_seminorm(&hat) - (2.0 / h).sqrt()).abs() < 1e-14);
        assert!((l2_norm(&hat) - (2.0 * h / 3.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn kernel_of_star_seminorm() {
        let m = mesh(4);
        let u = GridFunction::new(m, vec![1.0, 0.0, 1.0]).unwrap();
        assert!(star_seminorm(&u) < 1e-16);
        let d = 0.7;
        assert!((optimal_trial_norm(&u, d).unwrap() - d * h1_seminorm(&u)).abs() < 1e-15);

        let m = mesh(8);
        let u = GridFunction::new(m, vec![1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0]).unwrap();
        assert!(star_seminorm(&u) < 1e-16);
    }

    #[test]
    fn hat_two_routes_agree() {
        let u = GridFunction::hat(mesh(4), 2).unwrap();
        let a = optimal_trial_norm(&u, 1.0).unwrap();
        let b = optimal_trial_norm_via_sup(&u, 1.0).unwrap();
        assert!((a - b).abs() <= 1e-12 * a);
    }

    #[test]
    fn riesz_identity() {
        let m = mesh(7);
        let w = vec![0.3, -1.0, 2.0, 0.5, 0.0, 1.5];
        let f: Vec<f64> = stiffness_matrix(&m).apply(&w).unwrap().iter().map(|v| v / m.h()).collect();
        let expected: f64 = f.iter().zip(&w).map(|(a, b)| a * b).sum::<f64>().sqrt();
        assert!((dual_norm(&f, &m).unwrap() - expected).abs() < 1e-13);
        assert!(dual_norm(&f[..3], &m).is_err());
    }

    #[test]
    fn inf_distance() {
        let m = mesh(5);
        let u = GridFunction::new(m, vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(discrete_inf_distance(&u, Reference::Grid(&u)).unwrap(), 0.0);
        let g = |x: f64| 5.0 * x;
        assert!(discrete_inf_distance(&u, Reference::Function(&g)).unwrap() < 1e-15);
        let v = GridFunction::new(m, vec![1.0, 2.5, 3.0, 0.0]).unwrap();
        assert_eq!(discrete_inf_distance(&u, Reference::Grid(&v)).unwrap(), 4.0);
        assert_eq!(discrete_inf_distance_excluding_outflow(&u, Reference::Grid(&v), 1).unwrap(), 0.5);
        let other = GridFunction::zeros(mesh(6));
        assert!(discrete_inf_distance(&u, Reference::Grid(&other)).is_err());
    }

    #[test]
    fn bad_diffusion() {
        let u = GridFunction::hat(mesh(4), 1).unwrap();
        assert!(optimal_trial_norm(&u, 0.0).is_err());
        assert!(optimal_trial_norm_via_sup(&u, -1.0).is_err());
    }
}
