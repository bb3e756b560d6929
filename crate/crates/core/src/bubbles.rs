//! Bubble generating functions on the reference element `[0, h]`.
//!
//! A bubble `B` vanishes at both ends of the element and has positive mean
//! `b1 = (1/h) ∫₀ʰ B`. Its translates `B_i(x) = B(x − x_{i−1})` modify the
//! hat test functions to `φ_j + B_j − B_{j+1}`, which adds the diffusion
//! `b1 h` to the Galerkin form. Translates are never built as global
//! functions: callers evaluate `B` at the local coordinate `x − x_{i−1}`.
//!
//! The exponential bubble solves `−ε B'' − B' = 1/h` with zero boundary
//! values. Every exponential in this module has a non-positive argument, so
//! the evaluation degrades to the correct limit (underflow to zero) rather
//! than overflowing when `h ≫ ε`.

use crate::error::{invalid, Result};

/// Stable coefficients of the exponentially fitted stencil.
///
/// With `r = h/ε` and `q = e^{−r}`: `g0 = tanh(Pe) = (1 − q)/(1 + q)`,
/// `l_d = (1 + g0)/2`, `u_d = (1 − g0)/2`, `l0 = l_d/g0`, `u0 = u_d/g0`.
/// Once `q` drops below half an ulp of 1, `g0` rounds to exactly 1 and the
/// coefficients take their limits `l_d = l0 = 1`, `u_d = u0 = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PecletCoefficients {
    /// Local Peclet number `h/(2ε)`.
    pub pe: f64,
    pub g0: f64,
    pub l_d: f64,
    pub u_d: f64,
    pub l0: f64,
    pub u0: f64,
}

pub fn peclet_coefficients(epsilon: f64, h: f64) -> Result<PecletCoefficients> {
    check_positive("epsilon", epsilon)?;
    check_positive("h", h)?;
    let r = h / epsilon;
    let q = (-r).exp();
    // 1 − e^{−r} without cancellation for small r
    let one_minus_q = -(-r).exp_m1();
    let g0 = one_minus_q / (1.0 + q);
    let l_d = 0.5 * (1.0 + g0);
    let u_d = 0.5 * (1.0 - g0);
    Ok(PecletCoefficients { pe: 0.5 * r, g0, l_d, u_d, l0: l_d / g0, u0: u_d / g0 })
}

/// `coth(x) − 1/x`, switching to its Taylor series near zero where the
/// direct difference cancels.
pub(crate) fn langevin(x: f64) -> f64 {
    if x < 0.05 {
        let x2 = x * x;
        x * (1.0 / 3.0 - x2 * (1.0 / 45.0 - x2 * (2.0 / 945.0 - x2 / 4725.0)))
    } else {
        let q = (-2.0 * x).exp();
        (1.0 + q) / -(-2.0 * x).exp_m1() - 1.0 / x
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BubbleKind {
    /// `B(x) = (4β/h²) x (h − x)`.
    Quadratic { beta: f64 },
    /// `B(x) = l0 (1 − e^{−x/ε}) − x/h`.
    Exponential { coefficients: PecletCoefficients },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BubbleSpec {
    kind: BubbleKind,
    h: f64,
    epsilon: f64,
    b1: f64,
    midpoint: f64,
}

impl BubbleSpec {
    pub fn quadratic(beta: f64, h: f64) -> Result<Self> {
        check_positive("beta", beta)?;
        check_positive("h", h)?;
        Ok(Self {
            kind: BubbleKind::Quadratic { beta },
            h,
            epsilon: f64::NAN,
            b1: 2.0 * beta / 3.0,
            midpoint: beta,
        })
    }

    pub fn exponential(epsilon: f64, h: f64) -> Result<Self> {
        let c = peclet_coefficients(epsilon, h)?;
        // b1 = 1/(2 g0) − ε/h = (coth Pe − 1/Pe)/2
        let b1 = 0.5 * langevin(c.pe);
        let midpoint = c.l0 * -(-c.pe).exp_m1() - 0.5;
        Ok(Self { kind: BubbleKind::Exponential { coefficients: c }, h, epsilon, b1, midpoint })
    }

    pub fn kind(&self) -> &BubbleKind {
        &self.kind
    }

    pub fn is_exponential(&self) -> bool {
        matches!(self.kind, BubbleKind::Exponential { .. })
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    /// Diffusion the exponential bubble was built for; NaN for quadratic bubbles.
    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// Mean value `(1/h) ∫₀ʰ B`.
    pub fn b1(&self) -> f64 {
        self.b1
    }

    /// `∫₀ʰ B = b1 h`.
    pub fn integral(&self) -> f64 {
        self.b1 * self.h
    }

    /// `B(h/2)`.
    pub fn midpoint(&self) -> f64 {
        self.midpoint
    }

    pub fn peclet(&self) -> Option<&PecletCoefficients> {
        match &self.kind {
            BubbleKind::Exponential { coefficients } => Some(coefficients),
            BubbleKind::Quadratic { .. } => None,
        }
    }

    /// `sup |B|` over `[0, h]`. Both bubbles are non-negative; the maximum is
    /// located from `B' = 0`.
    pub fn sup_abs(&self) -> f64 {
        match self.kind {
            BubbleKind::Quadratic { beta } => beta,
            BubbleKind::Exponential { coefficients: c } => {
                // B'(x) = (l0/ε) e^{−x/ε} − 1/h vanishes at x* = ε ln(l0 h / ε)
                let x_star = self.epsilon * (c.l0 * self.h / self.epsilon).ln();
                self.value(x_star.clamp(0.0, self.h))
            }
        }
    }

    /// `B(x)` for `x ∈ [0, h]`.
    pub fn evaluate(&self, x: f64) -> Result<f64> {
        if !(0.0..=self.h).contains(&x) {
            return Err(invalid(format!("bubble argument {x} outside [0, {}]", self.h)));
        }
        Ok(self.value(x))
    }

    /// `B` at the local coordinate `t h`, `t ∈ [0, 1]`; exact zero at both ends.
    pub(crate) fn value_at_fraction(&self, t: f64) -> f64 {
        if t <= 0.0 || t >= 1.0 {
            return 0.0;
        }
        match self.kind {
            BubbleKind::Quadratic { beta } => 4.0 * beta * t * (1.0 - t),
            BubbleKind::Exponential { coefficients: c } => {
                c.l0 * -(-t * self.h / self.epsilon).exp_m1() - t
            }
        }
    }

    fn value(&self, x: f64) -> f64 {
        if x <= 0.0 || x >= self.h {
            return 0.0;
        }
        match self.kind {
            BubbleKind::Quadratic { beta } => {
                let t = x / self.h;
                4.0 * beta * t * (1.0 - t)
            }
            BubbleKind::Exponential { coefficients: c } => {
                c.l0 * -(-x / self.epsilon).exp_m1() - x / self.h
            }
        }
    }
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(invalid(format!("{name} must be positive and finite, got {v}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::oracle_integrate;

    #[test]
    fn peclet_at_unit_pe() {
        let c = peclet_coefficients(0.05, 0.1).unwrap();
        assert_eq!(c.pe, 1.0);
        // tanh(1) to 17 digits
        assert!((c.g0 - 0.761_594_155_955_764_9).abs() < 1e-15);
        assert!((c.l_d + c.u_d - 1.0).abs() <= 1e-15);
        assert!((c.l_d - c.u_d - c.g0).abs() <= 1e-15);
        assert!((c.l0 - c.l_d / c.g0).abs() < 1e-15);
        assert!((c.u0 - c.u_d / c.g0).abs() < 1e-15);
    }

    #[test]
    fn peclet_underflow_limit() {
        let c = peclet_coefficients(1e-3, 1.0).unwrap();
        assert_eq!(c.g0, 1.0);
        assert_eq!(c.l_d, 1.0);
        assert_eq!(c.u_d, 0.0);
        assert_eq!(c.l0, 1.0);
        assert_eq!(c.u0, 0.0);
    }

    #[test]
    fn peclet_matches_tanh_and_is_monotone() {
        let mut prev = 0.0;
        for k in 1..=1000 {
            let pe = 0.01 * k as f64;
            let c = peclet_coefficients(0.5, pe).unwrap();
            assert!((c.g0 - pe.tanh()).abs() <= 1e-15, "pe = {pe}");
            assert!(c.g0 > 0.0 && c.g0 <= 1.0);
            assert!(c.g0 > prev || c.g0 == 1.0);
            prev = c.g0;
        }
    }

    #[test]
    fn quadratic_bubble_values() {
        let b = BubbleSpec::quadratic(0.75, 0.1).unwrap();
        assert_eq!(b.b1(), 0.5);
        assert_eq!(b.evaluate(0.0).unwrap(), 0.0);
        assert_eq!(b.evaluate(0.1).unwrap(), 0.0);
        assert_eq!(b.evaluate(0.05).unwrap(), 0.75);
        assert_eq!(b.midpoint(), 0.75);

        let b = BubbleSpec::quadratic(1.0, 0.1).unwrap();
        let integral = oracle_integrate(|x| b.evaluate(x).unwrap(), 0.0, 0.1, 1e-13).unwrap();
        assert!((integral - 0.2 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn exponential_bubble_at_unit_pe() {
        let (eps, h) = (0.05, 0.1);
        let b = BubbleSpec::exponential(eps, h).unwrap();
        let tanh1 = 0.761_594_155_955_764_9;
        let expected = h / (2.0 * tanh1) - eps;
        assert!((expected - 0.015_651_8).abs() < 1e-7);
        assert!((b.integral() - expected).abs() < 1e-15);
        let quad = oracle_integrate(|x| b.evaluate(x).unwrap(), 0.0, h, 1e-14).unwrap();
        assert!((quad - expected).abs() < 1e-14);

        let l0 = (1.0 + tanh1) / (2.0 * tanh1);
        let mid = l0 * (1.0 - (-1.0f64).exp()) - 0.5;
        assert!((b.midpoint() - mid).abs() < 1e-15);
        assert!((b.evaluate(h / 2.0).unwrap() - mid).abs() < 1e-15);
        assert_eq!(b.evaluate(0.0).unwrap(), 0.0);
        assert_eq!(b.evaluate(h).unwrap(), 0.0);
    }

    #[test]
    fn exponential_bubble_solves_its_ode() {
        // fourth-order five-point stencils
        for (eps, h) in [(0.05, 0.1), (0.5, 0.125), (0.02, 0.1)] {
            let b = BubbleSpec::exponential(eps, h).unwrap();
            let d = 1e-4;
            for k in 1..10 {
                let x = h * k as f64 / 10.0;
                let v: Vec<f64> = (-2..=2).map(|i| b.value(x + i as f64 * d)).collect();
                let d1 = (v[0] - 8.0 * v[1] + 8.0 * v[3] - v[4]) / (12.0 * d);
                let d2 = (-v[0] + 16.0 * v[1] - 30.0 * v[2] + 16.0 * v[3] - v[4]) / (12.0 * d * d);
                let residual = -eps * d2 - d1 - 1.0 / h;
                assert!(residual.abs() < 1e-8, "eps {eps} h {h} x {x}: {residual}");
            }
        }
    }

    #[test]
    fn exponential_b1_positive_for_large_eps() {
        for eps in [1.0, 10.0, 1e3, 1e6] {
            let b = BubbleSpec::exponential(eps, 0.1).unwrap();
            assert!(b.b1() > 0.0, "eps {eps}");
        }
    }

    #[test]
    fn exponential_integral_identity() {
        for (eps, h) in [(0.5, 0.01), (0.1, 0.1), (1e-3, 0.1), (1e-6, 0.01), (2.0, 0.5)] {
            let b = BubbleSpec::exponential(eps, h).unwrap();
            let g0 = b.peclet().unwrap().g0;
            let lhs = b.integral() + eps;
            let rhs = h / (2.0 * g0);
            assert!((lhs - rhs).abs() <= 1e-13 * rhs, "eps {eps} h {h}");
        }
    }

    #[test]
    fn langevin_branches_agree() {
        for x in [0.049_999_f64, 0.05, 0.050_001] {
            let direct = 1.0 / x.tanh() - 1.0 / x;
            assert!((langevin(x) - direct).abs() < 1e-13);
        }
    }

    #[test]
    fn sup_abs_matches_sampling() {
        let q = BubbleSpec::quadratic(0.75, 0.2).unwrap();
        let sampled = (0..=1000).map(|k| q.value(0.2 * k as f64 / 1000.0).abs()).fold(0.0, f64::max);
        assert!((sampled - 0.75).abs() <= 1e-12);
        assert_eq!(q.sup_abs(), 0.75);

        for (eps, h) in [(0.05, 0.1), (1e-4, 0.1), (1.0, 0.1)] {
            let e = BubbleSpec::exponential(eps, h).unwrap();
            let sampled = (0..=10000).map(|k| e.value(h * k as f64 / 1e4).abs()).fold(0.0, f64::max);
            assert!(e.sup_abs() >= sampled - 1e-12);
            assert!(e.sup_abs() - sampled < 1e-5 * e.sup_abs().max(1e-3));
        }
    }

    #[test]
    fn out_of_range_and_bad_params() {
        let b = BubbleSpec::quadratic(1.0, 0.1).unwrap();
        assert!(b.evaluate(-1e-3).is_err());
        assert!(b.evaluate(0.2).is_err());
        assert!(BubbleSpec::quadratic(0.0, 0.1).is_err());
        assert!(BubbleSpec::exponential(-1.0, 0.1).is_err());
        assert!(peclet_coefficients(0.1, 0.0).is_err());
    }
}
