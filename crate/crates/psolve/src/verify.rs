//! Independent certification of solver results.
//!
//! [`verify_symbolic`] recomputes the log-derivative identity from scratch
//! with exact arithmetic. [`numeric_drift`] integrates the ODE with
//! classical RK4 and accumulates the line integral of `R·(M dx − N dy)`
//! along the computed trajectory; for a true integrating factor the form
//! is exact, so the accumulated value tracks the O(h⁴) integration error
//! and must sink towards zero with the step size.

use crate::arith::{Poly, Rational};
use crate::darboux::VectorField;
use crate::psengine::{d_of_rational, residual, IntegratingFactor};
use num_traits::ToPrimitive;
use thiserror::Error;

/// Outcome of the exact identity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub pass: bool,
    /// `D[r0]` was a polynomial (exact division by the squared denominator
    /// succeeded).
    pub d_r0_polynomial: bool,
    /// `D[r0] + Σ c_i·g_i − residual`; zero exactly when the identity
    /// holds. `None` when `D[r0]` was not polynomial.
    pub difference: Option<Poly>,
    pub log_derivative: Option<Poly>,
    pub residual: Poly,
}

/// Recompute `D[r0] + Σ c_i·g_i` and compare against `−(∂x N + ∂y M)`,
/// exactly. Failure is reported, never panicked.
pub fn verify_symbolic(vf: &VectorField, factor: &IntegratingFactor) -> VerifyReport {
    let res = residual(vf).value;
    let Some(mut log_deriv) = d_of_rational(vf, &factor.r0) else {
        return VerifyReport {
            pass: false,
            d_r0_polynomial: false,
            difference: None,
            log_derivative: None,
            residual: res,
        };
    };
    for (p, c) in &factor.factors {
        match vf.cofactor(p) {
            Ok(g) => log_deriv = &log_deriv + &g.scale(c),
            Err(_) => {
                return VerifyReport {
                    pass: false,
                    d_r0_polynomial: true,
                    difference: None,
                    log_derivative: None,
                    residual: res,
                }
            }
        }
    }
    let difference = &log_deriv - &res;
    VerifyReport {
        pass: difference.is_zero(),
        d_r0_polynomial: true,
        difference: Some(difference),
        log_derivative: Some(log_deriv),
        residual: res,
    }
}

/// Trajectory window for the numeric cross-check.
#[derive(Debug, Clone)]
pub struct NumericCheckConfig {
    pub x_start: Rational,
    pub y_start: Rational,
    pub x_end: Rational,
    pub step: Rational,
    pub drift_tolerance: f64,
}

impl NumericCheckConfig {
    pub fn new(x_start: Rational, y_start: Rational, x_end: Rational, step: Rational) -> Self {
        NumericCheckConfig {
            x_start,
            y_start,
            x_end,
            step,
            drift_tolerance: 1e-6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum NumericError {
    #[error("trajectory passed within {SINGULARITY_GUARD:e} of a singularity")]
    Singularity,
    #[error("numeric evaluation overflowed")]
    NonFinite,
}

const SINGULARITY_GUARD: f64 = 1e-9;

/// 4-point Gauss–Legendre nodes and weights on [-1, 1].
const GL_NODES: [f64; 4] = [
    -0.8611363115940526,
    -0.3399810435848563,
    0.3399810435848563,
    0.8611363115940526,
];
const GL_WEIGHTS: [f64; 4] = [
    0.34785484513745385,
    0.6521451548625461,
    0.6521451548625461,
    0.34785484513745385,
];

/// Integrate `y' = M/N` with classical fixed-step RK4 from
/// `(x_start, y_start)` to `x_end`, accumulating the line integral of
/// `R·(M dx − N dy)` along the polyline of computed points. Returns the
/// absolute accumulated value.
pub fn numeric_drift(
    vf: &VectorField,
    factor: &IntegratingFactor,
    cfg: &NumericCheckConfig,
) -> Result<f64, NumericError> {
    assert!(cfg.step > Rational::from_integer(0.into()), "step must be positive");
    assert!(cfg.x_start != cfg.x_end, "empty trajectory");
    let x0 = cfg.x_start.to_f64().ok_or(NumericError::NonFinite)?;
    let y0 = cfg.y_start.to_f64().ok_or(NumericError::NonFinite)?;
    let x1 = cfg.x_end.to_f64().ok_or(NumericError::NonFinite)?;
    let step = cfg.step.to_f64().ok_or(NumericError::NonFinite)?;
    let span = x1 - x0;
    let n_steps = (span.abs() / step).ceil().max(1.0) as usize;
    let h = span / n_steps as f64;

    let slope = |x: f64, y: f64| -> Result<f64, NumericError> {
        let n = vf.n().eval_f64(x, y);
        if n.abs() < SINGULARITY_GUARD {
            return Err(NumericError::Singularity);
        }
        let v = vf.m().eval_f64(x, y) / n;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(NumericError::NonFinite)
        }
    };

    // R = exp(r0) · ∏ |p_i|^{c_i}; trajectories must not cross any p_i = 0,
    // so the absolute value leaves the log-derivative untouched.
    let factor_exponents: Vec<(&Poly, f64)> = factor
        .factors
        .iter()
        .map(|(p, c)| (p, c.to_f64().unwrap_or(f64::NAN)))
        .collect();
    let eval_r = |x: f64, y: f64| -> Result<f64, NumericError> {
        let den = factor.r0.den().eval_f64(x, y);
        if den.abs() < SINGULARITY_GUARD {
            return Err(NumericError::Singularity);
        }
        let mut r = (factor.r0.num().eval_f64(x, y) / den).exp();
        for (p, c) in &factor_exponents {
            let v = p.eval_f64(x, y);
            if v.abs() < SINGULARITY_GUARD {
                return Err(NumericError::Singularity);
            }
            r *= v.abs().powf(*c);
        }
        if r.is_finite() {
            Ok(r)
        } else {
            Err(NumericError::NonFinite)
        }
    };

    let form = |x: f64, y: f64, dx: f64, dy: f64| -> Result<f64, NumericError> {
        let r = eval_r(x, y)?;
        let v = r * (vf.m().eval_f64(x, y) * dx - vf.n().eval_f64(x, y) * dy);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(NumericError::NonFinite)
        }
    };

    let mut x = x0;
    let mut y = y0;
    let mut acc = 0.0f64;
    for _ in 0..n_steps {
        let k1 = slope(x, y)?;
        let k2 = slope(x + h / 2.0, y + h * k1 / 2.0)?;
        let k3 = slope(x + h / 2.0, y + h * k2 / 2.0)?;
        let k4 = slope(x + h, y + h * k3)?;
        let y_next = y + h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
        let x_next = x + h;
        // Line integral over the straight segment to the next point.
        let (dx, dy) = (x_next - x, y_next - y);
        for (node, weight) in GL_NODES.iter().zip(&GL_WEIGHTS) {
            let t = 0.5 * (node + 1.0);
            let px = x + t * dx;
            let py = y + t * dy;
            acc += 0.5 * weight * form(px, py, dx, dy)?;
        }
        x = x_next;
        y = y_next;
        if !y.is_finite() {
            return Err(NumericError::NonFinite);
        }
    }
    Ok(acc.abs())
}

/// Central-difference approximation of `D[p]` at a point; sanity oracle for
/// the exact operator.
pub fn finite_diff_d(vf: &VectorField, p: &Poly, point: (f64, f64), h: f64) -> f64 {
    assert!(h > 0.0);
    let (x, y) = point;
    let dpx = (p.eval_f64(x + h, y) - p.eval_f64(x - h, y)) / (2.0 * h);
    let dpy = (p.eval_f64(x, y + h) - p.eval_f64(x, y - h)) / (2.0 * h);
    vf.n().eval_f64(x, y) * dpx + vf.m().eval_f64(x, y) * dpy
}
