//! Evaluation of the truncated series F_N, the approximation zeta_N, the
//! real-valued critical-line function Z(t), and directional projections.

use num_complex::Complex64;

use crate::error::NumericError;
use crate::model::{ApproximationModel, SeriesSpec};
use crate::special::eval_g;

/// F_N(s) = sum_n a_n exp(-s log lambda_n), ascending n, per-term
/// exponentials. N is desk-scale, so plain summation carries an error
/// budget of about N * 1e-14 * sum |a_n| lambda_n^{|sigma|}.
pub fn eval_series(series: &SeriesSpec, s: Complex64) -> Complex64 {
    let mut acc = Complex64::ZERO;
    for (a, lambda) in series.terms() {
        acc += a * (-s * lambda.ln()).exp();
    }
    acc
}

/// zeta_N(s) = F_N(s) + G(s) F_N(delta - s).
pub fn eval_zeta_n(model: &ApproximationModel, s: Complex64) -> Result<Complex64, NumericError> {
    let g = eval_g(model.fe(), s)?;
    let direct = eval_series(model.series(), s);
    let reflected = eval_series(model.series(), Complex64::new(model.fe().delta(), 0.0) - s);
    Ok(direct + g * reflected)
}

/// Directional projection proj_alpha(z) = Re(z e^{-i alpha}).
pub fn proj(alpha: f64, z: Complex64) -> f64 {
    (z * Complex64::from_polar(1.0, -alpha)).re
}

/// One critical-line sample: z(t) = F_N(delta/2 + it), the continuous phase
/// theta(t) = arg G(delta/2 + it), the continuous phase phi(t) = arg z(t)
/// where z does not vanish, and the real value Z(t) = 2 Re(z e^{-i theta/2}).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinePoint {
    pub t: f64,
    pub z: Complex64,
    pub theta: f64,
    /// None where |z| is below the vanishing tolerance; Z never needs phi.
    pub phi: Option<f64>,
    pub hardy_z: f64,
}

/// Crude uniform bound for |z(t)| on the critical line, used to scale the
/// z-vanishing tolerance.
pub fn line_scale(model: &ApproximationModel) -> f64 {
    let half_delta = model.fe().critical_sigma();
    model
        .series()
        .terms()
        .map(|(a, lambda)| a.norm() * lambda.powf(-half_delta))
        .sum::<f64>()
        .max(f64::MIN_POSITIVE)
}

/// Nearest branch of `raw + 2 pi k` to `reference`.
fn align_branch(raw: f64, reference: f64) -> f64 {
    let two_pi = std::f64::consts::TAU;
    raw - two_pi * ((raw - reference) / two_pi).round()
}

/// Evaluate a line point, continuing the theta branch from `prev` when given.
///
/// Continuity is certified by stepwise refinement: the segment from prev.t to
/// t is subdivided until each principal phase step of G stays under pi/2.
pub fn line_point(
    model: &ApproximationModel,
    t: f64,
    prev: Option<&LinePoint>,
) -> Result<LinePoint, NumericError> {
    let half_delta = model.fe().critical_sigma();
    let s = Complex64::new(half_delta, t);
    let g = eval_g(model.fe(), s)?;
    let z = eval_series(model.series(), s);

    let theta = match prev {
        None => g.arg(),
        Some(prev) => {
            let mut t_cursor = prev.t;
            let mut g_cursor = eval_g(model.fe(), Complex64::new(half_delta, prev.t))?;
            let mut theta_cursor = prev.theta;
            let mut step = t - prev.t;
            let mut guard = 0u32;
            while t_cursor != t {
                let t_next = if (t - t_cursor).abs() <= step.abs() {
                    t
                } else {
                    t_cursor + step
                };
                let g_next = eval_g(model.fe(), Complex64::new(half_delta, t_next))?;
                let delta_arg = (g_next * g_cursor.conj()).arg();
                if delta_arg.abs() >= std::f64::consts::FRAC_PI_2 {
                    step *= 0.5;
                    guard += 1;
                    if guard > 60 || t_cursor + step == t_cursor {
                        return Err(NumericError::BranchContinuity { t });
                    }
                    continue;
                }
                theta_cursor += delta_arg;
                t_cursor = t_next;
                g_cursor = g_next;
            }
            theta_cursor
        }
    };

    let tol = 1e-12 * line_scale(model);
    let phi = if z.norm() > tol {
        let raw = z.arg();
        Some(match prev.and_then(|p| p.phi) {
            Some(prev_phi) => align_branch(raw, prev_phi),
            None => raw,
        })
    } else {
        None
    };

    let hardy_z = 2.0 * (z * Complex64::from_polar(1.0, -0.5 * theta)).re;
    Ok(LinePoint {
        t,
        z,
        theta,
        phi,
        hardy_z,
    })
}
