//! Closed-form evaluation of the predicted a-value counts and comparison
//! records against empirical censuses.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::model::ApproximationModel;

/// The case-dependent constant correcting the linear term:
/// Psi = (log lambda_2)/2 when a != a_1 = 0, -(log lambda_2)/2 when
/// a = a_1 != 0, and 0 otherwise.
///
/// Equality of a and a_1 is exact-value equality of the supplied numbers: the
/// case split is discontinuous by nature and blurring it would silently
/// change the asymptotic.
pub fn psi_constant(a: Complex64, a1: Complex64, lambda2: f64) -> f64 {
    debug_assert!(lambda2 > 1.0, "lambda2 must exceed 1");
    if a != a1 && a1 == Complex64::ZERO {
        0.5 * lambda2.ln()
    } else if a == a1 && a1 != Complex64::ZERO {
        -0.5 * lambda2.ln()
    } else {
        0.0
    }
}

/// Inputs of the counting asymptotic for one window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PredictionInput {
    /// A = sum alpha_i.
    pub a_const: f64,
    /// B = sum (alpha_i log alpha_i - alpha_i).
    pub b_const: f64,
    pub lambda: f64,
    pub lambda2: f64,
    pub a: Complex64,
    pub a1: Complex64,
    pub t_start: f64,
    pub window: f64,
    pub n: usize,
    pub gamma: f64,
}

impl PredictionInput {
    pub fn from_model(
        model: &ApproximationModel,
        a: Complex64,
        t_start: f64,
        window: f64,
        gamma: f64,
    ) -> Self {
        PredictionInput {
            a_const: model.fe().a_const(),
            b_const: model.fe().b_const(),
            lambda: model.fe().lambda(),
            lambda2: model.series().lambda2().unwrap_or(f64::NAN),
            a,
            a1: model.series().first_coefficient(),
            t_start,
            window,
            n: model.series().len(),
            gamma,
        }
    }

    pub fn psi(&self) -> f64 {
        psi_constant(self.a, self.a1, self.lambda2)
    }
}

/// Predicted count plus the error scale N^gamma log(T+U). The scale is
/// reported, never added: the implied constant of the error term is
/// unspecified.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Prediction {
    pub value: f64,
    pub error_scale: f64,
}

/// Main terms (A/pi) ((T+U) log(T+U) - T log T)
///            + ((B - log lambda + Psi)/pi) U.
pub fn predicted_count(input: &PredictionInput) -> Prediction {
    let t = input.t_start;
    let u = input.window;
    let top = t + u;
    let main = input.a_const / PI * (top * top.ln() - t * t.ln());
    let linear = (input.b_const - input.lambda.ln() + input.psi()) / PI * u;
    Prediction {
        value: main + linear,
        error_scale: (input.n as f64).powf(input.gamma) * top.ln(),
    }
}

/// One empirical-vs-predicted comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscrepancyRecord {
    pub empirical: f64,
    pub predicted: f64,
    pub difference: f64,
    pub normalized: f64,
}

pub fn compare(empirical: f64, predicted: f64, scale: f64) -> DiscrepancyRecord {
    let difference = empirical - predicted;
    DiscrepancyRecord {
        empirical,
        predicted,
        difference,
        normalized: difference / scale,
    }
}
