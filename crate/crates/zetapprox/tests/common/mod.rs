//! Independent oracles shared by the acceptance suite. These deliberately
//! avoid the adaptive machinery they are used to check.

use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, PI, TAU};

use zetapprox::counting::RectRegion;
use zetapprox::evaluator::eval_zeta_n;
use zetapprox::model::{ApproximationModel, FunctionalEquationData, GammaFactorTerm};
use zetapprox::special::log_gamma;

/// chi(s) = pi^{s-1/2} Gamma((1-s)/2) / Gamma(s/2), assembled directly.
pub fn chi_direct(s: Complex64) -> Complex64 {
    ((s - 0.5) * PI.ln() + log_gamma((1.0 - s) / 2.0).unwrap() - log_gamma(s / 2.0).unwrap()).exp()
}

/// A synthetic functional equation with two Gamma factors, used to exercise
/// the reflection identity away from the zeta preset.
pub fn two_factor_fe() -> FunctionalEquationData {
    FunctionalEquationData::new(
        0.5,
        1.25,
        vec![
            GammaFactorTerm {
                alpha: 0.5,
                beta: 0.0,
            },
            GammaFactorTerm {
                alpha: 0.5,
                beta: 0.5,
            },
        ],
    )
}

/// Brute-force winding count: fixed uniform grids at `factor` times the
/// adaptive tracker's per-edge sample counts, accumulating wrapped phase
/// steps. A uniform grid can be locally coarser than the adaptive one near
/// an edge-hugging root, so the oracle densifies itself until every one of
/// its own steps clears the pi/2 bound; its verdict never leans on the code
/// under test.
pub fn dense_winding_oracle(
    model: &ApproximationModel,
    a: Complex64,
    region: &RectRegion,
    edge_samples: [usize; 4],
    factor: usize,
) -> i64 {
    let mut factor = factor;
    loop {
        if let Some(count) = dense_winding_pass(model, a, region, edge_samples, factor) {
            return count;
        }
        factor *= 4;
        assert!(factor <= 10_240, "oracle cannot resolve {region:?}");
    }
}

fn dense_winding_pass(
    model: &ApproximationModel,
    a: Complex64,
    region: &RectRegion,
    edge_samples: [usize; 4],
    factor: usize,
) -> Option<i64> {
    let bl = Complex64::new(region.sigma_left, region.t_bottom);
    let br = Complex64::new(region.sigma_right, region.t_bottom);
    let tr = Complex64::new(region.sigma_right, region.t_top);
    let tl = Complex64::new(region.sigma_left, region.t_top);
    let corners = [(bl, br), (br, tr), (tr, tl), (tl, bl)];
    let mut total = 0.0;
    for (k, (from, to)) in corners.into_iter().enumerate() {
        let n = edge_samples[k].max(2) * factor;
        let mut prev = eval_zeta_n(model, from).unwrap() - a;
        for i in 1..=n {
            let s = from + (to - from) * (i as f64 / n as f64);
            let value = eval_zeta_n(model, s).unwrap() - a;
            let step = (value * prev.conj()).arg();
            if step.abs() >= FRAC_PI_2 {
                return None;
            }
            total += step;
            prev = value;
        }
    }
    Some((total / TAU).round() as i64)
}
