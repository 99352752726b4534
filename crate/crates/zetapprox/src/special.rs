//! Complex special functions and phase machinery: principal-branch log-gamma,
//! digamma, the Gamma-ratio factor G(s), its phase derivative, and continuous
//! argument tracking along directed segments.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::NumericError;
use crate::model::FunctionalEquationData;

/// Radius at which the Stirling series reaches full double accuracy.
const STIRLING_RADIUS: f64 = 12.0;

/// Coefficients B_{2k} / (2k (2k-1)) of the Stirling series for log-gamma.
const STIRLING_LOG_GAMMA: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

/// Coefficients B_{2k} / (2k) of the asymptotic series for digamma.
const STIRLING_DIGAMMA: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32_760.0,
    1.0 / 12.0,
];

const LOG_TWO_PI: f64 = 1.837_877_066_409_345_5;

fn pole_check(z: Complex64) -> Result<(), NumericError> {
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.floor() {
        return Err(NumericError::GammaPole { z });
    }
    Ok(())
}

/// Principal-branch log Gamma.
///
/// Recurrence-shifts the argument until the Stirling series with Bernoulli
/// terms applies (`Re z >= 1/2` and `|z| >= 12`), then subtracts the shifted
/// logarithms. The upward recurrence with principal logs is branch-exact on
/// the cut plane, so no reflection step is needed.
pub fn log_gamma(z: Complex64) -> Result<Complex64, NumericError> {
    pole_check(z)?;
    if z.im == 0.0 && z.re < 0.0 {
        return Err(NumericError::BranchCut { z });
    }
    let mut w = z;
    let mut shift = Complex64::ZERO;
    while w.re < 0.5 || w.norm_sqr() < STIRLING_RADIUS * STIRLING_RADIUS {
        shift += w.ln();
        w += 1.0;
    }
    Ok(stirling_log_gamma(w) - shift)
}

/// Stirling series; valid for Re z >= 1/2, |z| >= STIRLING_RADIUS.
fn stirling_log_gamma(z: Complex64) -> Complex64 {
    let mut series = Complex64::ZERO;
    let inv_sq = 1.0 / (z * z);
    let mut power = 1.0 / z;
    for c in STIRLING_LOG_GAMMA {
        series += c * power;
        power *= inv_sq;
    }
    (z - 0.5) * z.ln() - z + 0.5 * LOG_TWO_PI + series
}

/// Digamma psi(z) = Gamma'(z) / Gamma(z), by the same shift-then-asymptotic
/// scheme. Meromorphic, so negative real arguments are fine away from poles.
pub fn digamma(z: Complex64) -> Result<Complex64, NumericError> {
    pole_check(z)?;
    let mut w = z;
    let mut shift = Complex64::ZERO;
    while w.re < 0.5 || w.norm_sqr() < STIRLING_RADIUS * STIRLING_RADIUS {
        shift += w.finv();
        w += 1.0;
    }
    let mut series = Complex64::ZERO;
    let inv_sq = 1.0 / (w * w);
    let mut power = inv_sq;
    for c in STIRLING_DIGAMMA {
        series += c * power;
        power *= inv_sq;
    }
    Ok(w.ln() - 0.5 * w.finv() - series - shift)
}

/// log G(s) = (2s - delta) log lambda
///          + sum_i [ log Gamma(alpha_i (delta - s) + beta_i)
///                  - log Gamma(alpha_i s + beta_i) ].
pub fn log_g(fe: &FunctionalEquationData, s: Complex64) -> Result<Complex64, NumericError> {
    let delta = fe.delta();
    let mut total = (2.0 * s - delta) * fe.lambda().ln();
    for term in fe.omega() {
        let reflected = term.alpha * (delta - s) + term.beta;
        let direct = term.alpha * s + term.beta;
        total += log_gamma(reflected)? - log_gamma(direct)?;
    }
    Ok(total)
}

/// The factor G(s) = lambda^{2s-delta} Omega(delta-s) / Omega(s).
pub fn eval_g(fe: &FunctionalEquationData, s: Complex64) -> Result<Complex64, NumericError> {
    Ok(log_g(fe, s)?.exp())
}

/// d/dt arg G(sigma + it), assembled analytically from digamma:
/// 2 log lambda - sum_i alpha_i [ Re psi(alpha_i (delta - s) + beta_i)
///                              + Re psi(alpha_i s + beta_i) ].
pub fn arg_g_derivative(
    fe: &FunctionalEquationData,
    sigma: f64,
    t: f64,
) -> Result<f64, NumericError> {
    let s = Complex64::new(sigma, t);
    let delta = fe.delta();
    let mut total = 2.0 * fe.lambda().ln();
    for term in fe.omega() {
        let reflected = digamma(term.alpha * (delta - s) + term.beta)?;
        let direct = digamma(term.alpha * s + term.beta)?;
        total -= term.alpha * (reflected.re + direct.re);
    }
    Ok(total)
}

/// Smallest grid ordinate at which d/dt arg G goes negative and stays
/// negative through the end of the grid; the monotone-phase onset for the
/// model's functional equation.
pub fn monotone_onset(
    fe: &FunctionalEquationData,
    t_grid: &[f64],
) -> Result<Option<f64>, NumericError> {
    let mut onset = None;
    for &t in t_grid {
        let d = arg_g_derivative(fe, fe.critical_sigma(), t)?;
        if d < 0.0 {
            if onset.is_none() {
                onset = Some(t);
            }
        } else {
            onset = None;
        }
    }
    Ok(onset)
}

/// A directed straight segment in the s-plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub from: Complex64,
    pub to: Complex64,
}

impl Segment {
    pub fn new(from: Complex64, to: Complex64) -> Self {
        Segment { from, to }
    }

    pub fn point(&self, u: f64) -> Complex64 {
        self.from + u * (self.to - self.from)
    }
}

/// Tolerance used to flag a root sitting on (or too close to) a path.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum NearZeroTol {
    /// 1e-12 times the local scale: the larger |f| of the sample's accepted
    /// neighbors. Local, because |f| legitimately spans many orders of
    /// magnitude along strip-crossing edges.
    #[default]
    Auto,
    Absolute(f64),
}

/// Controls for adaptive argument tracking.
#[derive(Debug, Clone, Copy)]
pub struct UnwrapOptions {
    /// Accepted per-step phase change; stays strictly below the pi
    /// correctness bound to guard against aliasing.
    pub max_step: f64,
    /// Initial uniform sample count (>= 2, endpoints included).
    pub initial_samples: usize,
    pub near_zero: NearZeroTol,
    pub max_depth: u32,
}

impl Default for UnwrapOptions {
    fn default() -> Self {
        UnwrapOptions {
            max_step: PI / 2.0,
            initial_samples: 17,
            near_zero: NearZeroTol::Auto,
            max_depth: 40,
        }
    }
}

/// Samples of f along a path with a continuously tracked argument branch.
#[derive(Debug, Clone)]
pub struct PathSample {
    pub points: Vec<Complex64>,
    pub values: Vec<Complex64>,
    pub unwrapped_arg: Vec<f64>,
}

impl PathSample {
    /// Total argument change along the path.
    pub fn total_change(&self) -> f64 {
        match (self.unwrapped_arg.first(), self.unwrapped_arg.last()) {
            (Some(first), Some(last)) => last - first,
            _ => 0.0,
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Phase difference arg(b) - arg(a) reduced to (-pi, pi].
fn principal_step(a: Complex64, b: Complex64) -> f64 {
    (b * a.conj()).arg()
}

struct UnwrapState<'f> {
    f: &'f dyn Fn(Complex64) -> Result<Complex64, NumericError>,
    segment: Segment,
    max_step: f64,
    max_depth: u32,
    points: Vec<Complex64>,
    values: Vec<Complex64>,
    unwrapped: Vec<f64>,
    max_abs: f64,
    min_abs: f64,
    min_abs_at: Complex64,
}

impl UnwrapState<'_> {
    fn eval(&mut self, u: f64) -> Result<Complex64, NumericError> {
        let s = self.segment.point(u);
        let v = (self.f)(s)?;
        let m = v.norm();
        if m == 0.0 {
            return Err(NumericError::NearZero { s, magnitude: 0.0 });
        }
        if m > self.max_abs {
            self.max_abs = m;
        }
        if m < self.min_abs {
            self.min_abs = m;
            self.min_abs_at = s;
        }
        Ok(v)
    }

    fn accept(&mut self, u: f64, value: Complex64) {
        let prev_arg = *self.unwrapped.last().expect("first sample pushed");
        let prev_val = *self.values.last().expect("first sample pushed");
        self.points.push(self.segment.point(u));
        self.values.push(value);
        self.unwrapped.push(prev_arg + principal_step(prev_val, value));
    }

    fn refine(
        &mut self,
        u0: f64,
        v0: Complex64,
        u1: f64,
        v1: Complex64,
        depth: u32,
    ) -> Result<(), NumericError> {
        if principal_step(v0, v1).abs() < self.max_step {
            self.accept(u1, v1);
            return Ok(());
        }
        let mid = 0.5 * (u0 + u1);
        if depth >= self.max_depth || mid <= u0 || mid >= u1 {
            // A persistent large step this deep means the log-derivative of a
            // holomorphic f blew up locally, which is a root pinned to the
            // path; report it as such when the values agree.
            let local_min = v0.norm().min(v1.norm());
            if local_min < 1e-3 * self.max_abs {
                let s = if v0.norm() < v1.norm() {
                    self.segment.point(u0)
                } else {
                    self.segment.point(u1)
                };
                return Err(NearZeroError { s, magnitude: local_min }.into());
            }
            return Err(NumericError::DepthExceeded { depth });
        }
        let vm = self.eval(mid)?;
        self.refine(u0, v0, mid, vm, depth + 1)?;
        self.refine(mid, vm, u1, v1, depth + 1)
    }
}

struct NearZeroError {
    s: Complex64,
    magnitude: f64,
}

impl From<NearZeroError> for NumericError {
    fn from(e: NearZeroError) -> Self {
        NumericError::NearZero {
            s: e.s,
            magnitude: e.magnitude,
        }
    }
}

/// Track arg f continuously along a directed segment, bisecting until every
/// consecutive argument step is below `opts.max_step`.
///
/// Fails with [`NumericError::NearZero`] when |f| drops under the near-zero
/// tolerance anywhere on the accepted samples (a root on or near the path;
/// the caller must perturb), and with [`NumericError::DepthExceeded`] when
/// refinement passes `opts.max_depth` levels.
pub fn unwrap_arg<F>(
    f: F,
    segment: Segment,
    opts: &UnwrapOptions,
) -> Result<PathSample, NumericError>
where
    F: Fn(Complex64) -> Result<Complex64, NumericError>,
{
    let n = opts.initial_samples.max(2);
    let mut state = UnwrapState {
        f: &f,
        segment,
        max_step: opts.max_step,
        max_depth: opts.max_depth,
        points: Vec::with_capacity(n),
        values: Vec::with_capacity(n),
        unwrapped: Vec::with_capacity(n),
        max_abs: 0.0,
        min_abs: f64::INFINITY,
        min_abs_at: segment.from,
    };

    let mut grid = Vec::with_capacity(n);
    for i in 0..n {
        let u = i as f64 / (n - 1) as f64;
        grid.push((u, state.eval(u)?));
    }

    state.points.push(segment.from);
    state.values.push(grid[0].1);
    state.unwrapped.push(grid[0].1.arg());
    for pair in grid.windows(2) {
        let (u0, v0) = pair[0];
        let (u1, v1) = pair[1];
        state.refine(u0, v0, u1, v1, 0)?;
    }

    match opts.near_zero {
        NearZeroTol::Auto => {
            let m = state.values.len();
            for k in 0..m {
                let left = if k > 0 { state.values[k - 1].norm() } else { 0.0 };
                let right = if k + 1 < m {
                    state.values[k + 1].norm()
                } else {
                    0.0
                };
                let local_scale = left.max(right);
                if state.values[k].norm() < 1e-12 * local_scale {
                    return Err(NumericError::NearZero {
                        s: state.points[k],
                        magnitude: state.values[k].norm(),
                    });
                }
            }
        }
        NearZeroTol::Absolute(tol) => {
            if state.min_abs < tol {
                return Err(NumericError::NearZero {
                    s: state.min_abs_at,
                    magnitude: state.min_abs,
                });
            }
        }
    }

    Ok(PathSample {
        points: state.points,
        values: state.values,
        unwrapped_arg: state.unwrapped,
    })
}
