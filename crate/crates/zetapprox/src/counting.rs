//! Argument-principle machinery: winding counts of zeta_N - a over
//! rectangles, root localization by recursive quadrisection, clustering
//! censuses around the critical line, and strip predicates.

use num_complex::Complex64;

use crate::error::NumericError;
use crate::evaluator::eval_zeta_n;
use crate::model::ApproximationModel;
use crate::special::{unwrap_arg, NearZeroTol, Segment, UnwrapOptions};
use crate::workers::run_indexed;

/// Boundary-root jitter schedule, in t or sigma units. The counting theory
/// assumes windows can always be nudged off any a-value; this schedule
/// operationalizes that assumption.
const JITTER_SCHEDULE: [f64; 3] = [1e-3, 3e-3, 1e-2];

/// Accepted distance from an integer for a winding total.
const WINDING_RESIDUAL_MAX: f64 = 0.01;

/// Box side at which an unresolvable winding > 1 is reported as a
/// multiplicity instead of being split further.
const MULTIPLICITY_FLOOR: f64 = 1e-9;

/// An axis-aligned rectangle sigma_left < sigma < sigma_right,
/// t_bottom < t < t_top.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RectRegion {
    pub sigma_left: f64,
    pub sigma_right: f64,
    pub t_bottom: f64,
    pub t_top: f64,
}

impl RectRegion {
    pub fn new(sigma_left: f64, sigma_right: f64, t_bottom: f64, t_top: f64) -> Self {
        assert!(
            sigma_left < sigma_right && t_bottom < t_top,
            "degenerate rectangle"
        );
        RectRegion {
            sigma_left,
            sigma_right,
            t_bottom,
            t_top,
        }
    }

    pub fn width(&self) -> f64 {
        self.sigma_right - self.sigma_left
    }

    pub fn height(&self) -> f64 {
        self.t_top - self.t_bottom
    }

    pub fn center(&self) -> Complex64 {
        Complex64::new(
            0.5 * (self.sigma_left + self.sigma_right),
            0.5 * (self.t_bottom + self.t_top),
        )
    }

    /// Counterclockwise boundary: bottom, right, top, left.
    fn edges(&self) -> [Segment; 4] {
        let bl = Complex64::new(self.sigma_left, self.t_bottom);
        let br = Complex64::new(self.sigma_right, self.t_bottom);
        let tr = Complex64::new(self.sigma_right, self.t_top);
        let tl = Complex64::new(self.sigma_left, self.t_top);
        [
            Segment::new(bl, br),
            Segment::new(br, tr),
            Segment::new(tr, tl),
            Segment::new(tl, bl),
        ]
    }

    pub fn contains(&self, s: Complex64) -> bool {
        s.re >= self.sigma_left
            && s.re <= self.sigma_right
            && s.im >= self.t_bottom
            && s.im <= self.t_top
    }
}

/// Winding count plus the per-edge sample counts the adaptive tracker
/// settled on (bottom, right, top, left). The sample counts let external
/// oracles resample the same boundary at a fixed multiple of the density.
#[derive(Debug, Clone)]
pub struct WindingDetail {
    pub winding: i64,
    pub edge_samples: [usize; 4],
    /// Distance of the raw total/2pi from the returned integer; accepted
    /// counts keep this under 0.01.
    pub residual: f64,
}

fn initial_samples_for(region: &RectRegion, model: &ApproximationModel, vertical: bool) -> usize {
    // Phase budget per unit length: the Gamma product turns at about
    // A log t and the series contributes up to log lambda_N.
    let a_const = model.fe().a_const().abs().max(0.1);
    let t_scale = region.t_top.abs().max(3.0);
    let lambda_max = model
        .series()
        .exponents()
        .last()
        .copied()
        .unwrap_or(1.0)
        .max(std::f64::consts::E);
    let rate = 2.0 * a_const * t_scale.ln() + lambda_max.ln() + 2.0;
    let len = if vertical {
        region.height()
    } else {
        region.width()
    };
    ((len * rate).ceil() as usize).clamp(16, 4_000_000)
}

fn h_n(model: &ApproximationModel, a: Complex64, s: Complex64) -> Result<Complex64, NumericError> {
    Ok(eval_zeta_n(model, s)? - a)
}

/// Winding number of zeta_N(s) - a around the counterclockwise boundary:
/// total continuous argument change divided by 2 pi, rounded, with the
/// rounding residual required to be < 0.01. A residual that survives
/// threshold escalation is rejected.
///
/// A root on (or within tolerance of) the boundary surfaces as
/// [`NumericError::NearZero`]; the caller perturbs the region, for which
/// [`winding_count_jittered`] implements the documented schedule.
pub fn winding_count(
    model: &ApproximationModel,
    a: Complex64,
    region: &RectRegion,
) -> Result<i64, NumericError> {
    winding_count_detailed(model, a, region).map(|d| d.winding)
}

pub fn winding_count_detailed(
    model: &ApproximationModel,
    a: Complex64,
    region: &RectRegion,
) -> Result<WindingDetail, NumericError> {
    let mut escalation = 1usize;
    let mut max_step = std::f64::consts::FRAC_PI_2;
    loop {
        let mut total = 0.0;
        let mut edge_samples = [0usize; 4];
        for (k, edge) in region.edges().into_iter().enumerate() {
            let vertical = k % 2 == 1;
            let opts = UnwrapOptions {
                max_step,
                initial_samples: initial_samples_for(region, model, vertical) * escalation,
                near_zero: NearZeroTol::Auto,
                max_depth: 40,
            };
            let sample = unwrap_arg(|s| h_n(model, a, s), edge, &opts)?;
            edge_samples[k] = sample.len();
            total += sample.total_change();
        }
        let raw = total / std::f64::consts::TAU;
        let rounded = raw.round();
        let residual = (raw - rounded).abs();
        if residual < WINDING_RESIDUAL_MAX && rounded >= 0.0 {
            return Ok(WindingDetail {
                winding: rounded as i64,
                edge_samples,
                residual,
            });
        }
        if escalation >= 4 {
            return Err(NumericError::WindingResidual { residual });
        }
        escalation *= 2;
        max_step *= 0.5;
    }
}

/// Outcome of a jittered winding: the count, the (possibly nudged) region it
/// was evaluated on, and warnings describing any nudges.
#[derive(Debug, Clone)]
pub struct JitteredWinding {
    pub winding: i64,
    pub region: RectRegion,
    pub warnings: Vec<String>,
}

/// Winding count with the boundary-root jitter schedule: when a root sits on
/// an edge, that edge is pushed outward by 1e-3, 3e-3, then 1e-2 before the
/// count is abandoned.
pub fn winding_count_jittered(
    model: &ApproximationModel,
    a: Complex64,
    region: &RectRegion,
) -> Result<JitteredWinding, NumericError> {
    let mut current = *region;
    let mut warnings = model.degeneracy_warnings();
    let mut jitter_index = 0usize;
    loop {
        match winding_count(model, a, &current) {
            Ok(winding) => {
                return Ok(JitteredWinding {
                    winding,
                    region: current,
                    warnings,
                })
            }
            Err(NumericError::NearZero { s, magnitude }) => {
                if jitter_index >= JITTER_SCHEDULE.len() {
                    return Err(NumericError::BoundaryRootExhausted { s });
                }
                let j = JITTER_SCHEDULE[jitter_index];
                jitter_index += 1;
                let mut nudged = current;
                // Push out whichever edge the offending point is nearest.
                let d_left = (s.re - current.sigma_left).abs();
                let d_right = (s.re - current.sigma_right).abs();
                let d_bottom = (s.im - current.t_bottom).abs();
                let d_top = (s.im - current.t_top).abs();
                let min = d_left.min(d_right).min(d_bottom).min(d_top);
                if min == d_left {
                    nudged.sigma_left -= j;
                } else if min == d_right {
                    nudged.sigma_right += j;
                } else if min == d_bottom {
                    nudged.t_bottom -= j;
                } else {
                    nudged.t_top += j;
                }
                warnings.push(format!(
                    "boundary root near s = {s} (|h| = {magnitude:.3e}); edge nudged by {j}"
                ));
                current = nudged;
            }
            Err(other) => return Err(other),
        }
    }
}

/// A certified a-value location: a box of diameter <= 2 * radius carrying the
/// stated winding multiplicity around it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocatedRoot {
    pub position: Complex64,
    pub radius: f64,
    pub multiplicity: i64,
}

/// Localize every a-value in the region by recursive quadrisection driven by
/// winding counts: boxes split along their longer side, children are
/// re-counted (their sum is checked against the parent), and boxes shrink
/// until winding-1 boxes reach `radius`. A winding > 1 that persists at the
/// 1e-9 box floor is reported as a multiplicity.
pub fn locate_roots(
    model: &ApproximationModel,
    a: Complex64,
    region: &RectRegion,
    radius: f64,
    workers: usize,
) -> Result<Vec<LocatedRoot>, NumericError> {
    let outer = winding_count_jittered(model, a, region)?;
    let mut frontier = vec![(outer.region, outer.winding)];
    let mut roots = Vec::new();
    while !frontier.is_empty() {
        let processed = run_indexed(frontier, workers, |(rect, winding)| {
            split_box(model, a, &rect, winding, radius)
        });
        frontier = Vec::new();
        for outcome in processed {
            match outcome? {
                BoxOutcome::Root(root) => roots.push(root),
                BoxOutcome::Children(children) => frontier.extend(children),
                BoxOutcome::Empty => {}
            }
        }
    }
    roots.sort_by(|x, y| {
        (x.position.im, x.position.re)
            .partial_cmp(&(y.position.im, y.position.re))
            .expect("finite root coordinates")
    });
    Ok(roots)
}

enum BoxOutcome {
    Root(LocatedRoot),
    Children(Vec<(RectRegion, i64)>),
    Empty,
}

fn split_box(
    model: &ApproximationModel,
    a: Complex64,
    rect: &RectRegion,
    winding: i64,
    radius: f64,
) -> Result<BoxOutcome, NumericError> {
    if winding == 0 {
        return Ok(BoxOutcome::Empty);
    }
    let diameter = rect.width().hypot(rect.height());
    let half_diag = 0.5 * diameter;
    if winding == 1 && diameter <= radius {
        return Ok(BoxOutcome::Root(LocatedRoot {
            position: rect.center(),
            radius: half_diag,
            multiplicity: 1,
        }));
    }
    if rect.width().max(rect.height()) <= MULTIPLICITY_FLOOR {
        return Ok(BoxOutcome::Root(LocatedRoot {
            position: rect.center(),
            radius: half_diag,
            multiplicity: winding,
        }));
    }

    let split_t = rect.height() >= rect.width();
    // The split line is new boundary; shift it through the jitter schedule if
    // a root sits on it. Offsets are capped so the children stay proper.
    let side = if split_t { rect.height() } else { rect.width() };
    let mut offsets = vec![0.0];
    for j in JITTER_SCHEDULE {
        let capped = j.min(side / 8.0);
        offsets.push(capped);
        offsets.push(-capped);
    }
    let mut last_err = None;
    for offset in offsets {
        let (first, second) = if split_t {
            let mid = 0.5 * (rect.t_bottom + rect.t_top) + offset;
            (
                RectRegion::new(rect.sigma_left, rect.sigma_right, rect.t_bottom, mid),
                RectRegion::new(rect.sigma_left, rect.sigma_right, mid, rect.t_top),
            )
        } else {
            let mid = 0.5 * (rect.sigma_left + rect.sigma_right) + offset;
            (
                RectRegion::new(rect.sigma_left, mid, rect.t_bottom, rect.t_top),
                RectRegion::new(mid, rect.sigma_right, rect.t_bottom, rect.t_top),
            )
        };
        let w1 = match winding_count(model, a, &first) {
            Ok(w) => w,
            Err(e @ NumericError::NearZero { .. }) => {
                last_err = Some(e);
                continue;
            }
            Err(e) => return Err(e),
        };
        let w2 = match winding_count(model, a, &second) {
            Ok(w) => w,
            Err(e @ NumericError::NearZero { .. }) => {
                last_err = Some(e);
                continue;
            }
            Err(e) => return Err(e),
        };
        if w1 + w2 != winding {
            // Partition additivity is exact; a mismatch means an aliased
            // unwrap somewhere. Treat like a boundary problem and re-split.
            last_err = Some(NumericError::WindingResidual {
                residual: (w1 + w2 - winding) as f64,
            });
            continue;
        }
        let mut children = Vec::new();
        if w1 > 0 {
            children.push((first, w1));
        }
        if w2 > 0 {
            children.push((second, w2));
        }
        return Ok(BoxOutcome::Children(children));
    }
    match last_err {
        Some(NumericError::NearZero { s, .. }) => Err(NumericError::BoundaryRootExhausted { s }),
        Some(err) => Err(err),
        None => unreachable!("offsets is never empty"),
    }
}

/// Winding-count summary for one window: the census, optional localized
/// roots, and the comparison against the predicted count.
#[derive(Debug, Clone)]
pub struct CountReport {
    pub region: RectRegion,
    pub a: Complex64,
    pub winding: i64,
    /// Localized roots when a certification radius was requested; their
    /// multiplicities sum to the winding.
    pub roots: Vec<LocatedRoot>,
    pub predicted: f64,
    /// Normalized discrepancy (winding - predicted) / (N^gamma log(T+U)).
    pub discrepancy: f64,
    pub warnings: Vec<String>,
}

/// Count a-values over the region (with boundary jitter), compare against
/// the asymptotic at the given gamma, and optionally localize every root to
/// `locate_radius`.
pub fn count_report(
    model: &ApproximationModel,
    a: Complex64,
    region: &RectRegion,
    gamma: f64,
    locate_radius: Option<f64>,
    workers: usize,
) -> Result<CountReport, NumericError> {
    let outcome = winding_count_jittered(model, a, region)?;
    let roots = match locate_radius {
        Some(radius) => locate_roots(model, a, &outcome.region, radius, workers)?,
        None => Vec::new(),
    };
    let input = crate::asymptotics::PredictionInput::from_model(
        model,
        a,
        outcome.region.t_bottom,
        outcome.region.height(),
        gamma,
    );
    let prediction = crate::asymptotics::predicted_count(&input);
    let record =
        crate::asymptotics::compare(outcome.winding as f64, prediction.value, prediction.error_scale);
    Ok(CountReport {
        region: outcome.region,
        a,
        winding: outcome.winding,
        roots,
        predicted: record.predicted,
        discrepancy: record.normalized,
        warnings: outcome.warnings,
    })
}

/// Clustering census: total a-values in the strip window against those within
/// the epsilon-band of the critical line.
#[derive(Debug, Clone)]
pub struct ClusterReport {
    pub total: i64,
    pub within: i64,
    pub outside: i64,
    pub epsilon: f64,
    pub sigma_bound: f64,
    pub warnings: Vec<String>,
}

/// Count a-values over sigma in [delta/2 - sigma_bound, delta/2 + sigma_bound],
/// t in [T, T+U] (total) and over the epsilon-band (within); outside is their
/// difference. `sigma_bound` must dominate the model's strip bound so the
/// outer rectangle captures every a-value at these heights.
pub fn cluster_census(
    model: &ApproximationModel,
    a: Complex64,
    t_start: f64,
    window: f64,
    epsilon: f64,
    sigma_bound: f64,
) -> Result<ClusterReport, NumericError> {
    let half_delta = model.fe().critical_sigma();
    let outer = RectRegion::new(
        half_delta - sigma_bound,
        half_delta + sigma_bound,
        t_start,
        t_start + window,
    );
    let total = winding_count_jittered(model, a, &outer)?;
    let mut warnings = total.warnings.clone();
    let (within, inner_warnings) = if epsilon >= sigma_bound {
        (total.winding, Vec::new())
    } else {
        // Reuse the nudged t-window so both counts census the same heights.
        let inner = RectRegion::new(
            half_delta - epsilon,
            half_delta + epsilon,
            total.region.t_bottom,
            total.region.t_top,
        );
        let inner = winding_count_jittered(model, a, &inner)?;
        (inner.winding, inner.warnings)
    };
    warnings.extend(inner_warnings);
    Ok(ClusterReport {
        total: total.winding,
        within,
        outside: total.winding - within,
        epsilon,
        sigma_bound,
        warnings,
    })
}

/// Which half-plane a strip predicate was evaluated on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StripSide {
    Right,
    Left,
}

/// One strip predicate evaluation: `lhs` against `rhs` with the comparison
/// direction implied by the side (right: lhs < rhs, left: lhs > rhs).
#[derive(Debug, Clone, Copy)]
pub struct StripPoint {
    pub sigma: f64,
    pub t: f64,
    pub side: StripSide,
    pub lhs: f64,
    pub rhs: f64,
    pub pass: bool,
}

#[derive(Debug, Clone)]
pub struct StripReport {
    pub points: Vec<StripPoint>,
    pub all_pass: bool,
    /// Smallest |sigma| on the built-in scan grid at which the side's
    /// predicate holds for every grid ordinate.
    pub min_abs_sigma_all_pass: Option<f64>,
    pub warnings: Vec<String>,
}

fn strip_point(
    model: &ApproximationModel,
    a: Complex64,
    sigma: f64,
    t: f64,
) -> Result<StripPoint, NumericError> {
    let s = Complex64::new(sigma, t);
    let zeta = eval_zeta_n(model, s)?;
    let a1 = model.series().first_coefficient();
    let (side, lhs, rhs) = if sigma >= 0.0 {
        if a != a1 {
            // zeta_N(s) - a in D(a1 - a, |a1 - a| / 2), i.e.
            // |zeta_N(s) - a1| < |a1 - a| / 2.
            (StripSide::Right, (zeta - a1).norm(), 0.5 * (a1 - a).norm())
        } else {
            // (zeta_N(s) - a) lambda_2^s in D(a2, |a2| / 2).
            let lambda2 = model.series().lambda2().unwrap_or(1.0);
            let a2 = model
                .series()
                .coefficients()
                .get(1)
                .copied()
                .unwrap_or(Complex64::ZERO);
            let scaled = (zeta - a) * (s * lambda2.ln()).exp();
            (StripSide::Right, (scaled - a2).norm(), 0.5 * a2.norm())
        }
    } else {
        // Far left: |zeta_N(s) - a| > 1.
        (StripSide::Left, (zeta - a).norm(), 1.0)
    };
    let pass = match side {
        StripSide::Right => lhs < rhs,
        StripSide::Left => lhs > rhs,
    };
    Ok(StripPoint {
        sigma,
        t,
        side,
        lhs,
        rhs,
        pass,
    })
}

/// Evaluate the strip predicate at one sigma across a grid of ordinates, and
/// scan |sigma| outward on the same side to find where the predicate first
/// holds for the whole grid.
pub fn strip_check(
    model: &ApproximationModel,
    a: Complex64,
    sigma: f64,
    t_grid: &[f64],
) -> Result<StripReport, NumericError> {
    let mut points = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        points.push(strip_point(model, a, sigma, t)?);
    }
    let all_pass = points.iter().all(|p| p.pass);

    let sign = if sigma >= 0.0 { 1.0 } else { -1.0 };
    let mut min_abs_sigma_all_pass = None;
    let mut abs_sigma = 0.25;
    while abs_sigma <= sigma.abs().max(1.0) + 1e-12 {
        let mut all = true;
        for &t in t_grid {
            if !strip_point(model, a, sign * abs_sigma, t)?.pass {
                all = false;
                break;
            }
        }
        if all {
            min_abs_sigma_all_pass = Some(abs_sigma);
            break;
        }
        abs_sigma += 0.25;
    }

    Ok(StripReport {
        points,
        all_pass,
        min_abs_sigma_all_pass,
        warnings: model.degeneracy_warnings(),
    })
}

/// Default outer band half-width for censuses: the calibrated minimal |sigma|
/// at which both strip predicates hold across a probe grid, widened by 50%.
pub fn calibrate_sigma_bound(
    model: &ApproximationModel,
    a: Complex64,
    t_lo: f64,
    t_hi: f64,
) -> Result<f64, NumericError> {
    let probes: Vec<f64> = (0..8)
        .map(|k| t_lo + (t_hi - t_lo) * (k as f64 + 0.5) / 8.0)
        .collect();
    let scan_limit = 12.0f64.max(2.0 * model.series().len() as f64);
    let right = strip_check(model, a, scan_limit, &probes)?;
    let left = strip_check(model, a, -scan_limit, &probes)?;
    let right_min = right.min_abs_sigma_all_pass.unwrap_or(scan_limit);
    let left_min = left.min_abs_sigma_all_pass.unwrap_or(scan_limit);
    let half_delta_offset = model.fe().critical_sigma().abs();
    Ok(1.5 * right_min.max(left_min) + half_delta_offset)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ApproximationModel;
    use rand::{Rng, SeedableRng};

    #[test]
    fn empty_box_has_zero_winding() {
        let model = ApproximationModel::zeta_preset(3);
        let region = RectRegion::new(-2.0, 3.0, 12.0, 13.0);
        assert_eq!(winding_count(&model, Complex64::ZERO, &region).unwrap(), 0);
    }

    #[test]
    fn thin_box_around_a_line_zero_has_winding_one() {
        let model = ApproximationModel::zeta_preset(2);
        // Bracket a Hardy-style sign change, then wind around it.
        let mut prev = crate::evaluator::line_point(&model, 20.0, None).unwrap();
        let mut root_t = None;
        for k in 1..600 {
            let t = 20.0 + 0.05 * k as f64;
            let point = crate::evaluator::line_point(&model, t, Some(&prev)).unwrap();
            if prev.hardy_z * point.hardy_z < 0.0 {
                root_t = Some(0.5 * (prev.t + point.t));
                break;
            }
            prev = point;
        }
        let t0 = root_t.expect("sign change below t = 50");
        let region = RectRegion::new(0.2, 0.8, t0 - 0.1, t0 + 0.1);
        assert_eq!(winding_count(&model, Complex64::ZERO, &region).unwrap(), 1);
    }

    #[test]
    fn winding_is_additive_across_horizontal_splits() {
        let model = ApproximationModel::zeta_preset(3);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
        let mut checked = 0;
        while checked < 20 {
            let t0 = rng.random_range(50.0..400.0);
            let height = rng.random_range(0.5..4.0);
            let region = RectRegion::new(
                rng.random_range(-2.0..0.0),
                rng.random_range(1.0..3.0),
                t0,
                t0 + height,
            );
            let mid = 0.5 * (region.t_bottom + region.t_top);
            let lower = RectRegion::new(region.sigma_left, region.sigma_right, region.t_bottom, mid);
            let upper = RectRegion::new(region.sigma_left, region.sigma_right, mid, region.t_top);
            let whole = winding_count(&model, Complex64::new(2.0, 0.0), &region);
            let parts = winding_count(&model, Complex64::new(2.0, 0.0), &lower)
                .and_then(|w| winding_count(&model, Complex64::new(2.0, 0.0), &upper).map(|v| v + w));
            match (whole, parts) {
                (Ok(w), Ok(p)) => {
                    assert_eq!(w, p, "split mismatch on {region:?}");
                    checked += 1;
                }
                // A root close to a sampled edge: skip, the jittered wrapper
                // owns that case.
                (Err(NumericError::NearZero { .. }), _)
                | (_, Err(NumericError::NearZero { .. })) => continue,
                (Err(e), _) | (_, Err(e)) => panic!("unexpected error {e:?}"),
            }
        }
    }

    #[test]
    fn accepted_windings_sit_tightly_on_integers() {
        let model = ApproximationModel::zeta_preset(3);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(43);
        let mut checked = 0;
        let mut worst = 0.0f64;
        while checked < 25 {
            let t0 = rng.random_range(50.0..800.0);
            let region = RectRegion::new(
                rng.random_range(-2.5..0.0),
                rng.random_range(0.5..3.5),
                t0,
                t0 + rng.random_range(0.5..6.0),
            );
            match winding_count_detailed(&model, Complex64::new(1.0, 1.0), &region) {
                Ok(detail) => {
                    assert!(detail.residual < 0.01, "{detail:?}");
                    worst = worst.max(detail.residual);
                    checked += 1;
                }
                Err(NumericError::NearZero { .. }) => continue,
                Err(e) => panic!("unexpected error {e:?}"),
            }
        }
        // tracked phases land essentially exactly on integers
        assert!(worst < 1e-6, "worst residual {worst}");
    }

    #[test]
    fn locate_roots_empty_region() {
        let model = ApproximationModel::zeta_preset(3);
        let region = RectRegion::new(-2.0, 3.0, 12.0, 13.0);
        let roots = locate_roots(&model, Complex64::ZERO, &region, 1e-6, 1).unwrap();
        assert!(roots.is_empty());
    }

    #[test]
    fn locate_roots_puts_spira_zeros_on_the_line() {
        let model = ApproximationModel::zeta_preset(1);
        let region = RectRegion::new(-3.0, 4.0, 10.0, 50.0);
        let roots = locate_roots(&model, Complex64::ZERO, &region, 1e-6, 2).unwrap();
        assert!(!roots.is_empty());
        for root in &roots {
            assert!(
                (root.position.re - 0.5).abs() <= 1e-6,
                "off-line root at {}",
                root.position
            );
            assert_eq!(root.multiplicity, 1);
        }
    }

    #[test]
    fn locate_roots_reproduce_winding_total() {
        let model = ApproximationModel::zeta_preset(3);
        let a = Complex64::new(2.0, 0.0);
        let region = RectRegion::new(-2.5, 3.5, 100.0, 110.0);
        let expected = winding_count(&model, a, &region).unwrap();
        let roots = locate_roots(&model, a, &region, 1e-6, 2).unwrap();
        let total: i64 = roots.iter().map(|r| r.multiplicity).sum();
        assert_eq!(total, expected);
        assert!(expected > 0, "window chosen to contain a-values");
    }

    #[test]
    fn count_report_roots_sum_to_winding() {
        let model = ApproximationModel::zeta_preset(3);
        let a = Complex64::new(2.0, 0.0);
        let region = RectRegion::new(-2.5, 3.5, 120.0, 135.0);
        let report = count_report(&model, a, &region, 1.1, Some(1e-6), 2).unwrap();
        let total: i64 = report.roots.iter().map(|r| r.multiplicity).sum();
        assert_eq!(total, report.winding);
        assert!(report.winding > 0);
        assert!(report.predicted > 0.0);
        for root in &report.roots {
            assert!(report.region.contains(root.position));
        }
    }

    #[test]
    fn cluster_census_with_wide_epsilon_has_no_outside() {
        let model = ApproximationModel::zeta_preset(3);
        let report = cluster_census(&model, Complex64::new(2.0, 0.0), 100.0, 20.0, 6.0, 5.0)
            .unwrap();
        assert_eq!(report.within, report.total);
        assert_eq!(report.outside, 0);
    }

    #[test]
    fn cluster_outside_count_monotone_in_epsilon() {
        let model = ApproximationModel::zeta_preset(3);
        let a = Complex64::new(2.0, 0.0);
        let band = calibrate_sigma_bound(&model, a, 200.0, 240.0).unwrap();
        let wide = cluster_census(&model, a, 200.0, 40.0, 0.2, band).unwrap();
        let narrow = cluster_census(&model, a, 200.0, 40.0, 0.1, band).unwrap();
        assert!(wide.outside <= narrow.outside);
        assert!(wide.total == narrow.total);
        assert!((0..=wide.total).contains(&wide.within));
    }

    #[test]
    fn strip_predicates_on_both_sides() {
        let model = ApproximationModel::zeta_preset(3);
        let grid = [50.0, 120.0, 310.0];
        // a = 2 != a1: right side is the |zeta - a1| disk, left side is
        // distance from a.
        let a = Complex64::new(2.0, 0.0);
        let right = strip_check(&model, a, 30.0, &grid).unwrap();
        assert!(right.all_pass, "{:?}", right.points);
        let left = strip_check(&model, a, -30.0, &grid).unwrap();
        assert!(left.all_pass, "{:?}", left.points);
        // a = a1 = 1: the scaled-series disk applies on the right.
        let a1 = Complex64::ONE;
        let scaled = strip_check(&model, a1, 30.0, &grid).unwrap();
        assert!(scaled.all_pass, "{:?}", scaled.points);
        assert!(right.min_abs_sigma_all_pass.is_some());
    }

    #[test]
    fn calibrated_band_is_sane_for_zeta_preset() {
        let model = ApproximationModel::zeta_preset(3);
        let band = calibrate_sigma_bound(&model, Complex64::new(2.0, 0.0), 100.0, 200.0).unwrap();
        assert!(band > 1.0 && band < 12.0, "band {band}");
    }
}
