//! C ABI for the zetapprox engine.
//!
//! Models are opaque handles created and released by this library; every
//! fallible call returns a [`ZxStatus`] and writes its results through out
//! pointers. `zx_last_error_message` exposes a per-thread description of the
//! most recent failure.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_complex::Complex64;
use zetapprox::counting::{locate_roots, winding_count, RectRegion};
use zetapprox::critical_line::{avalue_line_census, count_line_zeros};
use zetapprox::error::NumericError;
use zetapprox::evaluator::{eval_series, eval_zeta_n};
use zetapprox::model::{
    ApproximationModel, Envelope, FunctionalEquationData, GammaFactorTerm, SeriesSpec,
};
use zetapprox::special::{arg_g_derivative, eval_g};

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ZxStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// Arguments failed structural validation.
    InvalidArgument = 2,
    /// The computation could not produce a trustworthy result.
    NumericFailure = 3,
    /// A root stayed on a contour edge through the whole jitter schedule.
    BoundaryRoot = 4,
    /// The caller-provided buffer is too small; nothing was written.
    BufferTooSmall = 5,
}

/// Opaque model handle.
pub struct ZxModel {
    inner: ApproximationModel,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: impl Into<String>) {
    let text = CString::new(message.into()).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = text);
}

fn numeric_status(err: &NumericError) -> ZxStatus {
    set_error(err.to_string());
    match err {
        NumericError::BoundaryRootExhausted { .. } => ZxStatus::BoundaryRoot,
        NumericError::NonRealCoefficients | NumericError::ZeroTarget => ZxStatus::InvalidArgument,
        _ => ZxStatus::NumericFailure,
    }
}

fn guarded(body: impl FnOnce() -> ZxStatus) -> ZxStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            ZxStatus::NumericFailure
        }
    }
}

/// Description of the most recent failure on this thread. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn zx_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Create the Riemann-zeta preset model with truncation `n` (n >= 1).
/// Returns null on invalid input. Release with [`zx_model_free`].
#[no_mangle]
pub extern "C" fn zx_model_zeta_preset(n: usize) -> *mut ZxModel {
    if n == 0 {
        set_error("zeta preset needs n >= 1");
        return ptr::null_mut();
    }
    Box::into_raw(Box::new(ZxModel {
        inner: ApproximationModel::zeta_preset(n),
    }))
}

/// Create a model from raw arrays: `n` series terms with split complex
/// coefficients and exponents, and `omega_len` Gamma factors. Returns null
/// when shapes or invariants are rejected; consult `zx_last_error_message`.
///
/// # Safety
/// `coeff_re`, `coeff_im`, and `exponents` must point to `n` readable
/// doubles; `alphas` and `betas` must point to `omega_len` readable doubles.
#[no_mangle]
pub unsafe extern "C" fn zx_model_new(
    coeff_re: *const f64,
    coeff_im: *const f64,
    exponents: *const f64,
    n: usize,
    lambda: f64,
    delta: f64,
    alphas: *const f64,
    betas: *const f64,
    omega_len: usize,
) -> *mut ZxModel {
    if coeff_re.is_null()
        || coeff_im.is_null()
        || exponents.is_null()
        || alphas.is_null()
        || betas.is_null()
    {
        set_error("null array argument");
        return ptr::null_mut();
    }
    let re = std::slice::from_raw_parts(coeff_re, n);
    let im = std::slice::from_raw_parts(coeff_im, n);
    let exps = std::slice::from_raw_parts(exponents, n);
    let alphas = std::slice::from_raw_parts(alphas, omega_len);
    let betas = std::slice::from_raw_parts(betas, omega_len);

    let coefficients = re
        .iter()
        .zip(im)
        .map(|(&x, &y)| Complex64::new(x, y))
        .collect();
    let series = match SeriesSpec::new(coefficients, exps.to_vec(), Envelope::default()) {
        Ok(series) => series,
        Err(err) => {
            set_error(err.to_string());
            return ptr::null_mut();
        }
    };
    let omega = alphas
        .iter()
        .zip(betas)
        .map(|(&alpha, &beta)| GammaFactorTerm { alpha, beta })
        .collect();
    let model = ApproximationModel::new(series, FunctionalEquationData::new(lambda, delta, omega));
    if let Some(violation) = model
        .validate()
        .iter()
        .find(|v| !v.is_degenerate_truncation())
    {
        set_error(violation.to_string());
        return ptr::null_mut();
    }
    Box::into_raw(Box::new(ZxModel { inner: model }))
}

/// New handle whose first coefficient is shifted to a_1 - a; the input
/// handle stays valid.
///
/// # Safety
/// `model` must be a live handle from this library or null.
#[no_mangle]
pub unsafe extern "C" fn zx_model_shift_constant(
    model: *const ZxModel,
    a_re: f64,
    a_im: f64,
) -> *mut ZxModel {
    let Some(model) = model.as_ref() else {
        set_error("null model");
        return ptr::null_mut();
    };
    Box::into_raw(Box::new(ZxModel {
        inner: model.inner.shift_constant(Complex64::new(a_re, a_im)),
    }))
}

/// Number of failed model invariants (0 means fully valid).
///
/// # Safety
/// `model` must be a live handle from this library or null.
#[no_mangle]
pub unsafe extern "C" fn zx_model_validate(model: *const ZxModel) -> usize {
    match model.as_ref() {
        Some(model) => model.inner.validate().len(),
        None => {
            set_error("null model");
            usize::MAX
        }
    }
}

/// Release a handle created by this library. Null is ignored.
///
/// # Safety
/// `model` must be a pointer previously returned by a constructor of this
/// library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn zx_model_free(model: *mut ZxModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

unsafe fn write_complex(out_re: *mut f64, out_im: *mut f64, value: Complex64) -> ZxStatus {
    if out_re.is_null() || out_im.is_null() {
        set_error("null output pointer");
        return ZxStatus::NullPointer;
    }
    *out_re = value.re;
    *out_im = value.im;
    ZxStatus::Ok
}

/// zeta_N(s) at s = s_re + i s_im.
///
/// # Safety
/// `model` must be a live handle; `out_re` and `out_im` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zx_eval_zeta_n(
    model: *const ZxModel,
    s_re: f64,
    s_im: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> ZxStatus {
    let Some(model) = model.as_ref() else {
        set_error("null model");
        return ZxStatus::NullPointer;
    };
    match eval_zeta_n(&model.inner, Complex64::new(s_re, s_im)) {
        Ok(value) => write_complex(out_re, out_im, value),
        Err(err) => numeric_status(&err),
    }
}

/// The functional-equation factor G(s).
///
/// # Safety
/// `model` must be a live handle; `out_re` and `out_im` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zx_eval_g(
    model: *const ZxModel,
    s_re: f64,
    s_im: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> ZxStatus {
    let Some(model) = model.as_ref() else {
        set_error("null model");
        return ZxStatus::NullPointer;
    };
    match eval_g(model.inner.fe(), Complex64::new(s_re, s_im)) {
        Ok(value) => write_complex(out_re, out_im, value),
        Err(err) => numeric_status(&err),
    }
}

/// The truncated series F_N(s).
///
/// # Safety
/// `model` must be a live handle; `out_re` and `out_im` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zx_eval_series(
    model: *const ZxModel,
    s_re: f64,
    s_im: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> ZxStatus {
    let Some(model) = model.as_ref() else {
        set_error("null model");
        return ZxStatus::NullPointer;
    };
    write_complex(
        out_re,
        out_im,
        eval_series(model.inner.series(), Complex64::new(s_re, s_im)),
    )
}

/// d/dt arg G(sigma + it).
///
/// # Safety
/// `model` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zx_arg_g_derivative(
    model: *const ZxModel,
    sigma: f64,
    t: f64,
    out: *mut f64,
) -> ZxStatus {
    let Some(model) = model.as_ref() else {
        set_error("null model");
        return ZxStatus::NullPointer;
    };
    if out.is_null() {
        set_error("null output pointer");
        return ZxStatus::NullPointer;
    }
    match arg_g_derivative(model.inner.fe(), sigma, t) {
        Ok(value) => {
            *out = value;
            ZxStatus::Ok
        }
        Err(err) => numeric_status(&err),
    }
}

/// Winding count of zeta_N - a around the rectangle
/// sigma_left < sigma < sigma_right, t_bottom < t < t_top.
///
/// # Safety
/// `model` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zx_winding_count(
    model: *const ZxModel,
    a_re: f64,
    a_im: f64,
    sigma_left: f64,
    sigma_right: f64,
    t_bottom: f64,
    t_top: f64,
    out: *mut i64,
) -> ZxStatus {
    let Some(model) = model.as_ref() else {
        set_error("null model");
        return ZxStatus::NullPointer;
    };
    if out.is_null() {
        set_error("null output pointer");
        return ZxStatus::NullPointer;
    }
    if !(sigma_left < sigma_right && t_bottom < t_top) {
        set_error("degenerate rectangle");
        return ZxStatus::InvalidArgument;
    }
    guarded(|| {
        let region = RectRegion::new(sigma_left, sigma_right, t_bottom, t_top);
        match winding_count(&model.inner, Complex64::new(a_re, a_im), &region) {
            Ok(w) => {
                *out = w;
                ZxStatus::Ok
            }
            Err(err) => numeric_status(&err),
        }
    })
}

/// Localize a-values in a rectangle; writes up to `cap` located roots as
/// (sigma, t, multiplicity) triples into `buf` and the total root count into
/// `out_len`. Fails with `BufferTooSmall` when `cap` is insufficient.
///
/// # Safety
/// `model` must be a live handle; `buf` must have room for `3 * cap`
/// doubles; `out_len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zx_locate_roots(
    model: *const ZxModel,
    a_re: f64,
    a_im: f64,
    sigma_left: f64,
    sigma_right: f64,
    t_bottom: f64,
    t_top: f64,
    radius: f64,
    buf: *mut f64,
    cap: usize,
    out_len: *mut usize,
) -> ZxStatus {
    let Some(model) = model.as_ref() else {
        set_error("null model");
        return ZxStatus::NullPointer;
    };
    if buf.is_null() || out_len.is_null() {
        set_error("null output pointer");
        return ZxStatus::NullPointer;
    }
    if !(sigma_left < sigma_right && t_bottom < t_top) || !(radius > 0.0) {
        set_error("degenerate rectangle or nonpositive radius");
        return ZxStatus::InvalidArgument;
    }
    guarded(|| {
        let region = RectRegion::new(sigma_left, sigma_right, t_bottom, t_top);
        match locate_roots(&model.inner, Complex64::new(a_re, a_im), &region, radius, 1) {
            Ok(roots) => {
                *out_len = roots.len();
                if roots.len() > cap {
                    set_error("buffer too small for located roots");
                    return ZxStatus::BufferTooSmall;
                }
                for (k, root) in roots.iter().enumerate() {
                    *buf.add(3 * k) = root.position.re;
                    *buf.add(3 * k + 1) = root.position.im;
                    *buf.add(3 * k + 2) = root.multiplicity as f64;
                }
                ZxStatus::Ok
            }
            Err(err) => numeric_status(&err),
        }
    })
}

/// Sign-change zeros of Z(t) on t in (t_start, t_start + window); writes up
/// to `cap` ordinates into `buf` and the total into `out_len`.
///
/// # Safety
/// `model` must be a live handle; `buf` must have room for `cap` doubles;
/// `out_len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zx_line_zeros(
    model: *const ZxModel,
    t_start: f64,
    window: f64,
    buf: *mut f64,
    cap: usize,
    out_len: *mut usize,
) -> ZxStatus {
    let Some(model) = model.as_ref() else {
        set_error("null model");
        return ZxStatus::NullPointer;
    };
    if buf.is_null() || out_len.is_null() {
        set_error("null output pointer");
        return ZxStatus::NullPointer;
    }
    if !(window > 0.0) {
        set_error("window must be positive");
        return ZxStatus::InvalidArgument;
    }
    guarded(|| match count_line_zeros(&model.inner, t_start, window, 1) {
        Ok(scan) => {
            *out_len = scan.zero_ordinates.len();
            if scan.zero_ordinates.len() > cap {
                set_error("buffer too small for zero ordinates");
                return ZxStatus::BufferTooSmall;
            }
            for (k, &t) in scan.zero_ordinates.iter().enumerate() {
                *buf.add(k) = t;
            }
            ZxStatus::Ok
        }
        Err(err) => numeric_status(&err),
    })
}

/// Critical-line census for a nonzero target a: candidate and hit counts for
/// the projection condition at tolerance `hit_tol`.
///
/// # Safety
/// `model` must be a live handle; `out_candidates` and `out_hits` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn zx_avalue_census(
    model: *const ZxModel,
    a_re: f64,
    a_im: f64,
    t_start: f64,
    window: f64,
    hit_tol: f64,
    out_candidates: *mut usize,
    out_hits: *mut usize,
) -> ZxStatus {
    let Some(model) = model.as_ref() else {
        set_error("null model");
        return ZxStatus::NullPointer;
    };
    if out_candidates.is_null() || out_hits.is_null() {
        set_error("null output pointer");
        return ZxStatus::NullPointer;
    }
    if !(window > 0.0) || !(hit_tol > 0.0) {
        set_error("window and hit_tol must be positive");
        return ZxStatus::InvalidArgument;
    }
    guarded(|| {
        match avalue_line_census(
            &model.inner,
            Complex64::new(a_re, a_im),
            t_start,
            window,
            hit_tol,
            1,
        ) {
            Ok(scan) => {
                *out_candidates = scan.candidates.len();
                *out_hits = scan.hits.len();
                ZxStatus::Ok
            }
            Err(err) => numeric_status(&err),
        }
    })
}

/// Predicted a-value count for a window, from the model constants: the main
/// terms (A/pi)((T+U) log(T+U) - T log T) + ((B - log lambda + Psi)/pi) U.
#[no_mangle]
pub extern "C" fn zx_predicted_count(
    a_const: f64,
    b_const: f64,
    lambda: f64,
    lambda2: f64,
    a_re: f64,
    a_im: f64,
    a1_re: f64,
    a1_im: f64,
    t_start: f64,
    window: f64,
) -> f64 {
    let input = zetapprox::asymptotics::PredictionInput {
        a_const,
        b_const,
        lambda,
        lambda2,
        a: Complex64::new(a_re, a_im),
        a1: Complex64::new(a1_re, a1_im),
        t_start,
        window,
        n: 1,
        gamma: 1.0,
    };
    zetapprox::asymptotics::predicted_count(&input).value
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CStr;

    #[test]
    fn handle_lifecycle_and_evaluation() {
        let model = zx_model_zeta_preset(3);
        assert!(!model.is_null());
        unsafe {
            assert_eq!(zx_model_validate(model), 0);
            let (mut re, mut im) = (0.0, 0.0);
            let status = zx_eval_zeta_n(model, 0.5, 40.0, &mut re, &mut im);
            assert_eq!(status, ZxStatus::Ok);
            let direct = eval_zeta_n(
                &ApproximationModel::zeta_preset(3),
                Complex64::new(0.5, 40.0),
            )
            .unwrap();
            assert_eq!(Complex64::new(re, im), direct);
            zx_model_free(model);
        }
    }

    #[test]
    fn shift_constant_matches_core() {
        let model = zx_model_zeta_preset(3);
        unsafe {
            let shifted = zx_model_shift_constant(model, 1.0, 0.0);
            assert!(!shifted.is_null());
            let (mut re, mut im) = (0.0, 0.0);
            assert_eq!(
                zx_eval_series(shifted, 2.0, 0.0, &mut re, &mut im),
                ZxStatus::Ok
            );
            // a1 shifted from 1 to 0: remaining terms are 2^-2 + 3^-2.
            assert!((re - (0.25 + 1.0 / 9.0)).abs() < 1e-15);
            assert_eq!(im, 0.0);
            zx_model_free(shifted);
            zx_model_free(model);
        }
    }

    #[test]
    fn winding_and_line_zeros_agree_for_spira_model() {
        let model = zx_model_zeta_preset(2);
        unsafe {
            let mut winding = -1i64;
            let status = zx_winding_count(model, 0.0, 0.0, -3.0, 4.0, 10.0, 60.0, &mut winding);
            assert_eq!(status, ZxStatus::Ok);
            let mut buf = vec![0.0f64; 64];
            let mut len = 0usize;
            let status = zx_line_zeros(model, 10.0, 50.0, buf.as_mut_ptr(), buf.len(), &mut len);
            assert_eq!(status, ZxStatus::Ok);
            assert_eq!(len as i64, winding);
            assert!(buf[..len].windows(2).all(|w| w[0] < w[1]));
            zx_model_free(model);
        }
    }

    #[test]
    fn census_counts_flow_through() {
        let model = zx_model_zeta_preset(3);
        unsafe {
            let (mut candidates, mut hits) = (0usize, 0usize);
            let status = zx_avalue_census(
                model, 2.0, 0.0, 1000.0, 50.0, 1e-8, &mut candidates, &mut hits,
            );
            assert_eq!(status, ZxStatus::Ok);
            assert!(candidates > 0);
            assert_eq!(hits, 0);
            // Zero target is rejected with a message.
            let status = zx_avalue_census(
                model, 0.0, 0.0, 1000.0, 50.0, 1e-8, &mut candidates, &mut hits,
            );
            assert_eq!(status, ZxStatus::InvalidArgument);
            let message = CStr::from_ptr(zx_last_error_message());
            assert!(!message.to_bytes().is_empty());
            zx_model_free(model);
        }
    }

    #[test]
    fn locate_roots_buffer_protocol() {
        let model = zx_model_zeta_preset(1);
        unsafe {
            let mut buf = vec![0.0f64; 3 * 16];
            let mut len = 0usize;
            let status = zx_locate_roots(
                model,
                0.0,
                0.0,
                -3.0,
                4.0,
                10.0,
                30.0,
                1e-6,
                buf.as_mut_ptr(),
                16,
                &mut len,
            );
            assert_eq!(status, ZxStatus::Ok);
            assert!(len > 0);
            for k in 0..len {
                assert!((buf[3 * k] - 0.5).abs() <= 1e-6);
                assert_eq!(buf[3 * k + 2], 1.0);
            }
            // A one-slot buffer reports the real count and BufferTooSmall.
            let mut tiny = vec![0.0f64; 3];
            let status = zx_locate_roots(
                model,
                0.0,
                0.0,
                -3.0,
                4.0,
                10.0,
                30.0,
                1e-6,
                tiny.as_mut_ptr(),
                1,
                &mut len,
            );
            assert_eq!(status, ZxStatus::BufferTooSmall);
            assert!(len > 1);
            zx_model_free(model);
        }
    }

    #[test]
    fn invalid_models_are_rejected_with_messages() {
        unsafe {
            let coeff_re = [1.0, 1.0, 1.0];
            let coeff_im = [0.0, 0.0, 0.0];
            let exponents = [1.0, 2.0, 2.0];
            let alphas = [0.5];
            let betas = [0.0];
            let model = zx_model_new(
                coeff_re.as_ptr(),
                coeff_im.as_ptr(),
                exponents.as_ptr(),
                3,
                1.0,
                1.0,
                alphas.as_ptr(),
                betas.as_ptr(),
                1,
            );
            assert!(model.is_null());
            let message = CStr::from_ptr(zx_last_error_message()).to_string_lossy();
            assert!(message.contains("exponents"), "{message}");
        }
    }

    #[test]
    fn predicted_count_matches_core_formula() {
        let value = zx_predicted_count(0.5, 0.5 * 0.5f64.ln() - 0.5, std::f64::consts::PI.sqrt(), 2.0, 2.0, 0.0, 1.0, 0.0, 1000.0, 1000.0);
        let model = ApproximationModel::zeta_preset(3);
        let input = zetapprox::asymptotics::PredictionInput::from_model(
            &model,
            Complex64::new(2.0, 0.0),
            1000.0,
            1000.0,
            1.1,
        );
        let expected = zetapprox::asymptotics::predicted_count(&input).value;
        assert_eq!(value, expected);
    }
}
