//! Modified Bessel function of the second kind, real order.
//!
//! `K_nu(x)` is evaluated from its cosh integral representation
//!
//! ```text
//! K_nu(x) = integral over t in (0, inf) of exp(-x cosh t) cosh(nu t) dt
//! ```
//!
//! by the truncated trapezoidal rule.  Extended evenly to the whole line the
//! integrand is analytic in a strip around the real axis and decays
//! double-exponentially, so the trapezoidal sum converges geometrically in
//! the step size; halving the step until two refinements agree therefore
//! reaches near machine precision with a few hundred evaluations.  The
//! integral is truncated once the exponent has fallen 45 e-folds below its
//! peak (or below `exp(-745)`, the smallest positive double), i.e. where
//! `x cosh t - nu t > 745`.
//!
//! No recurrence is used internally, which keeps the standard three-term
//! recurrence available as an independent cross-check in the tests.

use crate::error::{Error, Result};

/// Relative agreement between refinements at which the sum is accepted.
const REFINE_TOL: f64 = 1e-13;

/// e-folds below the integrand peak at which the domain is truncated.
const TAIL_EFOLDS: f64 = 45.0;

/// Exponent below which `exp` underflows to zero in `f64`.
const EXP_UNDERFLOW: f64 = -745.0;

/// Modified Bessel function of the second kind `K_nu(x)` for real order.
///
/// Validated to better than `1e-10` relative accuracy for
/// `x in [1e-2, 50]` and `|nu| <= 20`; in practice the refinement loop
/// reaches close to machine precision on that whole window.  The order may
/// be negative (`K_{-nu} = K_nu` holds exactly because `nu` only enters
/// through the even factor `cosh(nu t)`).
///
/// # Errors
///
/// * [`Error::Domain`] unless `x > 0` and both arguments are finite.
/// * [`Error::ConvergenceFailure`] if the refinement loop stalls (never
///   observed on the validated window; kept as a guard for extreme inputs).
pub fn bessel_k(nu: f64, x: f64) -> Result<f64> {
    if !nu.is_finite() {
        return Err(Error::Domain(format!("order must be finite, got {nu}")));
    }
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!(
            "argument must be positive and finite, got {x}"
        )));
    }

    let n = nu.abs();
    // exponent of the integrand: p(t) = nu t - x cosh t, peaked where
    // x sinh t = nu.
    let t_peak = if n == 0.0 { 0.0 } else { (n / x).asinh() };
    let p_peak = n * t_peak - (x * x + n * n).sqrt();
    let floor = (p_peak - TAIL_EFOLDS).max(EXP_UNDERFLOW);
    let mut t_max = t_peak.max(1.0);
    while n * t_max - x * t_max.cosh() > floor {
        t_max += 0.5;
    }

    let integrand = |t: f64| {
        let damp = -x * t.cosh();
        0.5 * ((nu * t + damp).exp() + (-nu * t + damp).exp())
    };

    // Trapezoidal sum with successive halving; each refinement only adds the
    // midpoints of the previous grid.
    let mut intervals: usize = 16;
    let mut h = t_max / intervals as f64;
    let mut sum = 0.5 * (integrand(0.0) + integrand(t_max));
    for k in 1..intervals {
        sum += integrand(k as f64 * h);
    }
    let mut value = h * sum;

    loop {
        let mut midpoint_sum = 0.0;
        for k in 0..intervals {
            midpoint_sum += integrand((k as f64 + 0.5) * h);
        }
        sum += midpoint_sum;
        intervals *= 2;
        h *= 0.5;
        let refined = h * sum;
        let delta = (refined - value).abs();
        let close = delta <= REFINE_TOL * refined.abs();
        let both_zero = refined == 0.0 && value == 0.0;
        value = refined;
        if (intervals >= 128 && close) || both_zero {
            return Ok(value);
        }
        if intervals > (1 << 21) {
            return Err(Error::ConvergenceFailure {
                best: value,
                error_estimate: delta,
            });
        }
    }
}
