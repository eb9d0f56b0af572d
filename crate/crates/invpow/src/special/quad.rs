//! Globally adaptive quadrature on finite and semi-infinite radial intervals.
//!
//! Finite panels are integrated with a 15-point Gauss-Legendre rule; the
//! error of a panel is estimated against an embedded 7-point rule, and the
//! worst panel is bisected until the summed estimate meets the tolerance.
//! Node tables for both rules are generated once at first use by Newton
//! iteration on the Legendre recurrence, so no hard-coded abscissae enter.
//!
//! A semi-infinite integral over `(lo, inf)` is split at `r = 1`.  The head
//! `(lo, 1]` is mapped by `u = 1/r` onto a finite (or again semi-infinite)
//! interval on which an essential singularity at the origin turns into a
//! decaying tail, and the part beyond the split is covered by panels
//! `[t, 2t]` of doubling width until their contribution is negligible.  The
//! doubling strategy assumes the integrand eventually decays at least as fast
//! as `r^-2`, which holds for the exponentially damped radial densities this
//! crate integrates (`r^p exp(q/r + s r)` with `q < 0`, `s < 0`).

use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Outcome of an adaptive quadrature run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    /// Estimate of the integral.
    pub value: f64,
    /// Conservative estimate of the absolute error of `value`.
    pub error_estimate: f64,
    /// Number of integrand evaluations spent.
    pub evaluations: usize,
}

/// Total integrand evaluations allowed in one `integrate_adaptive` call.
const EVAL_BUDGET: usize = 3_000_000;

/// Relative spacing below which a panel is considered unsplittable.
const MIN_PANEL_WIDTH: f64 = 1e-14;

/// Adaptively integrates `f` over `(lo, hi)` to relative tolerance `rel_tol`.
///
/// `hi` may be `f64::INFINITY`; `lo` must be finite and non-negative.  The
/// integrand is never evaluated at the interval endpoints, so integrable
/// endpoint singularities (for example at `r = 0`) are acceptable.
///
/// # Errors
///
/// * [`Error::Domain`] if the interval is invalid or `rel_tol` lies outside
///   `[1e-12, 1e-6]`.
/// * [`Error::ConvergenceFailure`] if the tolerance cannot be met within the
///   evaluation budget; the failure carries the best estimate obtained.
pub fn integrate_adaptive<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    rel_tol: f64,
) -> Result<QuadratureResult> {
    if !lo.is_finite() || lo < 0.0 {
        return Err(Error::Domain(format!(
            "lower integration limit must be finite and non-negative, got {lo}"
        )));
    }
    if hi <= lo {
        return Err(Error::Domain(format!(
            "integration limits must satisfy lo < hi, got ({lo}, {hi})"
        )));
    }
    if !(1e-12..=1e-6).contains(&rel_tol) {
        return Err(Error::Domain(format!(
            "relative tolerance must lie in [1e-12, 1e-6], got {rel_tol}"
        )));
    }

    let mut run = Run {
        f,
        evaluations: 0,
        converged: true,
    };
    let mut value = 0.0;
    let mut error = 0.0;

    if hi.is_finite() {
        let part = run.finite(lo, hi, rel_tol, 0.0);
        value += part.value;
        error += part.error;
    } else {
        // Head (lo, 1] under u = 1/r, where r = 1/u and dr = -du/u^2.
        if lo < 1.0 {
            let g = |u: f64| {
                let r = 1.0 / u;
                run_eval(&run.f, r) / (u * u)
            };
            let mut head_run = Run {
                f: g,
                evaluations: 0,
                converged: true,
            };
            let head = if lo == 0.0 {
                head_run.semi_tail(1.0, rel_tol, 0.0)
            } else {
                head_run.finite(1.0, 1.0 / lo, rel_tol, 0.0)
            };
            value += head.value;
            error += head.error;
            run.evaluations += head_run.evaluations;
            run.converged &= head_run.converged;
        }
        // Tail [max(lo, 1), inf) integrated directly.
        let start = lo.max(1.0);
        let tail = run.semi_tail(start, rel_tol, value.abs());
        value += tail.value;
        error += tail.error;
    }

    let result = QuadratureResult {
        value,
        error_estimate: error,
        evaluations: run.evaluations,
    };
    if !run.converged || error > rel_tol * value.abs().max(1e-300) * 4.0 {
        return Err(Error::ConvergenceFailure {
            best: result.value,
            error_estimate: result.error_estimate,
        });
    }
    Ok(result)
}

fn run_eval<F: Fn(f64) -> f64>(f: &F, x: f64) -> f64 {
    f(x)
}

struct Part {
    value: f64,
    error: f64,
}

struct Run<F> {
    f: F,
    evaluations: usize,
    converged: bool,
}

impl<F: Fn(f64) -> f64> Run<F> {
    /// One 15-point panel value plus its 7-point error estimate (22 calls).
    fn panel(&mut self, lo: f64, hi: f64) -> (f64, f64) {
        let rules = rules();
        let mid = 0.5 * (lo + hi);
        let hw = 0.5 * (hi - lo);
        let mut s15 = 0.0;
        for (&x, &w) in rules.x15.iter().zip(&rules.w15) {
            s15 += w * (self.f)(mid + hw * x);
        }
        let mut s7 = 0.0;
        for (&x, &w) in rules.x7.iter().zip(&rules.w7) {
            s7 += w * (self.f)(mid + hw * x);
        }
        self.evaluations += 22;
        let value = hw * s15;
        (value, (value - hw * s7).abs())
    }

    /// Worst-panel-first adaptive integration of a finite interval.
    ///
    /// Converges when the summed error estimate drops below
    /// `max(rel_tol * |value|, abs_floor)`.
    fn finite(&mut self, lo: f64, hi: f64, rel_tol: f64, abs_floor: f64) -> Part {
        let (v, e) = self.panel(lo, hi);
        let mut panels = vec![(e, v, lo, hi)];
        let mut value = v;
        let mut error = e;
        let mut stuck = 0.0;

        loop {
            let target = (rel_tol * value.abs()).max(abs_floor).max(1e-300);
            if error + stuck <= target {
                break;
            }
            if stuck > target {
                // The unsplittable panels alone already bust the budget;
                // refining the rest cannot help, so stop early.
                self.converged = false;
                break;
            }
            if self.evaluations + 44 > EVAL_BUDGET {
                self.converged = false;
                break;
            }
            // Pop the panel with the largest error estimate.
            let worst = panels
                .iter()
                .enumerate()
                .max_by(|a, b| a.1 .0.total_cmp(&b.1 .0))
                .map(|(i, _)| i);
            let Some(i) = worst else {
                self.converged = false;
                break;
            };
            let (pe, pv, plo, phi) = panels.swap_remove(i);
            let width_floor = MIN_PANEL_WIDTH * (plo.abs() + phi.abs() + 1.0);
            if phi - plo <= width_floor {
                // Cannot be resolved further; account for it and move on.
                stuck += pe;
                error -= pe;
                continue;
            }
            let mid = 0.5 * (plo + phi);
            let (vl, el) = self.panel(plo, mid);
            let (vr, er) = self.panel(mid, phi);
            value += vl + vr - pv;
            error += el + er - pe;
            panels.push((el, vl, plo, mid));
            panels.push((er, vr, mid, phi));
        }

        let total_error = error.max(0.0) + stuck;
        let target = (rel_tol * value.abs()).max(abs_floor).max(1e-300);
        if total_error > target {
            self.converged = false;
        }
        Part {
            value,
            error: total_error,
        }
    }

    /// Integration over `[start, inf)` by panels of doubling width.
    ///
    /// `scale_hint` seeds the magnitude against which panel contributions are
    /// judged negligible (useful when a sibling sub-integral has already been
    /// accumulated).
    fn semi_tail(&mut self, start: f64, rel_tol: f64, scale_hint: f64) -> Part {
        let mut value = 0.0_f64;
        let mut error = 0.0_f64;
        let mut t = start;
        let mut small_in_a_row = 0;

        loop {
            let scale = value.abs().max(scale_hint).max(1e-300);
            let part = self.finite(t, 2.0 * t, rel_tol, 0.125 * rel_tol * scale);
            value += part.value;
            error += part.error;
            if !self.converged {
                break;
            }
            let scale = value.abs().max(scale_hint).max(1e-300);
            if part.value.abs() <= 0.25 * rel_tol * scale {
                small_in_a_row += 1;
                if small_in_a_row == 2 {
                    // Geometric decay makes the remainder at most one more
                    // panel's worth; fold that bound into the estimate.
                    error += part.value.abs();
                    break;
                }
            } else {
                small_in_a_row = 0;
            }
            t *= 2.0;
            if t > 1e300 {
                self.converged = false;
                break;
            }
        }
        Part { value, error }
    }
}

struct Rules {
    x7: Vec<f64>,
    w7: Vec<f64>,
    x15: Vec<f64>,
    w15: Vec<f64>,
}

fn rules() -> &'static Rules {
    static RULES: OnceLock<Rules> = OnceLock::new();
    RULES.get_or_init(|| {
        let (x7, w7) = gauss_legendre(7);
        let (x15, w15) = gauss_legendre(15);
        Rules { x7, w7, x15, w15 }
    })
}

/// Nodes and weights of the `n`-point Gauss-Legendre rule on `[-1, 1]`,
/// found by Newton iteration from the Chebyshev-based starting guesses.
fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(n, x);
        nodes[i] = x;
        nodes[n - 1 - i] = -x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Legendre polynomial `P_n(x)` and its derivative via the three-term
/// recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 1.0;
    let mut p = x;
    for k in 2..=n {
        let k = k as f64;
        let p_next = ((2.0 * k - 1.0) * x * p - (k - 1.0) * p_prev) / k;
        p_prev = p;
        p = p_next;
    }
    let dp = n as f64 * (x * p - p_prev) / (x * x - 1.0);
    (p, dp)
}
