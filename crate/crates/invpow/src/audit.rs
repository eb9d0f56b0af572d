//! Audit of the node-factor construction for a first excited state.
//!
//! A natural candidate for the first excited state multiplies the ground
//! profile by a single node factor,
//!
//! ```text
//! R1(r) = (r - alpha1) exp(a/r + b r + c ln r),
//! ```
//!
//! keeping the same exponent coefficients.  Substituting into the radial
//! equation and collecting powers of `r` yields six balances (two of which
//! are reported combined, giving five residuals).  This module shows the
//! construction cannot work:
//!
//! * the `r^-1` and `r^0` balances force `2 b (c + 1) = D`, while the
//!   ground profile already fixed `2 b c = D` - both can only hold when
//!   `b = 0`, i.e. when the linear coupling vanishes
//!   ([`excited_b_conflict`]);
//! * with the ground coefficients kept fixed, the residual norm minimized
//!   over the node position `alpha1` stays bounded away from zero
//!   ([`audit`], `residual_floor`).
//!
//! The same report also evaluates a historical two-branch closed form for
//! the energy ([`legacy_energy_branches`]) and records which branch agrees
//! with `E = -b^2`.

use crate::ansatz::{energy_formula, power_balance, solve_ansatz, AnsatzParams};
use crate::error::{Error, Result};
use crate::potential::{Channel, Potential};

/// Relative difference above which the two linear-coupling values are
/// reported as conflicting.
const CONFLICT_REL_TOL: f64 = 1e-12;

/// `<w, w>` below which the residual is treated as independent of
/// `alpha1` (all power balances already vanish to rounding).
const DEGENERATE_DIRECTION_TOL: f64 = 1e-20;

/// Linear-coupling values implied for the ground profile and for the
/// node-factor excited profile, and whether they conflict.
///
/// The ground `r^-1` balance gives `b = D sqrt(A) / (B + 2 sqrt(A))`; the
/// excited one gives `b = D sqrt(A) / (B + 4 sqrt(A))`.  Returns
/// `(ground_b, excited_b, conflict)`; the two agree only when `D = 0`.
pub fn excited_b_conflict(potential: &Potential) -> (f64, f64, bool) {
    let root_a4 = potential.a4().sqrt();
    let scaled = potential.a1() * root_a4;
    let ground = scaled / (potential.a3() + 2.0 * root_a4);
    let excited = scaled / (potential.a3() + 4.0 * root_a4);
    let conflict = (ground - excited).abs() > CONFLICT_REL_TOL * ground.abs();
    (ground, excited, conflict)
}

/// The six power balances of the node-factor profile, as
/// `balance_i = u_i + alpha1 * w_i`; returns `(u, w)`.
///
/// Order: `r^-4`, `r^-3`, `r^-2`, `r^-1`, `r^0`, `r^1`.
fn node_factor_balances(
    params: &AnsatzParams,
    potential: &Potential,
    gamma: f64,
    energy: f64,
) -> ([f64; 6], [f64; 6]) {
    let [k4, k3, k2, k1, k0] = power_balance(params, potential, gamma, energy);
    let (a, b, c) = (params.a(), params.b(), params.c());
    let u = [0.0, k4, k3 - 2.0 * a, k2 + 2.0 * c, k1 + 2.0 * b, k0];
    let w = [-k4, -k3, -k2, -k1, -k0, 0.0];
    (u, w)
}

/// Residuals of the five node-factor matching relations at node position
/// `alpha1`, for the given profile coefficients and trial energy.
///
/// The first, fourth and fifth entries are the `r^0`, `r^-1` and `r^-2`
/// balances; the second combines the `r^-4` and `r^-3` balances as a
/// Euclidean norm; the third is the large-`r` balance `b^2 + E`.  All five
/// vanish exactly when `(r - alpha1) exp(g)` solves the radial equation.
///
/// # Errors
///
/// [`Error::Domain`] if `alpha1` is zero (the factor must move the node
/// away from the origin) or not finite.
pub fn excited_system_residual(
    potential: &Potential,
    channel: Channel,
    alpha1: f64,
    params: &AnsatzParams,
    energy: f64,
) -> Result<[f64; 5]> {
    if alpha1 == 0.0 || !alpha1.is_finite() {
        return Err(Error::Domain(format!(
            "node position must be finite and nonzero, got {alpha1}"
        )));
    }
    let (u, w) = node_factor_balances(params, potential, channel.centrifugal(), energy);
    let balance = |i: usize| u[i] + alpha1 * w[i];
    Ok([
        -balance(4),
        balance(0).hypot(balance(1)),
        balance(5),
        -balance(3),
        -balance(2),
    ])
}

/// Smallest Euclidean norm of the six node-factor balances over all node
/// positions `alpha1`, with the profile coefficients and energy held fixed.
///
/// The balances are affine in `alpha1`, so the minimum is the one-variable
/// least-squares projection.  When every balance already vanishes to
/// rounding the norm does not depend on `alpha1` at all and the remaining
/// constant part is returned as is.
fn residual_floor(params: &AnsatzParams, potential: &Potential, gamma: f64, energy: f64) -> f64 {
    let (u, w) = node_factor_balances(params, potential, gamma, energy);
    let ww: f64 = w.iter().map(|x| x * x).sum();
    let alpha1 = if ww > DEGENERATE_DIRECTION_TOL {
        -u.iter().zip(&w).map(|(a, b)| a * b).sum::<f64>() / ww
    } else {
        0.0
    };
    u.iter()
        .zip(&w)
        .map(|(ui, wi)| {
            let r = ui + alpha1 * wi;
            r * r
        })
        .sum::<f64>()
        .sqrt()
}

/// The two branches of a historical closed form for the energy,
///
/// ```text
/// E = -(1/(16 A)) [ S -+ sqrt(S^2 - 2 B D) ]^2,    S = C + gamma,
/// ```
///
/// and whether each agrees with `E = -b^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LegacyBranches {
    /// Branch taking the minus sign.
    pub minus: f64,
    /// Branch taking the plus sign.
    pub plus: f64,
    /// `minus` agrees with `-b^2` to relative `1e-9`.
    pub minus_matches: bool,
    /// `plus` agrees with `-b^2` to relative `1e-9`.
    pub plus_matches: bool,
}

/// Evaluates [`LegacyBranches`] for `potential` in `channel`.
///
/// # Errors
///
/// [`Error::BranchesUndefined`] when `S^2 - 2 B D < 0` and the square root
/// leaves the real axis (possible only for `B < 0` when `D < 0`).
pub fn legacy_energy_branches(potential: &Potential, channel: Channel) -> Result<LegacyBranches> {
    let s = potential.a2() + channel.centrifugal();
    let discriminant = s * s - 2.0 * potential.a3() * potential.a1();
    if discriminant < 0.0 {
        return Err(Error::BranchesUndefined { discriminant });
    }
    let root = discriminant.sqrt();
    let scale = -1.0 / (16.0 * potential.a4());
    let minus = scale * (s - root) * (s - root);
    let plus = scale * (s + root) * (s + root);
    let reference = energy_formula(potential);
    let matches = |e: f64| (e - reference).abs() <= 1e-9 * reference.abs().max(1e-300);
    Ok(LegacyBranches {
        minus,
        plus,
        minus_matches: matches(minus),
        plus_matches: matches(plus),
    })
}

/// Everything the excited-state audit establishes for one potential.
#[derive(Debug, Clone, PartialEq)]
pub struct AuditReport {
    /// Linear coupling of the exponent from the ground-state balances.
    pub ground_b: f64,
    /// Linear coupling the node-factor construction would need instead.
    pub excited_b: f64,
    /// The two couplings differ, so no single exponent serves both states.
    pub linear_coupling_conflict: bool,
    /// `ground_b / excited_b`; equals `(c + 1) / c`.
    pub coupling_ratio: f64,
    /// Minimum over the node position of the residual norm with the ground
    /// coefficients held fixed; bounded away from zero.
    pub residual_floor: f64,
    /// Minus branch of the historical energy expression.
    pub branch_minus_energy: f64,
    /// Plus branch of the historical energy expression.
    pub branch_plus_energy: f64,
    /// The minus branch reproduces the ground energy `-b^2`.
    pub minus_branch_is_ground: bool,
}

/// Runs the excited-state audit on an exactly solvable potential.
///
/// # Errors
///
/// * [`Error::ConstraintUnsatisfied`] if the couplings do not admit the
///   closed-form ground state (there is nothing to audit against).
/// * [`Error::BranchesUndefined`] propagated from the historical formula.
pub fn audit(potential: &Potential, channel: Channel) -> Result<AuditReport> {
    let params = solve_ansatz(potential, channel)?;
    let energy = -params.b() * params.b();
    let (ground_b, excited_b, linear_coupling_conflict) = excited_b_conflict(potential);
    let floor = residual_floor(&params, potential, channel.centrifugal(), energy);
    let branches = legacy_energy_branches(potential, channel)?;
    Ok(AuditReport {
        ground_b,
        excited_b,
        linear_coupling_conflict,
        coupling_ratio: ground_b / excited_b,
        residual_floor: floor,
        branch_minus_energy: branches.minus,
        branch_plus_energy: branches.plus,
        minus_branch_is_ground: branches.minus_matches,
    })
}
