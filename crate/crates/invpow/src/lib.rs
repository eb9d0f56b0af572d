//! Exact bound states of the inverse-power potential
//! `V(r) = A/r^4 + B/r^3 + C/r^2 + D/r`.
//!
//! For couplings satisfying one algebraic constraint (see
//! [`constraint_c`]), the radial equation has the closed-form ground state
//! `R(r) = exp(a/r + b r + c ln r)` with energy `E = -b^2`, in both the
//! three-dimensional partial-wave and two-dimensional polar reductions
//! ([`Channel`]).  This crate computes those solutions, checks them against
//! an independent Numerov shooting eigensolver ([`verify`]), and audits a
//! single-node-factor construction for the first excited state, which turns
//! out to be inconsistent for any nonzero linear coupling ([`audit`]).
//!
//! # Example
//!
//! ```
//! use invpow::{solve_b, BracketOptions, Channel, ClosedFormSolution, Potential};
//!
//! // Pick the cubic coupling B that makes the potential exactly solvable
//! // for A = 4, C = 2, D = -2 in the 3D s-wave channel, then solve it.
//! let channel = Channel::three_dim(0);
//! let roots = solve_b(4.0, 2.0, -2.0, channel, &BracketOptions::default()).unwrap();
//! let potential = Potential::new(4.0, roots[0], 2.0, -2.0).unwrap();
//! let solution = ClosedFormSolution::solve(potential, channel).unwrap();
//! assert!((solution.energy() + 0.164_242_035_8).abs() < 1e-9);
//! ```

pub mod ansatz;
pub mod audit;
pub mod error;
pub mod potential;
pub mod special;
pub mod verify;

pub use ansatz::{
    check_matching_system, constraint_c, ground_energy, normalization_constant, solve_ansatz,
    solve_b, AnsatzParams, BracketOptions, ClosedFormSolution,
};
pub use audit::{
    audit, excited_b_conflict, excited_system_residual, legacy_energy_branches, AuditReport,
    LegacyBranches,
};
pub use error::{Error, Result};
pub use potential::{Channel, Potential, RadialGrid};
pub use verify::{
    numerov_ground_energy, ode_residual, verify, Tolerances, VerificationReport, VerifyOptions,
};
