//! Shared fixtures for the `invpow` benchmark suite.

use invpow::{Channel, ClosedFormSolution, Potential};

/// Cubic coupling closing the solvability constraint for the benchmark
/// potential `A = 4, C = 2, D = -2` in the s-wave three-dimensional channel.
pub const REFERENCE_B: f64 = 5.870_015_428_226_070_3;

/// The potential every benchmark drives.
pub fn reference_potential() -> Potential {
    Potential::new(4.0, REFERENCE_B, 2.0, -2.0).expect("benchmark couplings are valid")
}

/// The matching angular channel.
pub fn reference_channel() -> Channel {
    Channel::three_dim(0)
}

/// The solved ground state for kernels that consume a finished solution.
pub fn reference_solution() -> ClosedFormSolution {
    ClosedFormSolution::solve(reference_potential(), reference_channel())
        .expect("reference case is solvable")
}
