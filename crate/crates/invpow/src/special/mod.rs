//! Special functions and numerical quadrature used by the solver.

mod bessel;
mod quad;

pub use bessel::bessel_k;
pub use quad::{integrate_adaptive, QuadratureResult};
