//! The inverse-power potential and the angular channels it is solved in.
//!
//! The potential is `V(r) = A r^-4 + B r^-3 + C r^-2 + D r^-1` with a
//! repulsive core (`A > 0`) and an attractive Coulomb tail (`D < 0`).  In
//! natural units (`hbar = 1`, `2 mu = 1`) the reduced radial equation takes
//! the same form in three and in two dimensions,
//!
//! ```text
//! R''(r) + [ E - V(r) - gamma / r^2 ] R(r) = 0,
//! ```
//!
//! where `gamma` collects the centrifugal strength: `l (l + 1)` for the 3-D
//! partial wave `l`, and `m^2 - 1/4` for the 2-D wave with magnetic quantum
//! number `m` (the extra `-1/4` comes from factoring `r^-1/2` out of the full
//! 2-D wavefunction).  [`Channel`] carries that distinction so every solver
//! routine can treat both dimensions uniformly.

use crate::error::{Error, Result};

/// Angular channel of the reduced radial equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Channel {
    /// Three-dimensional channel with orbital quantum number `ell`.
    ThreeDim { ell: u32 },
    /// Two-dimensional channel with magnetic quantum number `m`.
    TwoDim { m: u32 },
}

impl Channel {
    /// 3-D channel for orbital quantum number `ell`.
    pub fn three_dim(ell: u32) -> Self {
        Channel::ThreeDim { ell }
    }

    /// 2-D channel for magnetic quantum number `m`.
    pub fn two_dim(m: u32) -> Self {
        Channel::TwoDim { m }
    }

    /// Coefficient `gamma` of the centrifugal term `gamma / r^2`.
    pub fn centrifugal(&self) -> f64 {
        match *self {
            Channel::ThreeDim { ell } => f64::from(ell) * (f64::from(ell) + 1.0),
            Channel::TwoDim { m } => f64::from(m) * f64::from(m) - 0.25,
        }
    }

    /// Spatial dimension of the channel (2 or 3).
    pub fn dimension(&self) -> u32 {
        match self {
            Channel::ThreeDim { .. } => 3,
            Channel::TwoDim { .. } => 2,
        }
    }

    /// Angular quantum number (`ell` in 3-D, `m` in 2-D).
    pub fn angular(&self) -> u32 {
        match *self {
            Channel::ThreeDim { ell } => ell,
            Channel::TwoDim { m } => m,
        }
    }
}

/// Inverse-power potential `V(r) = A/r^4 + B/r^3 + C/r^2 + D/r`.
///
/// Field names record the inverse power each coefficient multiplies:
/// `a4 = A`, `a3 = B`, `a2 = C`, `a1 = D`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Potential {
    a4: f64,
    a3: f64,
    a2: f64,
    a1: f64,
}

impl Potential {
    /// Builds a potential, enforcing `A > 0`, `D < 0` and `B > -2 sqrt(A)`.
    ///
    /// The last bound keeps the ansatz slope `b = D sqrt(A) / (B + 2 sqrt(A))`
    /// negative, which every bound-state formula in this crate relies on.
    ///
    /// # Errors
    ///
    /// [`Error::Domain`] if any coefficient is non-finite or violates the
    /// bounds above.
    pub fn new(a4: f64, a3: f64, a2: f64, a1: f64) -> Result<Self> {
        for (name, value) in [("A", a4), ("B", a3), ("C", a2), ("D", a1)] {
            if !value.is_finite() {
                return Err(Error::Domain(format!(
                    "coefficient {name} must be finite, got {value}"
                )));
            }
        }
        if a4 <= 0.0 {
            return Err(Error::Domain(format!("A must be positive, got {a4}")));
        }
        if a1 >= 0.0 {
            return Err(Error::Domain(format!("D must be negative, got {a1}")));
        }
        let floor = -2.0 * a4.sqrt();
        if a3 <= floor {
            return Err(Error::Domain(format!(
                "B must exceed -2*sqrt(A) = {floor}, got {a3}"
            )));
        }
        Ok(Potential { a4, a3, a2, a1 })
    }

    /// Builds a potential without the sign checks.  Only for diagnostics that
    /// deliberately probe degenerate coefficient choices (e.g. `D = 0`).
    #[cfg_attr(not(test), allow(dead_code))]
    pub(crate) fn raw(a4: f64, a3: f64, a2: f64, a1: f64) -> Self {
        Potential { a4, a3, a2, a1 }
    }

    /// Coefficient of `r^-4`.
    pub fn a4(&self) -> f64 {
        self.a4
    }

    /// Coefficient of `r^-3`.
    pub fn a3(&self) -> f64 {
        self.a3
    }

    /// Coefficient of `r^-2`.
    pub fn a2(&self) -> f64 {
        self.a2
    }

    /// Coefficient of `r^-1`.
    pub fn a1(&self) -> f64 {
        self.a1
    }

    /// Potential value at radius `r`.
    ///
    /// # Errors
    ///
    /// [`Error::Domain`] unless `r > 0` and finite.
    pub fn evaluate(&self, r: f64) -> Result<f64> {
        check_radius(r)?;
        let u = 1.0 / r;
        Ok((((self.a4 * u + self.a3) * u + self.a2) * u + self.a1) * u)
    }

    /// The bracketed term `E - V(r) - gamma/r^2` of the reduced radial
    /// equation, so that `R'' + term * R = 0`.
    ///
    /// # Errors
    ///
    /// [`Error::Domain`] unless `r > 0` and finite.
    pub fn effective_radial_term(&self, ch: Channel, energy: f64, r: f64) -> Result<f64> {
        let v = self.evaluate(r)?;
        Ok(energy - v - ch.centrifugal() / (r * r))
    }
}

pub(crate) fn check_radius(r: f64) -> Result<()> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::Domain(format!(
            "radius must be positive and finite, got {r}"
        )));
    }
    Ok(())
}

/// Uniform radial grid `r_min, r_min + step, ..., r_max`.
///
/// Radii must be strictly positive and the grid must contain at least 16
/// steps; coarser grids starve the finite-difference and shooting routines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialGrid {
    r_min: f64,
    r_max: f64,
    step: f64,
}

impl RadialGrid {
    /// Builds a grid after validating its parameters.
    ///
    /// # Errors
    ///
    /// [`Error::Domain`] unless `0 < r_min < r_max`, `step > 0` and
    /// `(r_max - r_min) / step >= 16`.
    pub fn new(r_min: f64, r_max: f64, step: f64) -> Result<Self> {
        for (name, value) in [("r_min", r_min), ("r_max", r_max), ("step", step)] {
            if !value.is_finite() || value <= 0.0 {
                return Err(Error::Domain(format!(
                    "grid {name} must be positive and finite, got {value}"
                )));
            }
        }
        if r_min >= r_max {
            return Err(Error::Domain(format!(
                "grid requires r_min < r_max, got {r_min} >= {r_max}"
            )));
        }
        if (r_max - r_min) / step < 16.0 {
            return Err(Error::Domain(format!(
                "grid must contain at least 16 steps, got {}",
                (r_max - r_min) / step
            )));
        }
        Ok(RadialGrid { r_min, r_max, step })
    }

    /// Inner radius.
    pub fn r_min(&self) -> f64 {
        self.r_min
    }

    /// Outer radius.
    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    /// Grid spacing.
    pub fn step(&self) -> f64 {
        self.step
    }

    /// Number of grid points, endpoints included.
    pub fn points(&self) -> usize {
        ((self.r_max - self.r_min) / self.step + 1e-9).floor() as usize + 1
    }

    /// Iterator over the grid radii.
    pub fn iter(&self) -> impl Iterator<Item = f64> + '_ {
        let r_min = self.r_min;
        let step = self.step;
        (0..self.points()).map(move |i| r_min + i as f64 * step)
    }
}

impl Default for RadialGrid {
    /// The grid used by the verifier unless overridden: `(0.05, 40, 1e-3)`.
    fn default() -> Self {
        RadialGrid {
            r_min: 0.05,
            r_max: 40.0,
            step: 1e-3,
        }
    }
}
