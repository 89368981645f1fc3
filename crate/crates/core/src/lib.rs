//! Spectral projectors on the complex sphere `S^{2n+1}` and on the reduced
//! Heisenberg group `h^n`, together with the contraction that links them.
//!
//! The crate is organised bottom-up:
//!
//! * [`specfun`]: Jacobi and Laguerre polynomials, Darboux–Szegő envelopes and
//!   the Mehler–Heine limit pair.
//! * [`quad`]: Gauss–Legendre rules, composite panels and periodic trapezoid
//!   rules shared by every integral in the crate.
//! * [`sphere`]: bidegrees, dimensions, zonal kernels and `L^p → L^2` norm
//!   brackets for the joint projectors `π_{ℓℓ′}`.
//! * [`heis`]: modes `(m, k)`, Laguerre kernels, the exponent laws, the divisor
//!   sum `d(N)` and the `Q_N` / `Π_N` / `M_N` / `E` bounds.
//! * [`contraction`]: coordinate charts, the scaling `f ↦ f_ν`, and the two
//!   limit harnesses.
//! * [`fit`]: log-log slope estimation and exponent reports.
//! * [`cli`]: the command-line front end used by the `hcontract` binary.

pub mod cli;
pub mod contraction;
mod error;
pub mod fit;
pub mod heis;
pub mod quad;
pub mod specfun;
pub mod sphere;

pub use error::{Error, Result};

/// An `L^p → L^2` operator norm, bracketed by a certified lower and upper bound.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct NormBracket {
    pub p: f64,
    pub lower: f64,
    pub upper: f64,
}

impl NormBracket {
    pub(crate) fn new(p: f64, lower: f64, upper: f64) -> Self {
        debug_assert!(lower >= 0.0);
        // Both sides come from independent quadratures; when they agree to
        // rounding the lower side can exceed the upper side by a few ulps.
        let upper = upper.max(lower);
        Self { p, lower, upper }
    }

    /// `(upper - lower) / upper`.
    pub fn relative_width(&self) -> f64 {
        if self.upper == 0.0 {
            0.0
        } else {
            (self.upper - self.lower) / self.upper
        }
    }
}

/// Checks `1 <= p <= 2`.
pub(crate) fn check_p_range(p: f64) -> Result<()> {
    if (1.0..=2.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::Domain(format!("p = {p} is outside [1, 2]")))
    }
}

/// Hölder conjugate exponent, `p' = p / (p - 1)`, with `1' = ∞`.
pub fn conjugate_exponent(p: f64) -> f64 {
    if p == 1.0 {
        f64::INFINITY
    } else {
        p / (p - 1.0)
    }
}
