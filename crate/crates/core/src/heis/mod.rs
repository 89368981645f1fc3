//! Spectral data on the reduced Heisenberg group `h^n = ℂ^n × 𝕋`.
//!
//! Functions of `(|z|, t)` are integrated against the Haar measure
//! `(n/π) r^{2n−1} dr dt` on `[0, ∞) × [−π, π]`, the flat limit of the
//! sphere's reduced measure.

mod divisor;
mod exponents;
mod kernel;

pub use divisor::{
    aggregate_bound, divisor_sum, pi_square_sum, qn_fixed_prime_bound, qn_modes, qn_norm_bound,
    qn_prime_bound, qn_prime_power_bound, qn_sq_identity, Aggregate, DivisorSum, QnForm,
    QnReduced,
};
pub use exponents::{exponent_profile, ExponentProfile};
pub use kernel::{kochricci_bound, phi_lp_norm, pmk_norm_bracket, LaguerreKernel};

use std::f64::consts::PI;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HeisContext {
    n: u32,
}

impl HeisContext {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("n must be at least 1".into()));
        }
        Ok(Self { n })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// `n/π`.
    pub fn haar_constant(&self) -> f64 {
        f64::from(self.n) / PI
    }

    /// `2n r^{2n−1}`: the Haar density after integrating out `t`.
    pub fn radial_density(&self, r: f64) -> f64 {
        2.0 * f64::from(self.n) * r.powi(2 * self.n as i32 - 1)
    }
}

/// Joint eigenspace index `(m, k)`, `m ≠ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub struct HeisMode {
    m: i64,
    k: u32,
}

impl HeisMode {
    pub fn new(m: i64, k: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::Domain("mode index m must be nonzero".into()));
        }
        Ok(Self { m, k })
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn abs_m(&self) -> u64 {
        self.m.unsigned_abs()
    }

    /// `2k + n`.
    pub fn level(&self, ctx: &HeisContext) -> u64 {
        2 * u64::from(self.k) + u64::from(ctx.n)
    }

    /// `(2|m|(2k+n), m)`: eigenvalues of the sub-Laplacian and of `i^{−1}∂_t`.
    pub fn eigenvalues(&self, ctx: &HeisContext) -> (u64, i64) {
        (2 * self.abs_m() * self.level(ctx), self.m)
    }

    pub fn conjugate(&self) -> Self {
        Self {
            m: -self.m,
            k: self.k,
        }
    }
}

impl std::fmt::Display for HeisMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.m, self.k)
    }
}
